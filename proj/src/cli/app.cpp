#include "ott/cli/app.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>

#include "ott/cli/commands.hpp"

namespace ott::cli {

namespace {

// JSON config: top-level keys are global options, an object under a
// subcommand name holds that subcommand's options.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return to_json(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    flatten(doc, {}, items);
    return items;
  }

 private:
  static std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void flatten(const Json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, v] : obj.items()) {
      if (v.is_null()) continue;
      if (v.is_object()) {
        auto p = parents;
        p.push_back(key);
        flatten(v, p, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (v.is_array()) {
        for (const auto& e : v) item.inputs.push_back(scalar(e));
      } else {
        item.inputs.push_back(scalar(v));
      }
      out.push_back(std::move(item));
    }
  }

  static Json to_json(const CLI::App* app, bool default_also) {
    Json j = Json::object();
    for (const auto* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const auto& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& res = opt->results();
        j[name] = res.size() == 1 ? Json(res.front()) : Json(res);
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    for (const auto* sub : app->get_subcommands({})) {
      auto s = to_json(sub, default_also);
      if (!s.empty()) j[sub->get_name()] = s;
    }
    return j;
  }
};

Json error_record(const std::string& command, const char* kind, const std::string& message) {
  Json e;
  e["command"] = command.empty() ? Json(nullptr) : Json(command);
  e["outcome"] = "error";
  e["kind"] = kind;
  e["error"] = message;
  return e;
}

void add_batch_inputs(CLI::App* sub, BatchFiles& in) {
  sub->add_option("--alice", in.alice, "Alice's batch file")->capture_default_str();
  sub->add_option("--bob", in.bob, "Bob's batch file")->capture_default_str();
}

void add_table_source(CLI::App* sub, TableSource& src) {
  sub->add_option("--alice-tables", src.alice, "Alice's batch file (default: trusted dealer)");
  sub->add_option("--bob-tables", src.bob, "Bob's batch file (default: trusted dealer)");
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"gen-tables", "check",  "combine", "error-reduce", "eval-circuit",
                                              "ot",         "commit", "ns-box",  "holevo-scan",  "qhe"};
  return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator for one-time tables, their quantum generation and their uses"};
  app.name("ottsim");
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file mirroring the flags");

  Context ctx;
  std::string out_dir = ".";
  app.add_option("--seed", ctx.seed, "Master seed")->envname("OTT_SEED")->capture_default_str();
  app.add_option("--out-dir", out_dir, "Directory for artifacts")->capture_default_str();

  GenTablesOptions gen;
  auto* s_gen = app.add_subcommand("gen-tables", "Run a batch of table-generation protocols");
  s_gen->add_option("--protocol", gen.protocol, "nland | nland2 | nland3")->capture_default_str();
  s_gen->add_option("--n", gen.n, "Number of runs")->capture_default_str();
  s_gen->add_option("--adversary-a", gen.adversary_a, "Alice's strategy")->capture_default_str();
  s_gen->add_option("--adversary-b", gen.adversary_b, "Bob's strategy")->capture_default_str();
  s_gen->add_option("--depolarizing", gen.depolarizing, "Per-qubit depolarizing rate")->capture_default_str();
  s_gen->add_option("--loss", gen.loss, "Per-run loss probability")->capture_default_str();
  s_gen->add_option("--alice-cheat-fraction", gen.alice_cheat_fraction)->capture_default_str();
  s_gen->add_option("--bob-cheat-fraction", gen.bob_cheat_fraction)->capture_default_str();

  CheckOptions chk;
  auto* s_chk = app.add_subcommand("check", "Reveal and check part of a batch");
  add_batch_inputs(s_chk, chk.in);
  s_chk->add_option("--mode", chk.mode, "onesided | twosided")->capture_default_str();
  s_chk->add_option("--k", chk.k, "Tables Bob reveals (one-sided)")->capture_default_str();
  s_chk->add_option("--k-a", chk.k_a, "Tables Alice reveals (two-sided)")->capture_default_str();
  s_chk->add_option("--k-b", chk.k_b, "Tables Bob reveals (two-sided)")->capture_default_str();
  s_chk->add_option("--threshold", chk.threshold, "Tolerated failed checks")->capture_default_str();

  CombineOptions cmb;
  auto* s_cmb = app.add_subcommand("combine", "Combine groups of k tables into one");
  add_batch_inputs(s_cmb, cmb.in);
  s_cmb->add_option("--k", cmb.k, "Group size")->capture_default_str();

  ErrorReduceOptions er;
  auto* s_er = app.add_subcommand("error-reduce", "Filter tables against auxiliary ones");
  add_batch_inputs(s_er, er.in);
  s_er->add_option("--q", er.q, "Auxiliary tables per target")->capture_default_str();
  s_er->add_option("--inject-rate", er.inject_rate, "Flip e with this probability first")->capture_default_str();
  s_er->add_option("--alice-response", er.alice, "honest | guessing")->capture_default_str();

  EvalCircuitOptions ev;
  auto* s_ev = app.add_subcommand("eval-circuit", "Evaluate a Boolean netlist on shares");
  s_ev->add_option("--netlist", ev.netlist, "Netlist file")->required();
  s_ev->add_option("--alice-bits", ev.alice_bits, "Alice's input bits, e.g. 0110");
  s_ev->add_option("--bob-bits", ev.bob_bits, "Bob's input bits");
  add_table_source(s_ev, ev.tables);

  OtOptions ot_o;
  auto* s_ot = app.add_subcommand("ot", "1-out-of-2 oblivious transfer (all inputs when none given)");
  s_ot->add_option("--m0", ot_o.m0);
  s_ot->add_option("--m1", ot_o.m1);
  s_ot->add_option("--b", ot_o.b);
  add_table_source(s_ot, ot_o.tables);

  CommitOptions cm;
  auto* s_cm = app.add_subcommand("commit", "Bit commitment and reveal");
  s_cm->add_option("--b", cm.b, "Committed bit")->capture_default_str();
  s_cm->add_option("--m", cm.m, "Number of tables")->capture_default_str();
  s_cm->add_option("--bob-inputs", cm.bob_inputs, "Bob's nonzero m-bit string (default: random)");
  s_cm->add_flag("--equivocate", cm.equivocate, "Alice tries to open the other bit");
  add_table_source(s_cm, cm.tables);

  NsBoxOptions ns;
  auto* s_ns = app.add_subcommand("ns-box", "Sample the noisy PR box built from tables");
  s_ns->add_option("--E", ns.E, "Correlation strength in [0, 1]")->capture_default_str();
  s_ns->add_option("--mode", ns.mode, "onesided | symmetric")->capture_default_str();
  s_ns->add_option("--samples", ns.samples)->capture_default_str();

  HolevoScanOptions hs;
  auto* s_hs = app.add_subcommand("holevo-scan", "Haar scan of Alice's Holevo tradeoff");
  s_hs->add_option("--samples", hs.samples)->capture_default_str();
  s_hs->add_option("--ancilla", hs.ancilla, "0, 1 or 2 ancilla qubits")->capture_default_str();
  s_hs->add_option("--out", hs.out, "CSV file name inside the output directory")->capture_default_str();
  s_hs->add_option("--envelope-eps", hs.envelope_eps, "Report f(eps) on the scan points");

  QheOptions qh;
  auto* s_qh = app.add_subcommand("qhe", "Homomorphic evaluation of a Clifford+T circuit");
  s_qh->add_option("--circuit", qh.circuit, "Circuit file")->required();
  s_qh->add_option("--input", qh.input, "haar | basis:<index>")->capture_default_str();

  std::vector<const char*> argv{"ottsim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_record("", "config", e.what()).dump() << '\n';
    return kExitConfig;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    ctx.out_dir = out_dir;
    std::error_code ec;
    std::filesystem::create_directories(ctx.out_dir, ec);
    if (ec) throw std::runtime_error("cannot create '" + out_dir + "': " + ec.message());

    Json report;
    if (sub == s_gen) report = gen_tables(gen, ctx);
    else if (sub == s_chk) report = check(chk, ctx);
    else if (sub == s_cmb) report = combine(cmb, ctx);
    else if (sub == s_er) report = error_reduce(er, ctx);
    else if (sub == s_ev) report = eval_circuit(ev, ctx);
    else if (sub == s_ot) report = ot(ot_o, ctx);
    else if (sub == s_cm) report = commit(cm, ctx);
    else if (sub == s_ns) report = ns_box(ns, ctx);
    else if (sub == s_hs) report = holevo_scan(hs, ctx);
    else report = qhe(qh, ctx);

    const auto path = ctx.out_dir / "report.json";
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!(f << report.dump(2) << '\n')) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << report.dump() << '\n';
    return 0;
  } catch (const std::invalid_argument& e) {
    err << error_record(name, "config", e.what()).dump() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << error_record(name, "runtime", e.what()).dump() << '\n';
    return kExitRuntime;
  }
}

}  // namespace ott::cli
