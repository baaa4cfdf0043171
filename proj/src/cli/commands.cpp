#include "ott/cli/commands.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ott/factory/factory.hpp"
#include "ott/lab/scan.hpp"
#include "ott/mpc/circuit.hpp"
#include "ott/mpc/primitives.hpp"
#include "ott/protocols/io.hpp"
#include "ott/qhe/scheme.hpp"

namespace ott::cli {

namespace fs = std::filesystem;
using protocols::OneTimeTable;

namespace {

// Stream indices under the master seed.
enum Stream : std::uint64_t { kMain = 0, kAux = 1, kAlice = 2, kBob = 3, kDealer = 4, kInput = 5 };

Rng stream(const Context& ctx, Stream s) { return Rng::stream(ctx.seed, s); }

std::string io_error(const std::string& what, const fs::path& p) {
  return "cannot " + what + " '" + p.string() + "': " + std::strerror(errno);
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error(io_error("read", p));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const Context& ctx, const std::string& name, const std::string& text) {
  const fs::path p = ctx.out_dir / name;
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(io_error("write", p));
  out << text;
  out.flush();
  if (!out) throw std::runtime_error(io_error("write", p));
}

void write_json(const Context& ctx, const std::string& name, const Json& doc) {
  write_text(ctx, name, doc.dump(2) + "\n");
}

void write_jsonl(const Context& ctx, const std::string& name, const std::string& header,
                 const std::vector<Json>& records) {
  std::ostringstream ss;
  protocols::write_jsonl(ss, header, records);
  write_text(ctx, name, ss.str());
}

Json parse_json_file(const fs::path& p) {
  const auto text = read_text(p);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("'" + p.string() + "' is not valid JSON: " + e.what());
  }
}

std::vector<OneTimeTable> load_batch(const std::string& alice, const std::string& bob) {
  const auto a = protocols::parse_alice_batch(parse_json_file(alice));
  const auto b = protocols::parse_bob_batch(parse_json_file(bob));
  return protocols::join_batches(a, b);
}

void write_batch(const Context& ctx, const std::string& prefix, const std::vector<OneTimeTable>& tables) {
  write_json(ctx, prefix + "alice_tables.json", protocols::alice_batch_json(tables));
  write_json(ctx, prefix + "bob_tables.json", protocols::bob_batch_json(tables));
}

/// Tables from the two party files, or n fresh dealer tables.
std::vector<OneTimeTable> source_tables(const TableSource& src, std::int64_t n, const Context& ctx, Json& report) {
  if (src.alice.empty() != src.bob.empty()) throw std::invalid_argument("give both --alice-tables and --bob-tables");
  if (src.alice.empty()) {
    report["table_source"] = "dealer";
    auto rng = stream(ctx, kDealer);
    return mpc::ideal_tables(n, rng);
  }
  report["table_source"] = "files";
  return load_batch(src.alice, src.bob);
}

Json base_report(const char* command, const Context& ctx) {
  Json r;
  r["command"] = command;
  r["seed"] = ctx.seed;
  r["outcome"] = "ok";
  return r;
}

void check_bit(int v, const char* what) {
  if (v != 0 && v != 1) throw std::invalid_argument(std::string(what) + " must be 0 or 1");
}

std::string bits_string(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s += static_cast<char>('0' + b);
  return s;
}

}  // namespace

std::string outcome_name(bool aborted) { return aborted ? "abort" : "ok"; }

std::vector<int> parse_bits(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument(what + " must be a string of 0 and 1");
    out.push_back(c - '0');
  }
  return out;
}

Json gen_tables(const GenTablesOptions& o, const Context& ctx) {
  if (o.n < 0) throw std::invalid_argument("--n must be nonnegative");
  protocols::BatchSpec spec;
  spec.protocol = protocols::parse_protocol(o.protocol);
  spec.alice = protocols::parse_strategy(protocols::Role::kAlice, o.adversary_a);
  spec.bob = protocols::parse_strategy(protocols::Role::kBob, o.adversary_b);
  spec.noise = {o.depolarizing, o.loss};
  spec.noise.validate();
  spec.count = o.n;
  spec.seed = ctx.seed;
  spec.alice_cheat_fraction = o.alice_cheat_fraction;
  spec.bob_cheat_fraction = o.bob_cheat_fraction;

  const auto runs = protocols::generate_batch(spec);
  std::vector<Json> records;
  records.reserve(runs.size());
  for (const auto& r : runs) records.push_back(protocols::transcript_json(r));
  write_jsonl(ctx, "transcripts.jsonl", "ottsim gen-tables transcript, one run per line", records);
  const auto tables = protocols::successful_tables(runs);
  write_batch(ctx, "", tables);

  std::int64_t incorrect = 0;
  for (const auto& t : tables) incorrect += t.correct() ? 0 : 1;
  Json r = base_report("gen-tables", ctx);
  r["protocol"] = protocols::protocol_name(spec.protocol);
  r["adversary_a"] = protocols::describe(spec.alice);
  r["adversary_b"] = protocols::describe(spec.bob);
  r["runs"] = o.n;
  r["tables"] = tables.size();
  r["failures"] = o.n - static_cast<std::int64_t>(tables.size());
  r["incorrect"] = incorrect;
  return r;
}

Json check(const CheckOptions& o, const Context& ctx) {
  const auto batch = load_batch(o.in.alice, o.in.bob);
  factory::CheckConfig cfg;
  cfg.k = o.k;
  cfg.k_a = o.k_a;
  cfg.k_b = o.k_b;
  cfg.threshold = o.threshold;
  cfg.seed = Rng::stream_seed(ctx.seed, kMain);
  factory::BatchOutcome res;
  if (o.mode == "onesided") {
    res = factory::check_onesided(batch, cfg);
  } else if (o.mode == "twosided") {
    res = factory::check_twosided(batch, cfg);
  } else {
    throw std::invalid_argument("--mode must be onesided or twosided");
  }
  write_batch(ctx, "passed_", res.passed);

  static const char* const initiators[] = {"none", "alice", "bob", "both"};
  Json r = base_report("check", ctx);
  r["outcome"] = outcome_name(res.aborted);
  r["mode"] = o.mode;
  r["tables"] = batch.size();
  r["checked"] = res.checked;
  r["failures"] = res.failures;
  r["aborted_by"] = initiators[static_cast<int>(res.aborted_by)];
  r["cheat_rate"] = res.cheat_rate;
  r["cheat_rate_interval"] = {res.cheat_rate_interval.lo, res.cheat_rate_interval.hi};
  r["passed"] = res.passed.size();
  return r;
}

Json combine(const CombineOptions& o, const Context& ctx) {
  const auto batch = load_batch(o.in.alice, o.in.bob);
  auto rng = stream(ctx, kBob);
  const auto plan = factory::plan_combination(batch, o.k, rng);
  const auto combined = factory::combine_tables(batch, plan);
  write_batch(ctx, "combined_", combined);
  std::int64_t incorrect = 0;
  for (const auto& t : combined) incorrect += t.correct() ? 0 : 1;
  Json r = base_report("combine", ctx);
  r["k"] = o.k;
  r["tables"] = batch.size();
  r["combined"] = combined.size();
  r["incorrect"] = incorrect;
  return r;
}

Json error_reduce(const ErrorReduceOptions& o, const Context& ctx) {
  if (!(o.inject_rate >= 0.0 && o.inject_rate <= 1.0)) throw std::invalid_argument("--inject-rate must lie in [0, 1]");
  factory::AliceResponse alice;
  if (o.alice == "honest") {
    alice = factory::AliceResponse::kHonest;
  } else if (o.alice == "guessing") {
    alice = factory::AliceResponse::kGuessing;
  } else {
    throw std::invalid_argument("--alice-response must be honest or guessing");
  }
  auto inject_rng = stream(ctx, kAux);
  const auto pool = factory::inject_errors(load_batch(o.in.alice, o.in.bob), o.inject_rate, inject_rng);
  std::int64_t injected_wrong = 0;
  for (const auto& t : pool) injected_wrong += t.correct() ? 0 : 1;
  auto rng = stream(ctx, kMain);
  const auto run = factory::error_reduce_pool(pool, o.q, alice, rng);
  write_batch(ctx, "reduced_", run.accepted);

  Json r = base_report("error-reduce", ctx);
  r["q"] = o.q;
  r["alice"] = o.alice;
  r["tables"] = pool.size();
  r["incorrect_before"] = injected_wrong;
  r["targets"] = run.targets;
  r["accepted"] = run.accepted.size();
  r["rejected"] = run.rejected;
  r["residual_error"] = run.residual_error;
  r["detection_rate"] = run.detection_rate;
  return r;
}

Json eval_circuit(const EvalCircuitOptions& o, const Context& ctx) {
  if (o.netlist.empty()) throw std::invalid_argument("--netlist is required");
  const auto circuit = mpc::parse_netlist_text(read_text(o.netlist));
  const auto a = parse_bits(o.alice_bits, "--alice-bits");
  const auto b = parse_bits(o.bob_bits, "--bob-bits");
  if (static_cast<int>(a.size()) != circuit.input_count(mpc::Party::kAlice) ||
      static_cast<int>(b.size()) != circuit.input_count(mpc::Party::kBob)) {
    throw std::invalid_argument("netlist expects " + std::to_string(circuit.input_count(mpc::Party::kAlice)) +
                                " Alice bits and " + std::to_string(circuit.input_count(mpc::Party::kBob)) +
                                " Bob bits");
  }
  const auto plan = mpc::compile_circuit(circuit);
  Json r = base_report("eval-circuit", ctx);
  mpc::TablePool pool(source_tables(o.tables, plan.table_budget, ctx, r));
  const auto run = mpc::eval_circuit(plan, a, b, pool);
  const auto direct = mpc::evaluate_direct(circuit, a, b);

  Json messages = Json::array();
  for (const auto& m : run.transcript) {
    messages.push_back({{"from", m.from == mpc::Party::kAlice ? "alice" : "bob"}, {"bit", m.bit}});
  }
  write_jsonl(ctx, "circuit_transcript.jsonl", "ottsim eval-circuit transcript, one run per line",
              {Json{{"alice_bits", o.alice_bits}, {"bob_bits", o.bob_bits}, {"messages", messages}}});

  r["outputs"] = run.outputs;
  r["direct"] = direct;
  r["match"] = run.outputs == direct;
  r["tables_used"] = run.tables_used;
  r["table_budget"] = plan.table_budget;
  r["nonlocal_ands"] = plan.nonlocal_ands;
  return r;
}

Json ot(const OtOptions& o, const Context& ctx) {
  std::vector<std::array<int, 3>> inputs;
  if (!o.m0 && !o.m1 && !o.b) {
    for (int i = 0; i < 8; ++i) inputs.push_back({i & 1, (i >> 1) & 1, (i >> 2) & 1});
  } else if (o.m0 && o.m1 && o.b) {
    check_bit(*o.m0, "--m0");
    check_bit(*o.m1, "--m1");
    check_bit(*o.b, "--b");
    inputs.push_back({*o.m0, *o.m1, *o.b});
  } else {
    throw std::invalid_argument("give all of --m0, --m1, --b or none");
  }
  Json r = base_report("ot", ctx);
  mpc::TablePool pool(source_tables(o.tables, static_cast<std::int64_t>(inputs.size()), ctx, r));
  std::vector<Json> records;
  int correct = 0;
  for (const auto& [m0, m1, b] : inputs) {
    const auto res = mpc::ot_1of2(m0, m1, b, pool);
    const int expected = b ? m1 : m0;
    correct += res.output == expected;
    records.push_back({{"m0", m0},
                       {"m1", m1},
                       {"b", b},
                       {"output", res.output},
                       {"alice_received", {{"b_prime", res.alice_received_b_prime}}},
                       {"bob_received", {{"a_prime", res.bob_received_a_prime}, {"masked_m0", res.bob_received_masked_m0}}}});
  }
  write_jsonl(ctx, "ot.jsonl", "ottsim ot runs, one per line", records);
  r["runs"] = inputs.size();
  r["correct"] = correct;
  return r;
}

Json commit(const CommitOptions& o, const Context& ctx) {
  check_bit(o.b, "--b");
  if (o.m < 1 || o.m > 30) throw std::invalid_argument("--m must lie in 1..30");
  auto bob_rng = stream(ctx, kBob);
  std::vector<int> inputs = o.bob_inputs.empty() ? mpc::random_nonzero_inputs(o.m, bob_rng)
                                                 : parse_bits(o.bob_inputs, "--bob-inputs");
  if (static_cast<int>(inputs.size()) != o.m) throw std::invalid_argument("--bob-inputs must have m bits");
  Json r = base_report("commit", ctx);
  mpc::TablePool pool(source_tables(o.tables, o.m, ctx, r));
  const auto state = mpc::bit_commit(o.b, inputs, pool);
  auto revealed = state.alice_shares;
  if (o.equivocate) {
    auto alice_rng = stream(ctx, kAlice);
    const auto guess = mpc::random_nonzero_inputs(o.m, alice_rng);
    for (int j = 0; j < o.m; ++j) revealed[static_cast<std::size_t>(j)] ^= guess[static_cast<std::size_t>(j)];
  }
  const auto out = mpc::bit_reveal(state, revealed);
  write_json(ctx, "commit_alice_view.json",
             {{"party", "alice"}, {"b", o.b}, {"shares", bits_string(state.alice_shares)}, {"revealed", bits_string(revealed)}});
  write_json(ctx, "commit_bob_view.json",
             {{"party", "bob"}, {"inputs", bits_string(inputs)}, {"shares", bits_string(state.bob_shares)},
              {"received", bits_string(revealed)}, {"decision", mpc::decision_name(out.decision)}});
  r["m"] = o.m;
  r["b"] = o.b;
  r["equivocate"] = o.equivocate;
  r["bob_inputs"] = bits_string(inputs);
  r["revealed"] = bits_string(revealed);
  r["decision"] = mpc::decision_name(out.decision);
  r["equivocation_succeeded"] =
      o.equivocate && (o.b == 0 ? out.decision == mpc::RevealDecision::kOne : out.decision == mpc::RevealDecision::kZero);
  return r;
}

Json ns_box(const NsBoxOptions& o, const Context& ctx) {
  mpc::NsMode mode;
  if (o.mode == "onesided") {
    mode = mpc::NsMode::kOneSided;
  } else if (o.mode == "symmetric") {
    mode = mpc::NsMode::kSymmetric;
  } else {
    throw std::invalid_argument("--mode must be onesided or symmetric");
  }
  if (o.samples < 1) throw std::invalid_argument("--samples must be positive");
  auto dealer = stream(ctx, kDealer);
  mpc::TablePool pool(mpc::ideal_tables(o.samples, dealer));
  auto inputs = stream(ctx, kInput);
  auto noise = stream(ctx, kMain);
  std::int64_t wins = 0, a_ones = 0, b_ones = 0;
  std::string csv = "a,b,A,B\n";
  for (std::int64_t i = 0; i < o.samples; ++i) {
    const int a = inputs.bit();
    const int b = inputs.bit();
    const auto s = mpc::ns_box_sample(a, b, o.E, mode, pool, noise);
    wins += (s.a_out ^ s.b_out) == (a & b);
    a_ones += s.a_out;
    b_ones += s.b_out;
    csv += std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(s.a_out) + "," + std::to_string(s.b_out) + "\n";
  }
  write_text(ctx, "ns_box.csv", csv);
  const double n = static_cast<double>(o.samples);
  Json r = base_report("ns-box", ctx);
  r["E"] = o.E;
  r["mode"] = o.mode;
  r["samples"] = o.samples;
  r["p_win"] = static_cast<double>(wins) / n;
  r["p_win_expected"] = 0.5 * (1.0 + o.E);
  r["marginal_a"] = static_cast<double>(a_ones) / n;
  r["marginal_b"] = static_cast<double>(b_ones) / n;
  return r;
}

Json holevo_scan(const HolevoScanOptions& o, const Context& ctx) {
  const auto res = lab::tradeoff_scan(o.samples, o.ancilla, ctx.seed);
  std::ostringstream ss;
  lab::write_scan_csv(ss, res.points);
  write_text(ctx, o.out, ss.str());
  const auto& best = res.points[res.argmax];
  Json r = base_report("holevo-scan", ctx);
  r["samples"] = o.samples;
  r["ancilla"] = o.ancilla;
  r["csv"] = o.out;
  r["max_sum"] = res.max_sum;
  r["argmax_seed"] = best.seed;
  r["argmax"] = {{"chi_y", best.chi_y}, {"chi_r", best.chi_r}, {"chi_yr", best.chi_yr}};
  if (!o.envelope_eps.empty()) {
    Json rows = Json::array();
    for (const auto& row : lab::f_envelope(res.points, o.envelope_eps)) {
      rows.push_back({{"eps", row.eps}, {"count", row.count}, {"f", row.f ? Json(*row.f) : Json(nullptr)}});
    }
    r["envelope"] = rows;
  }
  return r;
}

Json qhe(const QheOptions& o, const Context& ctx) {
  if (o.circuit.empty()) throw std::invalid_argument("--circuit is required");
  const auto c = qhe::parse_clifford_t_text(read_text(o.circuit));
  if (c.num_qubits > quantum::kMaxQubits - 2) throw std::invalid_argument("qhe simulates at most 4 data qubits");
  quantum::PureState input = quantum::PureState::zero();
  if (o.input == "haar") {
    auto rng = stream(ctx, kInput);
    input = quantum::haar_random_state(c.num_qubits, rng);
  } else if (o.input.rfind("basis:", 0) == 0) {
    const auto idx = std::stoull(o.input.substr(6));
    if (idx >= (1ULL << c.num_qubits)) throw std::invalid_argument("--input basis index out of range");
    input = quantum::PureState::basis(c.num_qubits, idx);
  } else {
    throw std::invalid_argument("--input must be haar or basis:<index>");
  }
  auto dealer = stream(ctx, kDealer);
  mpc::TablePool pool(mpc::ideal_tables(qhe::scheme1_table_budget(c), dealer));
  const auto res = qhe::run_scheme1(c, input, pool,
                                    {Rng::stream_seed(ctx.seed, kAlice), Rng::stream_seed(ctx.seed, kBob), false});
  const double fid = quantum::fidelity(res.output, qhe::apply_circuit(c, input));
  const auto& s = res.session;

  Json steps = Json::array();
  for (const auto& t : s.bob_log) steps.push_back({{"qubit", t.qubit}, {"share", t.share}, {"bob_bits", t.bob_bits}});
  Json polys = Json::array();
  for (const auto& f : s.polynomials) polys.push_back(f.to_string());
  write_json(ctx, "qhe_bob_view.json",
             {{"party", "bob"}, {"received", s.bob_received}, {"received_tables", s.bob_received_tables},
              {"t_steps", steps}, {"polynomials", polys}});
  write_json(ctx, "qhe_alice_view.json",
             {{"party", "alice"}, {"variables", s.alice_values}, {"received", s.alice_received}});

  Json r = base_report("qhe", ctx);
  r["qubits"] = c.num_qubits;
  r["gates"] = c.gates.size();
  r["t_count"] = c.t_count();
  r["input"] = o.input;
  r["fidelity"] = fid;
  r["tables_used"] = res.tables_used;
  r["table_bound"] = qhe::scheme1_table_bound(c);
  r["variables"] = res.variables;
  return r;
}

}  // namespace ott::cli
