#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "ott/cli/app.hpp"
#include "ott/lab/scan.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  Json report() const { return Json::parse(out); }
  Json error() const { return Json::parse(err); }
};

Result ottsim(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = ott::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("ottsim_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load(const fs::path& p) { return Json::parse(slurp(p)); }

std::vector<Json> load_jsonl(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<Json> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(Json::parse(line));
  }
  return out;
}

const Json& schema() {
  static const Json s = load(fs::path(OTT_SOURCE_DIR) / "schemas" / "transcript.schema.json");
  return s;
}

// Checks the subset of JSON Schema the shipped schema uses.
void validate(const Json& v, const Json& s, const std::string& where) {
  if (s.contains("$ref")) {
    const std::string ref = s["$ref"];
    ASSERT_EQ(ref.rfind("#/$defs/", 0), 0u) << where;
    validate(v, schema()["$defs"][ref.substr(8)], where);
    return;
  }
  if (s.contains("enum")) {
    bool found = false;
    for (const auto& e : s["enum"]) found = found || e == v;
    EXPECT_TRUE(found) << where << " = " << v.dump();
  }
  if (s.contains("pattern") && v.is_string()) {
    EXPECT_TRUE(std::regex_match(v.get<std::string>(), std::regex(s["pattern"].get<std::string>()))) << where;
  }
  if (s.contains("const")) {
    EXPECT_EQ(v, s["const"]) << where;
  }
  if (s.contains("type")) {
    auto is = [&](const std::string& t) {
      return (t == "object" && v.is_object()) || (t == "array" && v.is_array()) || (t == "string" && v.is_string()) ||
             (t == "integer" && v.is_number_integer()) || (t == "boolean" && v.is_boolean()) ||
             (t == "null" && v.is_null()) || (t == "number" && v.is_number());
    };
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || is(t.get<std::string>());
    } else {
      ok = is(s["type"].get<std::string>());
    }
    EXPECT_TRUE(ok) << where << " has the wrong type: " << v.dump();
  }
  if (v.is_object()) {
    for (const auto& r : s.value("required", Json::array())) EXPECT_TRUE(v.contains(r)) << where << " lacks " << r;
    const auto props = s.value("properties", Json::object());
    for (const auto& [k, val] : v.items()) {
      if (props.contains(k)) {
        validate(val, props[k], where + "." + k);
      } else {
        EXPECT_NE(s.value("additionalProperties", true), false) << where << " has undeclared field " << k;
      }
    }
  }
  if (v.is_array() && s.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i) validate(v[i], s["items"], where + "[" + std::to_string(i) + "]");
  }
}

void validate_def(const Json& v, const std::string& def) { validate(v, schema()["$defs"][def], def); }

std::map<std::string, std::string> dir_contents(const fs::path& d) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(d)) out[e.path().filename().string()] = slurp(e.path());
  return out;
}

fs::path make_batch(const std::string& name, std::int64_t n, const std::string& adversary_a = "honest") {
  const auto d = fresh_dir(name);
  const auto r = ottsim({"--out-dir", d.string(), "gen-tables", "--n", std::to_string(n), "--adversary-a",
                         adversary_a, "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.err;
  return d;
}

const char* const kCircuit = "qubits 2\nH 0\nCNOT 0 1\nT 1\nP 0\nT 0\nH 1\n";
const char* const kNetlist =
    "wire 0 alice\nwire 1 alice\nwire 2 bob\nwire 3 bob\n"
    "AND 4 0 2\nAND 5 1 3\nXOR 6 4 5\nOUT 6 both\n";

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

TEST(GenTables, HonestBatchHasNoFailures) {
  const auto d = make_batch("gen", 100);
  const auto rep = load(d / "report.json");
  EXPECT_EQ(rep["outcome"], "ok");
  EXPECT_EQ(rep["tables"], 100);
  EXPECT_EQ(rep["failures"], 0);
  EXPECT_EQ(rep["incorrect"], 0);
  const auto records = load_jsonl(d / "transcripts.jsonl");
  ASSERT_EQ(records.size(), 100u);
  for (std::size_t i = 0; i < records.size(); ++i) validate(records[i], schema(), "record " + std::to_string(i));
  validate_def(load(d / "alice_tables.json"), "alice_batch");
  validate_def(load(d / "bob_tables.json"), "bob_batch");
  validate_def(rep, "report");
}

TEST(GenTables, EmptyBatchWritesHeaderOnly) {
  const auto d = make_batch("empty", 0);
  const auto text = slurp(d / "transcripts.jsonl");
  EXPECT_EQ(text.rfind("# ", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  EXPECT_TRUE(load_jsonl(d / "transcripts.jsonl").empty());
  EXPECT_TRUE(load(d / "alice_tables.json")["tables"].empty());
}

TEST(PartyViews, BatchFilesHoldOnlyOwnBits) {
  const auto d = make_batch("views", 40, "entangled:y");
  for (const auto& [file, def] : std::vector<std::pair<std::string, std::string>>{
           {"alice_tables.json", "alice_batch"}, {"bob_tables.json", "bob_batch"}}) {
    const auto doc = load(d / file);
    validate_def(doc, def);
    for (const auto& row : doc["tables"]) EXPECT_EQ(row.size(), 3u);
  }
  const auto c = fresh_dir("views_qhe");
  write_file(c / "c.txt", kCircuit);
  ASSERT_EQ(ottsim({"--out-dir", c.string(), "qhe", "--circuit", (c / "c.txt").string()}).code, 0);
  const auto alice = load(c / "qhe_alice_view.json");
  const auto bob = load(c / "qhe_bob_view.json");
  validate_def(alice, "qhe_alice_view");
  validate_def(bob, "qhe_bob_view");
  EXPECT_FALSE(bob.contains("variables"));
  EXPECT_FALSE(alice.contains("t_steps"));
}

TEST(Check, CheatingBatchAbortsWithStatusZero) {
  const auto d = make_batch("abort", 100, "entangled:y");
  const auto r = ottsim({"--out-dir", d.string(), "check", "--alice", (d / "alice_tables.json").string(), "--bob",
                         (d / "bob_tables.json").string(), "--k", "30"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["outcome"], "abort");
  EXPECT_EQ(r.report()["aborted_by"], "bob");
  EXPECT_TRUE(r.err.empty());
}

TEST(Check, HonestBatchPassesUncheckedTables) {
  const auto d = make_batch("pass", 100);
  const auto r = ottsim({"--out-dir", d.string(), "check", "--alice", (d / "alice_tables.json").string(), "--bob",
                         (d / "bob_tables.json").string(), "--k", "30"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["outcome"], "ok");
  EXPECT_EQ(load(d / "passed_alice_tables.json")["tables"].size(), 70u);
}

TEST(Errors, InvalidConfigIsExitTwoWithRecord) {
  const auto d = fresh_dir("err");
  const auto r = ottsim({"--out-dir", d.string(), "gen-tables", "--protocol", "bogus"});
  EXPECT_EQ(r.code, ott::cli::kExitConfig);
  EXPECT_TRUE(r.out.empty());
  const auto e = r.error();
  validate_def(e, "error");
  EXPECT_EQ(e["command"], "gen-tables");
  EXPECT_EQ(e["kind"], "config");

  const auto none = ottsim({});
  EXPECT_EQ(none.code, ott::cli::kExitConfig);
  validate_def(none.error(), "error");
  EXPECT_EQ(ottsim({"frobnicate"}).code, ott::cli::kExitConfig);
  EXPECT_EQ(ottsim({"gen-tables", "--n", "many"}).code, ott::cli::kExitConfig);
  EXPECT_EQ(ottsim({"--out-dir", d.string(), "ot", "--m0", "1"}).code, ott::cli::kExitConfig);
}

TEST(Errors, MissingFileIsReportedVerbatim) {
  const auto d = fresh_dir("missing");
  const auto r = ottsim({"--out-dir", d.string(), "check", "--alice", "/nonexistent/a.json", "--bob", "b.json"});
  EXPECT_EQ(r.code, ott::cli::kExitRuntime);
  const auto e = r.error();
  EXPECT_EQ(e["kind"], "runtime");
  EXPECT_NE(e["error"].get<std::string>().find("/nonexistent/a.json"), std::string::npos);
  EXPECT_NE(e["error"].get<std::string>().find("No such file"), std::string::npos);
}

TEST(Errors, HelpExitsZero) {
  const auto r = ottsim({"--help"});
  EXPECT_EQ(r.code, 0);
  for (const auto& name : ott::cli::subcommand_names()) EXPECT_NE(r.out.find(name), std::string::npos) << name;
}

TEST(Config, JsonFileMirrorsFlagsAndFlagsWin) {
  const auto d = fresh_dir("config");
  write_file(d / "cfg.json", Json{{"seed", 9}, {"out-dir", d.string()}, {"ot", {{"m0", 1}, {"m1", 0}, {"b", 1}}}}.dump());
  auto r = ottsim({"--config", (d / "cfg.json").string(), "ot"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["seed"], 9);
  EXPECT_EQ(r.report()["runs"], 1);
  r = ottsim({"--config", (d / "cfg.json").string(), "ot", "--seed", "4"});
  EXPECT_EQ(r.report()["seed"], 4);
  write_file(d / "bad.json", "{not json");
  EXPECT_EQ(ottsim({"--config", (d / "bad.json").string(), "ot"}).code, ott::cli::kExitConfig);
}

TEST(Config, EnvironmentSeedIsDefault) {
  const auto d = fresh_dir("env");
  ::setenv("OTT_SEED", "123", 1);
  const auto a = ottsim({"--out-dir", d.string(), "ns-box", "--samples", "10"});
  const auto b = ottsim({"--out-dir", d.string(), "ns-box", "--samples", "10", "--seed", "5"});
  ::unsetenv("OTT_SEED");
  EXPECT_EQ(a.report()["seed"], 123);
  EXPECT_EQ(b.report()["seed"], 5);
}

TEST(HolevoScan, CsvRoundTripsAndMatchesLibrary) {
  const auto d = fresh_dir("scan");
  const auto r = ottsim({"--out-dir", d.string(), "holevo-scan", "--samples", "300", "--ancilla", "2", "--seed", "1",
                         "--out", "scan.csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(d / "scan.csv");
  const auto points = ott::lab::read_scan_csv(in);
  const auto lib = ott::lab::tradeoff_scan(300, 2, 1);
  ASSERT_EQ(points.size(), lib.points.size());
  double best = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    EXPECT_EQ(points[i].seed, lib.points[i].seed);
    EXPECT_EQ(points[i].chi_y, lib.points[i].chi_y);
    EXPECT_EQ(points[i].chi_r, lib.points[i].chi_r);
    EXPECT_EQ(points[i].chi_yr, lib.points[i].chi_yr);
    best = std::max(best, points[i].sum());
  }
  EXPECT_EQ(r.report()["max_sum"].get<double>(), best);
}

TEST(Qhe, ReportsFidelityAndTableCount) {
  const auto d = fresh_dir("qhe");
  write_file(d / "c.txt", kCircuit);
  const auto r = ottsim({"--out-dir", d.string(), "qhe", "--circuit", (d / "c.txt").string(), "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = r.report();
  EXPECT_GE(rep["fidelity"].get<double>(), 1 - 1e-9);
  EXPECT_LE(rep["tables_used"].get<int>(), rep["table_bound"].get<int>());
  EXPECT_EQ(rep["variables"], 2 * 2 + 4 * 2);
  const auto basis = ottsim({"--out-dir", d.string(), "qhe", "--circuit", (d / "c.txt").string(), "--input", "basis:3"});
  EXPECT_GE(basis.report()["fidelity"].get<double>(), 1 - 1e-9);
  EXPECT_EQ(ottsim({"--out-dir", d.string(), "qhe", "--circuit", (d / "c.txt").string(), "--input", "basis:4"}).code,
            ott::cli::kExitConfig);
}

TEST(EvalCircuit, MatchesDirectEvaluationWithBothTableSources) {
  const auto d = make_batch("circuit", 20);
  write_file(d / "n.txt", kNetlist);
  for (bool files : {false, true}) {
    std::vector<std::string> args{"--out-dir", d.string(), "eval-circuit", "--netlist", (d / "n.txt").string(),
                                  "--alice-bits", "11", "--bob-bits", "10"};
    if (files) {
      for (const char* s : {"--alice-tables", "alice_tables.json", "--bob-tables", "bob_tables.json"}) {
        args.push_back(std::string(s).find("--") == 0 ? s : (d / s).string());
      }
    }
    const auto r = ottsim(args);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.report()["table_source"], files ? "files" : "dealer");
    EXPECT_EQ(r.report()["outputs"], Json::array({1}));
    EXPECT_TRUE(r.report()["match"].get<bool>());
    for (const auto& rec : load_jsonl(d / "circuit_transcript.jsonl")) validate_def(rec, "circuit_transcript");
  }
  EXPECT_EQ(ottsim({"--out-dir", d.string(), "eval-circuit", "--netlist", (d / "n.txt").string(), "--alice-bits", "1"})
                .code,
            ott::cli::kExitConfig);
}

TEST(Ot, AllInputsCorrect) {
  const auto d = fresh_dir("ot");
  const auto r = ottsim({"--out-dir", d.string(), "ot"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["correct"], 8);
  const auto runs = load_jsonl(d / "ot.jsonl");
  ASSERT_EQ(runs.size(), 8u);
  for (const auto& rec : runs) validate_def(rec, "ot_run");
}

TEST(Commit, HonestOpenAndEquivocation) {
  const auto d = fresh_dir("commit");
  auto r = ottsim({"--out-dir", d.string(), "commit", "--b", "1", "--m", "4", "--bob-inputs", "0110"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["decision"], "1");
  // Alice's guess equals Bob's string for exactly 1 of the 15 nonzero strings.
  int wins = 0;
  for (int seed = 1; seed <= 60; ++seed) {
    r = ottsim({"--out-dir", d.string(), "commit", "--m", "4", "--equivocate", "--seed", std::to_string(seed)});
    ASSERT_EQ(r.code, 0);
    wins += r.report()["equivocation_succeeded"].get<bool>();
    if (!r.report()["equivocation_succeeded"].get<bool>()) {
      EXPECT_EQ(r.report()["decision"], "cheat-detected");
    }
    validate_def(load(d / "commit_alice_view.json"), "commit_alice_view");
    validate_def(load(d / "commit_bob_view.json"), "commit_bob_view");
  }
  EXPECT_LT(wins, 15);
}

TEST(Determinism, EverySubcommandIsByteIdentical) {
  const auto src = make_batch("det_src", 120);
  write_file(src / "c.txt", kCircuit);
  write_file(src / "n.txt", kNetlist);
  const auto a = (src / "alice_tables.json").string();
  const auto b = (src / "bob_tables.json").string();
  const std::map<std::string, std::vector<std::string>> cases{
      {"gen-tables", {"gen-tables", "--n", "50", "--adversary-a", "curious", "--depolarizing", "0.05"}},
      {"check", {"check", "--alice", a, "--bob", b, "--mode", "twosided", "--k-a", "10", "--k-b", "10"}},
      {"combine", {"combine", "--alice", a, "--bob", b, "--k", "3"}},
      {"error-reduce", {"error-reduce", "--alice", a, "--bob", b, "--q", "4", "--inject-rate", "0.05"}},
      {"eval-circuit", {"eval-circuit", "--netlist", (src / "n.txt").string(), "--alice-bits", "01", "--bob-bits", "11"}},
      {"ot", {"ot"}},
      {"commit", {"commit", "--m", "5", "--equivocate"}},
      {"ns-box", {"ns-box", "--E", "0.64", "--samples", "500", "--mode", "symmetric"}},
      {"holevo-scan", {"holevo-scan", "--samples", "100", "--envelope-eps", "0.1"}},
      {"qhe", {"qhe", "--circuit", (src / "c.txt").string()}},
  };
  ASSERT_EQ(cases.size(), ott::cli::subcommand_names().size());
  for (const auto& [name, args] : cases) {
    std::map<std::string, std::string> runs[2];
    for (int k = 0; k < 2; ++k) {
      const auto d = fresh_dir("det_" + name + std::to_string(k));
      std::vector<std::string> full{"--out-dir", d.string(), "--seed", "17"};
      full.insert(full.end(), args.begin(), args.end());
      const auto r = ottsim(full);
      ASSERT_EQ(r.code, 0) << name << ": " << r.err;
      runs[k] = dir_contents(d);
    }
    EXPECT_GT(runs[0].size(), 1u) << name;
    EXPECT_EQ(runs[0], runs[1]) << name;
  }
}

}  // namespace
