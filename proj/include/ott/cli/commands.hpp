#pragma once

// Subcommands of ottsim. Each writes its artifacts into Context::out_dir and
// returns the report document; the dispatcher adds it as report.json.
//
// Randomness: every command draws from Rng::stream(seed, k) for fixed k, so
// the same seed gives byte-identical artifacts.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ott::cli {

using Json = nlohmann::ordered_json;

struct Context {
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
};

/// "ok" or "abort"; an abort is a modeled result, not a tool failure.
std::string outcome_name(bool aborted);

struct GenTablesOptions {
  std::string protocol = "nland";
  std::int64_t n = 100;
  std::string adversary_a = "honest";
  std::string adversary_b = "honest";
  double depolarizing = 0.0;
  double loss = 0.0;
  double alice_cheat_fraction = 1.0;
  double bob_cheat_fraction = 1.0;
};
Json gen_tables(const GenTablesOptions& o, const Context& ctx);

struct BatchFiles {
  std::string alice = "alice_tables.json";
  std::string bob = "bob_tables.json";
};

struct CheckOptions {
  BatchFiles in;
  std::string mode = "onesided";
  std::int64_t k = 0;
  std::int64_t k_a = 0;
  std::int64_t k_b = 0;
  std::int64_t threshold = 0;
};
Json check(const CheckOptions& o, const Context& ctx);

struct CombineOptions {
  BatchFiles in;
  int k = 2;
};
Json combine(const CombineOptions& o, const Context& ctx);

struct ErrorReduceOptions {
  BatchFiles in;
  int q = 20;
  double inject_rate = 0.0;
  std::string alice = "honest";
};
Json error_reduce(const ErrorReduceOptions& o, const Context& ctx);

/// Table source for the MPC commands: the two party files, or a trusted
/// dealer when both paths are empty.
struct TableSource {
  std::string alice;
  std::string bob;
};

struct EvalCircuitOptions {
  std::string netlist;
  std::string alice_bits;
  std::string bob_bits;
  TableSource tables;
};
Json eval_circuit(const EvalCircuitOptions& o, const Context& ctx);

struct OtOptions {
  /// Unset: all eight input combinations.
  std::optional<int> m0, m1, b;
  TableSource tables;
};
Json ot(const OtOptions& o, const Context& ctx);

struct CommitOptions {
  int b = 0;
  int m = 4;
  /// Bob's m-bit string; random nonzero when empty.
  std::string bob_inputs;
  /// Alice reveals her shares XOR a guessed nonzero string, trying to open 1 - b.
  bool equivocate = false;
  TableSource tables;
};
Json commit(const CommitOptions& o, const Context& ctx);

struct NsBoxOptions {
  double E = 1.0;
  std::string mode = "onesided";
  std::int64_t samples = 10000;
};
Json ns_box(const NsBoxOptions& o, const Context& ctx);

struct HolevoScanOptions {
  std::int64_t samples = 10000;
  int ancilla = 2;
  std::string out = "scan.csv";
  std::vector<double> envelope_eps;
};
Json holevo_scan(const HolevoScanOptions& o, const Context& ctx);

struct QheOptions {
  std::string circuit;
  /// "haar" or "basis:<index>".
  std::string input = "haar";
};
Json qhe(const QheOptions& o, const Context& ctx);

/// "0110" -> {0,1,1,0}; throws std::invalid_argument on other characters.
std::vector<int> parse_bits(const std::string& text, const std::string& what);

}  // namespace ott::cli
