#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ott/protocols/nland.hpp"
#include "ott/protocols/table.hpp"
#include "ott/rng.hpp"

namespace ott::factory {

using protocols::OneTimeTable;

struct CheckConfig {
  /// One-sided checking: how many tables Bob reveals.
  std::int64_t k = 0;
  /// Two-sided checking: tables chosen by Alice and by Bob; the sets may overlap.
  std::int64_t k_a = 0;
  std::int64_t k_b = 0;
  /// Largest number of failed checks a party tolerates.
  std::int64_t threshold = 0;
  std::uint64_t seed = 0;
};

/// ceil(2 * eps * checks): headroom for honest noise at rate eps.
std::int64_t noisy_threshold(double eps_noise, std::int64_t checks);

enum class Initiator { kNone, kAlice, kBob, kBoth };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 by default).
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z = 1.96);

struct BatchOutcome {
  std::vector<OneTimeTable> passed;
  bool aborted = false;
  Initiator aborted_by = Initiator::kNone;
  /// Failed checks among distinct revealed tables.
  std::int64_t failures = 0;
  std::int64_t failures_seen_by_alice = 0;
  std::int64_t failures_seen_by_bob = 0;
  std::int64_t checked = 0;
  /// failures / checked, with its Wilson interval.
  double cheat_rate = 0.0;
  Interval cheat_rate_interval;
  /// Positions (into the input batch) revealed by each party.
  std::vector<std::int64_t> alice_revealed;
  std::vector<std::int64_t> bob_revealed;
};

/// k distinct positions out of [0, m), in draw order.
std::vector<std::int64_t> sample_without_replacement(std::int64_t m, std::int64_t k, Rng& rng);

/// Bob reveals k tables and checks a*b == e^f on each; abort iff failures > threshold.
BatchOutcome check_onesided(const std::vector<OneTimeTable>& batch, const CheckConfig& cfg);
/// Both parties reveal and check; survivors are the tables nobody revealed.
BatchOutcome check_twosided(const std::vector<OneTimeTable>& batch, const CheckConfig& cfg);

enum class CheckMode { kOneSided, kTwoSided };

struct PipelineResult {
  BatchOutcome outcome;
  int attempts = 0;
};

/// Generates and checks batches, restarting with a fresh seed after an abort
/// (restart i uses stream i of spec.seed) until one passes or the attempts
/// run out. max_attempts = 1 models plain abort.
PipelineResult generate_and_check(const protocols::BatchSpec& spec, const CheckConfig& cfg, CheckMode mode,
                                  int max_attempts);

struct CombineSpec {
  /// Positions into the batch; every group must share Bob's input bit.
  std::vector<std::vector<std::int64_t>> groups;
};

/// Bob's grouping: shuffles the tables, buckets them by y and cuts groups of size k.
CombineSpec plan_combination(const std::vector<OneTimeTable>& batch, int k, Rng& rng);
/// Combined table g gets id g. Throws std::invalid_argument on mixed y or reused positions.
std::vector<OneTimeTable> combine_tables(const std::vector<OneTimeTable>& batch, const CombineSpec& spec);

enum class AliceResponse {
  kHonest,
  /// Alice does not use her true bits: she sends a uniformly random u_j and
  /// v_j = u_j * guessed_b0 ^ (uniform guess of f0 ^ f_j).
  kGuessing,
};

struct ErrorReduceSpec {
  std::int64_t target = 0;
  std::vector<std::int64_t> auxiliary;
  AliceResponse alice = AliceResponse::kHonest;
};

struct ErrorReduceResult {
  bool accepted = false;
  std::int64_t relevant_checks = 0;
  std::int64_t failed_checks = 0;
};

/// Positions index into `batch`. Throws when the target appears among the auxiliaries.
ErrorReduceResult error_reduce(const std::vector<OneTimeTable>& batch, const ErrorReduceSpec& spec, Rng& rng);

struct ErrorReduceRun {
  std::vector<OneTimeTable> accepted;
  std::int64_t targets = 0;
  std::int64_t rejected = 0;
  /// Fraction of accepted targets that are incorrect.
  double residual_error = 0.0;
  /// Fraction of guessing-attack targets that Bob rejected.
  double detection_rate = 0.0;
};

/// Consumes the pool front to back: each target takes 1 + q tables (auxiliaries are used up).
ErrorReduceRun error_reduce_pool(const std::vector<OneTimeTable>& pool, int q, AliceResponse alice, Rng& rng);

/// Flips e on each table independently with probability `rate`.
std::vector<OneTimeTable> inject_errors(std::vector<OneTimeTable> tables, double rate, Rng& rng);

}  // namespace ott::factory
