#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ott/protocols/strategy.hpp"
#include "ott/protocols/table.hpp"

namespace ott::protocols {

enum class Protocol {
  /// Two-message protocol: Alice sends two qubits, Bob returns them.
  kNland,
  /// One-message protocol: Bob sends four qubits and the bit w.
  kNland3,
  /// Entanglement-based protocol with teleportation back to Alice.
  kNland2,
};

std::string protocol_name(Protocol p);
Protocol parse_protocol(const std::string& name);

struct NlandTranscript {
  Protocol protocol = Protocol::kNland;
  int x = 0;
  int y = 0;
  int s = 0;
  /// Two-message protocol only.
  int t = 0;
  int h1 = 0;
  int h2 = 0;
  int p = 0;
  int h = 0;
  /// Set for the one-message and entanglement-based protocols.
  std::optional<int> w;
  /// One-message protocol: i1..i4. Entanglement-based: (x1, z1, x2, z2) Bell
  /// outcomes of Bob's two teleportations.
  std::array<int, 4> bob_bits{};
  /// Alice's raw outcomes (2 or 4 of them).
  std::vector<int> alice_outcomes;
  std::vector<quantum::PureState> sent_states;
  bool aborted = false;
  std::string failure_reason;
  /// Filled for cheating or curious parties.
  std::optional<int> alice_guess;
  std::optional<int> bob_guess;
  std::vector<int> alice_observed;
  std::vector<int> bob_observed;

  /// Bits Bob can compare against the expected uniform distribution when Alice
  /// declares failures (four bits for every protocol).
  std::array<int, 4> bob_statistic_bits() const;
};

struct NlandRun {
  std::optional<OneTimeTable> table;
  NlandTranscript transcript;
};

NlandRun run_nland(const AdversaryStrategy& alice, const AdversaryStrategy& bob, const NoiseModel& noise, Rng& rng);
NlandRun run_nland3(const AdversaryStrategy& alice, const AdversaryStrategy& bob, const NoiseModel& noise, Rng& rng);
NlandRun run_nland2(const AdversaryStrategy& alice, const AdversaryStrategy& bob, const NoiseModel& noise, Rng& rng);
NlandRun run_protocol(Protocol protocol, const AdversaryStrategy& alice, const AdversaryStrategy& bob,
                      const NoiseModel& noise, Rng& rng);

/// Deterministic internal randomness for the honest two-message protocol.
struct NlandCoins {
  int x, y, s, t, h1, h2, p;
};
/// One-message protocol randomness: i = (i1,i2,i3,i4).
struct Nland3Coins {
  std::array<int, 4> i;
  int y, s;
};
/// Honest run with all coins fixed; Alice's measurement outcomes are still
/// random and drawn from `rng`.
NlandRun run_nland_with(const NlandCoins& coins, Rng& rng);
NlandRun run_nland3_with(const Nland3Coins& coins, Rng& rng);

/// One of the 16 equally likely ways an honest Bob can act in the two-message protocol.
struct BobBranch {
  int y, h1, h2, p;
  quantum::PureState returned;
  int r() const { return h1 ^ h2; }
};

/// Alice's honest two-qubit encoding of x: |x t> for s = 0, H⊗H|t x> for s = 1.
quantum::PureState alice_nland_preparation(int x, int s, int t);

/// Applies every honest Bob branch to qubits 0 and 1 of `sent`.
std::vector<BobBranch> nland_bob_branches(const quantum::PureState& sent);
/// Applies one honest Bob branch to qubits 0 and 1.
quantum::PureState nland_bob_apply(const quantum::PureState& sent, int y, int h1, int h2, int p);

/// Honest one-message protocol state for given coins (4 qubits, before noise).
quantum::PureState nland3_bob_state(const std::array<int, 4>& i, int y);

struct BatchSpec {
  Protocol protocol = Protocol::kNland;
  AdversaryStrategy alice = AdversaryStrategy::honest(Role::kAlice);
  AdversaryStrategy bob = AdversaryStrategy::honest(Role::kBob);
  NoiseModel noise;
  std::int64_t count = 0;
  std::uint64_t seed = 0;
  /// Fraction of instances on which each party uses its strategy; the rest are honest.
  double alice_cheat_fraction = 1.0;
  double bob_cheat_fraction = 1.0;
};

/// Run i uses stream i of the master seed and gets table id i.
std::vector<NlandRun> generate_batch(const BatchSpec& spec);
std::vector<OneTimeTable> successful_tables(const std::vector<NlandRun>& runs);

/// Pearson chi-square of pattern counts (2^k cells) against the uniform law.
double uniformity_chi_square(const std::vector<std::int64_t>& counts);
/// 99.9% quantile of chi-square with 15 degrees of freedom.
inline constexpr double kDefaultDetectorThreshold = 37.697;

struct FailureDetectorReport {
  std::int64_t surviving = 0;
  double statistic = 0.0;
  bool flagged = false;
};
/// Bob's check on the surviving instances of a batch: are his four statistic bits uniform?
FailureDetectorReport detect_selective_failures(const std::vector<NlandRun>& runs,
                                                double threshold = kDefaultDetectorThreshold);

}  // namespace ott::protocols
