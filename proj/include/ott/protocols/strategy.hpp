#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ott/quantum/ops.hpp"
#include "ott/rng.hpp"

namespace ott::protocols {

enum class Role { kAlice, kBob };

enum class StrategyKind {
  kHonest,
  kHonestButCurious,
  /// Bob measures the qubits he receives in fixed bases and guesses Alice's x.
  kFixedMeasurement,
  /// Alice sends the system part of a prepared state with up to 2 ancilla qubits;
  /// Bob sends a fixed prepared 4-qubit state instead of his encoding.
  kEntangledInput,
  /// Alice's sent state given as a purified 4-qubit state (2 system + 2 ancilla).
  kCustomSigma,
  /// Alice measures honestly and reports the instance as lost unless the
  /// parity of selected outcome bits equals `keep_parity`.
  kDeclareFailure,
  /// Alice keeps the honest preparation but replaces her final measurement
  /// with the Helstrom measurement for `target`.
  kOptimalDistinguisher,
};

/// What a cheating Alice tries to learn about Bob's bits.
enum class Target { kY, kR, kYR };

struct AdversaryStrategy {
  Role role = Role::kAlice;
  StrategyKind kind = StrategyKind::kHonest;
  /// kFixedMeasurement: basis per received qubit, and which outcome is the guess of x.
  std::vector<quantum::Basis> bases;
  int guess_qubit = 0;
  /// kEntangledInput / kCustomSigma: qubits 0,1 are the system, the rest ancilla.
  std::optional<quantum::PureState> prepared;
  Target target = Target::kY;
  /// kDeclareFailure: outcome indices whose XOR must equal keep_parity.
  std::vector<int> keep_outcomes;
  int keep_parity = 0;

  static AdversaryStrategy make(Role role, StrategyKind kind) {
    AdversaryStrategy s;
    s.role = role;
    s.kind = kind;
    return s;
  }
  static AdversaryStrategy honest(Role role) { return make(role, StrategyKind::kHonest); }
  static AdversaryStrategy curious(Role role) { return make(role, StrategyKind::kHonestButCurious); }
  static AdversaryStrategy fixed_measurement(std::vector<quantum::Basis> bases, int guess_qubit = 0);
  static AdversaryStrategy entangled_input(Role role, quantum::PureState state, Target target = Target::kY);
  static AdversaryStrategy custom_sigma(quantum::PureState purified, Target target);
  static AdversaryStrategy declare_failure(std::vector<int> keep_outcomes, int keep_parity);
  static AdversaryStrategy optimal_distinguisher(Target target);

  bool honest_behaviour() const {
    return kind == StrategyKind::kHonest || kind == StrategyKind::kHonestButCurious;
  }
};

/// (|00> + |01> + |10> - |11>) / 2, which reveals y with certainty in the two-message protocol.
quantum::PureState y_revealing_state();

/// Parses strategy names used on the command line:
///   honest | curious | fixed:ZX[@k] | entangled:y|r|yr | prepared:<4 chars of 0 1 + ->
///   declare:i,j,...=v | distinguish:y|r|yr
/// Throws std::invalid_argument on unknown input or a kind the role cannot use.
AdversaryStrategy parse_strategy(Role role, const std::string& text);
std::string describe(const AdversaryStrategy& s);

struct NoiseModel {
  /// Per transmitted qubit: probability of a uniformly random Pauli from {I,X,Y,Z}.
  double depolarizing = 0.0;
  /// Per run: probability that the instance is lost in transit.
  double loss = 0.0;

  void validate() const;
};

/// Applies independent depolarizing noise to the listed qubits. Draws nothing when
/// the rate is zero.
quantum::PureState apply_channel_noise(const quantum::PureState& state, const std::vector<int>& qubits,
                                       const NoiseModel& noise, Rng& rng);

}  // namespace ott::protocols
