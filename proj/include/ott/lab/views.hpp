#pragma once

// What a cheating Alice can learn from the state Bob returns in the
// two-message protocol.

#include <cstdint>
#include <string>

#include "ott/quantum/state.hpp"

namespace ott::lab {

enum class Target { kY, kR, kYR };

const char* target_name(Target t);
/// Accepts "y", "r", "yr".
Target parse_target(const std::string& name);

/// Alice's sent state: qubits 0 and 1 go to Bob, qubits 2.. are her ancilla.
class SigmaA {
 public:
  static constexpr int kSystemQubits = 2;
  static constexpr int kMaxAncilla = 2;

  /// Throws std::invalid_argument unless the state has 2 to 4 qubits.
  explicit SigmaA(quantum::PureState state, std::uint64_t seed = 0);

  /// Haar-random purification with `ancilla` extra qubits, drawn from Rng(seed).
  static SigmaA haar(int ancilla, std::uint64_t seed);

  const quantum::PureState& state() const { return state_; }
  int ancilla() const { return state_.num_qubits() - kSystemQubits; }
  std::uint64_t seed() const { return seed_; }

  /// The two-qubit mixed state Bob receives.
  quantum::DensityMatrix system_state() const;
  /// Applies `u` to the ancilla register; Bob's view is unchanged.
  SigmaA with_ancilla_unitary(const quantum::Matrix& u) const;

 private:
  quantum::PureState state_;
  std::uint64_t seed_;
};

/// Two equiprobable members each: the returned joint state given target = 0 and = 1.
struct ViewEnsembles {
  quantum::Ensemble y;
  quantum::Ensemble r;
  quantum::Ensemble yr;

  const quantum::Ensemble& get(Target t) const;
};

/// Runs the 16 honest Bob branches (y, h1, h2, p) on the system qubits and
/// groups them by y, r = h1 ^ h2 and y ^ r.
ViewEnsembles alice_view_ensembles(const SigmaA& s);

struct ChiValues {
  double y = 0.0;
  double r = 0.0;
  double yr = 0.0;
};

/// Holevo quantities of the three groupings, computed from the 16x16 Gram
/// matrix of the branch states. Matches holevo_quantity on alice_view_ensembles.
ChiValues chi_values(const SigmaA& s);
/// Same through the explicit density matrices.
ChiValues chi_values_direct(const SigmaA& s);

}  // namespace ott::lab
