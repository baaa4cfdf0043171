#pragma once

#include <optional>
#include <vector>

#include "ott/quantum/state.hpp"
#include "ott/rng.hpp"

namespace ott::quantum {

/// Bell-measurement outcome of one teleportation. The receiver holds
/// X^x_bit Z^z_bit |psi>, so the correction is Z^z_bit X^x_bit.
struct PauliFrame {
  int x_bit = 0;
  int z_bit = 0;
  friend bool operator==(const PauliFrame&, const PauliFrame&) = default;
};

struct TeleportStep {
  PureState state;
  PauliFrame outcome;
  double probability;
};

/// Teleports qubit `qubit` through a fresh EPR pair. The sender's qubit and
/// its EPR half are measured and dropped; the receiver half takes index `qubit`.
TeleportStep teleport_qubit(const PureState& state, int qubit, Rng& rng);
std::optional<TeleportStep> teleport_qubit_forced(const PureState& state, int qubit, PauliFrame outcome);

/// Applies X^x Z^z to `qubit` (Z first, then X).
PureState apply_pauli_frame(const PureState& state, int qubit, PauliFrame frame);
/// Undoes a frame: applies Z^z X^x inverse, i.e. X^x then Z^z.
PureState correct_pauli_frame(const PureState& state, int qubit, PauliFrame frame);

enum class RevealPolicy {
  kNone,
  kAll,
  /// Only the XOR of every correction bit.
  kXorAll,
};

class InsufficientResources : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WithheldTeleport {
  PureState receiver;
  std::vector<PauliFrame> corrections;
  std::vector<int> revealed;
};

/// Teleports every qubit of `sender` using one EPR pair each, disclosing only
/// the bits selected by `policy`.
WithheldTeleport teleport_withheld(const PureState& sender, int epr_pairs, RevealPolicy policy, Rng& rng);

}  // namespace ott::quantum
