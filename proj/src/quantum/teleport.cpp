#include "ott/quantum/teleport.hpp"

#include "ott/quantum/ops.hpp"

namespace ott::quantum {

namespace {

// Sender qubit and its EPR half after the Bell-basis rotation; receiver half last.
PureState rotate_into_bell_basis(const PureState& state, int qubit) {
  state.check_qubit(qubit);
  const int n = state.num_qubits();
  PureState s = state.tensor(PureState::epr());
  s = apply_gate(s, Gate::cnot(qubit, n));
  return apply_gate(s, Gate::h(qubit));
}

PureState drop_sender_side(const PureState& s, int qubit) {
  const int n = s.num_qubits() - 2;
  PureState out = discard_qubit(s, n);
  out = discard_qubit(out, qubit);
  return move_qubit(out, n - 1, qubit);
}

}  // namespace

TeleportStep teleport_qubit(const PureState& state, int qubit, Rng& rng) {
  const int n = state.num_qubits();
  PureState s = rotate_into_bell_basis(state, qubit);
  const Measurement mz = measure_qubit(s, qubit, Basis::Z, rng);
  const Measurement mx = measure_qubit(mz.post, n, Basis::Z, rng);
  return {drop_sender_side(mx.post, qubit), PauliFrame{mx.bit, mz.bit}, mz.probability * mx.probability};
}

std::optional<TeleportStep> teleport_qubit_forced(const PureState& state, int qubit, PauliFrame outcome) {
  const int n = state.num_qubits();
  PureState s = rotate_into_bell_basis(state, qubit);
  auto mz = project_qubit(s, qubit, Basis::Z, outcome.z_bit);
  if (!mz) return std::nullopt;
  auto mx = project_qubit(mz->post, n, Basis::Z, outcome.x_bit);
  if (!mx) return std::nullopt;
  return TeleportStep{drop_sender_side(mx->post, qubit), outcome, mz->probability * mx->probability};
}

PureState apply_pauli_frame(const PureState& state, int qubit, PauliFrame frame) {
  PureState s = state;
  if (frame.z_bit) s = apply_gate(s, Gate::z(qubit));
  if (frame.x_bit) s = apply_gate(s, Gate::x(qubit));
  return s;
}

PureState correct_pauli_frame(const PureState& state, int qubit, PauliFrame frame) {
  PureState s = state;
  if (frame.x_bit) s = apply_gate(s, Gate::x(qubit));
  if (frame.z_bit) s = apply_gate(s, Gate::z(qubit));
  return s;
}

WithheldTeleport teleport_withheld(const PureState& sender, int epr_pairs, RevealPolicy policy, Rng& rng) {
  const int n = sender.num_qubits();
  if (epr_pairs < n) {
    throw InsufficientResources("teleporting " + std::to_string(n) + " qubits needs " + std::to_string(n) +
                                " EPR pairs, got " + std::to_string(epr_pairs));
  }
  WithheldTeleport out{sender, {}, {}};
  for (int q = 0; q < n; ++q) {
    TeleportStep step = teleport_qubit(out.receiver, q, rng);
    out.receiver = std::move(step.state);
    out.corrections.push_back(step.outcome);
  }
  switch (policy) {
    case RevealPolicy::kNone:
      break;
    case RevealPolicy::kAll:
      for (const auto& f : out.corrections) {
        out.revealed.push_back(f.x_bit);
        out.revealed.push_back(f.z_bit);
      }
      break;
    case RevealPolicy::kXorAll: {
      int w = 0;
      for (const auto& f : out.corrections) w ^= f.x_bit ^ f.z_bit;
      out.revealed.push_back(w);
      break;
    }
  }
  return out;
}

}  // namespace ott::quantum
