#pragma once

#include <optional>
#include <span>

#include "ott/quantum/state.hpp"
#include "ott/rng.hpp"

namespace ott::quantum {

enum class Basis { Z, X };

PureState apply_gate(const PureState& state, const Gate& gate);
/// Applies an arbitrary 2x2 unitary to one qubit.
PureState apply_single(const PureState& state, const Matrix& u, int qubit);
/// Applies a unitary on the full register (dimension must match).
PureState apply_unitary(const PureState& state, const Matrix& u);

struct Measurement {
  int bit;
  double probability;
  /// Post-measurement state; the measured qubit stays in the register.
  PureState post;
};

/// Projective single-qubit measurement. In the X basis |+> reads 0 and |-> reads 1.
Measurement measure_qubit(const PureState& state, int qubit, Basis basis, Rng& rng);
/// Forces `outcome`; nullopt when its Born probability is below 1e-15.
std::optional<Measurement> project_qubit(const PureState& state, int qubit, Basis basis, int outcome);
/// Born probability of reading 1 on `qubit` in `basis`.
double probability_one(const PureState& state, int qubit, Basis basis);

/// Removes a qubit that is in a computational basis state (e.g. after a Z measurement).
PureState discard_qubit(const PureState& state, int qubit);
/// Reorders qubits so that qubit `from` ends up at index `to`, others keep relative order.
PureState move_qubit(const PureState& state, int from, int to);

DensityMatrix partial_trace(const DensityMatrix& dm, std::span<const int> keep);
/// Reduced state of a pure state on `keep` (sorted or not; output follows sorted order).
DensityMatrix reduced_density(const PureState& state, std::span<const int> keep);

/// Eigenvalues of a Hermitian matrix in ascending order.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

/// Entropy in bits; eigenvalues below 1e-12 are dropped.
double von_neumann_entropy(const DensityMatrix& dm);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
/// S(sum p_i rho_i) - sum p_i S(rho_i), in bits.
double holevo_quantity(const Ensemble& ensemble);

/// |<a|b>|^2; insensitive to global phase.
double fidelity(const PureState& a, const PureState& b);
/// <psi| rho |psi>.
double fidelity(const DensityMatrix& rho, const PureState& psi);

double binary_entropy(double p);

/// Projector onto the positive eigenspace of (w0 rho0 - w1 rho1): the outcome
/// that optimally guesses "0" between two weighted hypotheses.
Matrix helstrom_projector(const Matrix& weighted0, const Matrix& weighted1);
/// <psi| proj |psi>.
double projector_probability(const PureState& psi, const Matrix& proj);

PureState haar_random_state(int num_qubits, Rng& rng);
/// Haar-distributed unitary of dimension `dim` (QR of a Ginibre matrix with phase fix).
Matrix haar_random_unitary(std::int64_t dim, Rng& rng);

}  // namespace ott::quantum
