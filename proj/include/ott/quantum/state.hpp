#pragma once

// Small-system quantum states, gates and ensembles.
//
// Qubit ordering is big-endian throughout: qubit 0 is the leftmost tensor
// factor, i.e. the most significant bit of a basis-state index.

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace ott::quantum {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 6;
inline constexpr double kNormTolerance = 1e-10;

class PureState {
 public:
  /// |0...0> on `num_qubits` qubits.
  explicit PureState(int num_qubits = 1);

  static PureState basis(int num_qubits, std::uint64_t index);
  /// Takes amplitudes whose squared norm is already 1 within 1e-10.
  static PureState from_amplitudes(Vector amplitudes);
  /// Rescales `amplitudes` to unit norm; rejects the zero vector.
  static PureState normalized(Vector amplitudes);

  static PureState zero() { return basis(1, 0); }
  static PureState one() { return basis(1, 1); }
  static PureState plus();
  static PureState minus();
  /// (|00> + |11>) / sqrt(2).
  static PureState epr();

  int num_qubits() const { return num_qubits_; }
  std::int64_t dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::uint64_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
  double squared_norm() const { return amplitudes_.squaredNorm(); }

  /// this ⊗ other; `this` occupies the leading qubit indices.
  PureState tensor(const PureState& other) const;

  void check_qubit(int qubit) const;

 private:
  PureState(int num_qubits, Vector amplitudes);

  int num_qubits_;
  Vector amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-10), unit trace (1e-10) and eigenvalues >= -1e-9.
  static DensityMatrix from_matrix(Matrix m);
  static DensityMatrix from_pure(const PureState& state);
  static DensityMatrix maximally_mixed(int num_qubits);
  /// Convex combination; weights must be nonnegative and sum to 1 within 1e-10.
  static DensityMatrix mixture(std::span<const double> weights,
                               std::span<const DensityMatrix> members);
  /// Uniform mixture of pure states.
  static DensityMatrix uniform_mixture(std::span<const PureState> states);

  int num_qubits() const { return num_qubits_; }
  std::int64_t dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }

 private:
  DensityMatrix(int num_qubits, Matrix m) : num_qubits_(num_qubits), matrix_(std::move(m)) {}
  friend DensityMatrix partial_trace(const DensityMatrix&, std::span<const int>);
  friend DensityMatrix reduced_density(const PureState&, std::span<const int>);

  int num_qubits_;
  Matrix matrix_;
};

enum class GateKind { X, Y, Z, H, P, Pdag, T, Tdag, CNOT };

struct Gate {
  GateKind kind;
  /// One index for single-qubit kinds; (control, target) for CNOT.
  std::vector<int> targets;

  static Gate x(int q) { return {GateKind::X, {q}}; }
  static Gate y(int q) { return {GateKind::Y, {q}}; }
  static Gate z(int q) { return {GateKind::Z, {q}}; }
  static Gate h(int q) { return {GateKind::H, {q}}; }
  static Gate p(int q) { return {GateKind::P, {q}}; }
  static Gate pdag(int q) { return {GateKind::Pdag, {q}}; }
  static Gate t(int q) { return {GateKind::T, {q}}; }
  static Gate tdag(int q) { return {GateKind::Tdag, {q}}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}}; }
};

/// 2x2 for single-qubit kinds, 4x4 (control is the high bit) for CNOT.
Matrix gate_matrix(GateKind kind);
int gate_arity(GateKind kind);

struct EnsembleMember {
  double probability;
  DensityMatrix state;
};

class Ensemble {
 public:
  /// Probabilities must sum to 1 within 1e-10 and all members share a dimension.
  explicit Ensemble(std::vector<EnsembleMember> members);

  const std::vector<EnsembleMember>& members() const { return members_; }
  std::int64_t dim() const { return members_.front().state.dim(); }
  DensityMatrix average() const;

 private:
  std::vector<EnsembleMember> members_;
};

}  // namespace ott::quantum
