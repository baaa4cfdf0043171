#include "ott/quantum/state.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ott/quantum/ops.hpp"

namespace ott::quantum {

namespace {

int qubits_for_dim(std::int64_t dim) {
  int n = 0;
  while ((std::int64_t{1} << n) < dim) ++n;
  if ((std::int64_t{1} << n) != dim || n < 1) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  return n;
}

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n) + " outside 1.." +
                                std::to_string(kMaxQubits));
  }
}

}  // namespace

PureState::PureState(int num_qubits) : num_qubits_(num_qubits) {
  check_qubit_count(num_qubits);
  amplitudes_ = Vector::Zero(std::int64_t{1} << num_qubits);
  amplitudes_(0) = 1.0;
}

PureState::PureState(int num_qubits, Vector amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

PureState PureState::basis(int num_qubits, std::uint64_t index) {
  PureState s(num_qubits);
  if (index >= static_cast<std::uint64_t>(s.dim())) {
    throw std::out_of_range("basis index out of range");
  }
  s.amplitudes_(0) = 0.0;
  s.amplitudes_(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

PureState PureState::from_amplitudes(Vector amplitudes) {
  const int n = qubits_for_dim(amplitudes.size());
  check_qubit_count(n);
  if (std::abs(amplitudes.squaredNorm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("amplitudes are not normalized");
  }
  return PureState(n, std::move(amplitudes));
}

PureState PureState::normalized(Vector amplitudes) {
  const int n = qubits_for_dim(amplitudes.size());
  check_qubit_count(n);
  const double norm = amplitudes.norm();
  if (norm < 1e-300) throw std::invalid_argument("cannot normalize the zero vector");
  amplitudes /= norm;
  return PureState(n, std::move(amplitudes));
}

PureState PureState::plus() {
  Vector v(2);
  v << M_SQRT1_2, M_SQRT1_2;
  return PureState(1, v);
}

PureState PureState::minus() {
  Vector v(2);
  v << M_SQRT1_2, -M_SQRT1_2;
  return PureState(1, v);
}

PureState PureState::epr() {
  Vector v = Vector::Zero(4);
  v(0) = M_SQRT1_2;
  v(3) = M_SQRT1_2;
  return PureState(2, v);
}

PureState PureState::tensor(const PureState& other) const {
  check_qubit_count(num_qubits_ + other.num_qubits_);
  Vector out(dim() * other.dim());
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
    out.segment(i * other.dim(), other.dim()) = amplitudes_(i) * other.amplitudes_;
  }
  return PureState(num_qubits_ + other.num_qubits_, std::move(out));
}

void PureState::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " +
                            std::to_string(num_qubits_) + "-qubit state");
  }
}

DensityMatrix DensityMatrix::from_matrix(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("density matrix must be square");
  const int n = qubits_for_dim(m.rows());
  check_qubit_count(n);
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kNormTolerance) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(m.trace() - Complex(1.0)) > kNormTolerance) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
  if (hermitian_eigenvalues(m).minCoeff() < -1e-9) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
  return DensityMatrix(n, std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
  const Vector& v = state.amplitudes();
  return DensityMatrix(state.num_qubits(), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  check_qubit_count(num_qubits);
  const std::int64_t d = std::int64_t{1} << num_qubits;
  return DensityMatrix(num_qubits, Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::mixture(std::span<const double> weights, std::span<const DensityMatrix> members) {
  if (weights.size() != members.size() || members.empty()) {
    throw std::invalid_argument("mixture needs one weight per member");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > kNormTolerance) throw std::invalid_argument("mixture weights must sum to 1");
  Matrix m = Matrix::Zero(members[0].dim(), members[0].dim());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (weights[i] < 0.0) throw std::invalid_argument("negative mixture weight");
    if (members[i].dim() != members[0].dim()) throw std::invalid_argument("mixture members differ in dimension");
    m += weights[i] * members[i].matrix();
  }
  return DensityMatrix(members[0].num_qubits(), std::move(m));
}

DensityMatrix DensityMatrix::uniform_mixture(std::span<const PureState> states) {
  if (states.empty()) throw std::invalid_argument("empty mixture");
  const auto d = states[0].dim();
  Matrix m = Matrix::Zero(d, d);
  for (const auto& s : states) {
    if (s.dim() != d) throw std::invalid_argument("mixture members differ in dimension");
    m.noalias() += s.amplitudes() * s.amplitudes().adjoint();
  }
  m /= static_cast<double>(states.size());
  return DensityMatrix(states[0].num_qubits(), std::move(m));
}

Matrix gate_matrix(GateKind kind) {
  const Complex i(0.0, 1.0);
  const Complex t_phase = std::polar(1.0, M_PI / 4.0);
  Matrix m(2, 2);
  switch (kind) {
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, -i, i, 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    case GateKind::H: m << M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2; break;
    case GateKind::P: m << 1, 0, 0, i; break;
    case GateKind::Pdag: m << 1, 0, 0, -i; break;
    case GateKind::T: m << 1, 0, 0, t_phase; break;
    case GateKind::Tdag: m << 1, 0, 0, std::conj(t_phase); break;
    case GateKind::CNOT:
      m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = 1.0;
      m(2, 3) = m(3, 2) = 1.0;
      break;
  }
  return m;
}

int gate_arity(GateKind kind) { return kind == GateKind::CNOT ? 2 : 1; }

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("empty ensemble");
  double total = 0.0;
  for (const auto& m : members_) {
    if (m.probability < 0.0) throw std::invalid_argument("negative ensemble probability");
    if (m.state.dim() != members_.front().state.dim()) {
      throw std::invalid_argument("ensemble members differ in dimension");
    }
    total += m.probability;
  }
  if (std::abs(total - 1.0) > kNormTolerance) throw std::invalid_argument("ensemble probabilities must sum to 1");
}

DensityMatrix Ensemble::average() const {
  std::vector<double> w;
  std::vector<DensityMatrix> s;
  w.reserve(members_.size());
  s.reserve(members_.size());
  for (const auto& m : members_) {
    w.push_back(m.probability);
    s.push_back(m.state);
  }
  return DensityMatrix::mixture(w, s);
}

}  // namespace ott::quantum
