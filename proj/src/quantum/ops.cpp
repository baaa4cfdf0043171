#include "ott/quantum/ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ott::quantum {

namespace {

std::uint64_t qubit_mask(int num_qubits, int qubit) {
  return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

Vector apply_single_raw(const Vector& amps, int num_qubits, const Matrix& u, int qubit) {
  Vector out = amps;
  const std::uint64_t mask = qubit_mask(num_qubits, qubit);
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amps.size()); ++i) {
    if (i & mask) continue;
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i | mask);
    out(i0) = u(0, 0) * amps(i0) + u(0, 1) * amps(i1);
    out(i1) = u(1, 0) * amps(i0) + u(1, 1) * amps(i1);
  }
  return out;
}

// Full-register index builder for a split of qubits into `keep` and the rest.
struct Split {
  std::vector<std::uint64_t> kept;
  std::vector<std::uint64_t> traced;
};

Split split_indices(int num_qubits, std::span<const int> keep) {
  std::vector<int> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty()) throw std::invalid_argument("keep set is empty");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("keep set has duplicates");
  }
  if (sorted.front() < 0 || sorted.back() >= num_qubits) throw std::out_of_range("keep index out of range");
  std::vector<int> rest;
  for (int q = 0; q < num_qubits; ++q) {
    if (!std::binary_search(sorted.begin(), sorted.end(), q)) rest.push_back(q);
  }
  auto expand = [num_qubits](const std::vector<int>& qs) {
    const std::size_t count = std::size_t{1} << qs.size();
    std::vector<std::uint64_t> out(count, 0);
    for (std::size_t v = 0; v < count; ++v) {
      for (std::size_t k = 0; k < qs.size(); ++k) {
        if ((v >> (qs.size() - 1 - k)) & 1U) out[v] |= qubit_mask(num_qubits, qs[k]);
      }
    }
    return out;
  };
  return {expand(sorted), expand(rest)};
}

}  // namespace

PureState apply_single(const PureState& state, const Matrix& u, int qubit) {
  state.check_qubit(qubit);
  if (u.rows() != 2 || u.cols() != 2) throw std::invalid_argument("single-qubit unitary must be 2x2");
  return PureState::normalized(apply_single_raw(state.amplitudes(), state.num_qubits(), u, qubit));
}

PureState apply_gate(const PureState& state, const Gate& gate) {
  if (static_cast<int>(gate.targets.size()) != gate_arity(gate.kind)) {
    throw std::invalid_argument("wrong number of gate targets");
  }
  for (int q : gate.targets) state.check_qubit(q);
  if (gate.kind != GateKind::CNOT) return apply_single(state, gate_matrix(gate.kind), gate.targets[0]);

  const int c = gate.targets[0];
  const int t = gate.targets[1];
  if (c == t) throw std::invalid_argument("CNOT control and target coincide");
  const std::uint64_t cm = qubit_mask(state.num_qubits(), c);
  const std::uint64_t tm = qubit_mask(state.num_qubits(), t);
  Vector out = state.amplitudes();
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(out.size()); ++i) {
    if ((i & cm) && !(i & tm)) std::swap(out(static_cast<Eigen::Index>(i)), out(static_cast<Eigen::Index>(i | tm)));
  }
  return PureState::from_amplitudes(std::move(out));
}

PureState apply_unitary(const PureState& state, const Matrix& u) {
  if (u.rows() != state.dim() || u.cols() != state.dim()) throw std::invalid_argument("unitary dimension mismatch");
  return PureState::normalized(u * state.amplitudes());
}

double probability_one(const PureState& state, int qubit, Basis basis) {
  state.check_qubit(qubit);
  Vector amps = state.amplitudes();
  if (basis == Basis::X) amps = apply_single_raw(amps, state.num_qubits(), gate_matrix(GateKind::H), qubit);
  const std::uint64_t mask = qubit_mask(state.num_qubits(), qubit);
  double p = 0.0;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amps.size()); ++i) {
    if (i & mask) p += std::norm(amps(static_cast<Eigen::Index>(i)));
  }
  return std::clamp(p, 0.0, 1.0);
}

std::optional<Measurement> project_qubit(const PureState& state, int qubit, Basis basis, int outcome) {
  state.check_qubit(qubit);
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
  const Matrix h = gate_matrix(GateKind::H);
  Vector amps = state.amplitudes();
  if (basis == Basis::X) amps = apply_single_raw(amps, state.num_qubits(), h, qubit);
  const std::uint64_t mask = qubit_mask(state.num_qubits(), qubit);
  double p = 0.0;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amps.size()); ++i) {
    const bool one = (i & mask) != 0;
    if (one != (outcome == 1)) {
      amps(static_cast<Eigen::Index>(i)) = 0.0;
    } else {
      p += std::norm(amps(static_cast<Eigen::Index>(i)));
    }
  }
  if (p < 1e-15) return std::nullopt;
  amps /= std::sqrt(p);
  if (basis == Basis::X) amps = apply_single_raw(amps, state.num_qubits(), h, qubit);
  return Measurement{outcome, p, PureState::normalized(std::move(amps))};
}

Measurement measure_qubit(const PureState& state, int qubit, Basis basis, Rng& rng) {
  const double p1 = probability_one(state, qubit, basis);
  const int bit = rng.uniform() < p1 ? 1 : 0;
  if (auto m = project_qubit(state, qubit, basis, bit)) return *std::move(m);
  return *project_qubit(state, qubit, basis, 1 - bit);
}

PureState discard_qubit(const PureState& state, int qubit) {
  state.check_qubit(qubit);
  const int n = state.num_qubits();
  if (n < 2) throw std::invalid_argument("cannot discard the only qubit");
  const double p1 = probability_one(state, qubit, Basis::Z);
  int value;
  if (p1 < 1e-10) {
    value = 0;
  } else if (p1 > 1.0 - 1e-10) {
    value = 1;
  } else {
    throw std::invalid_argument("discarded qubit is not in a computational basis state");
  }
  const std::uint64_t mask = qubit_mask(n, qubit);
  const int low_bits = n - 1 - qubit;
  Vector out(state.dim() / 2);
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(out.size()); ++j) {
    const std::uint64_t high = (j >> low_bits) << (low_bits + 1);
    const std::uint64_t low = j & ((std::uint64_t{1} << low_bits) - 1);
    const std::uint64_t i = high | low | (value ? mask : 0);
    out(static_cast<Eigen::Index>(j)) = state.amplitude(i);
  }
  return PureState::normalized(std::move(out));
}

PureState move_qubit(const PureState& state, int from, int to) {
  state.check_qubit(from);
  state.check_qubit(to);
  const int n = state.num_qubits();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  order.erase(order.begin() + from);
  order.insert(order.begin() + to, from);
  // order[k] = old index of the qubit placed at new position k.
  Vector out(state.dim());
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(out.size()); ++j) {
    std::uint64_t i = 0;
    for (int k = 0; k < n; ++k) {
      if (j & qubit_mask(n, k)) i |= qubit_mask(n, order[k]);
    }
    out(static_cast<Eigen::Index>(j)) = state.amplitude(i);
  }
  return PureState::from_amplitudes(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& dm, std::span<const int> keep) {
  const Split s = split_indices(dm.num_qubits(), keep);
  const auto dk = static_cast<Eigen::Index>(s.kept.size());
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = dm.matrix();
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (std::uint64_t t : s.traced) {
        acc += m(static_cast<Eigen::Index>(s.kept[a] | t), static_cast<Eigen::Index>(s.kept[b] | t));
      }
      out(a, b) = acc;
    }
  }
  return DensityMatrix(static_cast<int>(keep.size()), std::move(out));
}

DensityMatrix reduced_density(const PureState& state, std::span<const int> keep) {
  const Split s = split_indices(state.num_qubits(), keep);
  Matrix psi(static_cast<Eigen::Index>(s.kept.size()), static_cast<Eigen::Index>(s.traced.size()));
  for (std::size_t a = 0; a < s.kept.size(); ++a) {
    for (std::size_t t = 0; t < s.traced.size(); ++t) {
      psi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) = state.amplitude(s.kept[a] | s.traced[t]);
    }
  }
  return DensityMatrix(static_cast<int>(keep.size()), psi * psi.adjoint());
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolve failed");
  return solver.eigenvalues();
}

double von_neumann_entropy(const DensityMatrix& dm) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(dm.matrix())) {
    if (lambda > 1e-12) s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace distance of states with different dimension");
  const Eigen::VectorXd ev = hermitian_eigenvalues(a.matrix() - b.matrix());
  return std::clamp(0.5 * ev.cwiseAbs().sum(), 0.0, 1.0);
}

double holevo_quantity(const Ensemble& ensemble) {
  double chi = von_neumann_entropy(ensemble.average());
  for (const auto& m : ensemble.members()) {
    if (m.probability > 0.0) chi -= m.probability * von_neumann_entropy(m.state);
  }
  return std::clamp(chi, 0.0, std::log2(static_cast<double>(ensemble.dim())));
}

double fidelity(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity of states with different dimension");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double fidelity(const DensityMatrix& rho, const PureState& psi) {
  if (rho.dim() != psi.dim()) throw std::invalid_argument("fidelity of states with different dimension");
  return std::real(psi.amplitudes().dot(rho.matrix() * psi.amplitudes()));
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

Matrix helstrom_projector(const Matrix& weighted0, const Matrix& weighted1) {
  if (weighted0.rows() != weighted1.rows()) throw std::invalid_argument("hypotheses differ in dimension");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(weighted0 - weighted1);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolve failed");
  Matrix proj = Matrix::Zero(weighted0.rows(), weighted0.cols());
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (solver.eigenvalues()(k) > 1e-12) {
      const Vector v = solver.eigenvectors().col(k);
      proj.noalias() += v * v.adjoint();
    }
  }
  return proj;
}

double projector_probability(const PureState& psi, const Matrix& proj) {
  if (proj.rows() != psi.dim()) throw std::invalid_argument("projector dimension mismatch");
  return std::clamp(std::real(psi.amplitudes().dot(proj * psi.amplitudes())), 0.0, 1.0);
}

PureState haar_random_state(int num_qubits, Rng& rng) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) throw std::invalid_argument("qubit count out of range");
  Vector v(std::int64_t{1} << num_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = Complex(re, im);
  }
  return PureState::normalized(std::move(v));
}

Matrix haar_random_unitary(std::int64_t dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("unitary dimension must be positive");
  Matrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

}  // namespace ott::quantum
