#include "ott/lab/views.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "ott/protocols/nland.hpp"
#include "ott/quantum/ops.hpp"

namespace ott::lab {

using quantum::DensityMatrix;
using quantum::Ensemble;
using quantum::Matrix;
using quantum::PureState;

const char* target_name(Target t) {
  switch (t) {
    case Target::kY: return "y";
    case Target::kR: return "r";
    case Target::kYR: return "yr";
  }
  return "?";
}

Target parse_target(const std::string& name) {
  if (name == "y") return Target::kY;
  if (name == "r") return Target::kR;
  if (name == "yr") return Target::kYR;
  throw std::invalid_argument("unknown target '" + name + "' (expected y, r or yr)");
}

SigmaA::SigmaA(PureState state, std::uint64_t seed) : state_(std::move(state)), seed_(seed) {
  const int n = state_.num_qubits();
  if (n < kSystemQubits || n > kSystemQubits + kMaxAncilla) {
    throw std::invalid_argument("sigma_A needs 2 system qubits and at most 2 ancilla qubits");
  }
}

SigmaA SigmaA::haar(int ancilla, std::uint64_t seed) {
  if (ancilla < 0 || ancilla > kMaxAncilla) throw std::invalid_argument("ancilla must be 0, 1 or 2");
  Rng rng(seed);
  return SigmaA(quantum::haar_random_state(kSystemQubits + ancilla, rng), seed);
}

DensityMatrix SigmaA::system_state() const {
  const std::array<int, 2> keep{0, 1};
  return quantum::reduced_density(state_, keep);
}

SigmaA SigmaA::with_ancilla_unitary(const Matrix& u) const {
  const std::int64_t a = std::int64_t{1} << ancilla();
  if (u.rows() != a || u.cols() != a) throw std::invalid_argument("ancilla unitary has the wrong dimension");
  const Matrix full = Eigen::kroneckerProduct(Matrix::Identity(4, 4), u).eval();
  return SigmaA(quantum::apply_unitary(state_, full), seed_);
}

const Ensemble& ViewEnsembles::get(Target t) const {
  switch (t) {
    case Target::kY: return y;
    case Target::kR: return r;
    case Target::kYR: return yr;
  }
  throw std::invalid_argument("bad target");
}

namespace {

// Branch index b = y<<3 | h1<<2 | h2<<1 | p, matching nland_bob_branches.
int target_bit(int b, Target t) {
  const int y = b >> 3 & 1;
  const int r = (b >> 2 & 1) ^ (b >> 1 & 1);
  switch (t) {
    case Target::kY: return y;
    case Target::kR: return r;
    case Target::kYR: return y ^ r;
  }
  return 0;
}

Ensemble group(const std::vector<protocols::BobBranch>& branches, Target t) {
  std::array<std::vector<DensityMatrix>, 2> members;
  for (std::size_t b = 0; b < branches.size(); ++b) {
    members[static_cast<std::size_t>(target_bit(static_cast<int>(b), t))].push_back(
        DensityMatrix::from_pure(branches[b].returned));
  }
  std::vector<quantum::EnsembleMember> out;
  const std::vector<double> w(8, 1.0 / 8.0);
  for (const auto& m : members) out.push_back({0.5, DensityMatrix::mixture(w, m)});
  return Ensemble(std::move(out));
}

// Bob's branch as one 4x4 unitary on the system qubits.
const std::array<Matrix, 16>& branch_unitaries() {
  static const std::array<Matrix, 16> us = [] {
    const Matrix id2 = Matrix::Identity(2, 2);
    const Matrix y = quantum::gate_matrix(quantum::GateKind::Y);
    const Matrix z = quantum::gate_matrix(quantum::GateKind::Z);
    const Matrix cnot = quantum::gate_matrix(quantum::GateKind::CNOT);
    std::array<Matrix, 16> out;
    for (int b = 0; b < 16; ++b) {
      Matrix u = (b >> 3 & 1) ? Matrix(Matrix::Identity(4, 4)) : cnot;
      const Matrix pauli = Eigen::kroneckerProduct((b >> 2 & 1) ? y : id2, (b >> 1 & 1) ? y : id2).eval();
      u = pauli * u;
      if (b & 1) u = Eigen::kroneckerProduct(z, z).eval() * u;
      out[static_cast<std::size_t>(b)] = u;
    }
    return out;
  }();
  return us;
}

double entropy_of(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-12) s -= l * std::log2(l);
  }
  return s;
}

double chi_from_gram(const Matrix& gram, double avg_entropy, Target t) {
  std::array<std::vector<int>, 2> idx;
  for (int b = 0; b < 16; ++b) idx[static_cast<std::size_t>(target_bit(b, t))].push_back(b);
  double cond = 0.0;
  for (const auto& members : idx) {
    Matrix sub(8, 8);
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) sub(i, j) = gram(members[i], members[j]) / 8.0;
    }
    cond += 0.5 * entropy_of(sub);
  }
  return std::max(0.0, avg_entropy - cond);
}

}  // namespace

ViewEnsembles alice_view_ensembles(const SigmaA& s) {
  const auto branches = protocols::nland_bob_branches(s.state());
  return ViewEnsembles{group(branches, Target::kY), group(branches, Target::kR), group(branches, Target::kYR)};
}

ChiValues chi_values(const SigmaA& s) {
  const std::int64_t a = std::int64_t{1} << s.ancilla();
  // Row index is the system basis state, column the ancilla basis state.
  Matrix psi(4, a);
  for (std::int64_t i = 0; i < 4; ++i) {
    for (std::int64_t j = 0; j < a; ++j) psi(i, j) = s.state().amplitude(static_cast<std::uint64_t>(i * a + j));
  }
  const auto& us = branch_unitaries();
  std::array<Matrix, 16> phi;
  for (std::size_t b = 0; b < 16; ++b) phi[b] = us[b] * psi;
  Matrix gram(16, 16);
  for (int b = 0; b < 16; ++b) {
    for (int c = b; c < 16; ++c) {
      const quantum::Complex g = phi[static_cast<std::size_t>(b)].cwiseProduct(phi[static_cast<std::size_t>(c)].conjugate()).sum();
      gram(b, c) = std::conj(g);
      gram(c, b) = g;
    }
  }
  const double avg = entropy_of(gram / 16.0);
  return ChiValues{chi_from_gram(gram, avg, Target::kY), chi_from_gram(gram, avg, Target::kR),
                   chi_from_gram(gram, avg, Target::kYR)};
}

ChiValues chi_values_direct(const SigmaA& s) {
  const auto v = alice_view_ensembles(s);
  return ChiValues{quantum::holevo_quantity(v.y), quantum::holevo_quantity(v.r), quantum::holevo_quantity(v.yr)};
}

}  // namespace ott::lab
