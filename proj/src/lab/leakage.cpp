#include "ott/lab/leakage.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "ott/protocols/nland.hpp"
#include "ott/quantum/ops.hpp"

namespace ott::lab {

using quantum::DensityMatrix;
using quantum::Ensemble;
using quantum::Matrix;
using quantum::PureState;
using quantum::Vector;

namespace {

DensityMatrix encoding_of(int x) {
  std::vector<PureState> states;
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) states.push_back(protocols::alice_nland_preparation(x, s, t));
  }
  return DensityMatrix::uniform_mixture(states);
}

void check_k(int k, int max) {
  if (k < 1) throw std::invalid_argument("group size must be at least 1");
  if (k > max) throw std::invalid_argument("group size too large");
}

double entropy_from(const std::map<double, double>& spectrum) {
  double s = 0.0;
  for (const auto& [value, mult] : spectrum) {
    if (value > 1e-300) s -= mult * value * std::log2(value);
  }
  return s;
}

}  // namespace

Ensemble bob_view_of_x() {
  return Ensemble({{0.5, encoding_of(0)}, {0.5, encoding_of(1)}});
}

double combined_table_leakage(int k) {
  check_k(k, 16);
  const Matrix rho0 = encoding_of(0).matrix();
  const Matrix rho1 = encoding_of(1).matrix();
  const Matrix mean = (rho0 + rho1) / 2.0;
  // The k-fold state given a' is mean^{⊗k} + (-1)^{a'} delta^{⊗k}; the mean
  // is I/4, so both terms share eigenvectors.
  if ((mean - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::logic_error("single-instance average is not maximally mixed");
  }
  Eigen::VectorXd d = quantum::hermitian_eigenvalues((rho0 - rho1) / 2.0);
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    if (std::abs(d(j)) < 1e-12) d(j) = 0.0;
  }
  // Spectrum of delta^{⊗k} as value -> multiplicity; products are rounded to
  // 12 significant digits so equal ones merge.
  auto key = [](double v) {
    if (v == 0.0) return 0.0;
    const double scale = std::pow(10.0, 12 - std::ceil(std::log10(std::abs(v))));
    return std::round(v * scale) / scale;
  };
  std::map<double, double> prod{{1.0, 1.0}};
  for (int i = 0; i < k; ++i) {
    std::map<double, double> next;
    for (const auto& [v, m] : prod) {
      for (Eigen::Index j = 0; j < d.size(); ++j) next[key(v * d(j))] += m;
    }
    prod = std::move(next);
  }
  const double base = std::pow(0.25, k);
  std::map<double, double> cond;
  for (const auto& [v, m] : prod) cond[base + v] += m;
  const double avg_entropy = 2.0 * k;
  return avg_entropy - entropy_from(cond);
}

double combined_table_leakage_explicit(int k) {
  check_k(k, 3);
  const std::array<Matrix, 2> rho{encoding_of(0).matrix(), encoding_of(1).matrix()};
  std::array<Matrix, 2> sum{Matrix::Zero(1 << (2 * k), 1 << (2 * k)), Matrix::Zero(1 << (2 * k), 1 << (2 * k))};
  for (int xs = 0; xs < (1 << k); ++xs) {
    Matrix m = Matrix::Identity(1, 1);
    int parity = 0;
    for (int j = 0; j < k; ++j) {
      const int x = xs >> j & 1;
      parity ^= x;
      m = Eigen::kroneckerProduct(m, rho[static_cast<std::size_t>(x)]).eval();
    }
    sum[static_cast<std::size_t>(parity)] += m;
  }
  const double w = 1.0 / static_cast<double>(1 << (k - 1));
  return quantum::holevo_quantity(Ensemble({{0.5, DensityMatrix::from_matrix(sum[0] * w)},
                                            {0.5, DensityMatrix::from_matrix(sum[1] * w)}}));
}

RoleSwappedEnsembles bob_view_ensembles(const Matrix& bob_unitary) {
  if (bob_unitary.rows() != 16 || bob_unitary.cols() != 16) throw std::invalid_argument("Bob's unitary must be 16x16");
  // joint[x][r'] holds the unnormalized Bob-register state.
  std::array<std::array<Matrix, 2>, 2> joint;
  for (auto& row : joint) row.fill(Matrix::Zero(4, 4));
  const Matrix h = quantum::gate_matrix(quantum::GateKind::H);
  const Matrix hh = Eigen::kroneckerProduct(h, h).eval();
  for (int x = 0; x < 2; ++x) {
    for (int s = 0; s < 2; ++s) {
      for (int t = 0; t < 2; ++t) {
        const PureState sent = protocols::alice_nland_preparation(x, s, t).tensor(PureState::basis(2, 0));
        Vector out = bob_unitary * sent.amplitudes();
        // Alice measures qubits 0 and 1 in basis s: rotate so that basis states read directly.
        Matrix amp(4, 4);
        for (int i = 0; i < 4; ++i) {
          for (int j = 0; j < 4; ++j) amp(i, j) = out(i * 4 + j);
        }
        if (s == 1) amp = hh.adjoint() * amp;
        for (int m = 0; m < 4; ++m) {
          const int e = (m >> 1 & 1) ^ (m & 1) ^ t;
          const Vector phi = amp.row(m).transpose();
          joint[static_cast<std::size_t>(x)][static_cast<std::size_t>(e)] += phi * phi.adjoint() / 8.0;
        }
      }
    }
  }
  auto build = [&](auto bit_of) {
    std::array<Matrix, 2> acc{Matrix::Zero(4, 4), Matrix::Zero(4, 4)};
    for (int x = 0; x < 2; ++x) {
      for (int e = 0; e < 2; ++e) acc[static_cast<std::size_t>(bit_of(x, e))] += joint[static_cast<std::size_t>(x)][static_cast<std::size_t>(e)];
    }
    std::vector<quantum::EnsembleMember> members;
    double total = 0.0;
    for (const auto& a : acc) total += a.trace().real();
    for (const auto& a : acc) {
      const double p = a.trace().real();
      if (p <= 1e-14) continue;
      members.push_back({p / total, DensityMatrix::from_matrix((a / p + (a / p).adjoint()) / 2.0)});
    }
    if (members.size() == 1) members.front().probability = 1.0;
    return Ensemble(std::move(members));
  };
  return RoleSwappedEnsembles{build([](int x, int) { return x; }), build([](int, int e) { return e; }),
                              build([](int x, int e) { return x ^ e; })};
}

RoleSwappedTriple measured_triple(const RoleSwappedEnsembles& v, const MeasurementSpec& m) {
  return RoleSwappedTriple{mutual_information(v.x, m), mutual_information(v.r, m), mutual_information(v.xr, m)};
}

}  // namespace ott::lab
