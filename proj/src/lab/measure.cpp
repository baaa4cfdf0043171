#include "ott/lab/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace ott::lab {

using quantum::Complex;
using quantum::Ensemble;
using quantum::Matrix;
using quantum::Vector;

MeasurementSpec MeasurementSpec::from_unitary(Matrix u) {
  if (u.rows() != u.cols() || u.rows() < 1) throw std::invalid_argument("measurement basis must be square");
  MeasurementSpec m(std::move(u));
  if (m.unitarity_error() > 1e-10) throw std::invalid_argument("measurement basis is not orthonormal");
  return m;
}

MeasurementSpec MeasurementSpec::computational(std::int64_t dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  return MeasurementSpec(Matrix::Identity(dim, dim));
}

MeasurementSpec MeasurementSpec::product(const std::vector<quantum::Basis>& bases) {
  if (bases.empty()) throw std::invalid_argument("need at least one qubit basis");
  const Matrix h = quantum::gate_matrix(quantum::GateKind::H);
  const Matrix id = Matrix::Identity(2, 2);
  Matrix u = Matrix::Identity(1, 1);
  for (auto b : bases) u = Eigen::kroneckerProduct(u, b == quantum::Basis::X ? h : id).eval();
  return MeasurementSpec(std::move(u));
}

MeasurementSpec MeasurementSpec::haar(std::int64_t dim, Rng& rng) {
  return MeasurementSpec(quantum::haar_random_unitary(dim, rng));
}

double MeasurementSpec::unitarity_error() const {
  const Matrix d = basis_.adjoint() * basis_ - Matrix::Identity(basis_.rows(), basis_.cols());
  return d.cwiseAbs().maxCoeff();
}

namespace {

// Outcome probabilities q[j](k) = <v_k| rho_j |v_k> for every member of every ensemble.
struct Table {
  std::vector<double> prior;
  std::vector<const Matrix*> rho;
  std::vector<std::size_t> first;  // first member of each ensemble; back() = total
  std::vector<Eigen::VectorXd> q;
};

double outcome_prob(const Matrix& rho, const Vector& v) {
  return std::max(0.0, (v.adjoint() * rho * v)(0, 0).real());
}

double info_of(const Table& t, std::size_t e) {
  const std::size_t lo = t.first[e];
  const std::size_t hi = t.first[e + 1];
  const Eigen::Index dim = t.q[lo].size();
  double info = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    double pk = 0.0;
    for (std::size_t j = lo; j < hi; ++j) pk += t.prior[j] * t.q[j](k);
    if (pk <= 0.0) continue;
    for (std::size_t j = lo; j < hi; ++j) {
      const double joint = t.prior[j] * t.q[j](k);
      if (joint > 0.0) info += joint * std::log2(t.q[j](k) / pk);
    }
  }
  return info;
}

double objective(const Table& t) {
  double s = 0.0;
  for (std::size_t e = 0; e + 1 < t.first.size(); ++e) s += info_of(t, e);
  return s;
}

Table make_table(const std::vector<const Ensemble*>& ensembles) {
  if (ensembles.empty()) throw std::invalid_argument("no ensembles to measure");
  Table t;
  const auto dim = ensembles.front()->dim();
  for (const auto* e : ensembles) {
    if (e->dim() != dim) throw std::invalid_argument("ensembles differ in dimension");
    t.first.push_back(t.prior.size());
    for (const auto& m : e->members()) {
      t.prior.push_back(m.probability);
      t.rho.push_back(&m.state.matrix());
    }
  }
  t.first.push_back(t.prior.size());
  t.q.assign(t.prior.size(), Eigen::VectorXd::Zero(dim));
  return t;
}

void fill(Table& t, const Matrix& u) {
  for (std::size_t j = 0; j < t.rho.size(); ++j) {
    for (Eigen::Index k = 0; k < u.cols(); ++k) t.q[j](k) = outcome_prob(*t.rho[j], u.col(k));
  }
}

// Outcome columns k and l after a Givens rotation by theta with phase ph.
void rotated(const Matrix& u, Eigen::Index k, Eigen::Index l, double theta, Complex ph, Vector& vk, Vector& vl) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  vk = c * u.col(k) + s * ph * u.col(l);
  vl = -s * std::conj(ph) * u.col(k) + c * u.col(l);
}

// Objective after replacing columns k and l; the table is restored.
double trial(Table& t, Eigen::Index k, Eigen::Index l, const Vector& vk, const Vector& vl) {
  std::vector<std::pair<double, double>> saved(t.rho.size());
  for (std::size_t j = 0; j < t.rho.size(); ++j) {
    saved[j] = {t.q[j](k), t.q[j](l)};
    t.q[j](k) = outcome_prob(*t.rho[j], vk);
    t.q[j](l) = outcome_prob(*t.rho[j], vl);
  }
  const double val = objective(t);
  for (std::size_t j = 0; j < t.rho.size(); ++j) {
    t.q[j](k) = saved[j].first;
    t.q[j](l) = saved[j].second;
  }
  return val;
}

// Refines `u` in place; returns the final objective. Along each rotation
// direction it tries +-step and the vertex of the parabola through the three
// values.
double refine(Table& t, Matrix& u, const SearchOptions& opts) {
  fill(t, u);
  double best = objective(t);
  const Eigen::Index d = u.cols();
  double step = opts.initial_step;
  const std::array<Complex, 2> phases{Complex(1.0, 0.0), Complex(0.0, 1.0)};
  Vector vk, vl;
  for (int sweep = 0; sweep < opts.max_sweeps && step >= opts.min_step; ++sweep) {
    bool improved = false;
    for (Eigen::Index k = 0; k < d; ++k) {
      for (Eigen::Index l = k + 1; l < d; ++l) {
        for (const Complex& ph : phases) {
          rotated(u, k, l, step, ph, vk, vl);
          const double fp = trial(t, k, l, vk, vl);
          rotated(u, k, l, -step, ph, vk, vl);
          const double fm = trial(t, k, l, vk, vl);
          double theta = fp > fm ? step : -step;
          double val = std::max(fp, fm);
          const double curv = fp + fm - 2.0 * best;
          if (curv < 0.0) {
            const double vertex = std::clamp(0.5 * step * (fm - fp) / curv, -2.0 * step, 2.0 * step);
            rotated(u, k, l, vertex, ph, vk, vl);
            const double fv = trial(t, k, l, vk, vl);
            if (fv > val) {
              val = fv;
              theta = vertex;
            }
          }
          if (val > best + 1e-15) {
            rotated(u, k, l, theta, ph, vk, vl);
            u.col(k) = vk;
            u.col(l) = vl;
            for (std::size_t j = 0; j < t.rho.size(); ++j) {
              t.q[j](k) = outcome_prob(*t.rho[j], vk);
              t.q[j](l) = outcome_prob(*t.rho[j], vl);
            }
            best = objective(t);
            improved = true;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  // Rounding drift from many rotations.
  Eigen::HouseholderQR<Matrix> qr(u);
  Matrix q = qr.householderQ();
  for (Eigen::Index k = 0; k < d; ++k) {
    const Complex ov = q.col(k).dot(u.col(k));
    if (std::abs(ov) > 0.0) q.col(k) *= ov / std::abs(ov);
  }
  u = q;
  fill(t, u);
  return objective(t);
}

}  // namespace

double mutual_information(const Ensemble& ensemble, const MeasurementSpec& m) {
  if (m.dim() != ensemble.dim()) throw std::invalid_argument("measurement and ensemble dimensions differ");
  Table t = make_table({&ensemble});
  fill(t, m.basis());
  return objective(t);
}

MeasuredInfo maximize_measured_info(const std::vector<const Ensemble*>& ensembles, const SearchOptions& opts,
                                    const std::optional<MeasurementSpec>& start) {
  if (opts.restarts < 1) throw std::invalid_argument("need at least one restart");
  Table t = make_table(ensembles);
  const auto dim = ensembles.front()->dim();
  if (start && start->dim() != dim) throw std::invalid_argument("start basis has the wrong dimension");
  Rng rng(opts.seed);
  std::optional<MeasuredInfo> best;
  for (int i = 0; i < opts.restarts; ++i) {
    Matrix u = i == 0 ? (start ? start->basis() : Matrix(Matrix::Identity(dim, dim)))
                      : quantum::haar_random_unitary(dim, rng);
    const double v = refine(t, u, opts);
    if (!best || v > best->value) best = MeasuredInfo{MeasurementSpec::from_unitary(std::move(u)), v};
  }
  return *best;
}

MeasuredInfo measured_info_max(const Ensemble& ensemble, const SearchOptions& opts,
                               const std::optional<MeasurementSpec>& start) {
  return maximize_measured_info({&ensemble}, opts, start);
}

MeasuredInfo measured_info_max(const SigmaA& s, Target target, const SearchOptions& opts) {
  const auto v = alice_view_ensembles(s);
  return measured_info_max(v.get(target), opts);
}

MeasuredTriple measured_triple(const ViewEnsembles& v, const MeasurementSpec& m) {
  return MeasuredTriple{mutual_information(v.y, m), mutual_information(v.r, m), mutual_information(v.yr, m)};
}

}  // namespace ott::lab
