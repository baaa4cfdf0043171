#pragma once

// Mutual information of rank-one projective measurements and a search for
// the best one.

#include <cstdint>
#include <optional>
#include <vector>

#include "ott/lab/views.hpp"
#include "ott/quantum/ops.hpp"

namespace ott::lab {

/// Orthonormal measurement basis, one outcome per column.
class MeasurementSpec {
 public:
  /// Throws std::invalid_argument unless `u` is square and unitary within 1e-10.
  static MeasurementSpec from_unitary(quantum::Matrix u);
  static MeasurementSpec computational(std::int64_t dim);
  /// Tensor product of single-qubit Z/X bases, qubit 0 first.
  static MeasurementSpec product(const std::vector<quantum::Basis>& bases);
  static MeasurementSpec haar(std::int64_t dim, Rng& rng);

  const quantum::Matrix& basis() const { return basis_; }
  std::int64_t dim() const { return basis_.rows(); }
  /// Largest entry of |U^dagger U - I|.
  double unitarity_error() const;

 private:
  explicit MeasurementSpec(quantum::Matrix u) : basis_(std::move(u)) {}

  quantum::Matrix basis_;
};

/// I(X; K) in bits, with X distributed as the ensemble's probabilities and K
/// the measurement outcome.
double mutual_information(const quantum::Ensemble& ensemble, const MeasurementSpec& m);

struct SearchOptions {
  int restarts = 6;
  int max_sweeps = 60;
  double initial_step = 0.4;
  double min_step = 1e-4;
  std::uint64_t seed = 0;
};

struct MeasuredInfo {
  MeasurementSpec measurement;
  /// Objective at `measurement`: a lower bound on the optimum.
  double value = 0.0;
};

/// Maximizes the sum of mutual informations over `ensembles`, all measured
/// with the same basis. Restart 0 starts from `start` when given, otherwise
/// from the computational basis; the others from Haar bases. Each restart
/// sweeps Givens rotations (real and imaginary) over all outcome pairs and
/// halves the step when a sweep finds no improvement.
MeasuredInfo maximize_measured_info(const std::vector<const quantum::Ensemble*>& ensembles,
                                    const SearchOptions& opts = {},
                                    const std::optional<MeasurementSpec>& start = std::nullopt);

MeasuredInfo measured_info_max(const quantum::Ensemble& ensemble, const SearchOptions& opts = {},
                               const std::optional<MeasurementSpec>& start = std::nullopt);
MeasuredInfo measured_info_max(const SigmaA& s, Target target, const SearchOptions& opts = {});

struct MeasuredTriple {
  double y = 0.0;
  double r = 0.0;
  double yr = 0.0;
};

/// I_y, I_r and I_{y^r} for one measurement on Alice's returned system and ancilla.
MeasuredTriple measured_triple(const ViewEnsembles& v, const MeasurementSpec& m);

}  // namespace ott::lab
