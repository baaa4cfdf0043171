#pragma once

// What Bob can learn about Alice's input x in the two-message protocol.

#include "ott/lab/measure.hpp"
#include "ott/quantum/state.hpp"

namespace ott::lab {

/// Bob's received state given x, averaged over Alice's s and t.
quantum::Ensemble bob_view_of_x();

/// Holevo information about a' = x_1 ^ ... ^ x_k when Bob holds all k
/// encodings, from the spectrum of the single-instance view. Throws
/// std::invalid_argument when k < 1 or k > 16.
double combined_table_leakage(int k);
/// Same through explicit 4^k-dimensional density matrices (k <= 3).
double combined_table_leakage_explicit(int k);

/// A cheating Bob modeled as a unitary on the two received qubits plus two
/// of his own qubits starting in |00>; qubits 0 and 1 go back to Alice, who
/// measures honestly and outputs r'.
struct RoleSwappedEnsembles {
  /// Bob's two-qubit register given x, given r', and given x ^ r'.
  quantum::Ensemble x;
  quantum::Ensemble r;
  quantum::Ensemble xr;
};

/// Throws std::invalid_argument unless `bob_unitary` is 16x16. A value of the
/// conditioning bit with zero probability is left out of its ensemble.
RoleSwappedEnsembles bob_view_ensembles(const quantum::Matrix& bob_unitary);

struct RoleSwappedTriple {
  double x = 0.0;
  double r = 0.0;
  double xr = 0.0;
};

RoleSwappedTriple measured_triple(const RoleSwappedEnsembles& v, const MeasurementSpec& m);

}  // namespace ott::lab
