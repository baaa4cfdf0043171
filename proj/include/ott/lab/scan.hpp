#pragma once

// Holevo tradeoff scans over Alice's possible sent states.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ott/lab/views.hpp"

namespace ott::lab {

struct TradeoffPoint {
  /// Seed of the sampled state (see the generator that produced the point).
  std::uint64_t seed = 0;
  double chi_y = 0.0;
  double chi_r = 0.0;
  double chi_yr = 0.0;

  double side() const { return chi_r > chi_yr ? chi_r : chi_yr; }
  /// chi_y + max(chi_r, chi_yr).
  double sum() const { return chi_y + side(); }
};

TradeoffPoint tradeoff_point(const SigmaA& s);

struct ScanResult {
  std::vector<TradeoffPoint> points;
  double max_sum = 0.0;
  /// Index of the point attaining max_sum.
  std::size_t argmax = 0;
};

/// Sample i is SigmaA::haar(ancilla, Rng::stream_seed(seed, i)).
/// Throws std::invalid_argument when samples < 1.
ScanResult tradeoff_scan(std::int64_t samples, int ancilla, std::uint64_t seed);

/// A state near an honest encoding: |x t> or H⊗H|t x> on the system with a
/// Haar ancilla, plus a Gaussian perturbation of norm up to 10^-u, u uniform
/// in [0.5, 3]. Drawn from Rng(seed).
SigmaA endpoint_sigma(int ancilla, std::uint64_t seed);
/// Sample i is endpoint_sigma(ancilla, Rng::stream_seed(seed, i)).
ScanResult endpoint_scan(std::int64_t samples, int ancilla, std::uint64_t seed);

struct ConstrainedSearchOptions {
  int starts = 8;
  int steps = 1500;
  std::uint64_t seed = 0;
};

/// Hill climbing on chi_y + max(chi_r, chi_yr) - 1 over states that keep
/// max(chi_r, chi_yr) >= 1 - eps, starting from honest encodings with a Haar
/// ancilla. Returns every accepted state, starts included.
std::vector<TradeoffPoint> constrained_search(double eps, int ancilla, const ConstrainedSearchOptions& opts);

/// Bin membership slack for max(chi_r, chi_yr) >= 1 - eps.
inline constexpr double kEnvelopeSlack = 1e-9;

struct EnvelopeRow {
  double eps = 0.0;
  std::int64_t count = 0;
  /// Absent when no point falls in the bin.
  std::optional<double> f;
};

/// For each eps: max of chi_y + max(chi_r, chi_yr) - 1 over points with
/// max(chi_r, chi_yr) >= 1 - eps.
std::vector<EnvelopeRow> f_envelope(const std::vector<TradeoffPoint>& points, const std::vector<double>& eps);

/// Header `seed,chi_y,chi_r,chi_yr,sum`, reals printed with %.17g.
void write_scan_csv(std::ostream& out, const std::vector<TradeoffPoint>& points);
/// Throws std::invalid_argument on a bad header or row.
std::vector<TradeoffPoint> read_scan_csv(std::istream& in);

}  // namespace ott::lab
