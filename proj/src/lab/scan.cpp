#include "ott/lab/scan.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ott/protocols/nland.hpp"
#include "ott/quantum/ops.hpp"

namespace ott::lab {

using quantum::PureState;
using quantum::Vector;

TradeoffPoint tradeoff_point(const SigmaA& s) {
  const auto c = chi_values(s);
  return TradeoffPoint{s.seed(), c.y, c.r, c.yr};
}

namespace {

template <typename Gen>
ScanResult scan(std::int64_t samples, std::uint64_t seed, Gen gen) {
  if (samples < 1) throw std::invalid_argument("scan needs at least one sample");
  ScanResult res;
  res.points.reserve(static_cast<std::size_t>(samples));
  for (std::int64_t i = 0; i < samples; ++i) {
    res.points.push_back(tradeoff_point(gen(Rng::stream_seed(seed, static_cast<std::uint64_t>(i)))));
    const double s = res.points.back().sum();
    if (i == 0 || s > res.max_sum) {
      res.max_sum = s;
      res.argmax = static_cast<std::size_t>(i);
    }
  }
  return res;
}

PureState honest_with_ancilla(int ancilla, Rng& rng) {
  const int x = rng.bit();
  const int s = rng.bit();
  const int t = rng.bit();
  PureState st = protocols::alice_nland_preparation(x, s, t);
  if (ancilla > 0) st = st.tensor(quantum::haar_random_state(ancilla, rng));
  return st;
}

Vector perturbed(const Vector& v, double scale, Rng& rng) {
  Vector g(v.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = quantum::Complex(rng.normal(), rng.normal());
  return v + scale * g / g.norm();
}

void check_ancilla(int ancilla) {
  if (ancilla < 0 || ancilla > SigmaA::kMaxAncilla) throw std::invalid_argument("ancilla must be 0, 1 or 2");
}

}  // namespace

ScanResult tradeoff_scan(std::int64_t samples, int ancilla, std::uint64_t seed) {
  check_ancilla(ancilla);
  return scan(samples, seed, [ancilla](std::uint64_t s) { return SigmaA::haar(ancilla, s); });
}

SigmaA endpoint_sigma(int ancilla, std::uint64_t seed) {
  check_ancilla(ancilla);
  Rng rng(seed);
  const PureState base = honest_with_ancilla(ancilla, rng);
  const double scale = std::pow(10.0, -(0.5 + 2.5 * rng.uniform()));
  return SigmaA(PureState::normalized(perturbed(base.amplitudes(), scale, rng)), seed);
}

ScanResult endpoint_scan(std::int64_t samples, int ancilla, std::uint64_t seed) {
  check_ancilla(ancilla);
  return scan(samples, seed, [ancilla](std::uint64_t s) { return endpoint_sigma(ancilla, s); });
}

std::vector<TradeoffPoint> constrained_search(double eps, int ancilla, const ConstrainedSearchOptions& opts) {
  check_ancilla(ancilla);
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in [0, 1]");
  std::vector<TradeoffPoint> out;
  for (int k = 0; k < opts.starts; ++k) {
    const std::uint64_t seed = Rng::stream_seed(opts.seed, static_cast<std::uint64_t>(k));
    Rng rng(seed);
    SigmaA cur(honest_with_ancilla(ancilla, rng), seed);
    TradeoffPoint cur_pt = tradeoff_point(cur);
    out.push_back(cur_pt);
    double step = 0.05;
    for (int i = 0; i < opts.steps; ++i) {
      SigmaA cand(PureState::normalized(perturbed(cur.state().amplitudes(), step, rng)), seed);
      const TradeoffPoint pt = tradeoff_point(cand);
      if (pt.side() >= 1.0 - eps - kEnvelopeSlack && pt.sum() > cur_pt.sum()) {
        cur = std::move(cand);
        cur_pt = pt;
        out.push_back(pt);
        step = std::min(0.5, step * 1.5);
      } else {
        step = std::max(1e-4, step * 0.95);
      }
    }
  }
  return out;
}

std::vector<EnvelopeRow> f_envelope(const std::vector<TradeoffPoint>& points, const std::vector<double>& eps) {
  std::vector<EnvelopeRow> rows;
  for (double e : eps) {
    if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("eps must lie in [0, 1]");
    EnvelopeRow row;
    row.eps = e;
    for (const auto& p : points) {
      if (p.side() < 1.0 - e - kEnvelopeSlack) continue;
      ++row.count;
      const double f = p.sum() - 1.0;
      if (!row.f || f > *row.f) row.f = f;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_scan_csv(std::ostream& out, const std::vector<TradeoffPoint>& points) {
  out << "seed,chi_y,chi_r,chi_yr,sum\n";
  char buf[160];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%" PRIu64 ",%.17g,%.17g,%.17g,%.17g\n", p.seed, p.chi_y, p.chi_r, p.chi_yr,
                  p.sum());
    out << buf;
  }
}

std::vector<TradeoffPoint> read_scan_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "seed,chi_y,chi_r,chi_yr,sum") {
    throw std::invalid_argument("scan CSV: bad header");
  }
  std::vector<TradeoffPoint> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cells[5];
    int n = 0;
    while (n < 5 && std::getline(row, cells[n], ',')) ++n;
    std::string extra;
    if (n != 5 || std::getline(row, extra)) {
      throw std::invalid_argument("scan CSV line " + std::to_string(lineno) + ": expected 5 fields");
    }
    try {
      std::size_t used = 0;
      TradeoffPoint p;
      p.seed = std::stoull(cells[0], &used);
      if (used != cells[0].size()) throw std::invalid_argument("seed");
      p.chi_y = std::stod(cells[1]);
      p.chi_r = std::stod(cells[2]);
      p.chi_yr = std::stod(cells[3]);
      out.push_back(p);
    } catch (const std::exception&) {
      throw std::invalid_argument("scan CSV line " + std::to_string(lineno) + ": bad number");
    }
  }
  return out;
}

}  // namespace ott::lab
