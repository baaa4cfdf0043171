#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ott/lab/leakage.hpp"
#include "ott/lab/measure.hpp"
#include "ott/lab/scan.hpp"
#include "ott/protocols/nland.hpp"
#include "ott/quantum/ops.hpp"

namespace {

using namespace ott;
using namespace ott::lab;
using quantum::Basis;
using quantum::Complex;
using quantum::DensityMatrix;
using quantum::Ensemble;
using quantum::Matrix;
using quantum::PureState;
using quantum::Vector;

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

SigmaA cheat_state() {
  Vector v(4);
  v << 0.5, 0.5, 0.5, -0.5;
  return SigmaA(PureState::from_amplitudes(v));
}

TEST(Views, HonestProductStateHidesY) {
  const auto c = chi_values(SigmaA(PureState::basis(2, 0)));
  EXPECT_NEAR(c.y, 0.0, 1e-12);
  const auto v = alice_view_ensembles(SigmaA(PureState::basis(2, 0)));
  EXPECT_LT((v.y.members()[0].state.matrix() - v.y.members()[1].state.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Views, HonestEncodingRevealsOutputGrouping) {
  // x = 0 encodings tell Alice r, x = 1 encodings tell her y ^ r.
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      const auto c0 = chi_values(SigmaA(protocols::alice_nland_preparation(0, s, t)));
      EXPECT_NEAR(c0.r, 1.0, 1e-9);
      EXPECT_NEAR(c0.y, 0.0, 1e-9);
      const auto c1 = chi_values(SigmaA(protocols::alice_nland_preparation(1, s, t)));
      EXPECT_NEAR(c1.yr, 1.0, 1e-9);
      EXPECT_NEAR(c1.y, 0.0, 1e-9);
    }
  }
}

TEST(Views, EntangledCheatLearnsYButNotR) {
  const auto c = chi_values(cheat_state());
  EXPECT_NEAR(c.y, 1.0, 1e-9);
  EXPECT_LE(c.r, 1e-9);
  EXPECT_LE(c.yr, 1e-9);
}

TEST(Views, GroupingsShareTheAverageState) {
  for (int anc = 0; anc <= 2; ++anc) {
    const auto v = alice_view_ensembles(SigmaA::haar(anc, 40 + anc));
    const Matrix a = v.y.average().matrix();
    EXPECT_LT((a - v.r.average().matrix()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((a - v.yr.average().matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Views, GramRouteMatchesDensityMatrices) {
  for (int i = 0; i < 60; ++i) {
    const auto s = SigmaA::haar(i % 3, Rng::stream_seed(7, i));
    const auto fast = chi_values(s);
    const auto slow = chi_values_direct(s);
    EXPECT_NEAR(fast.y, slow.y, 1e-9);
    EXPECT_NEAR(fast.r, slow.r, 1e-9);
    EXPECT_NEAR(fast.yr, slow.yr, 1e-9);
    for (double c : {fast.y, fast.r, fast.yr}) {
      EXPECT_GE(c, 0.0);
      EXPECT_LE(c, 2.0);
    }
  }
}

TEST(Views, AncillaUnitaryLeavesChiUnchanged) {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto s = SigmaA::haar(2, 900 + i);
    const auto t = s.with_ancilla_unitary(quantum::haar_random_unitary(4, rng));
    const auto a = chi_values(s);
    const auto b = chi_values(t);
    EXPECT_NEAR(a.y, b.y, 1e-9);
    EXPECT_NEAR(a.r, b.r, 1e-9);
    EXPECT_NEAR(a.yr, b.yr, 1e-9);
    EXPECT_LT((s.system_state().matrix() - t.system_state().matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Views, SigmaARejectsBadSizes) {
  EXPECT_THROW(SigmaA(PureState::basis(1, 0)), std::invalid_argument);
  EXPECT_THROW(SigmaA(PureState::basis(5, 0)), std::invalid_argument);
  EXPECT_THROW(SigmaA::haar(3, 1), std::invalid_argument);
  EXPECT_NEAR(SigmaA::haar(2, 3).system_state().matrix().trace().real(), 1.0, 1e-12);
}

TEST(Measure, MutualInformationOracle) {
  // |0> vs |+> read in Z: I = h(3/4) - 1/2.
  const Ensemble e({{0.5, DensityMatrix::from_pure(PureState::zero())},
                    {0.5, DensityMatrix::from_pure(PureState::plus())}});
  EXPECT_NEAR(mutual_information(e, MeasurementSpec::computational(2)), h2(0.75) - 0.5, 1e-12);
  EXPECT_NEAR(mutual_information(e, MeasurementSpec::product({Basis::X})), h2(0.75) - 0.5, 1e-12);
}

TEST(Measure, OrthogonalPairIsFullyDistinguished) {
  Rng rng(5);
  const Matrix u = quantum::haar_random_unitary(4, rng);
  const auto a = quantum::apply_unitary(PureState::basis(2, 1), u);
  const auto b = quantum::apply_unitary(PureState::basis(2, 2), u);
  const Ensemble e({{0.5, DensityMatrix::from_pure(a)}, {0.5, DensityMatrix::from_pure(b)}});
  const auto best = measured_info_max(e, {4, 80, 0.4, 1e-6, 2});
  EXPECT_NEAR(best.value, 1.0, 1e-6);
  EXPECT_LT(best.measurement.unitarity_error(), 1e-10);
  EXPECT_NEAR(mutual_information(e, best.measurement), best.value, 1e-12);
}

TEST(Measure, BasisValidation) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 0.1;
  EXPECT_THROW(MeasurementSpec::from_unitary(m), std::invalid_argument);
  EXPECT_THROW(MeasurementSpec::from_unitary(Matrix::Identity(2, 3)), std::invalid_argument);
  const Ensemble e({{1.0, DensityMatrix::maximally_mixed(2)}});
  EXPECT_THROW(mutual_information(e, MeasurementSpec::computational(2)), std::invalid_argument);
}

TEST(Measure, CheatStateYIsFullyReadable) {
  const auto best = measured_info_max(cheat_state(), Target::kY, {3, 60, 0.4, 1e-5, 1});
  EXPECT_NEAR(best.value, 1.0, 1e-4);
}

TEST(Measure, HolevoBoundsMeasuredInformation) {
  for (int i = 0; i < 12; ++i) {
    const auto s = SigmaA::haar(i % 3, 300 + i);
    const auto v = alice_view_ensembles(s);
    for (auto t : {Target::kY, Target::kR, Target::kYR}) {
      const auto best = measured_info_max(v.get(t), {2, 30, 0.4, 1e-3, static_cast<std::uint64_t>(i)});
      EXPECT_LE(best.value, quantum::holevo_quantity(v.get(t)) + 1e-9);
    }
  }
}

TEST(Measure, SameMeasurementInequalitiesOnRandomPairs) {
  Rng rng(2026);
  for (int i = 0; i < 300; ++i) {
    const auto s = SigmaA::haar(i % 3, Rng::stream_seed(77, i));
    const auto v = alice_view_ensembles(s);
    const auto t = measured_triple(v, MeasurementSpec::haar(v.y.dim(), rng));
    EXPECT_LE(t.y + t.r, 1.0 + 1e-6);
    EXPECT_LE(t.y + t.yr, 1.0 + 1e-6);
    EXPECT_LE(t.y + std::max(t.r, t.yr), 1.0 + 1e-6);
  }
}

TEST(Measure, OptimizedSumsStayBelowOne) {
  for (int i = 0; i < 4; ++i) {
    const auto s = i % 2 ? SigmaA::haar(2, 60 + i) : endpoint_sigma(2, 60 + i);
    const auto v = alice_view_ensembles(s);
    const SearchOptions opts{2, 30, 0.4, 1e-3, static_cast<std::uint64_t>(i)};
    EXPECT_LE(maximize_measured_info({&v.y, &v.r}, opts).value, 1.0 + 1e-6);
    EXPECT_LE(maximize_measured_info({&v.y, &v.yr}, opts).value, 1.0 + 1e-6);
  }
}

TEST(Leakage, BobViewOfX) {
  const auto e = bob_view_of_x();
  EXPECT_NEAR(quantum::trace_distance(e.members()[0].state, e.members()[1].state), 0.5, 1e-12);
  EXPECT_NEAR(quantum::holevo_quantity(e), 0.5, 1e-12);
  EXPECT_NEAR(mutual_information(e, MeasurementSpec::product({Basis::Z, Basis::X})), 0.5, 1e-12);
  EXPECT_NEAR(mutual_information(e, MeasurementSpec::computational(4)), 1.0 - h2(0.75), 1e-12);
  EXPECT_NEAR(measured_info_max(e, {4, 60, 0.4, 1e-5, 3}).value, 0.5, 0.02);
}

TEST(Leakage, CombinedTables) {
  for (int k = 1; k <= 8; ++k) EXPECT_NEAR(combined_table_leakage(k), std::ldexp(1.0, -k), 1e-12) << k;
  EXPECT_NEAR(combined_table_leakage_explicit(1), 0.5, 1e-9);
  EXPECT_NEAR(combined_table_leakage_explicit(2), 0.25, 1e-9);
  EXPECT_NEAR(combined_table_leakage_explicit(3), 0.125, 1e-9);
  EXPECT_THROW(combined_table_leakage(0), std::invalid_argument);
  EXPECT_THROW(combined_table_leakage_explicit(4), std::invalid_argument);
}

Matrix swap_halves() {
  Matrix p = Matrix::Zero(16, 16);
  for (int i = 0; i < 16; ++i) p((i & 3) << 2 | i >> 2, i) = 1.0;
  return p;
}

TEST(RoleSwapped, PassiveBobLearnsNothing) {
  const auto v = bob_view_ensembles(Matrix::Identity(16, 16));
  const auto t = measured_triple(v, MeasurementSpec::computational(4));
  EXPECT_NEAR(t.x, 0.0, 1e-12);
  EXPECT_NEAR(t.r, 0.0, 1e-12);
  EXPECT_NEAR(t.xr, 0.0, 1e-12);
}

TEST(RoleSwapped, KeepingTheQubitsOracle) {
  // Bob keeps Alice's qubits and returns |00>. Reading them in Z gives each
  // of x, r', x ^ r' with probability 3/4.
  const auto v = bob_view_ensembles(swap_halves());
  const auto t = measured_triple(v, MeasurementSpec::computational(4));
  EXPECT_NEAR(t.x, 1.0 - h2(0.75), 1e-12);
  EXPECT_NEAR(t.r, 1.0 - h2(0.75), 1e-12);
  EXPECT_NEAR(t.xr, 1.0 - h2(0.75), 1e-12);
  EXPECT_NEAR(mutual_information(v.x, MeasurementSpec::product({Basis::Z, Basis::X})), 0.5, 1e-12);
}

TEST(RoleSwapped, SameMeasurementInequalities) {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const auto v = bob_view_ensembles(quantum::haar_random_unitary(16, rng));
    const auto t = measured_triple(v, MeasurementSpec::haar(4, rng));
    EXPECT_LE(t.x + t.r, 1.0 + 1e-6);
    EXPECT_LE(t.x + t.xr, 1.0 + 1e-6);
  }
  const auto v = bob_view_ensembles(swap_halves());
  EXPECT_LE(maximize_measured_info({&v.x, &v.r}, {3, 60, 0.4, 1e-4, 1}).value, 1.0 + 1e-6);
  EXPECT_LE(maximize_measured_info({&v.x, &v.xr}, {3, 60, 0.4, 1e-4, 1}).value, 1.0 + 1e-6);
}

TEST(Scan, ReproducibleAndRoundTrips) {
  const auto a = tradeoff_scan(200, 2, 42);
  const auto b = tradeoff_scan(200, 2, 42);
  std::ostringstream sa, sb;
  write_scan_csv(sa, a.points);
  write_scan_csv(sb, b.points);
  EXPECT_EQ(sa.str(), sb.str());
  std::istringstream in(sa.str());
  const auto back = read_scan_csv(in);
  ASSERT_EQ(back.size(), a.points.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].seed, a.points[i].seed);
    EXPECT_EQ(back[i].chi_y, a.points[i].chi_y);
    EXPECT_EQ(back[i].chi_r, a.points[i].chi_r);
    EXPECT_EQ(back[i].chi_yr, a.points[i].chi_yr);
  }
  EXPECT_EQ(a.points[a.argmax].sum(), a.max_sum);
  // Each point regenerates from its seed.
  const auto p = tradeoff_point(SigmaA::haar(2, a.points[17].seed));
  EXPECT_EQ(p.chi_y, a.points[17].chi_y);
}

TEST(Scan, CsvErrors) {
  std::istringstream bad_header("seed,chi_y\n");
  EXPECT_THROW(read_scan_csv(bad_header), std::invalid_argument);
  std::istringstream bad_row("seed,chi_y,chi_r,chi_yr,sum\n1,0.1,0.2\n");
  EXPECT_THROW(read_scan_csv(bad_row), std::invalid_argument);
  std::istringstream bad_num("seed,chi_y,chi_r,chi_yr,sum\n1,abc,0.2,0.3,0.5\n");
  EXPECT_THROW(read_scan_csv(bad_num), std::invalid_argument);
  EXPECT_THROW(tradeoff_scan(0, 2, 1), std::invalid_argument);
}

TEST(Scan, NoAncillaStaysBelowOneBit) {
  EXPECT_LE(tradeoff_scan(2000, 0, 3).max_sum, 1.0 + 1e-6);
}

TEST(Envelope, BinsAndAbsence) {
  const std::vector<TradeoffPoint> pts{{1, 0.0, 1.0, 0.2}, {2, 0.05, 0.995, 0.0}, {3, 0.3, 0.92, 0.1},
                                       {4, 0.9, 0.3, 0.3}};
  const auto rows = f_envelope(pts, {0.0, 0.01, 0.1, 0.5, 1.0});
  ASSERT_EQ(rows.size(), 5U);
  EXPECT_EQ(rows[0].count, 1);
  EXPECT_NEAR(*rows[0].f, 0.0, 1e-12);
  EXPECT_EQ(rows[1].count, 2);
  EXPECT_NEAR(*rows[1].f, 0.045, 1e-12);
  EXPECT_EQ(rows[2].count, 3);
  EXPECT_NEAR(*rows[2].f, 0.22, 1e-12);
  EXPECT_EQ(rows[4].count, 4);
  EXPECT_NEAR(*rows[4].f, 0.22, 1e-12);
  EXPECT_FALSE(f_envelope({{4, 0.9, 0.3, 0.3}}, {0.1})[0].f.has_value());
  EXPECT_THROW(f_envelope(pts, {-0.1}), std::invalid_argument);
}

TEST(Envelope, ConstrainedSearchRespectsTheBin) {
  const auto pts = constrained_search(0.05, 2, {3, 300, 9});
  ASSERT_GE(pts.size(), 3U);
  for (const auto& p : pts) EXPECT_GE(p.side(), 0.95 - kEnvelopeSlack);
  const auto rows = f_envelope(pts, {0.0, 0.05});
  ASSERT_TRUE(rows[0].f.has_value());
  EXPECT_NEAR(*rows[0].f, 0.0, 1e-6);
  EXPECT_GT(*rows[1].f, 0.0);
}

TEST(Envelope, EndpointSamplesStayNearHonest) {
  const auto r = endpoint_scan(300, 2, 5);
  int near = 0;
  for (const auto& p : r.points) {
    if (p.side() >= 0.99) {
      ++near;
      EXPECT_LE(p.chi_y, 0.07);
    }
  }
  EXPECT_GT(near, 50);
}

}  // namespace
