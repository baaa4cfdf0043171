#include <gtest/gtest.h>

#include <sstream>

#include "ott/protocols/io.hpp"
#include "ott/protocols/nland.hpp"

namespace q = ott::quantum;
using namespace ott::protocols;
using q::PureState;

namespace {

const AdversaryStrategy kHonestA = AdversaryStrategy::honest(Role::kAlice);
const AdversaryStrategy kHonestB = AdversaryStrategy::honest(Role::kBob);

double correct_rate(const std::vector<NlandRun>& runs) {
  int ok = 0;
  int n = 0;
  for (const auto& r : runs) {
    if (!r.table) continue;
    ++n;
    ok += r.table->correct();
  }
  return static_cast<double>(ok) / n;
}

// Builds the one-message protocol state gate by gate from its textual description.
PureState one_message_state(const std::array<int, 4>& i, int y) {
  PureState st = PureState::basis(1, i[0]);
  for (int k = 1; k < 4; ++k) st = st.tensor(PureState::basis(1, i[k]));
  for (const auto& g : {q::Gate::h(0), q::Gate::h(1), q::Gate::cnot(0, 2), q::Gate::cnot(1, 3)}) st = q::apply_gate(st, g);
  if (y == 0) st = q::apply_gate(st, q::Gate::cnot(0, 1));
  return st;
}

}  // namespace

TEST(Nland, HonestCorrectOverAllCoins) {
  ott::Rng rng(1);
  for (int bits = 0; bits < 128; ++bits) {
    const NlandCoins c{bits >> 6 & 1, bits >> 5 & 1, bits >> 4 & 1, bits >> 3 & 1, bits >> 2 & 1, bits >> 1 & 1, bits & 1};
    for (int rep = 0; rep < 4; ++rep) {
      const auto run = run_nland_with(c, rng);
      ASSERT_TRUE(run.table.has_value());
      EXPECT_TRUE(run.table->correct()) << "coins " << bits;
      EXPECT_EQ(run.transcript.h, c.h1 ^ c.h2);
      EXPECT_FALSE(run.transcript.w.has_value());
    }
  }
}

TEST(Nland3, HonestCorrectForEveryOutcomePattern) {
  int cases = 0;
  for (int bits = 0; bits < 64; ++bits) {
    const std::array<int, 4> i{bits >> 5 & 1, bits >> 4 & 1, bits >> 3 & 1, bits >> 2 & 1};
    const int y = bits >> 1 & 1;
    const int s = bits & 1;
    const int w = i[0] ^ i[1] ^ i[2] ^ i[3];
    const int r = i[2] ^ i[3];
    const PureState st = one_message_state(i, y);
    EXPECT_GT(q::fidelity(st, nland3_bob_state(i, y)), 1.0 - 1e-12);
    for (int out = 0; out < 16; ++out) {
      std::optional<q::Measurement> m = q::Measurement{0, 1.0, st};
      std::array<int, 4> o{};
      for (int k = 0; k < 4 && m; ++k) {
        o[k] = out >> (3 - k) & 1;
        m = q::project_qubit(m->post, k, s ? q::Basis::X : q::Basis::Z, o[k]);
      }
      if (!m) continue;
      const int x = s == 0 ? o[0] : o[1];
      const int g = o[0] ^ o[1] ^ o[2] ^ o[3] ^ x;
      EXPECT_EQ(g ^ (s & w) ^ r, x & y);
    }
    ++cases;
  }
  ASSERT_EQ(cases, 64);
  ott::Rng rng(3);
  for (int bits = 0; bits < 64; ++bits) {
    const Nland3Coins c{{bits >> 5 & 1, bits >> 4 & 1, bits >> 3 & 1, bits >> 2 & 1}, bits >> 1 & 1, bits & 1};
    EXPECT_TRUE(run_nland3_with(c, rng).table->correct());
  }
}

TEST(Nland2, HonestAlwaysCorrect) {
  ott::Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto run = run_nland2(kHonestA, kHonestB, {}, rng);
    ASSERT_TRUE(run.table.has_value());
    EXPECT_TRUE(run.table->correct());
    const auto& b = run.transcript.bob_bits;
    EXPECT_EQ(*run.transcript.w, b[0] ^ b[1] ^ b[2] ^ b[3]);
  }
}

TEST(Nland, BobFixedMeasurementGuessesThreeQuarters) {
  ott::Rng rng(11);
  const auto bob = AdversaryStrategy::fixed_measurement({q::Basis::Z, q::Basis::X});
  int hits = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto run = run_nland(kHonestA, bob, {}, rng);
    hits += *run.transcript.bob_guess == run.transcript.x;
  }
  EXPECT_NEAR(hits / static_cast<double>(n), 0.75, 0.02);
}

TEST(Nland, EntangledAliceLearnsYButLosesCorrectness) {
  ott::Rng rng(12);
  const auto alice = AdversaryStrategy::entangled_input(Role::kAlice, y_revealing_state(), Target::kY);
  int hits = 0;
  int ok = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto run = run_nland(alice, kHonestB, {}, rng);
    hits += *run.transcript.alice_guess == run.transcript.y;
    ok += run.table->correct();
  }
  EXPECT_GE(hits / static_cast<double>(n), 0.999);
  EXPECT_NEAR(ok / static_cast<double>(n), 0.5, 0.02);
}

TEST(Nland3, CheatingBobForcesXButRandomizesTable) {
  ott::Rng rng(13);
  const auto bob = parse_strategy(Role::kBob, "prepared:0+00");
  int ok = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto run = run_nland3(kHonestA, bob, {}, rng);
    EXPECT_EQ(run.table->x, 0);
    ok += run.table->correct();
  }
  EXPECT_NEAR(ok / static_cast<double>(n), 0.5, 0.02);
}

TEST(Nland3, AliceDistinguisherGuessesYThreeQuarters) {
  ott::Rng rng(14);
  const auto alice = AdversaryStrategy::optimal_distinguisher(Target::kY);
  int hits = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto run = run_nland3(alice, kHonestB, {}, rng);
    hits += *run.transcript.alice_guess == run.transcript.y;
  }
  EXPECT_NEAR(hits / static_cast<double>(n), 0.75, 0.02);
}

TEST(Nland2, DistributionMatchesTwoMessageProtocol) {
  std::vector<std::int64_t> a(16, 0);
  std::vector<std::int64_t> b(16, 0);
  BatchSpec spec;
  spec.count = 10000;
  spec.seed = 21;
  spec.protocol = Protocol::kNland;
  for (const auto& t : successful_tables(generate_batch(spec))) ++a[t.x << 3 | t.y << 2 | t.e << 1 | t.f];
  spec.protocol = Protocol::kNland2;
  for (const auto& t : successful_tables(generate_batch(spec))) ++b[t.x << 3 | t.y << 2 | t.e << 1 | t.f];
  // Two-sample chi-square over the 8 reachable cells (correct tables only): 7 dof, 99.9% point 24.32.
  double chi = 0.0;
  int cells = 0;
  for (int k = 0; k < 16; ++k) {
    if (a[k] + b[k] == 0) continue;
    ++cells;
    chi += std::pow(static_cast<double>(a[k] - b[k]), 2) / static_cast<double>(a[k] + b[k]);
  }
  EXPECT_EQ(cells, 8);
  EXPECT_LT(chi, 24.32);
}

TEST(Nland2, SelectiveFailureIsDetected) {
  BatchSpec spec;
  spec.protocol = Protocol::kNland2;
  spec.count = 4000;
  spec.seed = 5;
  spec.alice = AdversaryStrategy::declare_failure({0, 2}, 0);
  const auto cheat = detect_selective_failures(generate_batch(spec));
  EXPECT_TRUE(cheat.flagged) << cheat.statistic;
  EXPECT_LT(cheat.surviving, 4000);
  spec.alice = kHonestA;
  const auto honest = detect_selective_failures(generate_batch(spec));
  EXPECT_FALSE(honest.flagged) << honest.statistic;
  EXPECT_EQ(honest.surviving, 4000);
}

TEST(Noise, ZeroRateIsIdentity) {
  ott::Rng rng(1);
  const PureState s = q::haar_random_state(2, rng);
  const auto out = apply_channel_noise(s, {0, 1}, NoiseModel{}, rng);
  EXPECT_GT(q::fidelity(out, s), 1.0 - 1e-12);
}

TEST(Noise, FullRateOnEprHalfKeepsMarginal) {
  ott::Rng rng(2);
  const int keep[] = {0};
  q::Matrix avg = q::Matrix::Zero(2, 2);
  const int n = 400;
  for (int i = 0; i < n; ++i) {
    const auto out = apply_channel_noise(PureState::epr(), {1}, NoiseModel{1.0, 0.0}, rng);
    const auto m = q::reduced_density(out, keep);
    EXPECT_LT(q::trace_distance(m, q::DensityMatrix::maximally_mixed(1)), 1e-12);
  }
}

TEST(Noise, ErrorRateIsPositiveAndReproducible) {
  BatchSpec spec;
  spec.count = 10000;
  spec.seed = 99;
  spec.noise.depolarizing = 0.05;
  const auto first = generate_batch(spec);
  const double err = 1.0 - correct_rate(first);
  EXPECT_GT(err, 0.0);
  const auto second = generate_batch(spec);
  EXPECT_EQ(successful_tables(first), successful_tables(second));
  RecordProperty("nland_error_rate_at_0.05", std::to_string(err));
}

TEST(Noise, LossYieldsReportedFailures) {
  BatchSpec spec;
  spec.count = 2000;
  spec.seed = 4;
  spec.noise.loss = 0.25;
  const auto runs = generate_batch(spec);
  int failed = 0;
  for (const auto& r : runs) {
    if (r.transcript.aborted) {
      ++failed;
      EXPECT_EQ(r.transcript.failure_reason, "loss");
    }
  }
  EXPECT_NEAR(failed / 2000.0, 0.25, 0.03);
}

TEST(Properties, MarginalsAreUniform) {
  for (Protocol p : {Protocol::kNland, Protocol::kNland3, Protocol::kNland2}) {
    BatchSpec spec;
    spec.protocol = p;
    spec.count = 10000;
    spec.seed = 17;
    int e = 0;
    int f = 0;
    for (const auto& t : successful_tables(generate_batch(spec))) {
      e += t.e;
      f += t.f;
    }
    EXPECT_NEAR(e / 10000.0, 0.5, 0.02) << protocol_name(p);
    EXPECT_NEAR(f / 10000.0, 0.5, 0.02) << protocol_name(p);
  }
}

TEST(Properties, ReturnedStateAveragesToMaximallyMixed) {
  for (int bits = 0; bits < 8; ++bits) {
    const int x = bits >> 2 & 1;
    const int s = bits >> 1 & 1;
    const int t = bits & 1;
    PureState sent = PureState::basis(2, s ? (t << 1 | x) : (x << 1 | t));
    if (s) sent = q::apply_gate(q::apply_gate(sent, q::Gate::h(0)), q::Gate::h(1));
    std::vector<PureState> returned;
    for (const auto& b : nland_bob_branches(sent)) returned.push_back(b.returned);
    const auto avg = q::DensityMatrix::uniform_mixture(returned);
    EXPECT_LT(q::trace_distance(avg, q::DensityMatrix::maximally_mixed(2)), 1e-12);
  }
}

TEST(Properties, CuriousPartiesChangeNothing) {
  for (Protocol p : {Protocol::kNland, Protocol::kNland3, Protocol::kNland2}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      ott::Rng r1(seed);
      ott::Rng r2(seed);
      const auto honest = run_protocol(p, kHonestA, kHonestB, {}, r1);
      const auto curious =
          run_protocol(p, AdversaryStrategy::curious(Role::kAlice), AdversaryStrategy::curious(Role::kBob), {}, r2);
      EXPECT_EQ(honest.table, curious.table);
      Json a = transcript_json(honest);
      Json b = transcript_json(curious);
      b.erase("alice_observed");
      b.erase("bob_observed");
      EXPECT_EQ(a, b);
    }
  }
}

TEST(Strategies, RejectsMisassignedOrUndefined) {
  ott::Rng rng(1);
  EXPECT_THROW(run_nland(kHonestB, kHonestB, {}, rng), std::invalid_argument);
  EXPECT_THROW(run_nland2(AdversaryStrategy::optimal_distinguisher(Target::kY), kHonestB, {}, rng),
               std::invalid_argument);
  EXPECT_THROW(parse_strategy(Role::kAlice, "fixed:ZX"), std::invalid_argument);
  EXPECT_THROW(parse_strategy(Role::kBob, "nonsense"), std::invalid_argument);
  EXPECT_THROW(run_nland(kHonestA, kHonestB, NoiseModel{1.5, 0.0}, rng), std::invalid_argument);
}

TEST(Io, BatchFilesSeparateViews) {
  BatchSpec spec;
  spec.count = 50;
  spec.seed = 8;
  const auto tables = successful_tables(generate_batch(spec));
  const Json a = alice_batch_json(tables);
  const Json b = bob_batch_json(tables);
  for (const auto& row : a["tables"]) {
    EXPECT_FALSE(row.contains("y"));
    EXPECT_FALSE(row.contains("f"));
  }
  for (const auto& row : b["tables"]) {
    EXPECT_FALSE(row.contains("x"));
    EXPECT_FALSE(row.contains("e"));
  }
  EXPECT_EQ(join_batches(parse_alice_batch(Json::parse(a.dump())), parse_bob_batch(Json::parse(b.dump()))), tables);
}

TEST(Io, JsonlRoundTripAndEmptyBatch) {
  std::ostringstream empty;
  write_jsonl(empty, "no runs", {});
  EXPECT_EQ(empty.str(), "# no runs\n");
  std::istringstream back_empty(empty.str());
  EXPECT_TRUE(read_jsonl(back_empty).empty());

  BatchSpec spec;
  spec.count = 5;
  std::vector<Json> recs;
  for (const auto& r : generate_batch(spec)) recs.push_back(transcript_json(r));
  std::ostringstream out;
  write_jsonl(out, "five runs", recs);
  std::istringstream in(out.str());
  EXPECT_EQ(read_jsonl(in), recs);
}
