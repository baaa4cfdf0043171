#include "ott/protocols/nland.hpp"

#include <map>
#include <stdexcept>

#include "ott/quantum/teleport.hpp"

namespace ott::protocols {

using quantum::Basis;
using quantum::Gate;
using quantum::Matrix;
using quantum::PureState;

std::string protocol_name(Protocol p) {
  switch (p) {
    case Protocol::kNland: return "nland";
    case Protocol::kNland3: return "nland3";
    case Protocol::kNland2: return "nland2";
  }
  return "?";
}

Protocol parse_protocol(const std::string& name) {
  if (name == "nland") return Protocol::kNland;
  if (name == "nland3") return Protocol::kNland3;
  if (name == "nland2") return Protocol::kNland2;
  throw std::invalid_argument("unknown protocol '" + name + "' (expected nland, nland3 or nland2)");
}

std::array<int, 4> NlandTranscript::bob_statistic_bits() const {
  if (protocol == Protocol::kNland) return {y, h1, h2, p};
  return bob_bits;
}

namespace {

void require_role(const AdversaryStrategy& s, Role role) {
  if (s.role != role) throw std::invalid_argument("strategy assigned to the wrong party");
}

[[noreturn]] void unsupported(const AdversaryStrategy& s, const std::string& protocol) {
  throw std::invalid_argument("strategy " + describe(s) + " is not defined for protocol " + protocol);
}

int target_bit(Target t, int y, int r) {
  switch (t) {
    case Target::kY: return y;
    case Target::kR: return r;
    case Target::kYR: return y ^ r;
  }
  return 0;
}

// Alice's table entries after a Helstrom guess of `target`: she picks x so that
// x*y ^ r is the guessed quantity when possible, and coin flips otherwise.
void cheating_alice_output(Target target, int guess, Rng& rng, int& x, int& e) {
  switch (target) {
    case Target::kY:
      x = rng.bit();
      e = rng.bit();
      break;
    case Target::kR:
      x = 0;
      e = guess;
      break;
    case Target::kYR:
      x = 1;
      e = guess;
      break;
  }
}

int sample_projector(const PureState& state, const Matrix& proj0, Rng& rng) {
  return rng.uniform() < quantum::projector_probability(state, proj0) ? 0 : 1;
}

std::vector<int> measure_all(PureState& state, int count, Basis basis, Rng& rng) {
  std::vector<int> out;
  for (int q = 0; q < count; ++q) {
    auto m = quantum::measure_qubit(state, q, basis, rng);
    out.push_back(m.bit);
    state = std::move(m.post);
  }
  return out;
}

bool keeps_instance(const AdversaryStrategy& alice, const std::vector<int>& outcomes) {
  int parity = 0;
  for (int k : alice.keep_outcomes) {
    if (k < 0 || k >= static_cast<int>(outcomes.size())) throw std::invalid_argument("declare_failure index out of range");
    parity ^= outcomes[k];
  }
  return parity == alice.keep_parity;
}

NlandRun fail(NlandRun run, std::string reason) {
  run.transcript.aborted = true;
  run.transcript.failure_reason = std::move(reason);
  run.table.reset();
  return run;
}

// Helstrom projector for the target bit given Alice's sent state, over Bob's honest branches.
Matrix nland_target_projector(const PureState& sent, Target target) {
  const auto d = sent.dim();
  Matrix rho0 = Matrix::Zero(d, d);
  Matrix rho1 = Matrix::Zero(d, d);
  for (const auto& b : nland_bob_branches(sent)) {
    const auto& v = b.returned.amplitudes();
    (target_bit(target, b.y, b.r()) ? rho1 : rho0).noalias() += v * v.adjoint() / 16.0;
  }
  return quantum::helstrom_projector(rho0, rho1);
}

// Cache keyed by (target, w): the one-message protocol's conditional Helstrom projectors.
const Matrix& nland3_target_projector(Target target, int w) {
  static const std::map<std::pair<int, int>, Matrix> cache = [] {
    std::map<std::pair<int, int>, Matrix> out;
    for (Target t : {Target::kY, Target::kR, Target::kYR}) {
      for (int wv = 0; wv < 2; ++wv) {
        Matrix rho0 = Matrix::Zero(16, 16);
        Matrix rho1 = Matrix::Zero(16, 16);
        for (int bits = 0; bits < 16; ++bits) {
          const std::array<int, 4> i{bits >> 3 & 1, bits >> 2 & 1, bits >> 1 & 1, bits & 1};
          if ((i[0] ^ i[1] ^ i[2] ^ i[3]) != wv) continue;
          for (int y = 0; y < 2; ++y) {
            const quantum::Vector v = nland3_bob_state(i, y).amplitudes();
            (target_bit(t, y, i[2] ^ i[3]) ? rho1 : rho0).noalias() += v * v.adjoint();
          }
        }
        out.emplace(std::make_pair(static_cast<int>(t), wv), quantum::helstrom_projector(rho0, rho1));
      }
    }
    return out;
  }();
  return cache.at({static_cast<int>(target), w});
}

}  // namespace

PureState alice_nland_preparation(int x, int s, int t) {
  if (s == 0) return PureState::basis(2, static_cast<std::uint64_t>(x << 1 | t));
  PureState st = PureState::basis(2, static_cast<std::uint64_t>(t << 1 | x));
  st = quantum::apply_gate(st, Gate::h(0));
  return quantum::apply_gate(st, Gate::h(1));
}

PureState nland_bob_apply(const PureState& sent, int y, int h1, int h2, int p) {
  PureState st = sent;
  if (y == 0) st = quantum::apply_gate(st, Gate::cnot(0, 1));
  if (h1) st = quantum::apply_gate(st, Gate::y(0));
  if (h2) st = quantum::apply_gate(st, Gate::y(1));
  if (p) {
    st = quantum::apply_gate(st, Gate::z(0));
    st = quantum::apply_gate(st, Gate::z(1));
  }
  return st;
}

std::vector<BobBranch> nland_bob_branches(const PureState& sent) {
  std::vector<BobBranch> out;
  out.reserve(16);
  for (int bits = 0; bits < 16; ++bits) {
    const int y = bits >> 3 & 1;
    const int h1 = bits >> 2 & 1;
    const int h2 = bits >> 1 & 1;
    const int p = bits & 1;
    out.push_back({y, h1, h2, p, nland_bob_apply(sent, y, h1, h2, p)});
  }
  return out;
}

PureState nland3_bob_state(const std::array<int, 4>& i, int y) {
  PureState st = PureState::basis(4, static_cast<std::uint64_t>(i[0] << 3 | i[1] << 2 | i[2] << 1 | i[3]));
  st = quantum::apply_gate(st, Gate::h(0));
  st = quantum::apply_gate(st, Gate::h(1));
  st = quantum::apply_gate(st, Gate::cnot(0, 2));
  st = quantum::apply_gate(st, Gate::cnot(1, 3));
  if (y == 0) st = quantum::apply_gate(st, Gate::cnot(0, 1));
  return st;
}

namespace {

NlandRun nland_core(const AdversaryStrategy& alice, const AdversaryStrategy& bob, const NoiseModel& noise,
                    const NlandCoins& c, bool lost, Rng& rng) {
  NlandRun run;
  auto& tr = run.transcript;
  tr.protocol = Protocol::kNland;
  tr.x = c.x;
  tr.y = c.y;
  tr.s = c.s;
  tr.t = c.t;
  tr.h1 = c.h1;
  tr.h2 = c.h2;
  tr.p = c.p;
  tr.h = c.h1 ^ c.h2;
  if (lost) return fail(std::move(run), "loss");

  const bool alice_prepares = alice.kind == StrategyKind::kEntangledInput || alice.kind == StrategyKind::kCustomSigma;
  PureState st = alice_prepares ? *alice.prepared : alice_nland_preparation(c.x, c.s, c.t);
  const PureState alice_sent = st;
  tr.sent_states.push_back(st);
  st = apply_channel_noise(st, {0, 1}, noise, rng);

  if (bob.kind == StrategyKind::kFixedMeasurement) {
    if (bob.bases.size() != 2) throw std::invalid_argument("fixed measurement needs one basis per received qubit");
    for (int q = 0; q < 2; ++q) {
      auto m = quantum::measure_qubit(st, q, bob.bases[q], rng);
      tr.bob_observed.push_back(m.bit);
      st = std::move(m.post);
    }
    tr.bob_guess = tr.bob_observed[bob.guess_qubit];
  } else if (!bob.honest_behaviour()) {
    unsupported(bob, "nland");
  }
  st = nland_bob_apply(st, c.y, c.h1, c.h2, c.p);
  tr.sent_states.push_back(st);
  st = apply_channel_noise(st, {0, 1}, noise, rng);

  int x = c.x;
  int e = 0;
  switch (alice.kind) {
    case StrategyKind::kHonest:
    case StrategyKind::kHonestButCurious:
    case StrategyKind::kDeclareFailure: {
      tr.alice_outcomes = measure_all(st, 2, c.s ? Basis::X : Basis::Z, rng);
      e = tr.alice_outcomes[0] ^ tr.alice_outcomes[1] ^ c.t;
      if (alice.kind == StrategyKind::kHonestButCurious) tr.alice_observed = tr.alice_outcomes;
      if (alice.kind == StrategyKind::kDeclareFailure && !keeps_instance(alice, tr.alice_outcomes)) {
        return fail(std::move(run), "declared by alice");
      }
      break;
    }
    case StrategyKind::kEntangledInput:
    case StrategyKind::kCustomSigma:
    case StrategyKind::kOptimalDistinguisher: {
      const int guess = sample_projector(st, nland_target_projector(alice_sent, alice.target), rng);
      tr.alice_guess = guess;
      cheating_alice_output(alice.target, guess, rng, x, e);
      break;
    }
    default:
      unsupported(alice, "nland");
  }
  tr.x = x;
  run.table = OneTimeTable{0, x, c.y, e, tr.h};
  return run;
}

NlandRun nland3_core(const AdversaryStrategy& alice, const AdversaryStrategy& bob, const NoiseModel& noise,
                     const Nland3Coins& c, bool lost, Rng& rng) {
  NlandRun run;
  auto& tr = run.transcript;
  tr.protocol = Protocol::kNland3;
  tr.y = c.y;
  tr.s = c.s;
  tr.bob_bits = c.i;
  tr.w = c.i[0] ^ c.i[1] ^ c.i[2] ^ c.i[3];
  tr.h = c.i[2] ^ c.i[3];
  if (lost) return fail(std::move(run), "loss");

  PureState st;
  if (bob.honest_behaviour()) {
    st = nland3_bob_state(c.i, c.y);
  } else if (bob.kind == StrategyKind::kEntangledInput) {
    st = *bob.prepared;
  } else {
    unsupported(bob, "nland3");
  }
  tr.sent_states.push_back(st);
  st = apply_channel_noise(st, {0, 1, 2, 3}, noise, rng);

  int x = 0;
  int e = 0;
  switch (alice.kind) {
    case StrategyKind::kHonest:
    case StrategyKind::kHonestButCurious:
    case StrategyKind::kDeclareFailure: {
      tr.alice_outcomes = measure_all(st, 4, c.s ? Basis::X : Basis::Z, rng);
      const auto& o = tr.alice_outcomes;
      const int all = o[0] ^ o[1] ^ o[2] ^ o[3];
      x = c.s == 0 ? o[0] : o[1];
      e = all ^ x ^ (c.s & *tr.w);
      if (alice.kind == StrategyKind::kHonestButCurious) tr.alice_observed = o;
      if (alice.kind == StrategyKind::kDeclareFailure && !keeps_instance(alice, o)) {
        return fail(std::move(run), "declared by alice");
      }
      break;
    }
    case StrategyKind::kOptimalDistinguisher: {
      const int guess = sample_projector(st, nland3_target_projector(alice.target, *tr.w), rng);
      tr.alice_guess = guess;
      cheating_alice_output(alice.target, guess, rng, x, e);
      break;
    }
    default:
      unsupported(alice, "nland3");
  }
  tr.x = x;
  run.table = OneTimeTable{0, x, c.y, e, tr.h};
  return run;
}

}  // namespace

NlandRun run_nland(const AdversaryStrategy& alice, const AdversaryStrategy& bob, const NoiseModel& noise, Rng& rng) {
  require_role(alice, Role::kAlice);
  require_role(bob, Role::kBob);
  noise.validate();
  NlandCoins c{};
  c.x = rng.bit();
  c.y = rng.bit();
  c.s = rng.bit();
  c.t = rng.bit();
  c.h1 = rng.bit();
  c.h2 = rng.bit();
  c.p = rng.bit();
  const bool lost = noise.loss > 0.0 && rng.bernoulli(noise.loss);
  return nland_core(alice, bob, noise, c, lost, rng);
}

NlandRun run_nland_with(const NlandCoins& coins, Rng& rng) {
  return nland_core(AdversaryStrategy::honest(Role::kAlice), AdversaryStrategy::honest(Role::kBob), NoiseModel{},
                    coins, false, rng);
}

NlandRun run_nland3(const AdversaryStrategy& alice, const AdversaryStrategy& bob, const NoiseModel& noise, Rng& rng) {
  require_role(alice, Role::kAlice);
  require_role(bob, Role::kBob);
  noise.validate();
  Nland3Coins c{};
  for (int& b : c.i) b = rng.bit();
  c.y = rng.bit();
  c.s = rng.bit();
  const bool lost = noise.loss > 0.0 && rng.bernoulli(noise.loss);
  return nland3_core(alice, bob, noise, c, lost, rng);
}

NlandRun run_nland3_with(const Nland3Coins& coins, Rng& rng) {
  return nland3_core(AdversaryStrategy::honest(Role::kAlice), AdversaryStrategy::honest(Role::kBob), NoiseModel{},
                     coins, false, rng);
}

NlandRun run_nland2(const AdversaryStrategy& alice, const AdversaryStrategy& bob, const NoiseModel& noise, Rng& rng) {
  require_role(alice, Role::kAlice);
  require_role(bob, Role::kBob);
  noise.validate();
  if (!bob.honest_behaviour()) unsupported(bob, "nland2");
  if (!alice.honest_behaviour() && alice.kind != StrategyKind::kDeclareFailure) unsupported(alice, "nland2");

  NlandRun run;
  auto& tr = run.transcript;
  tr.protocol = Protocol::kNland2;
  tr.y = rng.bit();
  tr.s = rng.bit();
  if (noise.loss > 0.0 && rng.bernoulli(noise.loss)) return fail(std::move(run), "loss");

  // Register: A1 A2 B1 B2, pairs (A1,B1) and (A2,B2). Alice's halves travel from Bob's source.
  PureState st = quantum::move_qubit(PureState::epr().tensor(PureState::epr()), 2, 1);
  st = apply_channel_noise(st, {0, 1}, noise, rng);
  if (tr.y == 0) st = quantum::apply_gate(st, Gate::cnot(2, 3));

  auto first = quantum::teleport_qubit(st, 2, rng);
  auto second = quantum::teleport_qubit(first.state, 3, rng);
  st = apply_channel_noise(second.state, {2, 3}, noise, rng);
  tr.bob_bits = {first.outcome.x_bit, first.outcome.z_bit, second.outcome.x_bit, second.outcome.z_bit};
  tr.w = tr.bob_bits[0] ^ tr.bob_bits[1] ^ tr.bob_bits[2] ^ tr.bob_bits[3];
  tr.h = tr.bob_bits[0] ^ tr.bob_bits[2];
  tr.sent_states.push_back(st);

  tr.alice_outcomes = measure_all(st, 4, tr.s ? Basis::X : Basis::Z, rng);
  const auto& o = tr.alice_outcomes;
  tr.x = tr.s == 0 ? o[0] : o[1];
  const int e = (o[0] ^ o[1] ^ o[2] ^ o[3]) ^ tr.x ^ (tr.s & *tr.w);
  if (alice.kind == StrategyKind::kHonestButCurious) tr.alice_observed = o;
  if (alice.kind == StrategyKind::kDeclareFailure && !keeps_instance(alice, o)) {
    return fail(std::move(run), "declared by alice");
  }
  run.table = OneTimeTable{0, tr.x, tr.y, e, tr.h};
  return run;
}

NlandRun run_protocol(Protocol protocol, const AdversaryStrategy& alice, const AdversaryStrategy& bob,
                      const NoiseModel& noise, Rng& rng) {
  switch (protocol) {
    case Protocol::kNland: return run_nland(alice, bob, noise, rng);
    case Protocol::kNland3: return run_nland3(alice, bob, noise, rng);
    case Protocol::kNland2: return run_nland2(alice, bob, noise, rng);
  }
  throw std::invalid_argument("unknown protocol");
}

std::vector<NlandRun> generate_batch(const BatchSpec& spec) {
  if (spec.count < 0) throw std::invalid_argument("batch size must be nonnegative");
  const auto honest_a = AdversaryStrategy::honest(Role::kAlice);
  const auto honest_b = AdversaryStrategy::honest(Role::kBob);
  auto use = [](double fraction, Rng& rng) {
    if (fraction >= 1.0) return true;
    if (fraction <= 0.0) return false;
    return rng.bernoulli(fraction);
  };
  std::vector<NlandRun> runs;
  runs.reserve(static_cast<std::size_t>(spec.count));
  for (std::int64_t i = 0; i < spec.count; ++i) {
    Rng rng = Rng::stream(spec.seed, static_cast<std::uint64_t>(i));
    const bool alice_cheats = use(spec.alice_cheat_fraction, rng);
    const bool bob_cheats = use(spec.bob_cheat_fraction, rng);
    NlandRun run = run_protocol(spec.protocol, alice_cheats ? spec.alice : honest_a, bob_cheats ? spec.bob : honest_b,
                                spec.noise, rng);
    if (run.table) run.table->id = i;
    runs.push_back(std::move(run));
  }
  return runs;
}

std::vector<OneTimeTable> successful_tables(const std::vector<NlandRun>& runs) {
  std::vector<OneTimeTable> out;
  for (const auto& r : runs) {
    if (r.table) out.push_back(*r.table);
  }
  return out;
}

double uniformity_chi_square(const std::vector<std::int64_t>& counts) {
  if (counts.empty()) throw std::invalid_argument("no cells");
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) return 0.0;
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  double chi = 0.0;
  for (auto c : counts) chi += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return chi;
}

FailureDetectorReport detect_selective_failures(const std::vector<NlandRun>& runs, double threshold) {
  std::vector<std::int64_t> counts(16, 0);
  FailureDetectorReport rep;
  for (const auto& r : runs) {
    if (r.transcript.aborted) continue;
    const auto b = r.transcript.bob_statistic_bits();
    ++counts[static_cast<std::size_t>(b[0] << 3 | b[1] << 2 | b[2] << 1 | b[3])];
    ++rep.surviving;
  }
  rep.statistic = uniformity_chi_square(counts);
  rep.flagged = rep.statistic > threshold;
  return rep;
}

OneTimeTable join_views(const AliceTableView& a, const BobTableView& b) {
  if (a.id != b.id) throw std::invalid_argument("table views have different ids");
  return {a.id, a.x, b.y, a.e, b.f};
}

std::vector<AliceTableView> alice_views(const std::vector<OneTimeTable>& tables) {
  std::vector<AliceTableView> out;
  out.reserve(tables.size());
  for (const auto& t : tables) out.push_back(alice_view(t));
  return out;
}

std::vector<BobTableView> bob_views(const std::vector<OneTimeTable>& tables) {
  std::vector<BobTableView> out;
  out.reserve(tables.size());
  for (const auto& t : tables) out.push_back(bob_view(t));
  return out;
}

}  // namespace ott::protocols
