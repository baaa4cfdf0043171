#include "ott/mpc/primitives.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ott::mpc {

namespace {

void check_bit(int v, const char* what) {
  if (v != 0 && v != 1) throw std::invalid_argument(std::string(what) + " must be a bit");
}

AndResult run_and(int a, int b, const OneTimeTable& table) {
  const auto alice = protocols::alice_view(table);
  const auto bob = protocols::bob_view(table);
  AndResult r;
  r.wire.a_prime = a ^ alice.x;
  r.wire.b_prime = b ^ bob.y;
  r.out.share_a = (alice.x & r.wire.b_prime) ^ alice.e;
  r.out.share_b = (r.wire.a_prime & b) ^ bob.f;
  return r;
}

}  // namespace

AndResult nonlocal_and(int a, int b, const OneTimeTable& table, ConsumptionLedger& ledger) {
  check_bit(a, "Alice's input");
  check_bit(b, "Bob's input");
  ledger.consume(table.id);
  return run_and(a, b, table);
}

AndResult nonlocal_and(int a, int b, TablePool& pool) {
  check_bit(a, "Alice's input");
  check_bit(b, "Bob's input");
  return run_and(a, b, pool.take());
}

void LinearPoly::validate() const {
  if (a.empty()) throw std::invalid_argument("linear polynomial needs at least one term");
  if (a.size() != b.size()) throw std::invalid_argument("Alice and Bob coefficient counts differ");
  check_bit(c, "constant");
  for (int v : a) check_bit(v, "Alice's variable");
  for (int v : b) check_bit(v, "Bob's coefficient");
}

int LinearPoly::evaluate() const {
  int z = c;
  for (std::size_t j = 0; j < a.size(); ++j) z ^= a[j] & b[j];
  return z;
}

PolyResult eval_linear_poly(const LinearPoly& p, TablePool& pool) {
  p.validate();
  pool.require(static_cast<std::int64_t>(p.a.size()));
  PolyResult res;
  res.out.share_b = p.c;
  for (std::size_t j = 0; j < p.a.size(); ++j) {
    const auto term = nonlocal_and(p.a[j], p.b[j], pool);
    res.out.share_a ^= term.out.share_a;
    res.out.share_b ^= term.out.share_b;
    res.wire.push_back(term.wire);
  }
  return res;
}

OtResult ot_1of2(int m0, int m1, int b, TablePool& pool) {
  check_bit(m0, "m0");
  check_bit(m1, "m1");
  const auto poly = eval_linear_poly(LinearPoly{0, {m0 ^ m1}, {b}}, pool);
  const int g = poly.out.share_a;
  const int h = poly.out.share_b;
  OtResult r;
  r.alice_received_b_prime = poly.wire[0].b_prime;
  r.bob_received_a_prime = poly.wire[0].a_prime;
  r.bob_received_masked_m0 = m0 ^ g;
  r.output = r.bob_received_masked_m0 ^ h;
  return r;
}

const char* decision_name(RevealDecision d) {
  switch (d) {
    case RevealDecision::kZero: return "0";
    case RevealDecision::kOne: return "1";
    case RevealDecision::kCheatDetected: return "cheat-detected";
    case RevealDecision::kAmbiguous: return "ambiguous";
  }
  return "?";
}

CommitmentState bit_commit(int b, const std::vector<int>& bob_inputs, TablePool& pool, bool allow_zero_inputs) {
  check_bit(b, "committed bit");
  if (bob_inputs.empty()) throw std::invalid_argument("commitment needs at least one instance");
  bool nonzero = false;
  for (int v : bob_inputs) {
    check_bit(v, "Bob's input");
    nonzero = nonzero || v;
  }
  if (!nonzero && !allow_zero_inputs) {
    throw std::invalid_argument("Bob's inputs are all zero, so the commitment would not bind");
  }
  pool.require(static_cast<std::int64_t>(bob_inputs.size()));
  CommitmentState s;
  s.m = static_cast<int>(bob_inputs.size());
  s.b = b;
  s.bob_inputs = bob_inputs;
  for (int beta : bob_inputs) {
    const auto r = nonlocal_and(b, beta, pool);
    s.alice_shares.push_back(r.out.share_a);
    s.bob_shares.push_back(r.out.share_b);
  }
  return s;
}

std::vector<int> random_nonzero_inputs(int m, Rng& rng) {
  if (m < 1 || m > 62) throw std::invalid_argument("commitment size must be in 1..62");
  const std::uint64_t v = 1 + rng.below((std::uint64_t{1} << m) - 1);
  std::vector<int> out(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) out[static_cast<std::size_t>(j)] = static_cast<int>((v >> (m - 1 - j)) & 1);
  return out;
}

RevealOutcome bit_reveal(const CommitmentState& state, const std::vector<int>& revealed) {
  if (static_cast<int>(revealed.size()) != state.m) {
    throw std::invalid_argument("reveal has " + std::to_string(revealed.size()) + " bits, expected " +
                                std::to_string(state.m));
  }
  RevealOutcome out;
  out.consistent_with_0 = true;
  out.consistent_with_1 = true;
  for (int j = 0; j < state.m; ++j) {
    const auto k = static_cast<std::size_t>(j);
    check_bit(revealed[k], "revealed share");
    const int z = revealed[k] ^ state.bob_shares[k];
    out.consistent_with_0 = out.consistent_with_0 && z == 0;
    out.consistent_with_1 = out.consistent_with_1 && z == state.bob_inputs[k];
  }
  if (out.consistent_with_0 && out.consistent_with_1) {
    out.decision = RevealDecision::kAmbiguous;
  } else if (out.consistent_with_0) {
    out.decision = RevealDecision::kZero;
  } else if (out.consistent_with_1) {
    out.decision = RevealDecision::kOne;
  }
  return out;
}

NsSample ns_box_sample(int a, int b, double E, NsMode mode, TablePool& pool, Rng& rng) {
  if (!(E >= 0.0 && E <= 1.0)) throw std::invalid_argument("E must lie in [0, 1]");
  const auto r = nonlocal_and(a, b, pool);
  NsSample s;
  if (mode == NsMode::kOneSided) {
    s.bob_flipped = rng.bernoulli(0.5 * (1.0 - E));
  } else {
    const double p = 0.5 * (1.0 - std::sqrt(E));
    s.alice_flipped = rng.bernoulli(p);
    s.bob_flipped = rng.bernoulli(p);
  }
  s.a_out = r.out.share_a ^ static_cast<int>(s.alice_flipped);
  s.b_out = r.out.share_b ^ static_cast<int>(s.bob_flipped);
  s.stronger_correlation_recoverable = E < 1.0;
  return s;
}

}  // namespace ott::mpc
