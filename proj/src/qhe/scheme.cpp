#include "ott/qhe/scheme.hpp"

#include <stdexcept>

#include "ott/quantum/ops.hpp"
#include "ott/quantum/teleport.hpp"

namespace ott::qhe {

using quantum::Gate;
using quantum::PureState;

std::int64_t scheme1_table_budget(const CliffordTCircuit& c) {
  const std::int64_t n = c.num_qubits;
  const std::int64_t r = c.t_count();
  std::int64_t total = 0;
  for (std::int64_t t = 0; t < r; ++t) total += 2 * n + 4 * t;
  return total + 2 * n * (2 * n + 4 * r);
}

std::int64_t scheme1_table_bound(const CliffordTCircuit& c) {
  const std::int64_t n = c.num_qubits;
  const std::int64_t r = c.t_count();
  return (2 * n + 4 * r) * (r + 2 * n);
}

void gadget_update(MaskLedger& ledger, int qubit, int bob_share, const std::array<int, 4>& bob_bits) {
  if (bob_share != 0 && bob_share != 1) throw std::invalid_argument("Bob's share must be a bit");
  std::array<int, 4> u{};
  for (int& v : u) v = ledger.add_variable(VarOwner::kAlice);
  auto& m = ledger.masks(qubit);
  const AffineForm a = m.x;
  const int j1 = bob_bits[0];
  const int k1 = bob_bits[1];
  const int j3 = bob_bits[2];
  const int k3 = bob_bits[3];
  // Alice's measurement on the data's route: pairs (0,2) for q = 0, (1,3) for q = 1.
  const int route = bob_share == 0 ? 0 : 2;
  m.x = a ^ AffineForm::variable(u[static_cast<std::size_t>(route)]);
  m.x.flip(j1 ^ j3);
  m.z ^= AffineForm::variable(u[static_cast<std::size_t>(route + 1)]);
  m.z.flip(k1 ^ k3);
  if (j1) m.z ^= a;
}

Replay replay_ledger(const CliffordTCircuit& c, const std::vector<BobTStep>& bob_log) {
  c.validate();
  Replay r{MaskLedger::after_teleport(c.num_qubits), {}};
  std::size_t next = 0;
  for (const auto& g : c.gates) {
    if (g.kind != CtKind::kT) {
      key_update(r.ledger, g);
      continue;
    }
    if (next >= bob_log.size()) throw std::invalid_argument("Bob's log is shorter than the T count");
    const auto& step = bob_log[next++];
    if (step.qubit != g.q0) throw std::invalid_argument("Bob's log does not follow the circuit");
    r.polynomials.push_back(r.ledger.masks(g.q0).x);
    gadget_update(r.ledger, g.q0, step.share, step.bob_bits);
  }
  for (int i = 0; i < c.num_qubits; ++i) {
    r.polynomials.push_back(r.ledger.masks(i).x);
    r.polynomials.push_back(r.ledger.masks(i).z);
  }
  return r;
}

Session start_session(const PureState& alice_input, std::uint64_t alice_seed, std::uint64_t bob_seed) {
  const int n = alice_input.num_qubits();
  if (n + 2 > quantum::kMaxQubits) throw std::invalid_argument("too many data qubits to simulate");
  Session s{MaskLedger::after_teleport(n), alice_input, {}, Rng(alice_seed), Rng(bob_seed), {}, {}, {}, {}, {}};
  for (int i = 0; i < n; ++i) {
    const quantum::PauliFrame f{s.alice_rng.bit(), s.alice_rng.bit()};
    auto step = quantum::teleport_qubit_forced(s.bob_state, i, f);
    if (!step) throw std::logic_error("teleportation outcome with zero probability");
    s.bob_state = std::move(step->state);
    s.alice_values.push_back(f.x_bit);
    s.alice_values.push_back(f.z_bit);
  }
  return s;
}

mpc::DistributedBit evaluate_form(Session& s, const AffineForm& form, mpc::TablePool& pool) {
  const int v = s.ledger.num_variables();
  if (static_cast<int>(s.alice_values.size()) != v) throw std::logic_error("variable registry out of sync");
  const std::int64_t first = pool.consumed();
  const auto res = mpc::eval_linear_poly(mpc::LinearPoly{form.constant(), s.alice_values, form.coefficients(v)}, pool);
  for (std::size_t k = 0; k < res.wire.size(); ++k) {
    s.bob_received.push_back(res.wire[k].a_prime);
    s.bob_received_tables.push_back(first + static_cast<std::int64_t>(k));
    s.alice_received.push_back(res.wire[k].b_prime);
  }
  s.polynomials.push_back(form);
  return res.out;
}

GadgetResult t_gate_step(Session& s, int qubit, mpc::TablePool& pool, GadgetResources& resources) {
  if (qubit < 0 || qubit >= s.ledger.num_qubits()) throw std::invalid_argument("T target out of range");
  if (resources.used()) throw ResourceReuseError("gadget entanglement already consumed");
  const auto shares = evaluate_form(s, s.ledger.masks(qubit).x, pool);
  auto g = garden_hose(shares.share_a, shares.share_b, resources, s.bob_state, qubit, s.alice_rng, s.bob_rng);
  s.bob_state = g.state;
  for (int b : g.alice_bits) s.alice_values.push_back(b);
  gadget_update(s.ledger, qubit, shares.share_b, g.bob_bits);
  s.bob_log.push_back({qubit, shares.share_b, g.bob_bits});
  return g;
}

namespace {

Gate to_gate(const CtGate& g) {
  switch (g.kind) {
    case CtKind::kH: return Gate::h(g.q0);
    case CtKind::kP: return Gate::p(g.q0);
    case CtKind::kT: return Gate::t(g.q0);
    case CtKind::kCnot: return Gate::cnot(g.q0, g.q1);
  }
  throw std::invalid_argument("bad gate");
}

}  // namespace

PureState apply_circuit(const CliffordTCircuit& c, const PureState& in, std::size_t gates) {
  c.validate();
  if (in.num_qubits() != c.num_qubits) throw std::invalid_argument("input width does not match the circuit");
  PureState st = in;
  for (std::size_t i = 0; i < c.gates.size() && i < gates; ++i) st = quantum::apply_gate(st, to_gate(c.gates[i]));
  return st;
}

Scheme1Result run_scheme1(const CliffordTCircuit& c, const PureState& alice_input, mpc::TablePool& pool,
                          const Scheme1Options& opts) {
  c.validate();
  if (alice_input.num_qubits() != c.num_qubits) throw std::invalid_argument("input width does not match the circuit");
  pool.require(scheme1_table_budget(c));
  const std::int64_t before = pool.consumed();

  Scheme1Result res{alice_input, 0, 0, start_session(alice_input, opts.alice_seed, opts.bob_seed), {}};
  Session& s = res.session;
  auto snap = [&](std::size_t done) {
    if (opts.record_snapshots) res.snapshots.push_back({done, s.bob_state, s.ledger, s.alice_values});
  };
  snap(0);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    s.bob_state = quantum::apply_gate(s.bob_state, to_gate(g));
    if (g.kind == CtKind::kT) {
      GadgetResources fresh;
      t_gate_step(s, g.q0, pool, fresh);
    } else {
      key_update(s.ledger, g);
    }
    snap(i + 1);
  }

  // Output: final mask polynomials, then Bob teleports with his shares XORed in.
  PureState st = s.bob_state;
  for (int i = 0; i < c.num_qubits; ++i) {
    const auto x = evaluate_form(s, s.ledger.masks(i).x, pool);
    const auto z = evaluate_form(s, s.ledger.masks(i).z, pool);
    const quantum::PauliFrame bell{s.bob_rng.bit(), s.bob_rng.bit()};
    auto step = quantum::teleport_qubit_forced(st, i, bell);
    if (!step) throw std::logic_error("teleportation outcome with zero probability");
    st = std::move(step->state);
    const int sent_x = bell.x_bit ^ x.share_b;
    const int sent_z = bell.z_bit ^ z.share_b;
    s.alice_received.push_back(sent_x);
    s.alice_received.push_back(sent_z);
    st = quantum::correct_pauli_frame(st, i, {sent_x ^ x.share_a, sent_z ^ z.share_a});
  }
  res.output = std::move(st);
  res.tables_used = pool.consumed() - before;
  res.variables = s.ledger.num_variables();
  return res;
}

}  // namespace ott::qhe
