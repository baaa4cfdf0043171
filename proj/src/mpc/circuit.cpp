#include "ott/mpc/circuit.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace ott::mpc {

const char* owner_name(Owner o) {
  switch (o) {
    case Owner::kAlice: return "alice";
    case Owner::kBob: return "bob";
    case Owner::kDistributed: return "distributed";
    case Owner::kConst1: return "const1";
  }
  return "?";
}

const char* recipient_name(Recipient r) {
  switch (r) {
    case Recipient::kAlice: return "alice";
    case Recipient::kBob: return "bob";
    case Recipient::kBoth: return "both";
  }
  return "?";
}

int BooleanCircuit::add_input(const std::string& name, Owner owner) {
  if (!gates_.empty()) throw std::invalid_argument("inputs must be declared before gates");
  if (std::find(names_.begin(), names_.end(), name) != names_.end()) {
    throw std::invalid_argument("wire '" + name + "' defined twice");
  }
  names_.push_back(name);
  inputs_.push_back(owner);
  return num_inputs() - 1;
}

int BooleanCircuit::add_gate(GateType type, int in1, int in2, const std::string& name) {
  const int w = num_wires();
  for (int in : {in1, in2}) {
    if (in < 0 || in >= w) throw std::invalid_argument("gate input " + std::to_string(in) + " is not defined yet");
  }
  const std::string n = name.empty() ? "g" + std::to_string(gates_.size()) : name;
  if (std::find(names_.begin(), names_.end(), n) != names_.end()) {
    throw std::invalid_argument("wire '" + n + "' defined twice");
  }
  names_.push_back(n);
  gates_.push_back({type, in1, in2});
  return w;
}

void BooleanCircuit::add_output(int wire, Recipient to) {
  if (wire < 0 || wire >= num_wires()) throw std::invalid_argument("output wire " + std::to_string(wire) + " undefined");
  outputs_.push_back({wire, to});
}

int BooleanCircuit::wire(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("unknown wire '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

int BooleanCircuit::input_count(Party party) const {
  const Owner own = party == Party::kAlice ? Owner::kAlice : Owner::kBob;
  return static_cast<int>(
      std::count_if(inputs_.begin(), inputs_.end(), [&](Owner o) { return o == own || o == Owner::kDistributed; }));
}

namespace {

Owner parse_owner(const std::string& s) {
  if (s == "alice") return Owner::kAlice;
  if (s == "bob") return Owner::kBob;
  if (s == "distributed") return Owner::kDistributed;
  if (s == "const1") return Owner::kConst1;
  throw std::invalid_argument("unknown owner '" + s + "'");
}

Recipient parse_recipient(const std::string& s) {
  if (s == "alice") return Recipient::kAlice;
  if (s == "bob") return Recipient::kBob;
  if (s == "both") return Recipient::kBoth;
  throw std::invalid_argument("unknown recipient '" + s + "'");
}

}  // namespace

BooleanCircuit parse_netlist(std::istream& in) {
  BooleanCircuit c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    try {
      const std::string& kw = tok[0];
      const auto expect = [&](std::size_t n) {
        if (tok.size() != n) throw std::invalid_argument(kw + " takes " + std::to_string(n - 1) + " fields");
      };
      if (kw == "wire") {
        expect(3);
        c.add_input(tok[1], parse_owner(tok[2]));
      } else if (kw == "AND" || kw == "XOR") {
        expect(4);
        c.add_gate(kw == "AND" ? GateType::kAnd : GateType::kXor, c.wire(tok[2]), c.wire(tok[3]), tok[1]);
      } else if (kw == "OUT") {
        expect(3);
        c.add_output(c.wire(tok[1]), parse_recipient(tok[2]));
      } else {
        throw std::invalid_argument("unknown statement '" + kw + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("netlist line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (c.outputs().empty()) throw std::invalid_argument("netlist declares no outputs");
  return c;
}

BooleanCircuit parse_netlist_text(const std::string& text) {
  std::istringstream in(text);
  return parse_netlist(in);
}

std::string to_netlist(const BooleanCircuit& c) {
  std::ostringstream out;
  for (int i = 0; i < c.num_inputs(); ++i) {
    out << "wire " << c.name(i) << ' ' << owner_name(c.inputs()[static_cast<std::size_t>(i)]) << '\n';
  }
  for (std::size_t k = 0; k < c.gates().size(); ++k) {
    const Gate& g = c.gates()[k];
    out << (g.type == GateType::kAnd ? "AND " : "XOR ") << c.name(c.num_inputs() + static_cast<int>(k)) << ' '
        << c.name(g.in1) << ' ' << c.name(g.in2) << '\n';
  }
  for (const auto& o : c.outputs()) out << "OUT " << c.name(o.wire) << ' ' << recipient_name(o.to) << '\n';
  return out.str();
}

namespace {

void check_inputs(const BooleanCircuit& c, const std::vector<int>& alice_bits, const std::vector<int>& bob_bits) {
  if (static_cast<int>(alice_bits.size()) != c.input_count(Party::kAlice)) {
    throw std::invalid_argument("circuit takes " + std::to_string(c.input_count(Party::kAlice)) +
                                " bits from Alice, got " + std::to_string(alice_bits.size()));
  }
  if (static_cast<int>(bob_bits.size()) != c.input_count(Party::kBob)) {
    throw std::invalid_argument("circuit takes " + std::to_string(c.input_count(Party::kBob)) +
                                " bits from Bob, got " + std::to_string(bob_bits.size()));
  }
  for (const auto* v : {&alice_bits, &bob_bits}) {
    for (int b : *v) {
      if (b != 0 && b != 1) throw std::invalid_argument("input bits must be 0 or 1");
    }
  }
}

bool has_alice(Holder h) { return h == Holder::kAlice || h == Holder::kShared; }
bool has_bob(Holder h) { return h == Holder::kBob || h == Holder::kShared; }

Holder holder_of(bool alice, bool bob) {
  if (alice && bob) return Holder::kShared;
  return alice ? Holder::kAlice : Holder::kBob;
}

}  // namespace

std::vector<int> evaluate_direct(const BooleanCircuit& c, const std::vector<int>& alice_bits,
                                 const std::vector<int>& bob_bits) {
  check_inputs(c, alice_bits, bob_bits);
  std::vector<int> v(static_cast<std::size_t>(c.num_wires()), 0);
  std::size_t ia = 0;
  std::size_t ib = 0;
  for (int i = 0; i < c.num_inputs(); ++i) {
    int& w = v[static_cast<std::size_t>(i)];
    switch (c.inputs()[static_cast<std::size_t>(i)]) {
      case Owner::kAlice: w = alice_bits[ia++]; break;
      case Owner::kBob: w = bob_bits[ib++]; break;
      case Owner::kDistributed: w = alice_bits[ia++] ^ bob_bits[ib++]; break;
      case Owner::kConst1: w = 1; break;
    }
  }
  for (std::size_t k = 0; k < c.gates().size(); ++k) {
    const Gate& g = c.gates()[k];
    const int x = v[static_cast<std::size_t>(g.in1)];
    const int y = v[static_cast<std::size_t>(g.in2)];
    v[static_cast<std::size_t>(c.num_inputs()) + k] = g.type == GateType::kAnd ? (x & y) : (x ^ y);
  }
  std::vector<int> out;
  for (const auto& o : c.outputs()) out.push_back(v[static_cast<std::size_t>(o.wire)]);
  return out;
}

CompiledPlan compile_circuit(const BooleanCircuit& c) {
  CompiledPlan plan;
  plan.circuit = c;
  plan.holder.assign(static_cast<std::size_t>(c.num_wires()), Holder::kConst);
  plan.const_value.assign(static_cast<std::size_t>(c.num_wires()), 0);
  for (int i = 0; i < c.num_inputs(); ++i) {
    auto& h = plan.holder[static_cast<std::size_t>(i)];
    switch (c.inputs()[static_cast<std::size_t>(i)]) {
      case Owner::kAlice: h = Holder::kAlice; break;
      case Owner::kBob: h = Holder::kBob; break;
      case Owner::kDistributed: h = Holder::kShared; break;
      case Owner::kConst1:
        h = Holder::kConst;
        plan.const_value[static_cast<std::size_t>(i)] = 1;
        break;
    }
  }
  for (std::size_t k = 0; k < c.gates().size(); ++k) {
    const Gate& g = c.gates()[k];
    const auto w = static_cast<std::size_t>(c.num_inputs()) + k;
    const Holder hu = plan.holder[static_cast<std::size_t>(g.in1)];
    const Holder hv = plan.holder[static_cast<std::size_t>(g.in2)];
    const int cu = plan.const_value[static_cast<std::size_t>(g.in1)];
    const int cv = plan.const_value[static_cast<std::size_t>(g.in2)];
    PlannedGate step;
    step.first_table = plan.table_budget;
    if (hu == Holder::kConst && hv == Holder::kConst) {
      step.holder = Holder::kConst;
      step.const_value = g.type == GateType::kAnd ? (cu & cv) : (cu ^ cv);
    } else if (hu == Holder::kConst || hv == Holder::kConst) {
      const int cval = hu == Holder::kConst ? cu : cv;
      const Holder other = hu == Holder::kConst ? hv : hu;
      if (g.type == GateType::kAnd) {
        step.holder = cval ? other : Holder::kConst;
      } else {
        step.holder = other;
        step.local_xors = cval;
      }
    } else if (g.type == GateType::kXor) {
      step.holder = holder_of(has_alice(hu) || has_alice(hv), has_bob(hu) || has_bob(hv));
      step.local_xors = (has_alice(hu) && has_alice(hv)) + (has_bob(hu) && has_bob(hv));
    } else {
      const bool cross_uv = has_alice(hu) && has_bob(hv);
      const bool cross_vu = has_alice(hv) && has_bob(hu);
      const bool local_a = has_alice(hu) && has_alice(hv);
      const bool local_b = has_bob(hu) && has_bob(hv);
      step.nonlocal_ands = cross_uv + cross_vu;
      step.local_ands = local_a + local_b;
      step.holder = step.nonlocal_ands ? Holder::kShared : holder_of(local_a, local_b);
    }
    plan.holder[w] = step.holder;
    plan.const_value[w] = step.const_value;
    plan.table_budget += step.nonlocal_ands;
    plan.local_ands += step.local_ands;
    plan.local_xors += step.local_xors;
    plan.nonlocal_ands += step.nonlocal_ands;
    plan.steps.push_back(step);
  }
  return plan;
}

CircuitRun eval_circuit(const CompiledPlan& plan, const std::vector<int>& alice_bits,
                        const std::vector<int>& bob_bits, TablePool& pool, bool record_transcript) {
  const BooleanCircuit& c = plan.circuit;
  check_inputs(c, alice_bits, bob_bits);
  pool.require(plan.table_budget);
  const std::int64_t base = pool.consumed();
  CircuitRun run;
  const auto send = [&](Party from, int bit) {
    if (record_transcript) run.transcript.push_back({from, bit});
  };

  // Alice's part and Bob's part of every wire; a wire's value is their XOR.
  std::vector<int> sa(static_cast<std::size_t>(c.num_wires()), 0);
  std::vector<int> sb(static_cast<std::size_t>(c.num_wires()), 0);
  std::size_t ia = 0;
  std::size_t ib = 0;
  for (int i = 0; i < c.num_inputs(); ++i) {
    const auto w = static_cast<std::size_t>(i);
    switch (c.inputs()[w]) {
      case Owner::kAlice: sa[w] = alice_bits[ia++]; break;
      case Owner::kBob: sb[w] = bob_bits[ib++]; break;
      case Owner::kDistributed:
        sa[w] = alice_bits[ia++];
        sb[w] = bob_bits[ib++];
        break;
      case Owner::kConst1: break;
    }
  }

  for (std::size_t k = 0; k < c.gates().size(); ++k) {
    const Gate& g = c.gates()[k];
    const PlannedGate& step = plan.steps[k];
    const auto w = static_cast<std::size_t>(c.num_inputs()) + k;
    const auto u = static_cast<std::size_t>(g.in1);
    const auto v = static_cast<std::size_t>(g.in2);
    const Holder hu = plan.holder[u];
    const Holder hv = plan.holder[v];
    if (step.holder == Holder::kConst) continue;
    if (hu == Holder::kConst || hv == Holder::kConst) {
      const auto other = hu == Holder::kConst ? v : u;
      const int cval = plan.const_value[hu == Holder::kConst ? u : v];
      sa[w] = sa[other];
      sb[w] = sb[other];
      // A public constant goes to Alice's part when she alone holds the wire, else to Bob's.
      if (g.type == GateType::kXor && cval) (step.holder == Holder::kAlice ? sa[w] : sb[w]) ^= 1;
      continue;
    }
    if (g.type == GateType::kXor) {
      sa[w] = sa[u] ^ sa[v];
      sb[w] = sb[u] ^ sb[v];
      continue;
    }
    sa[w] = (has_alice(hu) && has_alice(hv)) ? (sa[u] & sa[v]) : 0;
    sb[w] = (has_bob(hu) && has_bob(hv)) ? (sb[u] & sb[v]) : 0;
    if (step.nonlocal_ands == 0) continue;
    if (pool.consumed() - base != step.first_table) throw std::logic_error("table allocation out of plan order");
    LinearPoly poly;
    if (has_alice(hu) && has_bob(hv)) {
      poly.a.push_back(sa[u]);
      poly.b.push_back(sb[v]);
    }
    if (has_alice(hv) && has_bob(hu)) {
      poly.a.push_back(sa[v]);
      poly.b.push_back(sb[u]);
    }
    const auto res = eval_linear_poly(poly, pool);
    for (const auto& m : res.wire) {
      send(Party::kAlice, m.a_prime);
      send(Party::kBob, m.b_prime);
    }
    sa[w] ^= res.out.share_a;
    sb[w] ^= res.out.share_b;
  }

  for (const auto& o : c.outputs()) {
    const auto w = static_cast<std::size_t>(o.wire);
    const Holder h = plan.holder[w];
    if (h == Holder::kConst) {
      run.outputs.push_back(plan.const_value[w]);
      continue;
    }
    if (o.to != Recipient::kBob && has_bob(h)) send(Party::kBob, sb[w]);
    if (o.to != Recipient::kAlice && has_alice(h)) send(Party::kAlice, sa[w]);
    run.outputs.push_back(sa[w] ^ sb[w]);
  }
  run.tables_used = pool.consumed() - base;
  return run;
}

}  // namespace ott::mpc
