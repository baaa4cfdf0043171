#include "ott/qhe/masks.hpp"

#include <algorithm>
#include <istream>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace ott::qhe {

AffineForm AffineForm::variable(int id) {
  if (id < 0) throw std::invalid_argument("variable ids are nonnegative");
  AffineForm f;
  f.support_.push_back(id);
  return f;
}

AffineForm AffineForm::constant_form(int c) {
  if (c != 0 && c != 1) throw std::invalid_argument("constant must be a bit");
  AffineForm f;
  f.constant_ = c;
  return f;
}

bool AffineForm::contains(int id) const { return std::binary_search(support_.begin(), support_.end(), id); }

AffineForm& AffineForm::operator^=(const AffineForm& other) {
  constant_ ^= other.constant_;
  std::vector<int> out;
  std::set_symmetric_difference(support_.begin(), support_.end(), other.support_.begin(), other.support_.end(),
                                std::back_inserter(out));
  support_ = std::move(out);
  return *this;
}

AffineForm& AffineForm::flip(int c) {
  constant_ ^= c & 1;
  return *this;
}

int AffineForm::evaluate(const std::vector<int>& values) const {
  int v = constant_;
  for (int id : support_) v ^= values.at(static_cast<std::size_t>(id)) & 1;
  return v;
}

std::vector<int> AffineForm::coefficients(int num_vars) const {
  std::vector<int> c(static_cast<std::size_t>(num_vars), 0);
  for (int id : support_) c.at(static_cast<std::size_t>(id)) = 1;
  return c;
}

std::string AffineForm::to_string() const {
  std::string s = std::to_string(constant_);
  for (int id : support_) s += " + v" + std::to_string(id);
  return s;
}

MaskLedger MaskLedger::after_teleport(int n) {
  if (n < 1) throw std::invalid_argument("need at least one data qubit");
  MaskLedger l;
  for (int i = 0; i < n; ++i) {
    const int vx = l.add_variable(VarOwner::kAlice);
    const int vz = l.add_variable(VarOwner::kAlice);
    l.masks_.push_back({AffineForm::variable(vx), AffineForm::variable(vz)});
  }
  return l;
}

int MaskLedger::add_variable(VarOwner owner) {
  owners_.push_back(owner);
  return static_cast<int>(owners_.size()) - 1;
}

int CliffordTCircuit::t_count() const {
  return static_cast<int>(std::count_if(gates.begin(), gates.end(), [](const CtGate& g) { return g.kind == CtKind::kT; }));
}

void CliffordTCircuit::validate() const {
  if (num_qubits < 1) throw std::invalid_argument("circuit needs at least one qubit");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    auto bad = [&](int q) { return q < 0 || q >= num_qubits; };
    if (bad(g.q0) || (g.kind == CtKind::kCnot && (bad(g.q1) || g.q1 == g.q0))) {
      throw std::invalid_argument("gate " + std::to_string(i) + " has an invalid target");
    }
  }
}

namespace {

int parse_index(const std::string& tok, int line) {
  std::size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 0) {
    throw std::invalid_argument("circuit line " + std::to_string(line) + ": bad qubit index '" + tok + "'");
  }
  return v;
}

}  // namespace

CliffordTCircuit parse_clifford_t(std::istream& in) {
  CliffordTCircuit c;
  int declared = -1;
  int max_index = -1;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw std::invalid_argument("circuit line " + std::to_string(line) + ": " + msg);
    };
    if (tok[0] == "qubits") {
      if (tok.size() != 2) fail("expected 'qubits n'");
      if (declared >= 0 || !c.gates.empty()) fail("'qubits' must come first and only once");
      declared = parse_index(tok[1], line);
      if (declared < 1) fail("qubit count must be positive");
      continue;
    }
    CtGate g;
    if (tok[0] == "H" || tok[0] == "P" || tok[0] == "T") {
      if (tok.size() != 2) fail("expected '" + tok[0] + " q'");
      g.kind = tok[0] == "H" ? CtKind::kH : tok[0] == "P" ? CtKind::kP : CtKind::kT;
      g.q0 = parse_index(tok[1], line);
    } else if (tok[0] == "CNOT") {
      if (tok.size() != 3) fail("expected 'CNOT control target'");
      g.kind = CtKind::kCnot;
      g.q0 = parse_index(tok[1], line);
      g.q1 = parse_index(tok[2], line);
      if (g.q0 == g.q1) fail("CNOT control and target coincide");
      max_index = std::max(max_index, g.q1);
    } else {
      fail("unknown gate '" + tok[0] + "'");
    }
    max_index = std::max(max_index, g.q0);
    if (declared >= 0 && max_index >= declared) fail("qubit index out of range");
    c.gates.push_back(g);
  }
  c.num_qubits = declared >= 0 ? declared : std::max(1, max_index + 1);
  c.validate();
  return c;
}

CliffordTCircuit parse_clifford_t_text(const std::string& text) {
  std::istringstream in(text);
  return parse_clifford_t(in);
}

std::string to_text(const CliffordTCircuit& c) {
  std::string out = "qubits " + std::to_string(c.num_qubits) + "\n";
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case CtKind::kH: out += "H " + std::to_string(g.q0); break;
      case CtKind::kP: out += "P " + std::to_string(g.q0); break;
      case CtKind::kT: out += "T " + std::to_string(g.q0); break;
      case CtKind::kCnot: out += "CNOT " + std::to_string(g.q0) + " " + std::to_string(g.q1); break;
    }
    out += "\n";
  }
  return out;
}

void key_update(MaskLedger& ledger, const CtGate& gate) {
  auto check = [&](int q) {
    if (q < 0 || q >= ledger.num_qubits()) throw std::invalid_argument("gate target out of range");
  };
  check(gate.q0);
  switch (gate.kind) {
    case CtKind::kH: {
      auto& m = ledger.masks(gate.q0);
      std::swap(m.x, m.z);
      break;
    }
    case CtKind::kP: {
      auto& m = ledger.masks(gate.q0);
      m.z ^= m.x;
      break;
    }
    case CtKind::kCnot: {
      check(gate.q1);
      if (gate.q0 == gate.q1) throw std::invalid_argument("CNOT control and target coincide");
      auto& c = ledger.masks(gate.q0);
      auto& t = ledger.masks(gate.q1);
      t.x ^= c.x;
      c.z ^= t.z;
      break;
    }
    case CtKind::kT:
      throw std::invalid_argument("T needs a correction gadget; use t_gate_step");
  }
}

}  // namespace ott::qhe
