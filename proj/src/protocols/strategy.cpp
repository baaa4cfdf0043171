#include "ott/protocols/strategy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ott::protocols {

using quantum::Basis;
using quantum::PureState;

AdversaryStrategy AdversaryStrategy::fixed_measurement(std::vector<Basis> bases, int guess_qubit) {
  auto s = make(Role::kBob, StrategyKind::kFixedMeasurement);
  if (guess_qubit < 0 || guess_qubit >= static_cast<int>(bases.size())) {
    throw std::invalid_argument("guess qubit outside the measured qubits");
  }
  s.bases = std::move(bases);
  s.guess_qubit = guess_qubit;
  return s;
}

AdversaryStrategy AdversaryStrategy::entangled_input(Role role, PureState state, Target target) {
  auto s = make(role, StrategyKind::kEntangledInput);
  if (role == Role::kAlice && (state.num_qubits() < 2 || state.num_qubits() > 4)) {
    throw std::invalid_argument("Alice's entangled input needs 2 system qubits and at most 2 ancillas");
  }
  if (role == Role::kBob && state.num_qubits() != 4) {
    throw std::invalid_argument("Bob's prepared state must have 4 qubits");
  }
  s.prepared = std::move(state);
  s.target = target;
  return s;
}

AdversaryStrategy AdversaryStrategy::custom_sigma(PureState purified, Target target) {
  if (purified.num_qubits() != 4) throw std::invalid_argument("custom sigma must be a 4-qubit purification");
  auto s = make(Role::kAlice, StrategyKind::kCustomSigma);
  s.prepared = std::move(purified);
  s.target = target;
  return s;
}

AdversaryStrategy AdversaryStrategy::declare_failure(std::vector<int> keep_outcomes, int keep_parity) {
  if (keep_outcomes.empty()) throw std::invalid_argument("declare_failure needs at least one outcome index");
  if (keep_parity != 0 && keep_parity != 1) throw std::invalid_argument("keep parity must be a bit");
  auto s = make(Role::kAlice, StrategyKind::kDeclareFailure);
  s.keep_outcomes = std::move(keep_outcomes);
  s.keep_parity = keep_parity;
  return s;
}

AdversaryStrategy AdversaryStrategy::optimal_distinguisher(Target target) {
  auto s = make(Role::kAlice, StrategyKind::kOptimalDistinguisher);
  s.target = target;
  return s;
}

PureState y_revealing_state() {
  quantum::Vector v(4);
  v << 0.5, 0.5, 0.5, -0.5;
  return PureState::from_amplitudes(v);
}

namespace {

Target parse_target(const std::string& t) {
  if (t == "y") return Target::kY;
  if (t == "r") return Target::kR;
  if (t == "yr") return Target::kYR;
  throw std::invalid_argument("unknown target '" + t + "' (expected y, r or yr)");
}

std::string target_name(Target t) {
  switch (t) {
    case Target::kY: return "y";
    case Target::kR: return "r";
    case Target::kYR: return "yr";
  }
  return "?";
}

PureState product_state(const std::string& spec) {
  if (spec.empty() || spec.size() > static_cast<std::size_t>(quantum::kMaxQubits)) {
    throw std::invalid_argument("prepared state needs 1..6 symbols");
  }
  PureState out = PureState::zero();
  for (std::size_t k = 0; k < spec.size(); ++k) {
    PureState q;
    switch (spec[k]) {
      case '0': q = PureState::zero(); break;
      case '1': q = PureState::one(); break;
      case '+': q = PureState::plus(); break;
      case '-': q = PureState::minus(); break;
      default: throw std::invalid_argument(std::string("bad state symbol '") + spec[k] + "'");
    }
    out = k == 0 ? q : out.tensor(q);
  }
  return out;
}

}  // namespace

AdversaryStrategy parse_strategy(Role role, const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  AdversaryStrategy s;
  if (head == "honest") {
    s = AdversaryStrategy::honest(role);
  } else if (head == "curious") {
    s = AdversaryStrategy::curious(role);
  } else if (head == "fixed") {
    const auto at = arg.find('@');
    std::vector<Basis> bases;
    for (char c : arg.substr(0, at)) {
      if (c == 'Z') {
        bases.push_back(Basis::Z);
      } else if (c == 'X') {
        bases.push_back(Basis::X);
      } else {
        throw std::invalid_argument("fixed measurement bases must be Z or X");
      }
    }
    const int guess = at == std::string::npos ? 0 : std::stoi(arg.substr(at + 1));
    s = AdversaryStrategy::fixed_measurement(std::move(bases), guess);
  } else if (head == "entangled") {
    s = AdversaryStrategy::entangled_input(Role::kAlice, y_revealing_state(), parse_target(arg.empty() ? "y" : arg));
  } else if (head == "prepared") {
    s = AdversaryStrategy::entangled_input(Role::kBob, product_state(arg));
  } else if (head == "declare") {
    const auto eq = arg.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("declare needs the form i,j,...=v");
    std::vector<int> idx;
    std::stringstream ss(arg.substr(0, eq));
    for (std::string item; std::getline(ss, item, ',');) idx.push_back(std::stoi(item));
    s = AdversaryStrategy::declare_failure(std::move(idx), std::stoi(arg.substr(eq + 1)));
  } else if (head == "distinguish") {
    s = AdversaryStrategy::optimal_distinguisher(parse_target(arg.empty() ? "y" : arg));
  } else {
    throw std::invalid_argument("unknown strategy '" + text + "'");
  }
  if (s.role != role) {
    throw std::invalid_argument("strategy '" + text + "' is not available to " +
                                (role == Role::kAlice ? std::string("Alice") : std::string("Bob")));
  }
  return s;
}

std::string describe(const AdversaryStrategy& s) {
  switch (s.kind) {
    case StrategyKind::kHonest: return "honest";
    case StrategyKind::kHonestButCurious: return "honest_but_curious";
    case StrategyKind::kFixedMeasurement: {
      std::string b;
      for (Basis x : s.bases) b += x == Basis::Z ? 'Z' : 'X';
      return "fixed_measurement:" + b + "@" + std::to_string(s.guess_qubit);
    }
    case StrategyKind::kEntangledInput: return "entangled_input:" + target_name(s.target);
    case StrategyKind::kCustomSigma: return "custom_sigma:" + target_name(s.target);
    case StrategyKind::kDeclareFailure: {
      std::string out = "declare_failure:";
      for (std::size_t k = 0; k < s.keep_outcomes.size(); ++k) {
        out += (k ? "," : "") + std::to_string(s.keep_outcomes[k]);
      }
      return out + "=" + std::to_string(s.keep_parity);
    }
    case StrategyKind::kOptimalDistinguisher: return "optimal_distinguisher:" + target_name(s.target);
  }
  return "unknown";
}

void NoiseModel::validate() const {
  if (!(depolarizing >= 0.0 && depolarizing <= 1.0)) throw std::invalid_argument("depolarizing rate outside [0,1]");
  if (!(loss >= 0.0 && loss <= 1.0)) throw std::invalid_argument("loss rate outside [0,1]");
}

PureState apply_channel_noise(const PureState& state, const std::vector<int>& qubits, const NoiseModel& noise,
                              Rng& rng) {
  noise.validate();
  if (noise.depolarizing == 0.0) return state;
  PureState out = state;
  for (int q : qubits) {
    if (!rng.bernoulli(noise.depolarizing)) continue;
    switch (rng.below(4)) {
      case 1: out = quantum::apply_gate(out, quantum::Gate::x(q)); break;
      case 2: out = quantum::apply_gate(out, quantum::Gate::y(q)); break;
      case 3: out = quantum::apply_gate(out, quantum::Gate::z(q)); break;
      default: break;
    }
  }
  return out;
}

}  // namespace ott::protocols
