#include "ott/qhe/gadget.hpp"

#include <string>

#include "ott/quantum/ops.hpp"

namespace ott::qhe {

using quantum::PauliFrame;
using quantum::PureState;

void GadgetResources::consume() {
  if (used_) throw ResourceReuseError("gadget entanglement already consumed");
  used_ = true;
}

const char* slot_name(Slot s) {
  switch (s) {
    case Slot::kIn: return "in";
    case Slot::kPair0: return "pair0";
    case Slot::kPair1: return "pair1";
    case Slot::kPair2: return "pair2";
    case Slot::kPair3: return "pair3";
    case Slot::kOutput: return "output";
  }
  return "?";
}

namespace {

void check_bit(int v, const char* what) {
  if (v != 0 && v != 1) throw std::invalid_argument(std::string(what) + " must be a bit");
}

PureState hop(const PureState& st, int qubit, PauliFrame outcome) {
  auto step = quantum::teleport_qubit_forced(st, qubit, outcome);
  if (!step) throw std::logic_error("teleportation outcome with zero probability");
  return std::move(step->state);
}

}  // namespace

GadgetResult garden_hose(int p, int q, GadgetResources& resources, const PureState& in, int qubit, Rng& alice_rng,
                         Rng& bob_rng) {
  check_bit(p, "Alice's gadget bit");
  check_bit(q, "Bob's gadget bit");
  in.check_qubit(qubit);
  resources.consume();

  GadgetResult r;
  for (int& b : r.bob_bits) b = bob_rng.bit();
  for (int& b : r.alice_bits) b = alice_rng.bit();

  const int first = q == 0 ? 0 : 1;
  const int second = first + 2;
  const int pdag_pair = p == 1 ? 0 : 1;
  r.route = {Slot::kIn, static_cast<Slot>(static_cast<int>(Slot::kPair0) + first),
             static_cast<Slot>(static_cast<int>(Slot::kPair0) + second), Slot::kOutput};

  // Bob: in -> Alice's end of the first pair.
  PureState st = hop(in, qubit, {r.bob_bits[0], r.bob_bits[1]});
  // Alice: P^dagger on one of her first-row halves, then both Bell measurements.
  if (pdag_pair == first) {
    st = quantum::apply_gate(st, quantum::Gate::pdag(qubit));
    r.pdag_applied = true;
  }
  const int a = first == 0 ? 0 : 2;
  st = hop(st, qubit, {r.alice_bits[static_cast<std::size_t>(a)], r.alice_bits[static_cast<std::size_t>(a + 1)]});
  // Bob: his end of the second pair -> E, landing on E's partner.
  r.state = hop(st, qubit, {r.bob_bits[2], r.bob_bits[3]});
  return r;
}

PauliFrame gadget_frame(int p, int q, const GadgetResult& r) {
  const int c = p ^ q;
  const int a = q == 0 ? 0 : 2;
  const int j1 = r.bob_bits[0];
  const int k1 = r.bob_bits[1];
  const int j2 = r.alice_bits[static_cast<std::size_t>(a)];
  const int k2 = r.alice_bits[static_cast<std::size_t>(a + 1)];
  // P^dagger X^j Z^k = X^j Z^(k ^ j) P^dagger up to phase.
  return PauliFrame{j1 ^ j2 ^ r.bob_bits[2], k1 ^ k2 ^ r.bob_bits[3] ^ (c & j1)};
}

}  // namespace ott::qhe
