#pragma once

// Garden-hose gadget that applies P^dagger to a data qubit iff p ^ q = 1.
//
// Resources are four EPR pairs (0..3) plus Bob's output pair: qubit E and its
// partner, which ends up holding the data. Alice's halves are the right-hand
// ends. Bob owns the data qubit ("in") and routes it by q:
//   q = 0: in -> pair 0, then Alice links pairs 0 and 2, then pair 2 -> E;
//   q = 1: in -> pair 1, then Alice links pairs 1 and 3, then pair 3 -> E.
// Alice always Bell-measures pairs (0,2) and (1,3). By p she places P^dagger
// on her half of pair 0 (p = 1) or pair 1 (p = 0) before measuring, so it
// hits the data iff p ^ q = 1.

#include <array>
#include <stdexcept>
#include <vector>

#include "ott/quantum/state.hpp"
#include "ott/quantum/teleport.hpp"
#include "ott/rng.hpp"

namespace ott::qhe {

class ResourceReuseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One gadget's worth of entanglement; a second use throws ResourceReuseError.
class GadgetResources {
 public:
  static constexpr int kEprPairs = 4;

  void consume();
  bool used() const { return used_; }

 private:
  bool used_ = false;
};

enum class Slot { kIn, kPair0, kPair1, kPair2, kPair3, kOutput };

const char* slot_name(Slot s);

struct GadgetResult {
  /// The data qubit keeps its register index; physically it is E's partner.
  quantum::PureState state;
  /// (j, k) of Alice's measurement on pairs (0,2), then on pairs (1,3).
  std::array<int, 4> alice_bits{};
  /// (j, k) of Bob's first hop (in -> pair) and last hop (pair -> E).
  std::array<int, 4> bob_bits{};
  bool pdag_applied = false;
  /// Positions the data passes through, ending at kOutput.
  std::vector<Slot> route;
};

/// Runs the gadget on `qubit` of `in`. Each Bell measurement has a uniform
/// outcome; Alice's come from `alice_rng`, Bob's from `bob_rng`. Alice's
/// measurement off the data's route only swaps entanglement between unused
/// pairs, so its outcome is a fresh uniform pair of bits.
GadgetResult garden_hose(int p, int q, GadgetResources& resources, const quantum::PureState& in, int qubit,
                         Rng& alice_rng, Rng& bob_rng);

/// The Pauli X^x Z^z with output = X^x Z^z P^dagger^(p^q) input, up to phase.
quantum::PauliFrame gadget_frame(int p, int q, const GadgetResult& r);

}  // namespace ott::qhe
