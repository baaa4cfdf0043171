#pragma once

#include <optional>
#include <vector>

#include "ott/mpc/tables.hpp"

namespace ott::mpc {

/// The two announced bits of a nonlocal AND: a' = a ^ x from Alice, b' = b ^ y from Bob.
struct AndMessages {
  int a_prime = 0;
  int b_prime = 0;
  friend bool operator==(const AndMessages&, const AndMessages&) = default;
};

struct AndResult {
  DistributedBit out;
  AndMessages wire;
};

/// AND of Alice's a and Bob's b with distributed output, consuming `table`.
/// Alice's share is (x & b') ^ e, Bob's is (a' & b) ^ f.
/// Throws TableReuseError when the ledger has already seen the table.
AndResult nonlocal_and(int a, int b, const OneTimeTable& table, ConsumptionLedger& ledger);
/// Same, taking the next table from the pool.
AndResult nonlocal_and(int a, int b, TablePool& pool);

/// z = c ^ sum_j a_j & b_j with a_j on Alice's side and c, b_j on Bob's side.
struct LinearPoly {
  int c = 0;
  std::vector<int> a;
  std::vector<int> b;

  /// Throws std::invalid_argument unless 1 <= n and a, b are bit vectors of equal length.
  void validate() const;
  int evaluate() const;
};

struct PolyResult {
  DistributedBit out;
  std::vector<AndMessages> wire;
};

/// One table per term. Throws InsufficientTables before consuming anything
/// when the pool is too small.
PolyResult eval_linear_poly(const LinearPoly& p, TablePool& pool);

struct OtResult {
  int output = 0;
  /// Everything Alice receives: Bob's b'.
  int alice_received_b_prime = 0;
  /// Everything Bob receives: Alice's a' and m0 ^ g.
  int bob_received_a_prime = 0;
  int bob_received_masked_m0 = 0;
};

/// 1-out-of-2 OT: Bob learns m_b. Runs a one-term polynomial on a = m0 ^ m1.
OtResult ot_1of2(int m0, int m1, int b, TablePool& pool);

enum class RevealDecision { kZero, kOne, kCheatDetected, kAmbiguous };

const char* decision_name(RevealDecision d);

struct CommitmentState {
  int m = 0;
  /// Alice's side.
  int b = 0;
  std::vector<int> alice_shares;
  /// Bob's side.
  std::vector<int> bob_inputs;
  std::vector<int> bob_shares;
};

/// Commit phase: m nonlocal ANDs with Alice's input always b and Bob's inputs
/// `bob_inputs`. Throws std::invalid_argument when Bob's inputs are all zero
/// unless `allow_zero_inputs`, in which case every reveal is ambiguous.
CommitmentState bit_commit(int b, const std::vector<int>& bob_inputs, TablePool& pool,
                           bool allow_zero_inputs = false);
/// Uniform nonzero m-bit string for Bob.
std::vector<int> random_nonzero_inputs(int m, Rng& rng);

struct RevealOutcome {
  RevealDecision decision = RevealDecision::kCheatDetected;
  bool consistent_with_0 = false;
  bool consistent_with_1 = false;
};

/// Bob XORs the revealed string with his shares and compares against the
/// outcome strings for b = 0 (all zero) and b = 1 (his inputs).
/// Throws std::invalid_argument on a length mismatch.
RevealOutcome bit_reveal(const CommitmentState& state, const std::vector<int>& revealed);
/// Honest reveal: Alice's own shares.
inline RevealOutcome bit_reveal(const CommitmentState& state) { return bit_reveal(state, state.alice_shares); }

enum class NsMode { kOneSided, kSymmetric };

struct NsSample {
  int a_out = 0;
  int b_out = 0;
  bool alice_flipped = false;
  bool bob_flipped = false;
  /// A party knows its flip and can undo it, recovering a correlation
  /// stronger than E. True whenever E < 1.
  bool stronger_correlation_recoverable = false;
};

/// Samples the noisy PR box P(A ^ B = a & b) = (1 + E) / 2 from one table.
/// One-sided: Bob flips with probability (1 - E) / 2. Symmetric: each party
/// flips with probability (1 - sqrt(E)) / 2. Throws std::invalid_argument
/// when E is outside [0, 1].
NsSample ns_box_sample(int a, int b, double E, NsMode mode, TablePool& pool, Rng& rng);

}  // namespace ott::mpc
