#pragma once

// Interactive homomorphic evaluation of a Clifford+T circuit on Alice's
// teleported data, with P^dagger corrections decided by linear polynomials
// evaluated on one-time tables.

#include <array>
#include <cstdint>
#include <vector>

#include "ott/mpc/primitives.hpp"
#include "ott/mpc/tables.hpp"
#include "ott/qhe/gadget.hpp"
#include "ott/qhe/masks.hpp"
#include "ott/quantum/state.hpp"

namespace ott::qhe {

/// Tables consumed by one run: polynomial t (t = 0..R-1) has 2n + 4t terms,
/// then 2n output polynomials with 2n + 4R terms each.
std::int64_t scheme1_table_budget(const CliffordTCircuit& c);
/// (2n + 4R)(R + 2n).
std::int64_t scheme1_table_bound(const CliffordTCircuit& c);

/// Bob's own record of one T step: his polynomial share and his gadget outcomes.
struct BobTStep {
  int qubit = 0;
  int share = 0;
  std::array<int, 4> bob_bits{};
};

/// Mask rewrite after a gadget on `qubit`: adds Alice's four outcome
/// variables and folds Bob's outcomes into the constants. Uses only Bob's data.
void gadget_update(MaskLedger& ledger, int qubit, int bob_share, const std::array<int, 4>& bob_bits);

/// Rebuilds the ledger and the sequence of polynomial forms from the circuit
/// and Bob's records alone.
struct Replay {
  MaskLedger ledger;
  std::vector<AffineForm> polynomials;
};
Replay replay_ledger(const CliffordTCircuit& c, const std::vector<BobTStep>& bob_log);

struct Snapshot {
  /// Gates applied so far.
  std::size_t gates_done = 0;
  quantum::PureState bob_state;
  MaskLedger ledger;
  std::vector<int> alice_values;
};

struct Session {
  MaskLedger ledger;
  quantum::PureState bob_state;
  /// Values of all variables; only Alice knows them.
  std::vector<int> alice_values;
  Rng alice_rng;
  Rng bob_rng;

  std::vector<AffineForm> polynomials;
  std::vector<BobTStep> bob_log;
  /// Every bit Bob receives: a' = a ^ x of some table.
  std::vector<int> bob_received;
  /// Pool offset of the table masking each bit Bob receives.
  std::vector<std::int64_t> bob_received_tables;
  /// Every bit Alice receives: b' in polynomials, then Bob's masked corrections.
  std::vector<int> alice_received;
};

/// Alice teleports `alice_input` to Bob with her corrections withheld.
Session start_session(const quantum::PureState& alice_input, std::uint64_t alice_seed, std::uint64_t bob_seed);

/// Distributed evaluation of `form` over all current variables.
mpc::DistributedBit evaluate_form(Session& s, const AffineForm& form, mpc::TablePool& pool);

/// After Bob applied T to `qubit`: evaluates the qubit's x-mask form to shares
/// (p for Alice, q for Bob), runs the gadget and rewrites the masks.
GadgetResult t_gate_step(Session& s, int qubit, mpc::TablePool& pool, GadgetResources& resources);

struct Scheme1Options {
  std::uint64_t alice_seed = 1;
  std::uint64_t bob_seed = 2;
  bool record_snapshots = false;
};

struct Scheme1Result {
  quantum::PureState output;
  std::int64_t tables_used = 0;
  int variables = 0;
  Session session;
  std::vector<Snapshot> snapshots;
};

/// Runs the whole scheme and returns Alice's corrected output. Throws
/// mpc::InsufficientTables before any work when the pool is below the budget
/// and std::invalid_argument on a malformed circuit or mismatched input.
Scheme1Result run_scheme1(const CliffordTCircuit& c, const quantum::PureState& alice_input, mpc::TablePool& pool,
                          const Scheme1Options& opts = {});

/// Plain statevector evaluation of the circuit.
quantum::PureState apply_circuit(const CliffordTCircuit& c, const quantum::PureState& in, std::size_t gates = SIZE_MAX);

}  // namespace ott::qhe
