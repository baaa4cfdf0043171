#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ott/mpc/primitives.hpp"
#include "ott/mpc/tables.hpp"

namespace ott::mpc {

enum class Party { kAlice, kBob };

enum class Owner { kAlice, kBob, kDistributed, kConst1 };
enum class GateType { kAnd, kXor };
enum class Recipient { kAlice, kBob, kBoth };

struct Gate {
  GateType type = GateType::kAnd;
  int in1 = 0;
  int in2 = 0;
};

struct CircuitOutput {
  int wire = 0;
  Recipient to = Recipient::kBoth;
};

/// Wires are numbered inputs first, then one wire per gate in gate order, so
/// gate inputs always precede the gate.
class BooleanCircuit {
 public:
  int add_input(const std::string& name, Owner owner);
  int add_gate(GateType type, int in1, int in2, const std::string& name = "");
  void add_output(int wire, Recipient to);

  int num_inputs() const { return static_cast<int>(inputs_.size()); }
  int num_wires() const { return num_inputs() + static_cast<int>(gates_.size()); }
  const std::vector<Owner>& inputs() const { return inputs_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<CircuitOutput>& outputs() const { return outputs_; }
  const std::string& name(int wire) const { return names_.at(static_cast<std::size_t>(wire)); }
  /// Throws std::invalid_argument for an unknown name.
  int wire(const std::string& name) const;

  /// Inputs that take a bit from this party: own wires and distributed wires
  /// (one share each), in declaration order.
  int input_count(Party party) const;

 private:
  std::vector<std::string> names_;
  std::vector<Owner> inputs_;
  std::vector<Gate> gates_;
  std::vector<CircuitOutput> outputs_;
};

/// Netlist lines, whitespace separated, '#' starts a comment:
///   wire <id> alice|bob|distributed|const1
///   AND <out> <in1> <in2>
///   XOR <out> <in1> <in2>
///   OUT <id> alice|bob|both
/// Throws std::invalid_argument with the line number on malformed input.
BooleanCircuit parse_netlist(std::istream& in);
BooleanCircuit parse_netlist_text(const std::string& text);
std::string to_netlist(const BooleanCircuit& c);

/// Plaintext evaluation; a distributed input's value is the XOR of both shares.
/// Returns one bit per output in output order.
std::vector<int> evaluate_direct(const BooleanCircuit& c, const std::vector<int>& alice_bits,
                                 const std::vector<int>& bob_bits);

/// Who knows a wire after compilation: a public constant, one party, or both shares.
enum class Holder { kConst, kAlice, kBob, kShared };

struct PlannedGate {
  Holder holder = Holder::kConst;
  int const_value = 0;
  int local_ands = 0;
  int local_xors = 0;
  /// Terms evaluated as a linear polynomial; each term uses one table.
  int nonlocal_ands = 0;
  /// Pool offset of the first table this gate uses.
  std::int64_t first_table = 0;
};

struct CompiledPlan {
  BooleanCircuit circuit;
  /// Per wire.
  std::vector<Holder> holder;
  std::vector<int> const_value;
  /// Per gate.
  std::vector<PlannedGate> steps;
  std::int64_t table_budget = 0;
  std::int64_t local_ands = 0;
  std::int64_t local_xors = 0;
  std::int64_t nonlocal_ands = 0;
};

/// Constants are folded. An AND whose operands together have an Alice part and
/// a Bob part becomes local ANDs on same-side parts plus one nonlocal AND per
/// cross term; XORs never need tables.
CompiledPlan compile_circuit(const BooleanCircuit& c);

struct SessionMessage {
  Party from = Party::kAlice;
  int bit = 0;
};

struct CircuitRun {
  /// Per output, the value the recipient reconstructs.
  std::vector<int> outputs;
  std::int64_t tables_used = 0;
  std::vector<SessionMessage> transcript;
};

/// Runs the plan on shares. Throws InsufficientTables before consuming anything
/// when the pool is below the table budget. `record_transcript` = false skips
/// message recording.
CircuitRun eval_circuit(const CompiledPlan& plan, const std::vector<int>& alice_bits,
                        const std::vector<int>& bob_bits, TablePool& pool, bool record_transcript = true);

const char* owner_name(Owner o);
const char* recipient_name(Recipient r);

}  // namespace ott::mpc
