#pragma once

// Pauli-mask bookkeeping for homomorphic evaluation on teleported data.
//
// A data qubit in Bob's hands is X^x Z^z |true state> (X applied last), where
// x and z are affine forms over GF(2) in the session's variables.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ott::qhe {

class AffineForm {
 public:
  AffineForm() = default;
  static AffineForm variable(int id);
  static AffineForm constant_form(int c);

  int constant() const { return constant_; }
  /// Sorted, duplicate-free variable ids.
  const std::vector<int>& support() const { return support_; }
  bool contains(int id) const;
  bool is_constant() const { return support_.empty(); }

  AffineForm& operator^=(const AffineForm& other);
  friend AffineForm operator^(AffineForm a, const AffineForm& b) { return a ^= b; }
  /// Adds 1 to the constant when c = 1.
  AffineForm& flip(int c);

  /// values[id] is the variable's bit. Throws std::out_of_range on a missing id.
  int evaluate(const std::vector<int>& values) const;
  /// Coefficient vector of length `num_vars`.
  std::vector<int> coefficients(int num_vars) const;
  std::string to_string() const;

  friend bool operator==(const AffineForm&, const AffineForm&) = default;

 private:
  int constant_ = 0;
  std::vector<int> support_;
};

enum class VarOwner { kAlice, kBob };

struct QubitMasks {
  AffineForm x;
  AffineForm z;
  friend bool operator==(const QubitMasks&, const QubitMasks&) = default;
};

/// Mask forms for every data qubit plus the variable registry. Holds only
/// what Bob can compute: forms, ids and constants, never variable values.
class MaskLedger {
 public:
  /// n qubits; variables 2i and 2i+1 are Alice's teleportation bits (x, z) of qubit i.
  static MaskLedger after_teleport(int n);

  int num_qubits() const { return static_cast<int>(masks_.size()); }
  int num_variables() const { return static_cast<int>(owners_.size()); }
  VarOwner owner(int id) const { return owners_.at(static_cast<std::size_t>(id)); }
  int add_variable(VarOwner owner);

  const QubitMasks& masks(int qubit) const { return masks_.at(static_cast<std::size_t>(qubit)); }
  QubitMasks& masks(int qubit) { return masks_.at(static_cast<std::size_t>(qubit)); }

  friend bool operator==(const MaskLedger&, const MaskLedger&) = default;

 private:
  std::vector<QubitMasks> masks_;
  std::vector<VarOwner> owners_;
};

enum class CtKind { kH, kP, kT, kCnot };

struct CtGate {
  CtKind kind = CtKind::kH;
  int q0 = 0;
  /// Target of a CNOT (q0 is the control); unused otherwise.
  int q1 = 0;
  friend bool operator==(const CtGate&, const CtGate&) = default;
};

struct CliffordTCircuit {
  int num_qubits = 1;
  std::vector<CtGate> gates;

  int t_count() const;
  /// Throws std::invalid_argument on a bad qubit count or target.
  void validate() const;
};

/// One gate per line: `H q`, `P q`, `T q`, `CNOT c t`; '#' starts a comment.
/// An optional first directive `qubits n` fixes the width, otherwise it is
/// 1 + the largest index used. Throws std::invalid_argument with the line number.
CliffordTCircuit parse_clifford_t(std::istream& in);
CliffordTCircuit parse_clifford_t_text(const std::string& text);
std::string to_text(const CliffordTCircuit& c);

/// Coefficient update for a Clifford gate: H swaps x and z, P sets z ^= x,
/// CNOT sets x_t ^= x_c and z_c ^= z_t. Throws std::invalid_argument for T.
void key_update(MaskLedger& ledger, const CtGate& gate);

}  // namespace ott::qhe
