#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ott/protocols/table.hpp"
#include "ott/rng.hpp"

namespace ott::mpc {

using protocols::OneTimeTable;

/// A bit split as share_a ^ share_b; Alice holds share_a, Bob holds share_b.
struct DistributedBit {
  int share_a = 0;
  int share_b = 0;

  int value() const { return share_a ^ share_b; }
  friend bool operator==(const DistributedBit&, const DistributedBit&) = default;
};

class TableReuseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientTables : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Records every table id that has been consumed; a second use throws TableReuseError.
class ConsumptionLedger {
 public:
  void consume(std::int64_t id);
  bool used(std::int64_t id) const { return used_.count(id) != 0; }
  std::int64_t count() const { return static_cast<std::int64_t>(used_.size()); }

 private:
  std::unordered_set<std::int64_t> used_;
};

/// Hands out tables in the order given. Both parties hold the same order, so
/// the k-th nonlocal AND of a session always uses the k-th table.
class TablePool {
 public:
  explicit TablePool(std::vector<OneTimeTable> tables) : tables_(std::move(tables)) {}

  /// Next table; records it in the ledger. Throws InsufficientTables when empty.
  const OneTimeTable& take();
  /// Throws InsufficientTables unless n more tables are available.
  void require(std::int64_t n) const;

  std::int64_t remaining() const { return static_cast<std::int64_t>(tables_.size()) - next_; }
  std::int64_t consumed() const { return next_; }
  const ConsumptionLedger& ledger() const { return ledger_; }

 private:
  std::vector<OneTimeTable> tables_;
  std::int64_t next_ = 0;
  ConsumptionLedger ledger_;
};

/// Correct tables with uniform x, y, r, as a trusted dealer would hand out.
/// Ids run from first_id upward.
std::vector<OneTimeTable> ideal_tables(std::int64_t n, Rng& rng, std::int64_t first_id = 0);

/// The table with Alice's bits (x, e) and Bob's bits (y, f = r) for given x, y, r.
inline OneTimeTable table_from(std::int64_t id, int x, int y, int r) { return {id, x, y, (x & y) ^ r, r}; }

}  // namespace ott::mpc
