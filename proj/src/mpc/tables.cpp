#include "ott/mpc/tables.hpp"

#include <string>

namespace ott::mpc {

void ConsumptionLedger::consume(std::int64_t id) {
  if (!used_.insert(id).second) throw TableReuseError("table " + std::to_string(id) + " already consumed");
}

const OneTimeTable& TablePool::take() {
  require(1);
  // A rejected duplicate is still dropped from the pool.
  const OneTimeTable& t = tables_[static_cast<std::size_t>(next_++)];
  ledger_.consume(t.id);
  return t;
}

void TablePool::require(std::int64_t n) const {
  if (remaining() < n) {
    throw InsufficientTables("need " + std::to_string(n) + " tables, " + std::to_string(remaining()) + " left");
  }
}

std::vector<OneTimeTable> ideal_tables(std::int64_t n, Rng& rng, std::int64_t first_id) {
  std::vector<OneTimeTable> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const int x = rng.bit();
    const int y = rng.bit();
    const int r = rng.bit();
    out.push_back(table_from(first_id + i, x, y, r));
  }
  return out;
}

}  // namespace ott::mpc
