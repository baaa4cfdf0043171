#pragma once

#include <cstdint>
#include <vector>

namespace ott::protocols {

/// Four correlated bits with e ^ f == x & y when the table is correct.
/// Alice holds (x, e), Bob holds (y, f).
struct OneTimeTable {
  std::int64_t id = 0;
  int x = 0;
  int y = 0;
  int e = 0;
  int f = 0;

  bool correct() const { return (e ^ f) == (x & y); }
  friend bool operator==(const OneTimeTable&, const OneTimeTable&) = default;
};

struct AliceTableView {
  std::int64_t id = 0;
  int x = 0;
  int e = 0;
  friend bool operator==(const AliceTableView&, const AliceTableView&) = default;
};

struct BobTableView {
  std::int64_t id = 0;
  int y = 0;
  int f = 0;
  friend bool operator==(const BobTableView&, const BobTableView&) = default;
};

inline AliceTableView alice_view(const OneTimeTable& t) { return {t.id, t.x, t.e}; }
inline BobTableView bob_view(const OneTimeTable& t) { return {t.id, t.y, t.f}; }

/// Reassembles a table from two views; throws std::invalid_argument on id mismatch.
OneTimeTable join_views(const AliceTableView& a, const BobTableView& b);

std::vector<AliceTableView> alice_views(const std::vector<OneTimeTable>& tables);
std::vector<BobTableView> bob_views(const std::vector<OneTimeTable>& tables);

}  // namespace ott::protocols
