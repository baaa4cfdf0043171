#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ott/protocols/nland.hpp"

namespace ott::protocols {

using Json = nlohmann::ordered_json;

/// One protocol run as a JSONL record. State snapshots are summarized by their
/// qubit counts; amplitudes stay in memory.
Json transcript_json(const NlandRun& run);

/// Writes `# <header>` followed by one compact JSON document per line.
void write_jsonl(std::ostream& out, const std::string& header, const std::vector<Json>& records);
/// Reads records back, skipping lines that start with '#'.
std::vector<Json> read_jsonl(std::istream& in);

/// Per-party batch files share table ids and never contain the other party's bits.
Json alice_batch_json(const std::vector<OneTimeTable>& tables);
Json bob_batch_json(const std::vector<OneTimeTable>& tables);
std::vector<AliceTableView> parse_alice_batch(const Json& doc);
std::vector<BobTableView> parse_bob_batch(const Json& doc);

/// Joins the two party files back into full tables (ids must line up).
std::vector<OneTimeTable> join_batches(const std::vector<AliceTableView>& a, const std::vector<BobTableView>& b);

}  // namespace ott::protocols
