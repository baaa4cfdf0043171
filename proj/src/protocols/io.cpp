#include "ott/protocols/io.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace ott::protocols {

namespace {

int read_bit(const Json& j, const char* key) {
  const int v = j.at(key).get<int>();
  if (v != 0 && v != 1) throw std::invalid_argument(std::string("field '") + key + "' is not a bit");
  return v;
}

}  // namespace

Json transcript_json(const NlandRun& run) {
  const auto& tr = run.transcript;
  Json j;
  j["protocol"] = protocol_name(tr.protocol);
  j["id"] = run.table ? Json(run.table->id) : Json(nullptr);
  j["outcome"] = tr.aborted ? "failed" : "ok";
  if (tr.aborted) j["failure_reason"] = tr.failure_reason;
  j["x"] = tr.x;
  j["y"] = tr.y;
  j["s"] = tr.s;
  if (tr.protocol == Protocol::kNland) {
    j["t"] = tr.t;
    j["h1"] = tr.h1;
    j["h2"] = tr.h2;
    j["p"] = tr.p;
  } else {
    j["w"] = *tr.w;
    j["bob_bits"] = tr.bob_bits;
  }
  j["h"] = tr.h;
  j["alice_outcomes"] = tr.alice_outcomes;
  Json sizes = Json::array();
  for (const auto& s : tr.sent_states) sizes.push_back(s.num_qubits());
  j["sent_state_qubits"] = sizes;
  if (tr.alice_guess) j["alice_guess"] = *tr.alice_guess;
  if (tr.bob_guess) j["bob_guess"] = *tr.bob_guess;
  if (!tr.alice_observed.empty()) j["alice_observed"] = tr.alice_observed;
  if (!tr.bob_observed.empty()) j["bob_observed"] = tr.bob_observed;
  if (run.table) {
    j["e"] = run.table->e;
    j["f"] = run.table->f;
    j["correct"] = run.table->correct();
  }
  return j;
}

void write_jsonl(std::ostream& out, const std::string& header, const std::vector<Json>& records) {
  out << "# " << header << '\n';
  for (const auto& r : records) out << r.dump() << '\n';
}

std::vector<Json> read_jsonl(std::istream& in) {
  std::vector<Json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(Json::parse(line));
  }
  return out;
}

Json alice_batch_json(const std::vector<OneTimeTable>& tables) {
  Json doc;
  doc["party"] = "alice";
  Json rows = Json::array();
  for (const auto& t : tables) rows.push_back({{"id", t.id}, {"x", t.x}, {"e", t.e}});
  doc["tables"] = rows;
  return doc;
}

Json bob_batch_json(const std::vector<OneTimeTable>& tables) {
  Json doc;
  doc["party"] = "bob";
  Json rows = Json::array();
  for (const auto& t : tables) rows.push_back({{"id", t.id}, {"y", t.y}, {"f", t.f}});
  doc["tables"] = rows;
  return doc;
}

std::vector<AliceTableView> parse_alice_batch(const Json& doc) {
  if (doc.at("party") != "alice") throw std::invalid_argument("not an Alice batch file");
  std::vector<AliceTableView> out;
  for (const auto& row : doc.at("tables")) out.push_back({row.at("id").get<std::int64_t>(), read_bit(row, "x"), read_bit(row, "e")});
  return out;
}

std::vector<BobTableView> parse_bob_batch(const Json& doc) {
  if (doc.at("party") != "bob") throw std::invalid_argument("not a Bob batch file");
  std::vector<BobTableView> out;
  for (const auto& row : doc.at("tables")) out.push_back({row.at("id").get<std::int64_t>(), read_bit(row, "y"), read_bit(row, "f")});
  return out;
}

std::vector<OneTimeTable> join_batches(const std::vector<AliceTableView>& a, const std::vector<BobTableView>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("party batch files list different numbers of tables");
  std::vector<OneTimeTable> out;
  out.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(join_views(a[k], b[k]));
  return out;
}

}  // namespace ott::protocols
