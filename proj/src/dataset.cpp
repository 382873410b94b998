#include "ontointent/dataset.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "ontointent/errors.hpp"

namespace ontointent {

using nlohmann::json;

namespace {

const std::string& string_field(const json& obj, const char* key,
                                std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DatasetError(line, std::string("missing '") + key + "'");
  if (!it->is_string()) {
    throw DatasetError(line, std::string("'") + key + "' must be a string");
  }
  return it->get_ref<const std::string&>();
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

DatasetRecord parse_record(const std::string& line, std::size_t line_number) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DatasetError(line_number, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DatasetError(line_number, "record must be an object");
  static const std::set<std::string> kKeys{"id", "query", "gold_intents",
                                           "gold_slots"};
  for (const auto& [key, _] : doc.items()) {
    if (!kKeys.contains(key)) {
      throw DatasetError(line_number, "unexpected field '" + key + "'");
    }
  }

  DatasetRecord r;
  r.line = line_number;
  r.id = string_field(doc, "id", line_number);
  if (r.id.empty()) throw DatasetError(line_number, "'id' is empty");
  r.query = string_field(doc, "query", line_number);
  if (blank(r.query)) throw DatasetError(line_number, "'query' is empty");

  auto gi = doc.find("gold_intents");
  if (gi == doc.end()) throw DatasetError(line_number, "missing 'gold_intents'");
  if (!gi->is_array()) throw DatasetError(line_number, "'gold_intents' must be an array");
  std::set<std::string> seen;
  for (const auto& x : *gi) {
    if (!x.is_string()) throw DatasetError(line_number, "gold intent ids must be strings");
    auto id = x.get<std::string>();
    if (!seen.insert(id).second) {
      throw DatasetError(line_number, "duplicate gold intent '" + id + "'");
    }
    r.gold_intents.push_back(std::move(id));
  }

  if (auto gs = doc.find("gold_slots"); gs != doc.end()) {
    if (!gs->is_array()) throw DatasetError(line_number, "'gold_slots' must be an array");
    for (const auto& s : *gs) {
      if (!s.is_object() || s.size() != 3) {
        throw DatasetError(line_number,
                           "gold slots must be {domain, slot, value} objects");
      }
      r.gold_slots.push_back({string_field(s, "domain", line_number),
                              string_field(s, "slot", line_number),
                              string_field(s, "value", line_number)});
    }
  }
  return r;
}

std::vector<DatasetRecord> ingest_dataset(std::istream& in) {
  std::vector<DatasetRecord> records;
  std::set<std::string> ids;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (blank(line)) continue;
    auto r = parse_record(line, n);
    if (!ids.insert(r.id).second) throw DatasetError(n, "duplicate id '" + r.id + "'");
    records.push_back(std::move(r));
  }
  if (records.empty()) throw DatasetError(0, "dataset has no records");
  return records;
}

std::vector<DatasetRecord> ingest_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError(0, "cannot open '" + path + "'");
  return ingest_dataset(in);
}

std::string serialize_record(const DatasetRecord& record) {
  nlohmann::ordered_json doc;
  doc["id"] = record.id;
  doc["query"] = record.query;
  doc["gold_intents"] = record.gold_intents;
  auto slots = nlohmann::ordered_json::array();
  for (const auto& s : record.gold_slots) {
    slots.push_back({{"domain", s.domain}, {"slot", s.slot}, {"value", s.value}});
  }
  doc["gold_slots"] = std::move(slots);
  return doc.dump();
}

void write_dataset(std::ostream& out, const std::vector<DatasetRecord>& records) {
  for (const auto& r : records) out << serialize_record(r) << "\n";
}

void check_gold_intents(const std::vector<DatasetRecord>& records,
                        const Ontology& o) {
  for (const auto& r : records) {
    for (const auto& id : r.gold_intents) {
      if (!o.contains(id) || id == o.root_id()) throw UnresolvedGoldIntent(id, r.line);
    }
  }
}

}  // namespace ontointent
