#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ontointent/ontology.hpp"
#include "ontointent/prediction.hpp"

namespace ontointent {

/// One line of a JSONL evaluation file:
///   {"id": "...", "query": "...", "gold_intents": ["..."],
///    "gold_slots": [{"domain": "...", "slot": "...", "value": "..."}]}
/// `gold_slots` may be omitted; any other key is rejected.
struct DatasetRecord {
  std::string id;
  std::string query;
  std::vector<std::string> gold_intents;
  std::vector<SlotTriple> gold_slots;
  std::size_t line = 0;  // 1-based source line, 0 when not from a file

  bool same_content(const DatasetRecord& other) const {
    return id == other.id && query == other.query &&
           gold_intents == other.gold_intents && gold_slots == other.gold_slots;
  }
};

/// Throws DatasetError (with line number) on malformed input and on an
/// input with no records.
std::vector<DatasetRecord> ingest_dataset(std::istream& in);
std::vector<DatasetRecord> ingest_dataset_file(const std::string& path);

DatasetRecord parse_record(const std::string& line, std::size_t line_number);
std::string serialize_record(const DatasetRecord& record);
void write_dataset(std::ostream& out, const std::vector<DatasetRecord>& records);

/// Throws UnresolvedGoldIntent naming the first gold id missing from `o`
/// (or naming the root).
void check_gold_intents(const std::vector<DatasetRecord>& records,
                        const Ontology& o);

}  // namespace ontointent
