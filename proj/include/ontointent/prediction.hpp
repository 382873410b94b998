#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ontointent {

struct SlotTriple {
  std::string domain;
  std::string slot;
  std::string value;

  auto operator<=>(const SlotTriple&) const = default;
};

enum class Provenance { Generated, Classifier };

std::string_view to_string(Provenance p);

/// Predicted intent node ids with per-intent provenance, plus slot triples.
struct PredictionSet {
  std::map<std::string, Provenance> intents;
  std::set<SlotTriple> slots;

  std::vector<std::string> intent_ids() const;
  std::set<std::string> intent_set() const;
  bool operator==(const PredictionSet&) const = default;
};

/// Union of generated and classifier intents. Intents present in `gen`
/// keep their tag; classifier-only ones are tagged as such. Slots pass
/// through from `gen`.
PredictionSet merge_predictions(const PredictionSet& gen,
                                const std::vector<std::string>& aux);

}  // namespace ontointent
