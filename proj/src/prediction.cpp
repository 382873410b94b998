#include "ontointent/prediction.hpp"

namespace ontointent {

std::string_view to_string(Provenance p) {
  return p == Provenance::Generated ? "generated" : "classifier";
}

std::vector<std::string> PredictionSet::intent_ids() const {
  std::vector<std::string> ids;
  ids.reserve(intents.size());
  for (const auto& [id, _] : intents) ids.push_back(id);
  return ids;
}

std::set<std::string> PredictionSet::intent_set() const {
  std::set<std::string> ids;
  for (const auto& [id, _] : intents) ids.insert(id);
  return ids;
}

PredictionSet merge_predictions(const PredictionSet& gen,
                                const std::vector<std::string>& aux) {
  PredictionSet out = gen;
  for (const auto& id : aux) out.intents.emplace(id, Provenance::Classifier);
  return out;
}

}  // namespace ontointent
