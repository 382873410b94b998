#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ontointent/backend.hpp"
#include "ontointent/classify.hpp"
#include "ontointent/config.hpp"
#include "ontointent/dataset.hpp"
#include "ontointent/ontology.hpp"
#include "ontointent/pipeline.hpp"
#include "ontointent/retrieve.hpp"

namespace fixtures {

// Four domains (Ticket Booking, Food Delivery, Holiday Planning, Online
// Shopping) under a synthesized root; categories at depth 2, leaves at 3.
ontointent::Ontology four_domain_ontology();
std::string four_domain_json();

// Travel -> {Flights -> BookFlight, Lodging -> BookResort}, plus a second
// domain Dining -> Restaurants -> OrderFood.
ontointent::Ontology travel_ontology();

// Synthetic tree with exactly `non_root` nodes below a synthesized root.
ontointent::Ontology synthetic_ontology(std::size_t non_root, std::uint64_t seed);

// Random query text of `words` lowercase tokens drawn from a fixed lexicon.
std::string random_query(std::uint64_t& state, std::size_t words);

// Labelled queries over four_domain_ontology(). Each record names one or
// two leaf intents and mentions the words of their labels.
std::vector<ontointent::DatasetRecord> intent_dataset(std::size_t n,
                                                      std::uint64_t seed,
                                                      const std::string& id_prefix);

// Configuration the end-to-end fixtures are tuned for.
ontointent::PipelineConfig fixture_config();

// Mock encoder, index and backend over four_domain_ontology().
struct MockRig {
  explicit MockRig(std::uint64_t seed = 7);

  ontointent::Engine engine(const ontointent::ClassifierHead* head = nullptr) const;

  ontointent::Ontology ontology;
  ontointent::MockEncoder encoder;
  ontointent::NodeIndex index;
  ontointent::MockBackend backend;
};

// Evaluation split (200 records) and training split (400 records).
std::vector<ontointent::DatasetRecord> test_split();
std::vector<ontointent::DatasetRecord> train_split();

// Head trained on the training split's pooled states under `cfg`.
ontointent::ClassifierHead fixture_head(const MockRig& rig,
                                        const ontointent::PipelineConfig& cfg);

// Two-node task over 4 features: "a" fires when x0 > 0, "b" when x1 > 0.
std::vector<ontointent::TrainingExample> separable_examples(std::size_t n,
                                                            std::uint64_t seed);

// Micro-averaged F1 of the head's multi-label predictions.
double micro_f1(const ontointent::ClassifierHead& head,
                const std::vector<ontointent::TrainingExample>& data);

// Mean binary cross-entropy computed directly from its definition.
double reference_bce(const ontointent::ClassifierHead& head,
                     const std::vector<ontointent::TrainingExample>& data);

}  // namespace fixtures
