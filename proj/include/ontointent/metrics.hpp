#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "ontointent/ontology.hpp"
#include "ontointent/prediction.hpp"

namespace ontointent {

struct EvalInstance {
  std::string id;
  PredictionSet prediction;
  std::set<std::string> gold_intents;
  std::set<SlotTriple> gold_slots;
};

struct InstanceScore {
  std::string id;
  bool exact = false;
  double sis = 0.0;
};

struct SlotScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

struct EvalReport {
  double em = 0.0;
  double slot_precision = 0.0;
  double slot_recall = 0.0;
  double slot_f1 = 0.0;
  double avg_sis = 0.0;
  std::vector<InstanceScore> per_instance;
};

bool exact_match(const std::set<std::string>& pred,
                 const std::set<std::string>& gold);

/// Slot triple after trimming and lowercasing every field.
SlotTriple normalize_slot(const SlotTriple& s);

/// Micro-averaged precision/recall/F1 with counts pooled over all
/// instances. F1 is 0 when precision + recall is 0; precision (recall) is
/// 0 when nothing was predicted (expected).
SlotScores slot_f1(const std::vector<EvalInstance>& instances);

/// 2 depth(lca) / (depth(u) + depth(v)). Throws UnknownNode, or
/// RootOperand when either node is the root.
double sis(const Ontology& o, const std::string& u, const std::string& v);

/// Maximum-weight one-to-one matching on a rectangular score matrix.
/// Returns, for each row, the matched column or -1.
std::vector<int> max_weight_assignment(
    const std::vector<std::vector<double>>& scores);

/// Sum of SIS over the best one-to-one matching, divided by
/// max(|pred|, |gold|). Empty prediction scores 0; both empty scores 1.
double multi_sis(const Ontology& o, const std::set<std::string>& pred,
                 const std::set<std::string>& gold);

/// Throws EmptyDataset on no instances.
EvalReport evaluate(const Ontology& o, const std::vector<EvalInstance>& instances);

}  // namespace ontointent
