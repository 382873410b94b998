#include "ontointent/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "ontointent/errors.hpp"

namespace ontointent {

bool exact_match(const std::set<std::string>& pred,
                 const std::set<std::string>& gold) {
  return pred == gold;
}

namespace {

std::string normalize_field(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  std::string out = s.substr(b, e - b + 1);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::set<SlotTriple> normalized(const std::set<SlotTriple>& slots) {
  std::set<SlotTriple> out;
  for (const auto& s : slots) out.insert(normalize_slot(s));
  return out;
}

}  // namespace

SlotTriple normalize_slot(const SlotTriple& s) {
  return {normalize_field(s.domain), normalize_field(s.slot),
          normalize_field(s.value)};
}

SlotScores slot_f1(const std::vector<EvalInstance>& instances) {
  SlotScores out;
  for (const auto& inst : instances) {
    auto pred = normalized(inst.prediction.slots);
    auto gold = normalized(inst.gold_slots);
    std::size_t tp = 0;
    for (const auto& s : pred) tp += gold.count(s);
    out.true_positives += tp;
    out.false_positives += pred.size() - tp;
    out.false_negatives += gold.size() - tp;
  }
  const double tp = static_cast<double>(out.true_positives);
  const double predicted = tp + static_cast<double>(out.false_positives);
  const double expected = tp + static_cast<double>(out.false_negatives);
  out.precision = predicted > 0 ? tp / predicted : 0.0;
  out.recall = expected > 0 ? tp / expected : 0.0;
  const double pr = out.precision + out.recall;
  out.f1 = pr > 0 ? 2.0 * out.precision * out.recall / pr : 0.0;
  return out;
}

double sis(const Ontology& o, const std::string& u, const std::string& v) {
  const int du = o.depth_of(u);
  const int dv = o.depth_of(v);
  if (du == 0 || dv == 0) {
    throw RootOperand("SIS is undefined for the root node");
  }
  const int dl = o.depth_of(o.lca(u, v));
  return 2.0 * dl / static_cast<double>(du + dv);
}

std::vector<int> max_weight_assignment(
    const std::vector<std::vector<double>>& scores) {
  const std::size_t rows = scores.size();
  const std::size_t cols = rows ? scores[0].size() : 0;
  const std::size_t n = std::max(rows, cols);
  std::vector<int> result(rows, -1);
  if (n == 0) return result;

  // Square cost matrix (1-indexed, padded with zero-score dummies); the
  // Hungarian method with potentials minimizes -score.
  auto cost = [&](std::size_t i, std::size_t j) {
    return (i <= rows && j <= cols) ? -scores[i - 1][j - 1] : 0.0;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] >= 1 && p[j] <= rows && j <= cols) {
      result[p[j] - 1] = static_cast<int>(j - 1);
    }
  }
  return result;
}

double multi_sis(const Ontology& o, const std::set<std::string>& pred,
                 const std::set<std::string>& gold) {
  for (const auto& id : pred) o.node(id);
  for (const auto& id : gold) o.node(id);
  if (gold.empty()) return pred.empty() ? 1.0 : 0.0;
  if (pred.empty()) return 0.0;

  std::vector<std::vector<double>> m;
  m.reserve(pred.size());
  for (const auto& p : pred) {
    auto& row = m.emplace_back();
    row.reserve(gold.size());
    for (const auto& g : gold) row.push_back(sis(o, p, g));
  }
  auto match = max_weight_assignment(m);
  double total = 0.0;
  for (std::size_t i = 0; i < match.size(); ++i) {
    if (match[i] >= 0) total += m[i][static_cast<std::size_t>(match[i])];
  }
  return total / static_cast<double>(std::max(pred.size(), gold.size()));
}

EvalReport evaluate(const Ontology& o, const std::vector<EvalInstance>& instances) {
  if (instances.empty()) throw EmptyDataset("no instances to evaluate");
  EvalReport report;
  report.per_instance.reserve(instances.size());
  std::size_t exact = 0;
  double sis_sum = 0.0;
  for (const auto& inst : instances) {
    auto pred = inst.prediction.intent_set();
    InstanceScore s;
    s.id = inst.id;
    s.exact = exact_match(pred, inst.gold_intents);
    s.sis = multi_sis(o, pred, inst.gold_intents);
    exact += s.exact ? 1 : 0;
    sis_sum += s.sis;
    report.per_instance.push_back(std::move(s));
  }
  const double n = static_cast<double>(instances.size());
  report.em = static_cast<double>(exact) / n;
  report.avg_sis = sis_sum / n;
  auto slots = slot_f1(instances);
  report.slot_precision = slots.precision;
  report.slot_recall = slots.recall;
  report.slot_f1 = slots.f1;
  return report;
}

}  // namespace ontointent
