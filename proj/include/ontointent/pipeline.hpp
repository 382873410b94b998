#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "ontointent/backend.hpp"
#include "ontointent/classify.hpp"
#include "ontointent/config.hpp"
#include "ontointent/dataset.hpp"
#include "ontointent/errors.hpp"
#include "ontointent/metrics.hpp"
#include "ontointent/retrieve.hpp"

namespace ontointent {

/// Error raised inside a pipeline stage; keeps the original error kind.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.kind(), stage + ": " + cause.what()), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct PipelineResult {
  PredictionSet prediction;
  RetrievalResult retrieval;
  Prompt prompt;
  std::optional<double> bias_mass;
  std::vector<std::string> diagnostics;
  double retrieval_ms = 0.0;
  double decode_ms = 0.0;
};

/// Embed, retrieve, expand, prompt, forward, bias, decode, classify, merge.
///
/// Stages follow the ablation switches:
///  - retrieval runs when symbolic integration or logit biasing is on;
///  - symbolic integration puts the retrieved labels in the prompt and
///    restricts decoding to them; otherwise the prompt is neutral and every
///    non-root node is a decoding candidate;
///  - logit biasing boosts the retrieved labels' tokens;
///  - the classifier head, when switched on and loaded, is unioned in.
/// An empty retrieval behaves as if both retrieval-driven stages were off.
///
/// The engine serializes encoder calls when the encoder is not thread safe
/// and caps concurrent backend calls at the backend's max_in_flight.
class Engine {
 public:
  Engine(const Ontology& o, const NodeIndex& index, const Encoder& encoder,
         const Backend& backend, const ClassifierHead* head = nullptr);

  PipelineResult run(std::string_view query, const PipelineConfig& cfg) const;

  /// Pooled backend state for the prompt `cfg` would build for `query`.
  std::vector<double> pooled_state(std::string_view query,
                                   const PipelineConfig& cfg) const;

  const Ontology& ontology() const { return ontology_; }
  const Backend& backend() const { return backend_; }
  const ClassifierHead* head() const { return head_; }

 private:
  Embedding encode(std::string_view text) const;
  Prompt make_prompt(std::string_view query, const RetrievalResult& retrieval,
                     const PipelineConfig& cfg) const;

  const Ontology& ontology_;
  const NodeIndex& index_;
  const Encoder& encoder_;
  const Backend& backend_;
  const ClassifierHead* head_;
  std::vector<std::string> all_nodes_;
  mutable std::mutex encoder_mutex_;
  mutable std::counting_semaphore<1024> backend_slots_;
};

struct RecordOutcome {
  std::string id;
  PredictionSet prediction;
  std::optional<double> bias_mass;
  std::vector<std::string> diagnostics;
  double retrieval_ms = 0.0;
  double decode_ms = 0.0;
};

struct DatasetEvaluation {
  EvalReport report;
  std::vector<RecordOutcome> outcomes;  // input order
  /// Mean bias mass over records that reported one; NaN when none did.
  double mean_bias_mass = 0.0;
};

/// Runs the pipeline over every record on `cfg.workers` threads, then
/// scores. Gold ids are checked against the ontology first.
DatasetEvaluation evaluate_dataset(const std::vector<DatasetRecord>& records,
                                   const PipelineConfig& cfg, const Engine& engine);

struct SweepRow {
  double beta = 0.0;
  double gamma = 0.0;
  EvalReport report;
  double mean_bias_mass = 0.0;
};

inline const std::vector<double> kDefaultBiasGrid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};

/// One dataset evaluation per (beta, gamma) pair, rows sorted by (beta,
/// gamma). `on_row` sees each row as soon as it is computed, so a failing
/// cell leaves earlier rows flushed before the error propagates.
std::vector<SweepRow> sweep(const std::vector<double>& beta_grid,
                            const std::vector<double>& gamma_grid,
                            const std::vector<DatasetRecord>& records,
                            const PipelineConfig& cfg, const Engine& engine,
                            const std::function<void(const SweepRow&)>& on_row = {});

struct AblationRow {
  std::string name;
  AblationSwitches switches;
  EvalReport report;
};

/// The five ablation configurations in order: base, +SI, +LB, +SI+LB,
/// +SI+LB+CLF (full).
std::vector<std::pair<std::string, AblationSwitches>> ablation_configurations();

std::vector<AblationRow> ablate(const std::vector<DatasetRecord>& records,
                                const PipelineConfig& cfg, const Engine& engine);

/// Pooled states paired with gold intents, ready for train_head.
std::vector<TrainingExample> training_examples(
    const std::vector<DatasetRecord>& records, const PipelineConfig& cfg,
    const Engine& engine);

// Reports. The JSON report is a pure function of its inputs; timings go to
// a separate JSONL stream.
void write_report_json(std::ostream& out, const DatasetEvaluation& eval,
                       const PipelineConfig& cfg);
void write_timings_jsonl(std::ostream& out, const DatasetEvaluation& eval);
void write_metrics_table(std::ostream& out,
                         const std::vector<std::pair<std::string, EvalReport>>& rows);
void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_row_csv(std::ostream& out, const SweepRow& row);

}  // namespace ontointent
