#include "ontointent/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace ontointent {

namespace {

template <class F>
auto in_stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

// Releases a counting semaphore slot on scope exit.
class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<1024>& sem) : sem_(sem) {
    sem_.acquire();
  }
  ~SlotGuard() { sem_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<1024>& sem_;
};

std::ptrdiff_t slot_count(const Backend& backend) {
  auto n = std::clamp<std::size_t>(backend.max_in_flight(), 1, 1024);
  return static_cast<std::ptrdiff_t>(n);
}

}  // namespace

Engine::Engine(const Ontology& o, const NodeIndex& index, const Encoder& encoder,
               const Backend& backend, const ClassifierHead* head)
    : ontology_(o),
      index_(index),
      encoder_(encoder),
      backend_(backend),
      head_(head),
      all_nodes_(o.non_root_ids()),
      backend_slots_(slot_count(backend)) {
  if (index_.dimension() != encoder_.dimension()) {
    throw DimensionMismatch("index dimension " + std::to_string(index_.dimension()) +
                            " vs encoder dimension " +
                            std::to_string(encoder_.dimension()));
  }
}

Embedding Engine::encode(std::string_view text) const {
  try {
    if (encoder_.thread_safe()) return encoder_.encode(text);
    std::lock_guard lock(encoder_mutex_);
    return encoder_.encode(text);
  } catch (const EmptyText& e) {
    throw EncoderFailure(e.what());
  }
}

Prompt Engine::make_prompt(std::string_view query, const RetrievalResult& retrieval,
                           const PipelineConfig& cfg) const {
  if (cfg.ablation.symbolic_integration && !retrieval.subgraph.empty()) {
    return build_prompt(query, retrieval.subgraph, ontology_, cfg.prompt);
  }
  return build_neutral_prompt(query);
}

PipelineResult Engine::run(std::string_view query, const PipelineConfig& cfg) const {
  PipelineResult r;
  const auto& sw = cfg.ablation;

  auto t0 = std::chrono::steady_clock::now();
  if (sw.symbolic_integration || sw.logit_biasing) {
    r.retrieval = in_stage("retrieve", [&] {
      return retrieve(index_, ontology_, encode(query), cfg.retrieval);
    });
  }
  r.retrieval_ms = elapsed_ms(t0);
  const bool have = !r.retrieval.subgraph.empty();

  r.prompt = in_stage("prompt", [&] { return make_prompt(query, r.retrieval, cfg); });

  auto t1 = std::chrono::steady_clock::now();
  DecodeRequest req;
  req.subgraph = r.retrieval.subgraph;
  req.candidates = (sw.symbolic_integration && have) ? r.retrieval.subgraph : all_nodes_;
  if (sw.logit_biasing && have) req.bias = cfg.bias;
  req.threshold = cfg.decode_threshold;
  BackendRun run = in_stage("decode", [&] {
    SlotGuard slot(backend_slots_);
    return run_backend(r.prompt, backend_, req, ontology_);
  });
  r.prediction = std::move(run.prediction);
  r.bias_mass = run.bias_mass;
  r.diagnostics = std::move(run.diagnostics);

  if (sw.classifier && head_) {
    auto aux = in_stage("classify", [&] {
      std::vector<double> h;
      {
        SlotGuard slot(backend_slots_);
        h = backend_.pooled_state(r.prompt);
      }
      return classify(*head_, h, cfg.classifier_tau.value_or(head_->tau));
    });
    r.prediction = merge_predictions(r.prediction, aux);
  }
  r.decode_ms = elapsed_ms(t1);
  return r;
}

std::vector<double> Engine::pooled_state(std::string_view query,
                                         const PipelineConfig& cfg) const {
  RetrievalResult retrieval;
  if (cfg.ablation.symbolic_integration || cfg.ablation.logit_biasing) {
    retrieval = in_stage("retrieve", [&] {
      return retrieve(index_, ontology_, encode(query), cfg.retrieval);
    });
  }
  Prompt prompt = in_stage("prompt", [&] { return make_prompt(query, retrieval, cfg); });
  return in_stage("classify", [&] {
    SlotGuard slot(backend_slots_);
    return backend_.pooled_state(prompt);
  });
}

DatasetEvaluation evaluate_dataset(const std::vector<DatasetRecord>& records,
                                   const PipelineConfig& cfg, const Engine& engine) {
  if (records.empty()) throw DatasetError(0, "dataset has no records");
  check_gold_intents(records, engine.ontology());

  DatasetEvaluation eval;
  eval.outcomes.resize(records.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= records.size()) return;
      try {
        auto res = engine.run(records[i].query, cfg);
        auto& out = eval.outcomes[i];
        out.id = records[i].id;
        out.prediction = std::move(res.prediction);
        out.bias_mass = res.bias_mass;
        out.diagnostics = std::move(res.diagnostics);
        out.retrieval_ms = res.retrieval_ms;
        out.decode_ms = res.decode_ms;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const std::size_t n_workers = std::clamp<std::size_t>(cfg.workers, 1, records.size());
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::vector<EvalInstance> instances;
  instances.reserve(records.size());
  double mass_sum = 0.0;
  std::size_t mass_count = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    EvalInstance inst;
    inst.id = records[i].id;
    inst.prediction = eval.outcomes[i].prediction;
    inst.gold_intents.insert(records[i].gold_intents.begin(),
                             records[i].gold_intents.end());
    inst.gold_slots.insert(records[i].gold_slots.begin(), records[i].gold_slots.end());
    instances.push_back(std::move(inst));
    if (eval.outcomes[i].bias_mass) {
      mass_sum += *eval.outcomes[i].bias_mass;
      ++mass_count;
    }
  }
  eval.report = evaluate(engine.ontology(), instances);
  eval.mean_bias_mass = mass_count > 0 ? mass_sum / static_cast<double>(mass_count)
                                       : std::numeric_limits<double>::quiet_NaN();
  return eval;
}

std::vector<SweepRow> sweep(const std::vector<double>& beta_grid,
                            const std::vector<double>& gamma_grid,
                            const std::vector<DatasetRecord>& records,
                            const PipelineConfig& cfg, const Engine& engine,
                            const std::function<void(const SweepRow&)>& on_row) {
  if (beta_grid.empty() || gamma_grid.empty()) {
    throw ConfigError("sweep grids must be non-empty");
  }
  auto betas = beta_grid;
  auto gammas = gamma_grid;
  std::sort(betas.begin(), betas.end());
  std::sort(gammas.begin(), gammas.end());
  for (double x : betas) {
    if (x < 0) throw ConfigError("sweep beta values must be >= 0");
  }
  for (double x : gammas) {
    if (x < 0) throw ConfigError("sweep gamma values must be >= 0");
  }

  std::vector<SweepRow> rows;
  rows.reserve(betas.size() * gammas.size());
  for (double beta : betas) {
    for (double gamma : gammas) {
      PipelineConfig cell = cfg;
      cell.bias.beta = beta;
      cell.bias.gamma = gamma;
      auto eval = evaluate_dataset(records, cell, engine);
      SweepRow row{beta, gamma, std::move(eval.report), eval.mean_bias_mass};
      if (on_row) on_row(row);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<std::pair<std::string, AblationSwitches>> ablation_configurations() {
  return {
      {"base", {false, false, false}},
      {"+SI", {true, false, false}},
      {"+LB", {false, true, false}},
      {"+SI+LB", {true, true, false}},
      {"+SI+LB+CLF", {true, true, true}},
  };
}

std::vector<AblationRow> ablate(const std::vector<DatasetRecord>& records,
                                const PipelineConfig& cfg, const Engine& engine) {
  std::vector<AblationRow> rows;
  for (const auto& [name, switches] : ablation_configurations()) {
    PipelineConfig c = cfg;
    c.ablation = switches;
    rows.push_back({name, switches, evaluate_dataset(records, c, engine).report});
  }
  return rows;
}

std::vector<TrainingExample> training_examples(
    const std::vector<DatasetRecord>& records, const PipelineConfig& cfg,
    const Engine& engine) {
  check_gold_intents(records, engine.ontology());
  std::vector<TrainingExample> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back({engine.pooled_state(r.query, cfg), r.gold_intents});
  }
  return out;
}

void write_report_json(std::ostream& out, const DatasetEvaluation& eval,
                       const PipelineConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["seed"] = cfg.seed;
  nlohmann::ordered_json conf = nlohmann::ordered_json::object();
  for (const auto& [k, v] : describe(cfg)) conf[k] = v;
  doc["config"] = std::move(conf);
  const auto& r = eval.report;
  doc["metrics"] = {{"n", r.per_instance.size()},
                    {"em", r.em},
                    {"slot_precision", r.slot_precision},
                    {"slot_recall", r.slot_recall},
                    {"slot_f1", r.slot_f1},
                    {"avg_sis", r.avg_sis}};
  if (std::isnan(eval.mean_bias_mass)) {
    doc["mean_bias_mass"] = nullptr;
  } else {
    doc["mean_bias_mass"] = eval.mean_bias_mass;
  }
  auto instances = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.per_instance.size(); ++i) {
    const auto& s = r.per_instance[i];
    const auto& o = eval.outcomes[i];
    nlohmann::ordered_json item;
    item["id"] = s.id;
    item["exact"] = s.exact;
    item["sis"] = s.sis;
    auto intents = nlohmann::ordered_json::object();
    for (const auto& [id, prov] : o.prediction.intents) {
      intents[id] = std::string(to_string(prov));
    }
    item["predicted"] = std::move(intents);
    auto slots = nlohmann::ordered_json::array();
    for (const auto& t : o.prediction.slots) slots.push_back({t.domain, t.slot, t.value});
    item["slots"] = std::move(slots);
    if (!o.diagnostics.empty()) item["diagnostics"] = o.diagnostics;
    instances.push_back(std::move(item));
  }
  doc["instances"] = std::move(instances);
  out << doc.dump(2) << "\n";
}

void write_timings_jsonl(std::ostream& out, const DatasetEvaluation& eval) {
  for (const auto& o : eval.outcomes) {
    nlohmann::ordered_json line;
    line["id"] = o.id;
    line["retrieval_ms"] = o.retrieval_ms;
    line["decode_ms"] = o.decode_ms;
    out << line.dump() << "\n";
  }
}

void write_metrics_table(std::ostream& out,
                         const std::vector<std::pair<std::string, EvalReport>>& rows) {
  std::size_t width = std::string("Configuration").size();
  for (const auto& [name, _] : rows) width = std::max(width, name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "Configuration"
      << std::right << std::setw(10) << "EM" << std::setw(10) << "Slot-F1"
      << std::setw(8) << "SIS" << "\n";
  out << std::fixed;
  for (const auto& [name, r] : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << name << std::right
        << std::setprecision(1) << std::setw(9) << 100.0 * r.em << "%"
        << std::setw(9) << 100.0 * r.slot_f1 << "%" << std::setprecision(3)
        << std::setw(8) << r.avg_sis << "\n";
  }
  out << std::defaultfloat;
}

void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << std::right << std::setw(6) << "beta" << std::setw(7) << "gamma"
      << std::setw(10) << "EM" << std::setw(10) << "Slot-F1" << std::setw(8)
      << "SIS" << std::setw(11) << "bias_mass" << "\n";
  out << std::fixed;
  for (const auto& row : rows) {
    out << std::setprecision(2) << std::setw(6) << row.beta << std::setw(7)
        << row.gamma << std::setprecision(1) << std::setw(9) << 100.0 * row.report.em
        << "%" << std::setw(9) << 100.0 * row.report.slot_f1 << "%"
        << std::setprecision(3) << std::setw(8) << row.report.avg_sis
        << std::setprecision(4) << std::setw(11) << row.mean_bias_mass << "\n";
  }
  out << std::defaultfloat;
}

void write_sweep_row_csv(std::ostream& out, const SweepRow& row) {
  auto num = [](double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
  };
  out << num(row.beta) << "," << num(row.gamma) << "," << num(row.report.em) << ","
      << num(row.report.slot_f1) << "," << num(row.report.avg_sis) << ","
      << num(row.mean_bias_mass) << "\n"
      << std::flush;
}

}  // namespace ontointent
