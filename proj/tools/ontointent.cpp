#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ontointent/backend.hpp"
#include "ontointent/classify.hpp"
#include "ontointent/config.hpp"
#include "ontointent/dataset.hpp"
#include "ontointent/errors.hpp"
#include "ontointent/feasibility.hpp"
#include "ontointent/pipeline.hpp"
#include "ontointent/retrieve.hpp"

using namespace ontointent;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return 1;
    case ErrorKind::Data: return 2;
    case ErrorKind::Backend: return 3;
  }
  return 2;
}

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string ontology_path = "data/ontology.json";
  std::string index_path;
};

PipelineConfig load_config(const Options& opt) {
  PipelineConfig cfg;
  if (!opt.config_path.empty()) apply_config_file(cfg, opt.config_path);
  for (const auto& kv : opt.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

// Ontology, index, backend and optional head for one invocation.
class Session {
 public:
  Session(const Options& opt, const PipelineConfig& cfg)
      : ontology_(Ontology::load_file(opt.ontology_path)) {
    if (opt.index_path.empty()) {
      index_ = NodeIndex::build(ontology_, encoder_);
    } else {
      std::ifstream in(opt.index_path);
      if (!in) throw ConfigError("cannot open index '" + opt.index_path + "'");
      index_ = NodeIndex::read_sidecar(in, ontology_);
    }
    if (cfg.backend.kind == "remote") {
      std::unique_ptr<Tokenizer> tok;
      if (cfg.backend.vocab_path.empty()) {
        tok = std::make_unique<VocabTokenizer>(mock_vocabulary(ontology_));
      } else {
        std::ifstream in(cfg.backend.vocab_path);
        if (!in) throw ConfigError("cannot open vocabulary '" + cfg.backend.vocab_path + "'");
        tok = std::make_unique<VocabTokenizer>(VocabTokenizer::load(in));
      }
      backend_ = std::make_unique<RemoteBackend>(cfg.backend.remote, std::move(tok));
    } else {
      backend_ = std::make_unique<MockBackend>(ontology_, cfg.seed);
    }
    if (!cfg.classifier_path.empty()) {
      std::ifstream in(cfg.classifier_path);
      if (!in) throw ConfigError("cannot open classifier '" + cfg.classifier_path + "'");
      head_ = ClassifierHead::read(in);
    }
    engine_ = std::make_unique<Engine>(ontology_, index_, encoder_, *backend_,
                                       head_ ? &*head_ : nullptr);
  }

  const Ontology& ontology() const { return ontology_; }
  const NodeIndex& index() const { return index_; }
  const Encoder& encoder() const { return encoder_; }
  const Engine& engine() const { return *engine_; }

 private:
  Ontology ontology_;
  MockEncoder encoder_;
  NodeIndex index_;
  std::unique_ptr<Backend> backend_;
  std::optional<ClassifierHead> head_;
  std::unique_ptr<Engine> engine_;
};

void print_metrics(std::ostream& out, const EvalReport& r) {
  out << std::fixed << std::setprecision(4) << "EM " << r.em << "  Slot-P " << r.slot_precision
      << "  Slot-R " << r.slot_recall << "  Slot-F1 " << r.slot_f1 << "  avg SIS " << r.avg_sis
      << "\n";
}

int cmd_validate(const std::string& path) {
  auto o = Ontology::load_file(path);
  std::size_t leaves = 0;
  for (const auto& n : o.nodes()) leaves += o.children(n.id).empty() ? 1 : 0;
  std::cout << "ok: " << o.size() - 1 << " nodes, " << leaves << " leaves, max depth "
            << o.max_depth() << ", root '" << o.root_id() << "'"
            << (o.root_synthesized() ? " (synthesized)" : "") << ", "
            << o.related_edges().size() << " related edges\n";
  return 0;
}

int cmd_embed_index(const std::string& path, const std::string& sidecar) {
  auto o = Ontology::load_file(path);
  MockEncoder enc;
  auto index = NodeIndex::build(o, enc);
  if (sidecar.empty()) {
    index.write_sidecar(std::cout);
  } else {
    auto out = open_output(sidecar);
    index.write_sidecar(out);
    std::cerr << "wrote " << index.size() << " embeddings of dimension " << index.dimension()
              << " to " << sidecar << "\n";
  }
  return 0;
}

int cmd_retrieve(const Options& opt, const std::string& query) {
  auto cfg = load_config(opt);
  auto o = Ontology::load_file(opt.ontology_path);
  MockEncoder enc;
  NodeIndex index;
  if (opt.index_path.empty()) {
    index = NodeIndex::build(o, enc);
  } else {
    std::ifstream in(opt.index_path);
    if (!in) throw ConfigError("cannot open index '" + opt.index_path + "'");
    index = NodeIndex::read_sidecar(in, o);
  }
  auto r = retrieve(index, o, query, enc, cfg.retrieval);
  for (const auto& s : r.scored) {
    std::cout << std::fixed << std::setprecision(4) << s.similarity << "  " << s.id << "\n";
  }
  std::cout << "subgraph:";
  for (const auto& id : r.subgraph) std::cout << " " << id;
  std::cout << "\n";
  return 0;
}

int cmd_predict(const Options& opt, const std::string& query) {
  auto cfg = load_config(opt);
  Session s(opt, cfg);
  auto r = s.engine().run(query, cfg);
  for (const auto& [id, prov] : r.prediction.intents) {
    std::cout << id << "\t" << to_string(prov) << "\n";
  }
  for (const auto& t : r.prediction.slots) {
    std::cout << "slot\t" << t.domain << "\t" << t.slot << "\t" << t.value << "\n";
  }
  for (const auto& d : r.diagnostics) std::cerr << "note: " << d << "\n";
  return 0;
}

int cmd_eval(const Options& opt, const std::string& dataset, const std::string& report,
             const std::string& timings) {
  auto cfg = load_config(opt);
  Session s(opt, cfg);
  auto records = ingest_dataset_file(dataset);
  auto eval = evaluate_dataset(records, cfg, s.engine());
  if (report.empty()) {
    write_report_json(std::cout, eval, cfg);
  } else {
    auto out = open_output(report);
    write_report_json(out, eval, cfg);
  }
  if (!timings.empty()) {
    auto out = open_output(timings);
    write_timings_jsonl(out, eval);
  }
  print_metrics(std::cerr, eval.report);
  return 0;
}

int cmd_sweep(const Options& opt, const std::string& dataset, std::vector<double> betas,
              std::vector<double> gammas, const std::string& csv) {
  auto cfg = load_config(opt);
  Session s(opt, cfg);
  auto records = ingest_dataset_file(dataset);
  if (betas.empty()) betas = kDefaultBiasGrid;
  if (gammas.empty()) gammas = kDefaultBiasGrid;
  std::optional<std::ofstream> csv_out;
  if (!csv.empty()) {
    csv_out = open_output(csv);
    *csv_out << "beta,gamma,em,slot_f1,avg_sis,bias_mass\n" << std::flush;
  }
  auto rows = sweep(betas, gammas, records, cfg, s.engine(), [&](const SweepRow& row) {
    if (csv_out) write_sweep_row_csv(*csv_out, row);
  });
  write_sweep_table(std::cout, rows);
  return 0;
}

int cmd_ablate(const Options& opt, const std::string& dataset) {
  auto cfg = load_config(opt);
  Session s(opt, cfg);
  auto records = ingest_dataset_file(dataset);
  auto rows = ablate(records, cfg, s.engine());
  std::vector<std::pair<std::string, EvalReport>> table;
  for (const auto& r : rows) table.emplace_back(r.name, r.report);
  write_metrics_table(std::cout, table);
  return 0;
}

int cmd_feasibility(const FeasibilitySpec& spec) {
  auto r = feasibility(spec);
  std::cout << (r.feasible ? "feasible" : "infeasible") << "\n"
            << "memory share " << r.memory_share << " (limit " << kMaxMemoryShare << ")\n"
            << "minimum RAM " << r.min_ram_gb << " GB\n";
  for (const auto& reason : r.reasons) std::cout << "violated: " << reason << "\n";
  return 0;
}

int cmd_train_head(const Options& opt, const std::string& dataset, const std::string& out_path,
                   const TrainingOptions& base) {
  auto cfg = load_config(opt);
  cfg.classifier_path.clear();
  Session s(opt, cfg);
  auto records = ingest_dataset_file(dataset);
  check_gold_intents(records, s.ontology());
  auto examples = training_examples(records, cfg, s.engine());
  TrainingOptions opts = base;
  opts.seed = cfg.seed;
  if (cfg.classifier_tau) opts.tau = *cfg.classifier_tau;
  auto head = train_head(examples, s.ontology().non_root_ids(), s.encoder().dimension(), opts);
  auto out = open_output(out_path);
  head.write(out);
  std::cerr << "trained " << head.rows() << " rows on " << examples.size()
            << " examples, final loss " << head.final_loss << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ontology-guided multi-intent recognition"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("-c,--config", opt.config_path, "key = value configuration file");
  app.add_option("-s,--set", opt.overrides, "override one setting: key=value")
      ->allow_extra_args(false);
  app.add_option("-o,--ontology", opt.ontology_path, "ontology JSON file")
      ->capture_default_str();
  app.add_option("-i,--index", opt.index_path, "precomputed embedding sidecar");

  std::string path, query, dataset, sidecar, report, timings, csv, head_out = "head.json";
  std::vector<double> betas, gammas;
  FeasibilitySpec feas;
  TrainingOptions train_opts;

  auto* validate = app.add_subcommand("validate-ontology", "check an ontology file");
  validate->add_option("file", path, "ontology JSON")->required();

  auto* embed = app.add_subcommand("embed-index", "embed every node of an ontology");
  embed->add_option("ontology", path, "ontology JSON")->required();
  embed->add_option("--sidecar", sidecar, "write embeddings here instead of stdout");

  auto* retr = app.add_subcommand("retrieve", "top-k nodes and expanded subgraph for a query");
  retr->add_option("query", query)->required();

  auto* predict = app.add_subcommand("predict", "run the pipeline on one query");
  predict->add_option("query", query)->required();

  auto* eval = app.add_subcommand("eval", "evaluate a JSONL dataset");
  eval->add_option("dataset", dataset)->required();
  eval->add_option("--report", report, "report JSON path (default stdout)");
  eval->add_option("--timings", timings, "per-query timing JSONL path");

  auto* sw = app.add_subcommand("sweep", "beta x gamma grid evaluation");
  sw->add_option("dataset", dataset)->required();
  sw->add_option("--beta", betas, "beta grid (default 0 .. 0.5 step 0.1)");
  sw->add_option("--gamma", gammas, "gamma grid (default 0 .. 0.5 step 0.1)");
  sw->add_option("--csv", csv, "stream rows to this CSV file");

  auto* abl = app.add_subcommand("ablate", "evaluate the five ablation configurations");
  abl->add_option("dataset", dataset)->required();

  auto* feasible = app.add_subcommand("feasibility", "device deployment check");
  feasible->add_option("--ram", feas.device.ram_gb, "device RAM in GB")->required();
  feasible->add_option("--latency", feas.device.max_latency_ms, "latency cap in ms")->required();
  feasible->add_option("--energy", feas.device.max_energy_j, "energy cap in J")->required();
  feasible->add_option("--model-size", feas.model.size_gb, "model size in GB")->required();
  feasible->add_option("--model-latency", feas.model.latency_ms, "model latency in ms")
      ->required();
  feasible->add_option("--model-energy", feas.model.energy_j, "model energy in J")->required();

  auto* train = app.add_subcommand("train-head", "fit the classifier head on a dataset");
  train->add_option("dataset", dataset)->required();
  train->add_option("--out", head_out, "output path")->capture_default_str();
  train->add_option("--lr", train_opts.learning_rate, "learning rate")->capture_default_str();
  train->add_option("--epochs", train_opts.epochs, "full-batch epochs")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*validate) return cmd_validate(path);
    if (*embed) return cmd_embed_index(path, sidecar);
    if (*retr) return cmd_retrieve(opt, query);
    if (*predict) return cmd_predict(opt, query);
    if (*eval) return cmd_eval(opt, dataset, report, timings);
    if (*sw) return cmd_sweep(opt, dataset, betas, gammas, csv);
    if (*abl) return cmd_ablate(opt, dataset);
    if (*feasible) return cmd_feasibility(feas);
    if (*train) return cmd_train_head(opt, dataset, head_out, train_opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
