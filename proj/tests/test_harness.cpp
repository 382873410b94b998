#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "ontointent/config.hpp"
#include "ontointent/dataset.hpp"
#include "ontointent/errors.hpp"
#include "ontointent/feasibility.hpp"
#include "ontointent/pipeline.hpp"

using namespace ontointent;

namespace {

std::string report_text(const DatasetEvaluation& eval, const PipelineConfig& cfg) {
  std::ostringstream os;
  write_report_json(os, eval, cfg);
  return os.str();
}

PipelineConfig switches(PipelineConfig cfg, bool si, bool lb, bool clf) {
  cfg.ablation = {si, lb, clf};
  return cfg;
}

std::string random_text(std::mt19937_64& rng) {
  static const std::string alphabet = "abcXYZ 019\"\\/\té中{}[],:";
  std::string s;
  const std::size_t n = 1 + rng() % 12;
  while (s.size() < n) {
    const char c = alphabet[rng() % alphabet.size()];
    if (static_cast<unsigned char>(c) >= 0x80) continue;
    s.push_back(c);
  }
  if (s.find_first_not_of(" \t") == std::string::npos) s += "q";
  return s;
}

}  // namespace

// ---- dataset ----

TEST(Dataset, ThreeLineFile) {
  std::istringstream in(
      R"({"id":"a","query":"book a flight","gold_intents":["BookFlight"]})"
      "\n"
      R"({"id":"b","query":"rent a car","gold_intents":["RentCar"],"gold_slots":[{"domain":"HolidayPlanning","slot":"city","value":"Oslo"}]})"
      "\n\n"
      R"({"id":"c","query":"pay my invoice","gold_intents":["PayInvoice","UpdateCard"]})"
      "\n");
  auto records = ingest_dataset(in);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].id, "a");
  EXPECT_EQ(records[1].gold_slots,
            (std::vector<SlotTriple>{{"HolidayPlanning", "city", "Oslo"}}));
  EXPECT_EQ(records[2].gold_intents, (std::vector<std::string>{"PayInvoice", "UpdateCard"}));
  EXPECT_EQ(records[2].line, 4u);
}

TEST(Dataset, MissingQueryCitesLine) {
  std::istringstream in(
      R"({"id":"a","query":"x","gold_intents":["BookFlight"]})"
      "\n"
      R"({"id":"b","gold_intents":["RentCar"]})"
      "\n");
  try {
    ingest_dataset(in);
    FAIL() << "expected DatasetError";
  } catch (const DatasetError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("query"), std::string::npos);
    EXPECT_EQ(e.kind(), ErrorKind::Data);
  }
}

TEST(Dataset, RejectsMalformedRecords) {
  EXPECT_THROW(parse_record("{not json", 1), DatasetError);
  EXPECT_THROW(parse_record(R"({"id":"a","query":"x","gold_intents":["A"],"extra":1})", 1),
               DatasetError);
  EXPECT_THROW(parse_record(R"({"id":"a","query":"x","gold_intents":["A","A"]})", 1),
               DatasetError);
  EXPECT_THROW(parse_record(R"({"id":"a","query":"  ","gold_intents":[]})", 1), DatasetError);
  EXPECT_THROW(parse_record(R"([1,2])", 1), DatasetError);
  std::istringstream dup(R"({"id":"a","query":"x","gold_intents":[]})"
                         "\n"
                         R"({"id":"a","query":"y","gold_intents":[]})");
  EXPECT_THROW(ingest_dataset(dup), DatasetError);
}

TEST(Dataset, EmptyFile) {
  std::istringstream empty("");
  EXPECT_THROW(ingest_dataset(empty), DatasetError);
  std::istringstream blank("\n  \n");
  EXPECT_THROW(ingest_dataset(blank), DatasetError);
  EXPECT_THROW(ingest_dataset_file("/nonexistent/data.jsonl"), DatasetError);
}

TEST(Dataset, RoundTripProperty) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<DatasetRecord> records(1 + rng() % 5);
    for (std::size_t i = 0; i < records.size(); ++i) {
      auto& r = records[i];
      r.id = "r" + std::to_string(i) + random_text(rng);
      r.query = random_text(rng);
      std::set<std::string> gold;
      for (std::size_t k = rng() % 4; k > 0; --k) gold.insert(random_text(rng));
      r.gold_intents.assign(gold.begin(), gold.end());
      for (std::size_t k = rng() % 3; k > 0; --k) {
        r.gold_slots.push_back({random_text(rng), random_text(rng), random_text(rng)});
      }
    }
    std::stringstream once;
    write_dataset(once, records);
    auto first = ingest_dataset(once);
    std::stringstream twice;
    write_dataset(twice, first);
    auto second = ingest_dataset(twice);
    ASSERT_EQ(first.size(), records.size());
    ASSERT_EQ(second.size(), records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      EXPECT_TRUE(first[i].same_content(records[i]));
      EXPECT_TRUE(second[i].same_content(first[i]));
      EXPECT_EQ(serialize_record(second[i]), serialize_record(records[i]));
    }
  }
}

TEST(Dataset, UnresolvedGoldIntent) {
  auto o = fixtures::four_domain_ontology();
  auto records = fixtures::intent_dataset(3, 1, "u");
  records[1].gold_intents.push_back("Teleport");
  records[1].line = 2;
  try {
    check_gold_intents(records, o);
    FAIL() << "expected UnresolvedGoldIntent";
  } catch (const UnresolvedGoldIntent& e) {
    EXPECT_EQ(e.id(), "Teleport");
    EXPECT_NE(std::string(e.what()).find("Teleport"), std::string::npos);
  }
  records[1].gold_intents = {o.root_id()};
  EXPECT_THROW(check_gold_intents(records, o), UnresolvedGoldIntent);
}

// ---- configuration ----

TEST(Config, AppliesKnownKeys) {
  PipelineConfig cfg;
  apply_setting(cfg, "retrieval.k", "3");
  apply_setting(cfg, "retrieval.theta", "0.5");
  apply_setting(cfg, "retrieval.expansion", "parents");
  apply_setting(cfg, "bias.beta", "0.4");
  apply_setting(cfg, "bias.gamma", "0.1");
  apply_setting(cfg, "bias.scope", "ontology_labels_only");
  apply_setting(cfg, "prompt.variant", "minimal");
  apply_setting(cfg, "decode.threshold", "0.35");
  apply_setting(cfg, "classifier.tau", "0.6");
  apply_setting(cfg, "ablation.classifier", "off");
  apply_setting(cfg, "seed", "42");
  apply_setting(cfg, "workers", "4");
  EXPECT_EQ(cfg.retrieval.k, 3u);
  EXPECT_DOUBLE_EQ(cfg.retrieval.theta, 0.5);
  EXPECT_EQ(cfg.retrieval.expansion, ExpansionPolicy::Parents);
  EXPECT_DOUBLE_EQ(cfg.bias.beta, 0.4);
  EXPECT_DOUBLE_EQ(cfg.bias.gamma, 0.1);
  EXPECT_EQ(cfg.bias.scope, BiasScope::OntologyLabelsOnly);
  EXPECT_EQ(cfg.prompt.variant, PromptVariant::Minimal);
  EXPECT_DOUBLE_EQ(cfg.decode_threshold, 0.35);
  EXPECT_DOUBLE_EQ(*cfg.classifier_tau, 0.6);
  EXPECT_FALSE(cfg.ablation.classifier);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.workers, 4u);
}

TEST(Config, RejectsBadSettings) {
  PipelineConfig cfg;
  EXPECT_THROW(apply_setting(cfg, "retrieval.kk", "3"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "retrieval.k", "0"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "retrieval.k", "three"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "bias.beta", "-1"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "classifier.tau", "1.5"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "ablation.logit_biasing", "maybe"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "backend.kind", "cloud"), ConfigError);
  try {
    apply_setting(cfg, "nope", "1");
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Usage);
  }
}

TEST(Config, FileThenOverridesThenDefaults) {
  const auto path = std::filesystem::temp_directory_path() / "ontointent_test.conf";
  {
    std::ofstream out(path);
    out << "# tuned\nretrieval.k = 4\nbias.beta = 0.2  # inline\n\nbias.beta = 0.25\n";
  }
  PipelineConfig cfg;
  apply_config_file(cfg, path.string());
  EXPECT_EQ(cfg.retrieval.k, 4u);
  EXPECT_DOUBLE_EQ(cfg.bias.beta, 0.25);
  EXPECT_DOUBLE_EQ(cfg.bias.gamma, 0.2);  // default kept
  apply_setting(cfg, "retrieval.k", "6");  // command-line override wins
  EXPECT_EQ(cfg.retrieval.k, 6u);
  std::filesystem::remove(path);

  std::istringstream bad("retrieval.k 4\n");
  EXPECT_THROW(apply_config_stream(cfg, bad), ConfigError);
  EXPECT_THROW(apply_config_file(cfg, "/nonexistent.conf"), ConfigError);
}

TEST(Config, DescribeNeverShowsApiKey) {
  ::setenv("ONTOINTENT_API_KEY", "sk-very-secret", 1);
  PipelineConfig cfg;
  apply_setting(cfg, "backend.kind", "remote");
  std::string all;
  for (const auto& [k, v] : describe(cfg)) all += k + "=" + v + "\n";
  EXPECT_EQ(all.find("sk-very-secret"), std::string::npos);
  EXPECT_NE(all.find("backend.url="), std::string::npos);
  auto rows = describe(cfg);
  EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end()));
  ::unsetenv("ONTOINTENT_API_KEY");
}

// ---- feasibility ----

TEST(Feasibility, MinimumRam) {
  FeasibilitySpec s{{8.0, 300.0, 1.0}, {1.5, 100.0, 0.5}};
  auto r = feasibility(s);
  EXPECT_DOUBLE_EQ(r.min_ram_gb, 25.0);
  EXPECT_FALSE(r.feasible);
  s.model.size_gb = 0.48;
  EXPECT_DOUBLE_EQ(feasibility(s).min_ram_gb, 8.0);
}

TEST(Feasibility, StrictBoundary) {
  // 0.48 / 8 rounds to exactly 0.06 in binary floating point.
  FeasibilitySpec s{{8.0, 300.0, 1.0}, {0.48, 100.0, 0.5}};
  auto r = feasibility(s);
  EXPECT_EQ(r.memory_share, 0.06);
  EXPECT_FALSE(r.feasible);
  ASSERT_EQ(r.reasons.size(), 1u);
  EXPECT_NE(r.reasons[0].find("memory"), std::string::npos);

  s.model.size_gb = 0.47;
  EXPECT_TRUE(feasibility(s).feasible);
  s.device.ram_gb = 8.1;
  s.model.size_gb = 0.48;
  EXPECT_TRUE(feasibility(s).feasible);
}

TEST(Feasibility, ListsEveryViolation) {
  FeasibilitySpec s{{4.0, 300.0, 1.0}, {1.0, 300.0, 2.0}};
  auto r = feasibility(s);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.reasons.size(), 3u);
  EXPECT_DOUBLE_EQ(r.memory_share, 0.25);
}

TEST(Feasibility, NonPositiveInput) {
  EXPECT_THROW(feasibility({{0.0, 300.0, 1.0}, {0.5, 1.0, 0.1}}), NonPositiveInput);
  EXPECT_THROW(feasibility({{8.0, 300.0, 1.0}, {-0.5, 1.0, 0.1}}), NonPositiveInput);
  EXPECT_THROW(feasibility({{8.0, 300.0, 1.0}, {0.5, 1.0, NAN}}), NonPositiveInput);
}

TEST(Feasibility, MonotoneInRam) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.01, 4.0);
  for (int trial = 0; trial < 500; ++trial) {
    FeasibilitySpec s{{u(rng) * 4, 300.0, 1.0}, {u(rng) / 4, 100.0, 0.5}};
    const bool before = feasibility(s).feasible;
    s.device.ram_gb += u(rng);
    if (before) EXPECT_TRUE(feasibility(s).feasible);
  }
}

// ---- pipeline ----

TEST(Pipeline, DeterministicReports) {
  fixtures::MockRig rig;
  auto cfg = fixtures::fixture_config();
  auto engine = rig.engine();
  auto records = fixtures::intent_dataset(60, 5, "d");
  auto a = report_text(evaluate_dataset(records, cfg, engine), cfg);
  auto b = report_text(evaluate_dataset(records, cfg, engine), cfg);
  fixtures::MockRig fresh;
  auto fresh_engine = fresh.engine();
  auto c = report_text(evaluate_dataset(records, cfg, fresh_engine), cfg);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_NE(a.find("\"seed\": 7"), std::string::npos);
}

TEST(Pipeline, WorkerCountDoesNotChangeReport) {
  fixtures::MockRig rig;
  auto cfg = fixtures::fixture_config();
  auto engine = rig.engine();
  auto records = fixtures::intent_dataset(80, 6, "w");
  auto one = report_text(evaluate_dataset(records, cfg, engine), cfg);
  cfg.workers = 8;
  auto many = evaluate_dataset(records, cfg, engine);
  cfg.workers = 1;
  EXPECT_EQ(one, report_text(many, cfg));
  for (std::size_t i = 0; i < records.size(); ++i) EXPECT_EQ(many.outcomes[i].id, records[i].id);
}

TEST(Pipeline, AllSwitchesOffIsNeutralDecoding) {
  fixtures::MockRig rig;
  auto engine = rig.engine();
  auto cfg = switches(fixtures::fixture_config(), false, false, false);
  for (const auto& r : fixtures::intent_dataset(30, 7, "n")) {
    auto res = engine.run(r.query, cfg);
    EXPECT_TRUE(res.retrieval.subgraph.empty());
    EXPECT_EQ(res.prompt.text, build_neutral_prompt(r.query).text);
    DecodeRequest req;
    req.candidates = rig.ontology.non_root_ids();
    req.threshold = cfg.decode_threshold;
    auto plain = run_backend(build_neutral_prompt(r.query), rig.backend, req, rig.ontology);
    EXPECT_EQ(res.prediction, plain.prediction);
  }
}

TEST(Pipeline, SymbolicIntegrationOffKeepsLabelsOutOfPrompt) {
  fixtures::MockRig rig;
  auto engine = rig.engine();
  auto cfg = switches(fixtures::fixture_config(), false, true, false);
  auto res = engine.run("Order pizza and track my last order", cfg);
  EXPECT_FALSE(res.retrieval.subgraph.empty());
  EXPECT_TRUE(res.prompt.labels.empty());
  EXPECT_EQ(res.prompt.text.find("Restaurant Order"), std::string::npos);
  EXPECT_TRUE(res.bias_mass.has_value());
}

TEST(Pipeline, PizzaQueryUnderFullConfig) {
  fixtures::MockRig rig;
  auto cfg = fixtures::fixture_config();
  auto head = fixtures::fixture_head(rig, cfg);
  auto engine = rig.engine(&head);
  auto res = engine.run("Order pizza and track my last order", cfg);
  EXPECT_EQ(res.prediction.intent_set(),
            (std::set<std::string>{"OrderTracking", "RestaurantOrder"}));
}

TEST(Pipeline, EmptyClassifierOutputEqualsSwitchOff) {
  fixtures::MockRig rig;
  ClassifierHead silent;
  silent.node_order = rig.ontology.non_root_ids();
  silent.dimension = rig.encoder.dimension();
  silent.weights.assign(silent.rows() * silent.dimension, 0.0);
  silent.bias.assign(silent.rows(), -20.0);
  auto with_head = rig.engine(&silent);
  auto without = rig.engine();
  auto on = fixtures::fixture_config();
  auto off = switches(on, true, true, false);
  for (const auto& r : fixtures::intent_dataset(30, 8, "c")) {
    EXPECT_EQ(with_head.run(r.query, on).prediction, without.run(r.query, off).prediction);
  }
}

TEST(Pipeline, ClassifierIntentsCarryProvenance) {
  fixtures::MockRig rig;
  ClassifierHead eager;
  eager.node_order = {"RentCar"};
  eager.dimension = rig.encoder.dimension();
  eager.weights.assign(eager.dimension, 0.0);
  eager.bias = {20.0};
  auto engine = rig.engine(&eager);
  auto res = engine.run("pay my invoice", fixtures::fixture_config());
  ASSERT_TRUE(res.prediction.intents.count("RentCar"));
  EXPECT_EQ(res.prediction.intents.at("RentCar"), Provenance::Classifier);
}

TEST(Pipeline, StageAttribution) {
  fixtures::MockRig rig;
  auto engine = rig.engine();
  try {
    engine.run("!!!", fixtures::fixture_config());
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "retrieve");
    EXPECT_EQ(e.kind(), ErrorKind::Data);
  }

  struct Down final : Backend {
    VocabTokenizer tok;
    explicit Down(const Ontology& o) : tok(mock_vocabulary(o)) {}
    BackendCapability capability() const override { return {true, false, false}; }
    const Tokenizer& tokenizer() const override { return tok; }
    LogitVector forward(const Prompt&) const override {
      throw BackendUnavailable("connection refused");
    }
  } down(rig.ontology);
  Engine broken(rig.ontology, rig.index, rig.encoder, down);
  try {
    broken.run("book a flight", fixtures::fixture_config());
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "decode");
    EXPECT_EQ(e.kind(), ErrorKind::Backend);
  }
}

TEST(Pipeline, EngineRejectsMismatchedIndex) {
  fixtures::MockRig rig;
  struct Wide final : Encoder {
    std::size_t dimension() const override { return 8; }
    Embedding encode(std::string_view) const override {
      return Embedding(std::vector<double>(8, 1.0));
    }
  } wide;
  EXPECT_THROW(Engine(rig.ontology, rig.index, wide, rig.backend), DimensionMismatch);
}

TEST(Pipeline, EvaluateDatasetErrors) {
  fixtures::MockRig rig;
  auto engine = rig.engine();
  auto cfg = fixtures::fixture_config();
  EXPECT_THROW(evaluate_dataset({}, cfg, engine), DatasetError);
  auto records = fixtures::intent_dataset(4, 9, "e");
  records[2].gold_intents = {"Nowhere"};
  EXPECT_THROW(evaluate_dataset(records, cfg, engine), UnresolvedGoldIntent);
}

TEST(Pipeline, ReportAndTimingOutputs) {
  fixtures::MockRig rig;
  auto engine = rig.engine();
  auto cfg = fixtures::fixture_config();
  auto records = fixtures::intent_dataset(5, 10, "o");
  auto eval = evaluate_dataset(records, cfg, engine);
  auto text = report_text(eval, cfg);
  for (const char* key : {"\"seed\"", "\"config\"", "\"metrics\"", "\"instances\"",
                          "\"avg_sis\"", "\"mean_bias_mass\""}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(text.find("_ms"), std::string::npos);
  std::ostringstream timings;
  write_timings_jsonl(timings, eval);
  std::istringstream lines(timings.str());
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    EXPECT_NE(line.find("\"retrieval_ms\""), std::string::npos);
    EXPECT_NE(line.find("\"decode_ms\""), std::string::npos);
    ++n;
  }
  EXPECT_EQ(n, records.size());
}

// ---- sweep and ablation ----

TEST(Sweep, DefaultGridShape) {
  fixtures::MockRig rig;
  auto engine = rig.engine();
  auto cfg = switches(fixtures::fixture_config(), true, true, false);
  auto records = fixtures::intent_dataset(20, 13, "s");
  std::size_t streamed = 0;
  auto rows = sweep(kDefaultBiasGrid, kDefaultBiasGrid, records, cfg, engine,
                    [&](const SweepRow&) { ++streamed; });
  ASSERT_EQ(rows.size(), 36u);
  EXPECT_EQ(streamed, 36u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(std::pair(rows[i - 1].beta, rows[i - 1].gamma), std::pair(rows[i].beta, rows[i].gamma));
  }
  for (std::size_t g = 0; g < 6; ++g) {
    for (std::size_t b = 1; b < 6; ++b) {
      EXPECT_GE(rows[b * 6 + g].mean_bias_mass, rows[(b - 1) * 6 + g].mean_bias_mass);
    }
  }
}

TEST(Sweep, SingleCellEqualsEvaluation) {
  fixtures::MockRig rig;
  auto engine = rig.engine();
  auto cfg = switches(fixtures::fixture_config(), true, true, false);
  auto records = fixtures::intent_dataset(25, 14, "s");
  auto rows = sweep({0.4}, {0.1}, records, cfg, engine);
  ASSERT_EQ(rows.size(), 1u);
  cfg.bias.beta = 0.4;
  cfg.bias.gamma = 0.1;
  auto eval = evaluate_dataset(records, cfg, engine);
  EXPECT_DOUBLE_EQ(rows[0].report.em, eval.report.em);
  EXPECT_DOUBLE_EQ(rows[0].report.avg_sis, eval.report.avg_sis);
  EXPECT_DOUBLE_EQ(rows[0].report.slot_f1, eval.report.slot_f1);
  EXPECT_DOUBLE_EQ(rows[0].mean_bias_mass, eval.mean_bias_mass);
}

TEST(Sweep, GridValidation) {
  fixtures::MockRig rig;
  auto engine = rig.engine();
  auto cfg = fixtures::fixture_config();
  auto records = fixtures::intent_dataset(3, 15, "s");
  EXPECT_THROW(sweep({}, {0.1}, records, cfg, engine), ConfigError);
  EXPECT_THROW(sweep({0.1}, {-0.1}, records, cfg, engine), ConfigError);
}

TEST(Sweep, FailingCellKeepsEarlierRows) {
  fixtures::MockRig rig;
  auto engine = rig.engine();
  auto cfg = switches(fixtures::fixture_config(), true, true, false);
  auto records = fixtures::intent_dataset(5, 16, "s");
  records.back().gold_intents = {"Nowhere"};
  std::size_t streamed = 0;
  EXPECT_THROW(sweep({0.1, 0.2}, {0.1}, records, cfg, engine,
                     [&](const SweepRow&) { ++streamed; }),
               UnresolvedGoldIntent);
  EXPECT_EQ(streamed, 0u);
  std::ostringstream csv;
  SweepRow row{0.1, 0.2, {}, 0.5};
  write_sweep_row_csv(csv, row);
  const std::string line = csv.str();
  EXPECT_EQ(line.substr(0, 3), "0.1");
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5);
}

TEST(Ablation, LatticeOnFixture) {
  fixtures::MockRig rig;
  auto cfg = fixtures::fixture_config();
  auto head = fixtures::fixture_head(rig, cfg);
  auto engine = rig.engine(&head);
  auto rows = ablate(fixtures::test_split(), cfg, engine);
  ASSERT_EQ(rows.size(), 5u);
  std::map<std::string, EvalReport> by_name;
  for (const auto& r : rows) by_name[r.name] = r.report;
  const auto& base = by_name.at("base");
  const auto& si = by_name.at("+SI");
  const auto& si_lb = by_name.at("+SI+LB");
  const auto& full = by_name.at("+SI+LB+CLF");
  EXPECT_GE(full.avg_sis, si_lb.avg_sis);
  EXPECT_GE(si_lb.avg_sis, si.avg_sis);
  EXPECT_GE(si.avg_sis, base.avg_sis);
  EXPECT_GE(full.em, base.em);
  EXPECT_EQ(rows.front().name, "base");
  EXPECT_FALSE(rows.front().switches.symbolic_integration);
  EXPECT_TRUE(rows.back().switches.classifier);
}
