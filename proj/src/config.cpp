#include "ontointent/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "ontointent/errors.hpp"

namespace ontointent {

namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
  std::string s(v);
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw ConfigError("'" + std::string(key) + "' expects a number, got '" + s + "'");
  }
  return x;
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("'" + std::string(key) + "' expects a non-negative integer, got '" +
                      std::string(v) + "'");
  }
  return x;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError("'" + std::string(key) + "' expects a boolean, got '" +
                    std::string(v) + "'");
}

// Shortest text that reads back as the same double.
std::string fmt(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

void apply_setting(PipelineConfig& cfg, std::string_view key,
                   std::string_view value) {
  value = trim(value);
  if (key == "retrieval.k") {
    cfg.retrieval.k = to_u64(key, value);
    if (cfg.retrieval.k == 0) throw ConfigError("retrieval.k must be >= 1");
  } else if (key == "retrieval.theta") {
    cfg.retrieval.theta = to_double(key, value);
  } else if (key == "retrieval.expansion") {
    cfg.retrieval.expansion = expansion_policy_from_string(value);
  } else if (key == "bias.beta") {
    cfg.bias.beta = to_double(key, value);
    if (cfg.bias.beta < 0) throw ConfigError("bias.beta must be >= 0");
  } else if (key == "bias.gamma") {
    cfg.bias.gamma = to_double(key, value);
    if (cfg.bias.gamma < 0) throw ConfigError("bias.gamma must be >= 0");
  } else if (key == "bias.scope") {
    cfg.bias.scope = bias_scope_from_string(value);
  } else if (key == "prompt.variant") {
    cfg.prompt.variant = prompt_variant_from_string(value);
  } else if (key == "prompt.example") {
    // Config files cannot hold raw newlines; "\n" is unescaped here.
    std::string ex;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (value[i] == '\\' && i + 1 < value.size() && value[i + 1] == 'n') {
        ex.push_back('\n');
        ++i;
      } else {
        ex.push_back(value[i]);
      }
    }
    cfg.prompt.example_block = ex;
  } else if (key == "decode.threshold") {
    cfg.decode_threshold = to_double(key, value);
  } else if (key == "classifier.path") {
    cfg.classifier_path = std::string(value);
  } else if (key == "classifier.tau") {
    double tau = to_double(key, value);
    if (!(tau > 0 && tau < 1)) throw ConfigError("classifier.tau must lie in (0, 1)");
    cfg.classifier_tau = tau;
  } else if (key == "ablation.symbolic_integration") {
    cfg.ablation.symbolic_integration = to_bool(key, value);
  } else if (key == "ablation.logit_biasing") {
    cfg.ablation.logit_biasing = to_bool(key, value);
  } else if (key == "ablation.classifier") {
    cfg.ablation.classifier = to_bool(key, value);
  } else if (key == "backend.kind") {
    if (value != "mock" && value != "remote") {
      throw ConfigError("backend.kind must be 'mock' or 'remote'");
    }
    cfg.backend.kind = std::string(value);
  } else if (key == "backend.url") {
    cfg.backend.remote.url = std::string(value);
  } else if (key == "backend.model") {
    cfg.backend.remote.model = std::string(value);
  } else if (key == "backend.api_key_env") {
    cfg.backend.remote.api_key_env = std::string(value);
  } else if (key == "backend.timeout_ms") {
    cfg.backend.remote.timeout = std::chrono::milliseconds(to_u64(key, value));
  } else if (key == "backend.retries") {
    cfg.backend.remote.retries = static_cast<int>(to_u64(key, value));
  } else if (key == "backend.max_in_flight") {
    cfg.backend.remote.max_in_flight = to_u64(key, value);
    if (cfg.backend.remote.max_in_flight == 0) {
      throw ConfigError("backend.max_in_flight must be >= 1");
    }
  } else if (key == "backend.vocab") {
    cfg.backend.vocab_path = std::string(value);
  } else if (key == "seed") {
    cfg.seed = to_u64(key, value);
  } else if (key == "workers") {
    cfg.workers = to_u64(key, value);
    if (cfg.workers == 0) throw ConfigError("workers must be >= 1");
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

void apply_config_stream(PipelineConfig& cfg, std::istream& in) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string_view s = line;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(n) + ": expected 'key = value'");
    }
    apply_setting(cfg, trim(s.substr(0, eq)), s.substr(eq + 1));
  }
}

void apply_config_file(PipelineConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  apply_config_stream(cfg, in);
}

std::vector<std::pair<std::string, std::string>> describe(const PipelineConfig& cfg) {
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  std::vector<std::pair<std::string, std::string>> out{
      {"ablation.classifier", b(cfg.ablation.classifier)},
      {"ablation.logit_biasing", b(cfg.ablation.logit_biasing)},
      {"ablation.symbolic_integration", b(cfg.ablation.symbolic_integration)},
      {"backend.kind", cfg.backend.kind},
      {"bias.beta", fmt(cfg.bias.beta)},
      {"bias.gamma", fmt(cfg.bias.gamma)},
      {"bias.scope", std::string(to_string(cfg.bias.scope))},
      {"classifier.path", cfg.classifier_path},
      {"classifier.tau", cfg.classifier_tau ? fmt(*cfg.classifier_tau) : ""},
      {"decode.threshold", fmt(cfg.decode_threshold)},
      {"prompt.variant", std::string(to_string(cfg.prompt.variant))},
      {"retrieval.expansion", std::string(to_string(cfg.retrieval.expansion))},
      {"retrieval.k", std::to_string(cfg.retrieval.k)},
      {"retrieval.theta", fmt(cfg.retrieval.theta)},
      {"seed", std::to_string(cfg.seed)},
  };
  if (cfg.backend.kind == "remote") {
    out.emplace_back("backend.model", cfg.backend.remote.model);
    out.emplace_back("backend.url", cfg.backend.remote.url);
    std::sort(out.begin(), out.end());
  }
  return out;
}

}  // namespace ontointent
