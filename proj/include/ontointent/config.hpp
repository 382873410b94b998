#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontointent/backend.hpp"
#include "ontointent/decode.hpp"
#include "ontointent/prompt.hpp"
#include "ontointent/retrieve.hpp"

namespace ontointent {

struct AblationSwitches {
  bool symbolic_integration = true;
  bool logit_biasing = true;
  bool classifier = true;
};

struct BackendSettings {
  std::string kind = "mock";  // mock | remote
  RemoteBackendConfig remote;
  std::string vocab_path;  // tokenizer vocabulary for the remote backend
};

struct PipelineConfig {
  RetrievalConfig retrieval;
  BiasSpec bias;
  PromptTemplate prompt;
  double decode_threshold = 0.2;
  std::string classifier_path;
  std::optional<double> classifier_tau;
  AblationSwitches ablation;
  BackendSettings backend;
  /// Seeds the mock backend and classifier training; stamped into reports.
  std::uint64_t seed = 7;
  std::size_t workers = 1;
};

/// Applies one `key = value` setting. Throws ConfigError on an unknown key
/// or a malformed value.
void apply_setting(PipelineConfig& cfg, std::string_view key,
                   std::string_view value);

/// Reads `key = value` lines; `#` starts a comment. Later lines win.
void apply_config_stream(PipelineConfig& cfg, std::istream& in);
void apply_config_file(PipelineConfig& cfg, const std::string& path);

/// Every setting as sorted `key = value` lines (API keys never included).
std::vector<std::pair<std::string, std::string>> describe(const PipelineConfig& cfg);

}  // namespace ontointent
