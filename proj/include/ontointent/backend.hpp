#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ontointent/decode.hpp"
#include "ontointent/embedding.hpp"
#include "ontointent/prompt.hpp"
#include "ontointent/tokenizer.hpp"

namespace ontointent {

struct BackendCapability {
  bool exposes_logits = false;
  bool supports_bias_map = false;
  bool provides_pooled_state = false;
};

/// Per-token additive bias sent to hosts that accept one.
using BiasMap = std::map<TokenId, double>;

/// Language-model backend. A backend exposes next-token logits, accepts a
/// bias map on a text completion, or both.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual BackendCapability capability() const = 0;
  virtual const Tokenizer& tokenizer() const = 0;
  /// Maximum concurrent calls the engine may issue.
  virtual std::size_t max_in_flight() const { return 1; }

  virtual LogitVector forward(const Prompt& prompt) const;
  virtual std::string complete(const Prompt& prompt, const BiasMap& bias) const;
  virtual std::vector<double> pooled_state(const Prompt& prompt) const;
};

/// Deterministic stand-in language model.
///
/// Vocabulary: the ontology label pieces plus 64 filler tokens. The logit
/// of token w is 5 * cos(e_q, e_w) + u(seed, w), where e_q is the mock
/// embedding of the prompt's query, e_w the mock vector of the token and
/// u a seeded draw in [-0.5, 0.5]. The pooled state is the mean of the
/// prompt's token vectors.
class MockBackend final : public Backend {
 public:
  static constexpr double kSimilarityScale = 5.0;
  static constexpr std::size_t kFillerTokens = 64;

  MockBackend(const Ontology& o, std::uint64_t seed,
              std::uint64_t encoder_seed = MockEncoder::kDefaultSeed);

  BackendCapability capability() const override {
    return {true, false, true};
  }
  const Tokenizer& tokenizer() const override { return tokenizer_; }
  std::size_t max_in_flight() const override { return 64; }

  LogitVector forward(const Prompt& prompt) const override;
  std::vector<double> pooled_state(const Prompt& prompt) const override;

  /// Logits for an already-embedded query.
  LogitVector logits_for(const Embedding& query) const;
  const MockEncoder& encoder() const { return encoder_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  MockEncoder encoder_;
  VocabTokenizer tokenizer_;
  std::vector<Embedding> token_vectors_;
  std::vector<double> noise_;
};

/// Seeded uniform draw in [-0.5, 0.5] for token `token`.
double token_noise(std::uint64_t seed, TokenId token);

struct RemoteBackendConfig {
  /// Full endpoint URL, e.g. http://127.0.0.1:8080/v1/chat/completions.
  std::string url;
  std::string model;
  /// Name of the environment variable holding the API key.
  std::string api_key_env = "ONTOINTENT_API_KEY";
  std::chrono::milliseconds timeout{10000};
  int retries = 2;
  std::chrono::milliseconds retry_backoff{200};
  std::size_t max_in_flight = 4;
  int max_tokens = 64;
};

/// Chat-completions client with a per-token `logit_bias` map. Responses
/// are returned as the first choice's message content.
class RemoteBackend final : public Backend {
 public:
  static constexpr double kBiasLimit = 100.0;

  RemoteBackend(RemoteBackendConfig cfg, std::unique_ptr<Tokenizer> tokenizer);

  BackendCapability capability() const override { return {false, true, false}; }
  const Tokenizer& tokenizer() const override { return *tokenizer_; }
  std::size_t max_in_flight() const override { return cfg_.max_in_flight; }

  /// Throws BackendUnavailable once retries are exhausted or on a
  /// non-retryable HTTP status.
  std::string complete(const Prompt& prompt, const BiasMap& bias) const override;

  /// Request body as sent on the wire.
  std::string request_body(const Prompt& prompt, const BiasMap& bias) const;

 private:
  RemoteBackendConfig cfg_;
  std::unique_ptr<Tokenizer> tokenizer_;
  std::string scheme_host_port_;
  std::string path_;
};

struct BackendRun {
  PredictionSet prediction;
  /// Softmax mass on the bias tokens after biasing (logit backends only).
  std::optional<double> bias_mass;
  std::vector<std::string> diagnostics;
};

struct DecodeRequest {
  /// Retrieved subgraph; source of the bias tokens.
  std::vector<std::string> subgraph;
  /// Nodes the label scorer may choose from.
  std::vector<std::string> candidates;
  /// Disabled biasing when empty.
  std::optional<BiasSpec> bias;
  double threshold = 0.2;
};

inline constexpr std::size_t kMaxBiasMapTokens = 32;

/// Builds the host bias map: boosted tokens of the retrieved labels, in
/// label order, capped at 32 entries, each clamped to +-kBiasLimit.
/// `clamped` is set when beta had to be clamped.
BiasMap make_bias_map(const Ontology& o, const std::vector<std::string>& subgraph,
                      const Tokenizer& tok, const BiasSpec& spec,
                      bool* clamped = nullptr);

/// One backend call. Logit backends: forward, bias, label-score decode.
/// Bias-map backends: completion with the bias map, then text parsing.
BackendRun run_backend(const Prompt& prompt, const Backend& backend,
                       const DecodeRequest& request, const Ontology& o);

}  // namespace ontointent
