#include "ontointent/backend.hpp"

#include <algorithm>
#include <iostream>

#include "ontointent/errors.hpp"

namespace ontointent {

LogitVector Backend::forward(const Prompt&) const {
  throw CapabilityMismatch("backend does not expose logits");
}

std::string Backend::complete(const Prompt&, const BiasMap&) const {
  throw CapabilityMismatch("backend does not accept bias maps");
}

std::vector<double> Backend::pooled_state(const Prompt&) const {
  throw CapabilityMismatch("backend does not provide a pooled state");
}

double token_noise(std::uint64_t seed, TokenId token) {
  std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (token + 1ULL));
  double unit = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
  return unit - 0.5;
}

MockBackend::MockBackend(const Ontology& o, std::uint64_t seed,
                         std::uint64_t encoder_seed)
    : seed_(seed),
      encoder_(encoder_seed),
      tokenizer_(mock_vocabulary(o, kFillerTokens)) {
  const auto& vocab = tokenizer_.vocabulary();
  token_vectors_.reserve(vocab.size());
  noise_.reserve(vocab.size());
  for (TokenId w = 0; w < vocab.size(); ++w) {
    token_vectors_.emplace_back(encoder_.token_vector(vocab[w]));
    noise_.push_back(token_noise(seed_, w));
  }
}

LogitVector MockBackend::logits_for(const Embedding& query) const {
  LogitVector out;
  out.values.reserve(token_vectors_.size());
  for (std::size_t w = 0; w < token_vectors_.size(); ++w) {
    out.values.push_back(kSimilarityScale * cosine(query, token_vectors_[w]) +
                         noise_[w]);
  }
  return out;
}

LogitVector MockBackend::forward(const Prompt& prompt) const {
  try {
    return logits_for(encoder_.encode(prompt.query));
  } catch (const EmptyText& e) {
    throw EncoderFailure(e.what());
  }
}

std::vector<double> MockBackend::pooled_state(const Prompt& prompt) const {
  auto tokens = word_tokens(prompt.text);
  if (tokens.empty()) throw EncoderFailure("prompt has no tokens");
  std::vector<double> mean(MockEncoder::kDimension, 0.0);
  for (const auto& t : tokens) {
    auto v = encoder_.token_vector(t);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += v[i];
  }
  for (auto& x : mean) x /= static_cast<double>(tokens.size());
  return mean;
}

BiasMap make_bias_map(const Ontology& o, const std::vector<std::string>& subgraph,
                      const Tokenizer& tok, const BiasSpec& spec, bool* clamped) {
  std::vector<std::string> ids = subgraph;
  o.sort_by_depth_then_id(ids);
  const double value =
      std::clamp(spec.beta, -RemoteBackend::kBiasLimit, RemoteBackend::kBiasLimit);
  if (clamped) *clamped = value != spec.beta;
  BiasMap map;
  for (const auto& id : ids) {
    for (TokenId t : tok.encode_label(o.node(id).label)) {
      for (TokenId form : tok.surface_forms(t)) {
        if (map.size() >= kMaxBiasMapTokens) return map;
        map.emplace(form, value);
      }
    }
  }
  return map;
}

BackendRun run_backend(const Prompt& prompt, const Backend& backend,
                       const DecodeRequest& request, const Ontology& o) {
  const auto cap = backend.capability();
  const Tokenizer& tok = backend.tokenizer();
  BackendRun run;
  if (cap.exposes_logits) {
    LogitVector logits = backend.forward(prompt);
    if (request.bias) {
      auto vb = bias_tokens(o, request.subgraph, tok);
      std::vector<TokenId> onto;
      if (request.bias->scope == BiasScope::OntologyLabelsOnly) {
        onto = ontology_label_tokens(o, tok);
      }
      logits = apply_bias(logits, vb, *request.bias, onto);
      if (!vb.empty()) run.bias_mass = bias_mass(logits, vb);
    }
    for (auto& id : decode_intents(logits, request.candidates, o, tok,
                                   request.threshold)) {
      run.prediction.intents.emplace(std::move(id), Provenance::Generated);
    }
    return run;
  }
  if (cap.supports_bias_map) {
    BiasMap map;
    if (request.bias) {
      bool clamped = false;
      map = make_bias_map(o, request.subgraph, tok, *request.bias, &clamped);
      if (clamped) {
        run.diagnostics.push_back("bias beta clamped to host range +-" +
                                  std::to_string(RemoteBackend::kBiasLimit));
        std::cerr << "warning: " << run.diagnostics.back() << "\n";
      }
    }
    auto parsed = parse_text_output(backend.complete(prompt, map), o);
    run.prediction = std::move(parsed.prediction);
    for (auto& d : parsed.diagnostics) run.diagnostics.push_back(std::move(d));
    return run;
  }
  throw CapabilityMismatch("backend neither exposes logits nor accepts bias maps");
}

}  // namespace ontointent
