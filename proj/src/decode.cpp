#include "ontointent/decode.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "ontointent/errors.hpp"

namespace ontointent {

std::string_view to_string(BiasScope scope) {
  return scope == BiasScope::AllVocab ? "all_vocab" : "ontology_labels_only";
}

BiasScope bias_scope_from_string(std::string_view text) {
  if (text == "all_vocab") return BiasScope::AllVocab;
  if (text == "ontology_labels_only") return BiasScope::OntologyLabelsOnly;
  throw ConfigError("unknown bias scope '" + std::string(text) + "'");
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  if (logits.empty()) return out;
  const double mx = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - mx);
    sum += out[i];
  }
  for (auto& p : out) p /= sum;
  return out;
}

namespace {

std::vector<TokenId> label_token_union(const Ontology& o,
                                       const std::vector<std::string>& ids,
                                       const Tokenizer& tok) {
  std::vector<TokenId> out;
  for (const auto& id : ids) {
    for (TokenId t : tok.encode_label(o.node(id).label)) {
      for (TokenId form : tok.surface_forms(t)) out.push_back(form);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<TokenId> bias_tokens(const Ontology& o,
                                 const std::vector<std::string>& subgraph,
                                 const Tokenizer& tok) {
  return label_token_union(o, subgraph, tok);
}

std::vector<TokenId> ontology_label_tokens(const Ontology& o,
                                           const Tokenizer& tok) {
  return label_token_union(o, o.non_root_ids(), tok);
}

LogitVector apply_bias(const LogitVector& logits, std::span<const TokenId> vb,
                       const BiasSpec& spec,
                       std::span<const TokenId> ontology_tokens) {
  if (spec.beta < 0.0 || spec.gamma < 0.0) {
    throw ConfigError("bias beta and gamma must be non-negative");
  }
  const std::size_t n = logits.size();
  // 0 = untouched, 1 = boosted, 2 = penalized
  std::vector<unsigned char> role(
      n, spec.scope == BiasScope::AllVocab ? 2 : 0);
  if (spec.scope == BiasScope::OntologyLabelsOnly) {
    for (TokenId t : ontology_tokens) {
      if (t >= n) throw UnknownToken(std::to_string(t));
      role[t] = 2;
    }
  }
  for (TokenId t : vb) {
    if (t >= n) throw UnknownToken(std::to_string(t));
    role[t] = 1;
  }
  LogitVector out = logits;
  for (std::size_t i = 0; i < n; ++i) {
    if (role[i] == 1) {
      out.values[i] += spec.beta;
    } else if (role[i] == 2) {
      out.values[i] -= spec.gamma;
    }
  }
  return out;
}

double bias_mass(const LogitVector& logits, std::span<const TokenId> vb) {
  auto p = softmax(logits.values);
  double mass = 0.0;
  for (TokenId t : vb) {
    if (t >= p.size()) throw UnknownToken(std::to_string(t));
    mass += p[t];
  }
  return mass;
}

std::vector<CandidateScore> score_candidates(
    const LogitVector& logits, const std::vector<std::string>& candidates,
    const Ontology& o, const Tokenizer& tok) {
  std::vector<std::string> ids = candidates;
  o.sort_by_depth_then_id(ids);
  std::vector<CandidateScore> out;
  out.reserve(ids.size());
  std::vector<double> scores;
  scores.reserve(ids.size());
  for (auto& id : ids) {
    auto tokens = tok.encode_label(o.node(id).label);
    double sum = 0.0;
    for (TokenId t : tokens) {
      if (t >= logits.size()) throw UnknownToken(std::to_string(t));
      sum += logits.values[t];
    }
    double score = sum / static_cast<double>(tokens.size());
    scores.push_back(score);
    out.push_back({std::move(id), score, 0.0});
  }
  auto probs = softmax(scores);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].probability = probs[i];
  return out;
}

std::vector<std::string> decode_intents(
    const LogitVector& logits, const std::vector<std::string>& candidates,
    const Ontology& o, const Tokenizer& tok, double threshold) {
  auto scored = score_candidates(logits, candidates, o, tok);
  std::vector<std::string> out;
  if (scored.empty()) return out;
  std::size_t best = 0;
  for (std::size_t i = 1; i < scored.size(); ++i) {
    if (scored[i].score > scored[best].score) best = i;
  }
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (i == best || scored[i].probability > threshold) {
      out.push_back(scored[i].id);
    }
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::optional<std::string> resolve_label(std::string_view name,
                                         const Ontology& o) {
  const auto& root = o.root_id();
  for (const auto& n : o.nodes()) {
    if (n.id != root && (n.label == name || n.id == name)) return n.id;
  }
  for (const auto& n : o.nodes()) {
    if (n.id != root && (iequals(n.label, name) || iequals(n.id, name))) {
      return n.id;
    }
  }
  return std::nullopt;
}

}  // namespace

ParsedOutput parse_text_output(std::string_view text, const Ontology& o) {
  ParsedOutput out;
  if (trim(text).empty()) {
    out.diagnostics.push_back("empty completion");
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view entry = trim(text.substr(start, end - start));
    start = end + 1;
    if (!entry.empty() && entry.back() == '.') entry = trim(entry.substr(0, entry.size() - 1));
    if (entry.empty()) continue;

    std::string_view name = entry;
    std::string_view args;
    bool has_args = false;
    if (auto open = entry.find('('); open != std::string_view::npos) {
      name = trim(entry.substr(0, open));
      if (entry.back() != ')') {
        out.diagnostics.push_back("unterminated slot list in '" + std::string(entry) + "'");
      } else {
        args = entry.substr(open + 1, entry.size() - open - 2);
        has_args = true;
      }
    }
    auto id = resolve_label(name, o);
    if (!id) {
      out.diagnostics.push_back("unknown intent label '" + std::string(name) + "'");
      continue;
    }
    out.prediction.intents.emplace(*id, Provenance::Generated);
    if (!has_args) continue;
    const std::string domain = o.domain_of(*id);
    std::size_t a = 0;
    while (a <= args.size()) {
      auto b = args.find(',', a);
      if (b == std::string_view::npos) b = args.size();
      std::string_view pair = trim(args.substr(a, b - a));
      a = b + 1;
      if (pair.empty()) continue;
      auto eq = pair.find('=');
      if (eq == std::string_view::npos) {
        out.diagnostics.push_back("malformed slot '" + std::string(pair) + "'");
        continue;
      }
      auto slot = trim(pair.substr(0, eq));
      auto value = trim(pair.substr(eq + 1));
      if (slot.empty() || value.empty()) {
        out.diagnostics.push_back("malformed slot '" + std::string(pair) + "'");
        continue;
      }
      out.prediction.slots.insert(
          {domain, std::string(slot), std::string(value)});
    }
  }
  if (out.prediction.intents.empty() && out.diagnostics.empty()) {
    out.diagnostics.push_back("no intents found");
  }
  return out;
}

}  // namespace ontointent
