#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontointent/ontology.hpp"
#include "ontointent/prediction.hpp"
#include "ontointent/tokenizer.hpp"

namespace ontointent {

enum class BiasScope { AllVocab, OntologyLabelsOnly };

std::string_view to_string(BiasScope scope);
BiasScope bias_scope_from_string(std::string_view text);

/// Additive logit adjustment: +beta on the bias tokens, -gamma on the rest
/// (the whole vocabulary, or only tokens of non-retrieved ontology labels).
struct BiasSpec {
  double beta = 0.3;
  double gamma = 0.2;
  BiasScope scope = BiasScope::AllVocab;
};

struct LogitVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  bool operator==(const LogitVector&) const = default;
};

/// Numerically stable softmax (max-subtracted).
std::vector<double> softmax(std::span<const double> logits);

/// Union of the token ids (all surface forms) of the labels in `subgraph`,
/// sorted ascending.
std::vector<TokenId> bias_tokens(const Ontology& o,
                                 const std::vector<std::string>& subgraph,
                                 const Tokenizer& tok);

/// Sorted token ids of every non-root label in the ontology.
std::vector<TokenId> ontology_label_tokens(const Ontology& o,
                                           const Tokenizer& tok);

/// Returns a biased copy. `ontology_tokens` is only consulted with
/// BiasScope::OntologyLabelsOnly. Throws UnknownToken for ids outside the
/// vocabulary.
LogitVector apply_bias(const LogitVector& logits, std::span<const TokenId> vb,
                       const BiasSpec& spec,
                       std::span<const TokenId> ontology_tokens = {});

/// Softmax probability mass that lands on `vb`.
double bias_mass(const LogitVector& logits, std::span<const TokenId> vb);

struct CandidateScore {
  std::string id;
  double score = 0.0;        // mean logit over the label's tokens
  double probability = 0.0;  // softmax over candidate scores
};

/// Scores candidates in (depth, id) order.
std::vector<CandidateScore> score_candidates(
    const LogitVector& logits, const std::vector<std::string>& candidates,
    const Ontology& o, const Tokenizer& tok);

/// Candidates whose probability exceeds `threshold`, plus the argmax.
/// Output is sorted by (depth, id); empty only for no candidates.
std::vector<std::string> decode_intents(
    const LogitVector& logits, const std::vector<std::string>& candidates,
    const Ontology& o, const Tokenizer& tok, double threshold);

struct ParsedOutput {
  PredictionSet prediction;
  std::vector<std::string> diagnostics;
};

/// Parses `Label(slot=value, ...); Label; ...` completions. Labels resolve
/// against node labels and ids, exactly first and then case-insensitively;
/// unresolved entries are dropped with a diagnostic. Slot triples use the
/// intent's domain (depth-1 ancestor id) as their domain.
ParsedOutput parse_text_output(std::string_view text, const Ontology& o);

}  // namespace ontointent
