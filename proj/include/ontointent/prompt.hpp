#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontointent/ontology.hpp"

namespace ontointent {

enum class PromptVariant {
  Canonical,
  OrderSwap,
  OrderSwapCue,
  ExampleAugmented,
  KeywordChange,
  Minimal,
};

inline constexpr PromptVariant kAllPromptVariants[] = {
    PromptVariant::Canonical,        PromptVariant::OrderSwap,
    PromptVariant::OrderSwapCue,     PromptVariant::ExampleAugmented,
    PromptVariant::KeywordChange,    PromptVariant::Minimal,
};

std::string_view to_string(PromptVariant variant);
PromptVariant prompt_variant_from_string(std::string_view text);

struct PromptTemplate {
  PromptVariant variant = PromptVariant::Canonical;
  /// Worked example prepended by the example-augmented variant.
  std::optional<std::string> example_block;
};

struct Prompt {
  std::string text;
  std::vector<std::string> labels;
  std::string query;
};

/// Renders the candidate-constrained prompt. Labels come from `subgraph`
/// ordered by (depth, id).
///
///   canonical        Possible intents: A, B.\nQuery: "q". Answer intents:
///   order_swap       Query: "q".\nPossible intents: A, B.\nAnswer intents:
///   order_swap_cue   "Your task is to choose the best intents.\n" + order_swap
///   example_augmented  example block, blank line, canonical
///   keyword_change   canonical with "intent(s)" replaced by "option(s)"
///   minimal          Query: q {A, B}
///
/// Throws EmptySubgraph for an empty subgraph and MissingExample when the
/// example-augmented variant has no example block.
Prompt build_prompt(std::string_view query,
                    const std::vector<std::string>& subgraph,
                    const Ontology& o, const PromptTemplate& tmpl);

/// Prompt carrying no ontology labels: `Query: "q". Answer intents:`.
Prompt build_neutral_prompt(std::string_view query);

/// Recovers the label list embedded in a rendered prompt. Used to check
/// that rendering preserves the candidate set.
std::vector<std::string> extract_labels(std::string_view text,
                                        PromptVariant variant);

}  // namespace ontointent
