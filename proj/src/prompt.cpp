#include "ontointent/prompt.hpp"

#include "ontointent/errors.hpp"

namespace ontointent {

std::string_view to_string(PromptVariant variant) {
  switch (variant) {
    case PromptVariant::Canonical: return "canonical";
    case PromptVariant::OrderSwap: return "order_swap";
    case PromptVariant::OrderSwapCue: return "order_swap_cue";
    case PromptVariant::ExampleAugmented: return "example_augmented";
    case PromptVariant::KeywordChange: return "keyword_change";
    case PromptVariant::Minimal: return "minimal";
  }
  return "canonical";
}

PromptVariant prompt_variant_from_string(std::string_view text) {
  for (auto v : kAllPromptVariants) {
    if (to_string(v) == text) return v;
  }
  throw ConfigError("unknown prompt variant '" + std::string(text) + "'");
}

namespace {

constexpr std::string_view kTaskCue = "Your task is to choose the best intents.";

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  return out;
}

std::string canonical(std::string_view query, const std::string& list,
                      std::string_view noun) {
  std::string out;
  out += "Possible ";
  out += noun;
  out += "s: ";
  out += list;
  out += ".\nQuery: \"";
  out += query;
  out += "\". Answer ";
  out += noun;
  out += "s:";
  return out;
}

std::string order_swapped(std::string_view query, const std::string& list) {
  std::string out = "Query: \"";
  out += query;
  out += "\".\nPossible intents: ";
  out += list;
  out += ".\nAnswer intents:";
  return out;
}

// Returns the text between `open` and the first `close` after it.
std::string_view between(std::string_view text, std::string_view open,
                         std::string_view close) {
  auto a = text.find(open);
  if (a == std::string_view::npos) return {};
  a += open.size();
  auto b = text.find(close, a);
  if (b == std::string_view::npos) return {};
  return text.substr(a, b - a);
}

std::vector<std::string> split_list(std::string_view list) {
  std::vector<std::string> out;
  if (list.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = list.find(", ", start);
    out.emplace_back(list.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 2;
  }
  return out;
}

}  // namespace

Prompt build_prompt(std::string_view query,
                    const std::vector<std::string>& subgraph,
                    const Ontology& o, const PromptTemplate& tmpl) {
  if (subgraph.empty()) {
    throw EmptySubgraph("no candidate intents for the prompt");
  }
  std::vector<std::string> ids = subgraph;
  o.sort_by_depth_then_id(ids);

  Prompt p;
  p.query = std::string(query);
  p.labels.reserve(ids.size());
  for (const auto& id : ids) p.labels.push_back(o.node(id).label);
  const std::string list = join(p.labels);

  switch (tmpl.variant) {
    case PromptVariant::Canonical:
      p.text = canonical(query, list, "intent");
      break;
    case PromptVariant::OrderSwap:
      p.text = order_swapped(query, list);
      break;
    case PromptVariant::OrderSwapCue:
      p.text = std::string(kTaskCue) + "\n" + order_swapped(query, list);
      break;
    case PromptVariant::ExampleAugmented:
      if (!tmpl.example_block || tmpl.example_block->empty()) {
        throw MissingExample("example_augmented variant needs prompt.example");
      }
      p.text = *tmpl.example_block + "\n\n" + canonical(query, list, "intent");
      break;
    case PromptVariant::KeywordChange:
      p.text = canonical(query, list, "option");
      break;
    case PromptVariant::Minimal:
      p.text = "Query: " + std::string(query) + " {" + list + "}";
      break;
  }
  return p;
}

Prompt build_neutral_prompt(std::string_view query) {
  Prompt p;
  p.query = std::string(query);
  p.text = "Query: \"" + p.query + "\". Answer intents:";
  return p;
}

std::vector<std::string> extract_labels(std::string_view text,
                                        PromptVariant variant) {
  switch (variant) {
    case PromptVariant::Canonical:
    case PromptVariant::ExampleAugmented: {
      // The example block may itself contain a list; the target list is
      // the last one.
      auto pos = text.rfind("Possible intents: ");
      if (pos == std::string_view::npos) return {};
      return split_list(between(text.substr(pos), "Possible intents: ", ".\nQuery: "));
    }
    case PromptVariant::OrderSwap:
    case PromptVariant::OrderSwapCue:
      return split_list(between(text, "\nPossible intents: ", ".\nAnswer intents:"));
    case PromptVariant::KeywordChange:
      return split_list(between(text, "Possible options: ", ".\nQuery: "));
    case PromptVariant::Minimal: {
      auto open = text.rfind(" {");
      if (open == std::string_view::npos || text.empty() || text.back() != '}') {
        return {};
      }
      return split_list(text.substr(open + 2, text.size() - open - 3));
    }
  }
  return {};
}

}  // namespace ontointent
