#include "ontointent/tokenizer.hpp"

#include <cctype>
#include <cstdio>
#include <istream>
#include <unordered_set>

#include <json.hpp>

#include "ontointent/errors.hpp"

namespace ontointent {

std::vector<std::string> label_pieces(std::string_view label) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < label.size(); ++i) {
    auto c = static_cast<unsigned char>(label[i]);
    if (!std::isalnum(c)) {
      flush();
      continue;
    }
    if (!cur.empty() && std::isupper(c)) {
      auto prev = static_cast<unsigned char>(label[i - 1]);
      bool next_lower = i + 1 < label.size() &&
                        std::islower(static_cast<unsigned char>(label[i + 1]));
      // "bookFlight" and the "S" in "HTTPServer" start a new piece.
      if (std::islower(prev) || std::isdigit(prev) ||
          (std::isupper(prev) && next_lower)) {
        flush();
      }
    }
    cur.push_back(static_cast<char>(std::tolower(c)));
  }
  flush();
  return out;
}

namespace {

std::optional<std::string_view> strip_space_marker(std::string_view tok) {
  for (std::string_view marker : {std::string_view(" "),
                                  std::string_view("\xC4\xA0"),
                                  std::string_view("\xE2\x96\x81")}) {
    if (tok.size() > marker.size() && tok.substr(0, marker.size()) == marker) {
      return tok.substr(marker.size());
    }
  }
  return std::nullopt;
}

}  // namespace

VocabTokenizer::VocabTokenizer(std::vector<std::string> vocab)
    : vocab_(std::move(vocab)) {
  for (TokenId i = 0; i < vocab_.size(); ++i) {
    if (!lookup_.emplace(vocab_[i], i).second) {
      throw ValidationError("duplicate vocabulary entry '" + vocab_[i] + "'");
    }
  }
  for (TokenId i = 0; i < vocab_.size(); ++i) {
    if (auto bare = strip_space_marker(vocab_[i])) {
      if (auto it = lookup_.find(std::string(*bare)); it != lookup_.end()) {
        spaced_[it->second].push_back(i);
      }
    }
  }
}

VocabTokenizer VocabTokenizer::load(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("vocabulary: ") + e.what());
  }
  std::vector<std::string> vocab;
  if (doc.is_array()) {
    for (const auto& t : doc) {
      if (!t.is_string()) throw ParseError("vocabulary entries must be strings");
      vocab.push_back(t.get<std::string>());
    }
  } else if (doc.is_object()) {
    vocab.resize(doc.size());
    std::vector<bool> filled(doc.size(), false);
    for (const auto& [tok, id] : doc.items()) {
      if (!id.is_number_unsigned() || id.get<std::size_t>() >= vocab.size() ||
          filled[id.get<std::size_t>()]) {
        throw ParseError("vocabulary ids must be a dense permutation of 0..n-1");
      }
      vocab[id.get<std::size_t>()] = tok;
      filled[id.get<std::size_t>()] = true;
    }
  } else {
    throw ParseError("vocabulary must be an array or an object");
  }
  return VocabTokenizer(std::move(vocab));
}

const std::string& VocabTokenizer::token_string(TokenId id) const {
  if (id >= vocab_.size()) throw UnknownToken(std::to_string(id));
  return vocab_[id];
}

std::optional<TokenId> VocabTokenizer::find(std::string_view token) const {
  auto it = lookup_.find(std::string(token));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<TokenId> VocabTokenizer::encode_label(std::string_view label) const {
  auto pieces = label_pieces(label);
  if (pieces.empty()) {
    throw TokenizationFailure("label '" + std::string(label) + "' has no pieces");
  }
  std::vector<TokenId> ids;
  ids.reserve(pieces.size());
  for (const auto& p : pieces) {
    auto id = find(p);
    if (!id) {
      throw TokenizationFailure("piece '" + p + "' of label '" +
                                std::string(label) + "' not in vocabulary");
    }
    ids.push_back(*id);
  }
  return ids;
}

std::vector<TokenId> VocabTokenizer::surface_forms(TokenId id) const {
  std::vector<TokenId> out{id};
  if (auto it = spaced_.find(id); it != spaced_.end()) {
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

std::vector<std::string> mock_vocabulary(const Ontology& o, std::size_t filler) {
  std::vector<std::string> vocab;
  std::unordered_set<std::string> seen;
  for (const auto& id : o.non_root_ids()) {
    for (auto& piece : label_pieces(o.node(id).label)) {
      if (seen.insert(piece).second) vocab.push_back(std::move(piece));
    }
  }
  for (std::size_t i = 0; i < filler; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "filler%02zu", i);
    if (seen.insert(name).second) vocab.emplace_back(name);
  }
  return vocab;
}

}  // namespace ontointent
