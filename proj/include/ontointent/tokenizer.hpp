#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ontointent/ontology.hpp"

namespace ontointent {

using TokenId = std::uint32_t;

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::size_t vocab_size() const = 0;
  virtual const std::string& token_string(TokenId id) const = 0;
  /// Token ids of a label. Throws TokenizationFailure when a piece is not
  /// in the vocabulary or the label yields no pieces.
  virtual std::vector<TokenId> encode_label(std::string_view label) const = 0;
  /// Every surface form of a token the model may emit (for example the
  /// leading-space variant). Always contains `id` itself.
  virtual std::vector<TokenId> surface_forms(TokenId id) const { return {id}; }
};

/// Splits a label into lowercase pieces on punctuation, whitespace and
/// camel-case boundaries: "BookFlight" -> {"book", "flight"}.
std::vector<std::string> label_pieces(std::string_view label);

/// Tokenizer over an explicit vocabulary. Entries prefixed with a
/// leading-space marker (" ", "Ġ" or "▁") are registered as
/// surface forms of the bare piece.
class VocabTokenizer final : public Tokenizer {
 public:
  explicit VocabTokenizer(std::vector<std::string> vocab);

  /// JSON array of token strings, or an object mapping token -> id.
  static VocabTokenizer load(std::istream& in);

  std::size_t vocab_size() const override { return vocab_.size(); }
  const std::string& token_string(TokenId id) const override;
  std::vector<TokenId> encode_label(std::string_view label) const override;
  std::vector<TokenId> surface_forms(TokenId id) const override;

  std::optional<TokenId> find(std::string_view token) const;
  const std::vector<std::string>& vocabulary() const { return vocab_; }

 private:
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, TokenId> lookup_;
  std::unordered_map<TokenId, std::vector<TokenId>> spaced_;
};

/// Label pieces of every non-root node in file order (first occurrence
/// wins), followed by `filler` tokens named "filler00", "filler01", ...
std::vector<std::string> mock_vocabulary(const Ontology& o,
                                         std::size_t filler = 64);

}  // namespace ontointent
