#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ontointent {

/// Dense vector with its Euclidean norm cached at construction.
class Embedding {
 public:
  Embedding() = default;
  explicit Embedding(std::vector<double> values);

  std::size_t dimension() const { return values_.size(); }
  double norm() const { return norm_; }
  std::span<const double> values() const { return values_; }

  bool operator==(const Embedding& other) const {
    return values_ == other.values_;
  }

 private:
  std::vector<double> values_;
  double norm_ = 0.0;
};

double euclidean_norm(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

/// u.v / (|u| |v|). Throws DimensionMismatch or ZeroVector.
double cosine(const Embedding& u, const Embedding& v);

/// Text encoder producing fixed-dimension embeddings.
class Encoder {
 public:
  virtual ~Encoder() = default;
  virtual std::size_t dimension() const = 0;
  virtual Embedding encode(std::string_view text) const = 0;
  /// False when the engine must serialize calls into `encode`.
  virtual bool thread_safe() const { return false; }
};

/// Lowercases and splits on anything that is not an ASCII letter or digit.
std::vector<std::string> word_tokens(std::string_view text);

/// Deterministic hashing encoder used for tests and offline runs.
///
/// Each token hashes (seeded splitmix64 stream) to a fixed unit vector in
/// R^64; a text embeds as the L2-normalized mean of its token vectors.
class MockEncoder final : public Encoder {
 public:
  static constexpr std::size_t kDimension = 64;
  static constexpr std::uint64_t kDefaultSeed = 0x5eed0fa11u;

  explicit MockEncoder(std::uint64_t seed = kDefaultSeed) : seed_(seed) {}

  std::size_t dimension() const override { return kDimension; }
  /// Throws EmptyText when the text contains no tokens.
  Embedding encode(std::string_view text) const override;
  bool thread_safe() const override { return true; }

  /// Unit vector for one already-normalized token.
  std::vector<double> token_vector(std::string_view token) const;

 private:
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t fnv1a64(std::string_view text);

}  // namespace ontointent
