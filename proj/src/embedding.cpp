#include "ontointent/embedding.hpp"

#include <cctype>
#include <cmath>

#include "ontointent/errors.hpp"

namespace ontointent {

double euclidean_norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

Embedding::Embedding(std::vector<double> values)
    : values_(std::move(values)), norm_(euclidean_norm(values_)) {
  for (double x : values_) {
    if (!std::isfinite(x)) throw EncoderFailure("non-finite embedding value");
  }
}

double cosine(const Embedding& u, const Embedding& v) {
  if (u.dimension() != v.dimension()) {
    throw DimensionMismatch(std::to_string(u.dimension()) + " vs " +
                            std::to_string(v.dimension()));
  }
  if (u.norm() == 0.0 || v.norm() == 0.0) throw ZeroVector("cosine operand");
  return dot(u.values(), v.values()) / (u.norm() * v.norm());
}

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<double> MockEncoder::token_vector(std::string_view token) const {
  std::uint64_t state = fnv1a64(token) ^ seed_;
  std::vector<double> v(kDimension);
  double sq = 0.0;
  for (auto& x : v) {
    // 53 random bits mapped onto [-1, 1).
    x = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-52 - 1.0;
    sq += x * x;
  }
  const double n = std::sqrt(sq);
  for (auto& x : v) x /= n;
  return v;
}

Embedding MockEncoder::encode(std::string_view text) const {
  auto tokens = word_tokens(text);
  if (tokens.empty()) throw EmptyText("no tokens in '" + std::string(text) + "'");
  std::vector<double> mean(kDimension, 0.0);
  for (const auto& t : tokens) {
    auto v = token_vector(t);
    for (std::size_t i = 0; i < kDimension; ++i) mean[i] += v[i];
  }
  for (auto& x : mean) x /= static_cast<double>(tokens.size());
  const double n = euclidean_norm(mean);
  if (n == 0.0) throw EncoderFailure("degenerate mean embedding");
  for (auto& x : mean) x /= n;
  return Embedding(std::move(mean));
}

}  // namespace ontointent
