#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ontointent/embedding.hpp"
#include "ontointent/ontology.hpp"

namespace ontointent {

struct RetrievalConfig {
  std::size_t k = 5;
  double theta = 0.65;
  ExpansionPolicy expansion = ExpansionPolicy::None;
};

struct ScoredNode {
  std::string id;
  double similarity = 0.0;

  bool operator==(const ScoredNode&) const = default;
};

struct RetrievalResult {
  /// Descending similarity, ties by id ascending; every entry >= theta.
  std::vector<ScoredNode> scored;
  /// Scored ids after expansion, sorted by (depth, id).
  std::vector<std::string> subgraph;
};

/// Text used to embed a node: "<label>: <description>".
std::string node_text(const IntentNode& node);

/// Exact flat index over every non-root node. Rows are stored contiguously
/// with precomputed norms; search is a full scan.
class NodeIndex {
 public:
  NodeIndex() = default;
  NodeIndex(std::size_t dimension, std::vector<std::string> ids,
            std::vector<Embedding> embeddings);

  static NodeIndex build(const Ontology& o, const Encoder& enc);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::size_t dimension() const { return dimension_; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dimension_, dimension_};
  }
  double row_norm(std::size_t i) const { return norms_[i]; }
  Embedding embedding(std::size_t i) const;

  /// Top-k by cosine with ties broken by id, then filtered by theta.
  std::vector<ScoredNode> search(const Embedding& query, std::size_t k,
                                 double theta) const;

  /// Sidecar file: {"dimension": d, "embeddings": {id: [..], ...}}.
  void write_sidecar(std::ostream& out) const;
  /// Verifies the declared dimension and that exactly the non-root nodes
  /// of `o` are covered. Rows are kept in ontology file order.
  static NodeIndex read_sidecar(std::istream& in, const Ontology& o);

 private:
  std::size_t dimension_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> data_;
  std::vector<double> norms_;
};

/// Embed the query, scan the index and expand the hits in the ontology.
RetrievalResult retrieve(const NodeIndex& index, const Ontology& o,
                         std::string_view query, const Encoder& enc,
                         const RetrievalConfig& cfg);

RetrievalResult retrieve(const NodeIndex& index, const Ontology& o,
                         const Embedding& query, const RetrievalConfig& cfg);

}  // namespace ontointent
