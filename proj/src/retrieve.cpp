#include "ontointent/retrieve.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "ontointent/errors.hpp"

namespace ontointent {

std::string node_text(const IntentNode& node) {
  return node.label + ": " + node.description;
}

NodeIndex::NodeIndex(std::size_t dimension, std::vector<std::string> ids,
                     std::vector<Embedding> embeddings)
    : dimension_(dimension), ids_(std::move(ids)) {
  if (ids_.size() != embeddings.size()) {
    throw EncoderFailure("id/embedding count mismatch");
  }
  data_.reserve(ids_.size() * dimension_);
  norms_.reserve(ids_.size());
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    const auto& e = embeddings[i];
    if (e.dimension() != dimension_) {
      throw DimensionMismatch("embedding for '" + ids_[i] + "' has dimension " +
                              std::to_string(e.dimension()));
    }
    if (e.norm() == 0.0) throw ZeroVector("embedding for '" + ids_[i] + "'");
    data_.insert(data_.end(), e.values().begin(), e.values().end());
    norms_.push_back(e.norm());
  }
}

NodeIndex NodeIndex::build(const Ontology& o, const Encoder& enc) {
  std::vector<std::string> ids = o.non_root_ids();
  std::vector<Embedding> embeddings;
  embeddings.reserve(ids.size());
  for (const auto& id : ids) {
    try {
      embeddings.push_back(enc.encode(node_text(o.node(id))));
    } catch (const EmptyText& e) {
      throw EncoderFailure("node '" + id + "': " + e.what());
    }
  }
  return NodeIndex(enc.dimension(), std::move(ids), std::move(embeddings));
}

Embedding NodeIndex::embedding(std::size_t i) const {
  auto r = row(i);
  return Embedding(std::vector<double>(r.begin(), r.end()));
}

std::vector<ScoredNode> NodeIndex::search(const Embedding& query, std::size_t k,
                                          double theta) const {
  if (query.dimension() != dimension_) {
    throw DimensionMismatch("query has dimension " +
                            std::to_string(query.dimension()) + ", index " +
                            std::to_string(dimension_));
  }
  if (query.norm() == 0.0) throw ZeroVector("query embedding");

  std::vector<std::pair<double, std::size_t>> all;
  all.reserve(ids_.size());
  const double qn = query.norm();
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    all.emplace_back(dot(query.values(), row(i)) / (qn * norms_[i]), i);
  }
  auto better = [this](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : ids_[a.second] < ids_[b.second];
  };
  const std::size_t top = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<long>(top),
                    all.end(), better);
  std::vector<ScoredNode> out;
  out.reserve(top);
  for (std::size_t j = 0; j < top && all[j].first >= theta; ++j) {
    out.push_back({ids_[all[j].second], all[j].first});
  }
  return out;
}

void NodeIndex::write_sidecar(std::ostream& out) const {
  nlohmann::ordered_json doc;
  doc["dimension"] = dimension_;
  nlohmann::ordered_json emb = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    auto r = row(i);
    emb[ids_[i]] = std::vector<double>(r.begin(), r.end());
  }
  doc["embeddings"] = std::move(emb);
  out << doc.dump() << "\n";
}

NodeIndex NodeIndex::read_sidecar(std::istream& in, const Ontology& o) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("sidecar: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dimension") ||
      !doc["dimension"].is_number_unsigned() || !doc.contains("embeddings") ||
      !doc["embeddings"].is_object()) {
    throw ParseError("sidecar needs 'dimension' and 'embeddings' fields");
  }
  const auto dim = doc["dimension"].get<std::size_t>();
  const auto& emb = doc["embeddings"];
  for (const auto& [id, _] : emb.items()) {
    if (!o.contains(id) || id == o.root_id()) {
      throw ValidationError("sidecar embedding for unknown node '" + id + "'");
    }
  }
  std::vector<std::string> ids = o.non_root_ids();
  std::vector<Embedding> rows;
  rows.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = emb.find(id);
    if (it == emb.end()) {
      throw ValidationError("sidecar has no embedding for '" + id + "'");
    }
    if (!it->is_array()) throw ParseError("sidecar entry '" + id + "'");
    std::vector<double> v;
    v.reserve(it->size());
    for (const auto& x : *it) {
      if (!x.is_number()) throw ParseError("sidecar entry '" + id + "'");
      v.push_back(x.get<double>());
    }
    if (v.size() != dim) {
      throw DimensionMismatch("sidecar entry '" + id + "' has " +
                              std::to_string(v.size()) + " values, header says " +
                              std::to_string(dim));
    }
    rows.emplace_back(std::move(v));
  }
  return NodeIndex(dim, std::move(ids), std::move(rows));
}

RetrievalResult retrieve(const NodeIndex& index, const Ontology& o,
                         const Embedding& query, const RetrievalConfig& cfg) {
  if (cfg.k == 0) throw ConfigError("retrieval k must be >= 1");
  RetrievalResult result;
  result.scored = index.search(query, cfg.k, cfg.theta);
  std::vector<std::string> seeds;
  seeds.reserve(result.scored.size());
  for (const auto& s : result.scored) seeds.push_back(s.id);
  result.subgraph = o.expand_subgraph(seeds, cfg.expansion);
  return result;
}

RetrievalResult retrieve(const NodeIndex& index, const Ontology& o,
                         std::string_view query, const Encoder& enc,
                         const RetrievalConfig& cfg) {
  Embedding q;
  try {
    q = enc.encode(query);
  } catch (const EmptyText& e) {
    throw EncoderFailure(e.what());
  }
  return retrieve(index, o, q, cfg);
}

}  // namespace ontointent
