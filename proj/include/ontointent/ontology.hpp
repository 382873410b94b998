#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ontointent {

enum class EdgeType { IsA, RelatedTo };

std::string_view to_string(EdgeType type);
EdgeType edge_type_from_string(std::string_view text);

struct IntentNode {
  std::string id;
  std::string label;
  std::string description;
  std::optional<std::string> parent;
  EdgeType edge_type = EdgeType::IsA;
  int depth = 0;
};

enum class ExpansionPolicy { None, Parents, Siblings, ParentsAndSiblings };

std::string_view to_string(ExpansionPolicy policy);
ExpansionPolicy expansion_policy_from_string(std::string_view text);

/// Immutable intent hierarchy.
///
/// Nodes form a rooted tree over is-a edges. When the source document has
/// more than one parentless node, a virtual root (id `kVirtualRootId`) is
/// synthesized above them so that domains sit at depth 1, categories at
/// depth 2 and intent leaves at depth 3. A node whose `edge_type` is
/// related-to contributes a related-to edge towards its `parent` and is
/// otherwise treated as parentless in the hierarchy.
///
/// All queries are const and safe for concurrent readers.
class Ontology {
 public:
  static constexpr std::string_view kVirtualRootId = "__root__";

  /// Reads the JSON document format (see README). Throws ParseError or
  /// ValidationError.
  static Ontology load(std::istream& in);
  static Ontology load_file(const std::string& path);
  static Ontology from_json_text(std::string_view text);

  /// Builds from in-memory nodes; `depth` fields of the input are ignored.
  static Ontology from_nodes(std::vector<IntentNode> nodes,
                             std::vector<std::pair<std::string, std::string>>
                                 related = {},
                             std::optional<std::string> root = std::nullopt);

  /// Canonical JSON form; `load(serialize())` reproduces this ontology.
  std::string serialize() const;

  std::size_t size() const { return nodes_.size(); }
  const std::string& root_id() const { return nodes_[root_].id; }
  bool root_synthesized() const { return root_synthesized_; }
  int max_depth() const { return max_depth_; }

  bool contains(std::string_view id) const;
  const IntentNode& node(std::string_view id) const;
  /// Nodes in file order; a synthesized root comes first.
  const std::vector<IntentNode>& nodes() const { return nodes_; }
  /// Ids of every node except the root, in file order.
  std::vector<std::string> non_root_ids() const;
  const std::vector<std::string>& children(std::string_view id) const;
  const std::vector<std::pair<std::string, std::string>>& related_edges()
      const {
    return related_;
  }

  int depth_of(std::string_view id) const;
  /// Deepest common is-a ancestor; a node is its own ancestor.
  const std::string& lca(std::string_view u, std::string_view v) const;
  /// Depth-1 ancestor of `id` (the node itself for a domain); root for root.
  const std::string& domain_of(std::string_view id) const;

  /// Seeds plus parents and/or siblings; never contains the root. Output is
  /// sorted by (depth, id).
  std::vector<std::string> expand_subgraph(const std::vector<std::string>& seeds,
                                           ExpansionPolicy policy) const;

  /// Sorts ids in place by (depth, id) and removes duplicates.
  void sort_by_depth_then_id(std::vector<std::string>& ids) const;

 private:
  std::size_t index_of(std::string_view id) const;

  std::vector<IntentNode> nodes_;
  std::vector<std::vector<std::string>> children_;
  std::vector<std::optional<std::size_t>> parent_index_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::pair<std::string, std::string>> related_;
  std::size_t root_ = 0;
  bool root_synthesized_ = false;
  bool root_declared_ = false;
  std::size_t explicit_related_count_ = 0;
  int max_depth_ = 0;
};

}  // namespace ontointent
