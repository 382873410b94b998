#include "ontointent/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ontointent/errors.hpp"

namespace ontointent {

using nlohmann::json;

std::string_view to_string(EdgeType type) {
  return type == EdgeType::IsA ? "is-a" : "related-to";
}

EdgeType edge_type_from_string(std::string_view text) {
  if (text == "is-a") return EdgeType::IsA;
  if (text == "related-to") return EdgeType::RelatedTo;
  throw ParseError("unknown edge_type '" + std::string(text) + "'");
}

std::string_view to_string(ExpansionPolicy policy) {
  switch (policy) {
    case ExpansionPolicy::None: return "none";
    case ExpansionPolicy::Parents: return "parents";
    case ExpansionPolicy::Siblings: return "siblings";
    case ExpansionPolicy::ParentsAndSiblings: return "parents+siblings";
  }
  return "none";
}

ExpansionPolicy expansion_policy_from_string(std::string_view text) {
  if (text == "none") return ExpansionPolicy::None;
  if (text == "parents") return ExpansionPolicy::Parents;
  if (text == "siblings") return ExpansionPolicy::Siblings;
  if (text == "parents+siblings") return ExpansionPolicy::ParentsAndSiblings;
  throw ConfigError("unknown expansion policy '" + std::string(text) + "'");
}

namespace {

std::string required_string(const json& obj, const char* key, std::size_t pos) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ParseError("node #" + std::to_string(pos) + ": field '" + key +
                     "' must be a string");
  }
  return it->get<std::string>();
}

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

Ontology Ontology::from_json_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  auto nodes_it = doc.find("nodes");
  if (nodes_it == doc.end() || !nodes_it->is_array()) {
    throw ParseError("missing 'nodes' array");
  }

  std::vector<IntentNode> nodes;
  nodes.reserve(nodes_it->size());
  std::size_t pos = 0;
  for (const auto& item : *nodes_it) {
    if (!item.is_object()) {
      throw ParseError("node #" + std::to_string(pos) + " is not an object");
    }
    IntentNode node;
    node.id = required_string(item, "id", pos);
    node.label = required_string(item, "label", pos);
    if (auto d = item.find("description"); d != item.end()) {
      if (!d->is_string()) throw ParseError("description must be a string");
      node.description = d->get<std::string>();
    }
    if (auto p = item.find("parent"); p != item.end() && !p->is_null()) {
      if (!p->is_string()) throw ParseError("parent must be a string");
      node.parent = p->get<std::string>();
    }
    if (auto e = item.find("edge_type"); e != item.end()) {
      if (!e->is_string()) throw ParseError("edge_type must be a string");
      node.edge_type = edge_type_from_string(e->get<std::string>());
    }
    nodes.push_back(std::move(node));
    ++pos;
  }

  std::vector<std::pair<std::string, std::string>> related;
  if (auto r = doc.find("related"); r != doc.end()) {
    if (!r->is_array()) throw ParseError("'related' must be an array");
    for (const auto& pair : *r) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
          !pair[1].is_string()) {
        throw ParseError("'related' entries must be [id, id] pairs");
      }
      related.emplace_back(pair[0].get<std::string>(),
                           pair[1].get<std::string>());
    }
  }

  std::optional<std::string> root;
  if (auto r = doc.find("root"); r != doc.end() && !r->is_null()) {
    if (!r->is_string()) throw ParseError("'root' must be a string");
    root = r->get<std::string>();
  }
  return from_nodes(std::move(nodes), std::move(related), std::move(root));
}

Ontology Ontology::load(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

Ontology Ontology::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load(in);
}

Ontology Ontology::from_nodes(
    std::vector<IntentNode> nodes,
    std::vector<std::pair<std::string, std::string>> related,
    std::optional<std::string> root) {
  Ontology o;
  o.root_declared_ = root.has_value();

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.id.empty() || has_whitespace(n.id)) {
      throw ValidationError("invalid node id '" + n.id + "'");
    }
    if (n.label.empty()) {
      throw ValidationError("node '" + n.id + "' has an empty label");
    }
    if (!o.index_.emplace(n.id, i).second) {
      throw ValidationError("duplicate id '" + n.id + "'");
    }
  }

  // Parent links that participate in the is-a tree.
  std::vector<std::size_t> parentless;
  std::vector<std::pair<std::string, std::string>> derived_related;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.parent && !o.index_.contains(*n.parent)) {
      throw ValidationError("node '" + n.id + "' has dangling parent '" +
                            *n.parent + "'");
    }
    if (!n.parent || n.edge_type == EdgeType::RelatedTo) {
      parentless.push_back(i);
      if (n.parent) derived_related.emplace_back(n.id, *n.parent);
    }
  }
  for (const auto& [a, b] : related) {
    if (!o.index_.contains(a) || !o.index_.contains(b)) {
      throw ValidationError("related-to edge (" + a + ", " + b +
                            ") references an unknown node");
    }
  }

  std::size_t offset = 0;
  if (root) {
    auto it = o.index_.find(*root);
    if (it == o.index_.end()) {
      throw ValidationError("declared root '" + *root + "' does not exist");
    }
    if (parentless.size() != 1 || parentless.front() != it->second) {
      throw ValidationError("declared root '" + *root +
                            "' must be the only parentless node (multiple "
                            "roots)");
    }
  } else if (parentless.empty()) {
    throw ValidationError(nodes.empty() ? "ontology has no nodes"
                                        : "no parentless node (cycle)");
  } else if (parentless.size() > 1) {
    if (o.index_.contains(std::string(kVirtualRootId))) {
      throw ValidationError("id '" + std::string(kVirtualRootId) +
                            "' is reserved for the synthesized root");
    }
    o.root_synthesized_ = true;
    offset = 1;
  }

  o.nodes_.reserve(nodes.size() + offset);
  if (o.root_synthesized_) {
    IntentNode vroot;
    vroot.id = std::string(kVirtualRootId);
    vroot.label = "ROOT";
    o.nodes_.push_back(std::move(vroot));
  }
  for (auto& n : nodes) o.nodes_.push_back(std::move(n));
  o.index_.clear();
  for (std::size_t i = 0; i < o.nodes_.size(); ++i) {
    o.index_.emplace(o.nodes_[i].id, i);
  }
  o.root_ = o.root_synthesized_ ? 0 : parentless.front();

  o.parent_index_.assign(o.nodes_.size(), std::nullopt);
  o.children_.assign(o.nodes_.size(), {});
  for (std::size_t i = 0; i < o.nodes_.size(); ++i) {
    if (i == o.root_) continue;
    const auto& n = o.nodes_[i];
    std::size_t p = (!n.parent || n.edge_type == EdgeType::RelatedTo)
                        ? o.root_
                        : o.index_.at(*n.parent);
    o.parent_index_[i] = p;
    o.children_[p].push_back(n.id);
  }

  // Breadth-first from the root; anything unreached sits on a cycle.
  std::vector<bool> seen(o.nodes_.size(), false);
  std::deque<std::size_t> queue{o.root_};
  seen[o.root_] = true;
  o.nodes_[o.root_].depth = 0;
  std::size_t reached = 1;
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (const auto& child : o.children_[cur]) {
      std::size_t c = o.index_.at(child);
      if (seen[c]) continue;
      seen[c] = true;
      ++reached;
      o.nodes_[c].depth = o.nodes_[cur].depth + 1;
      o.max_depth_ = std::max(o.max_depth_, o.nodes_[c].depth);
      queue.push_back(c);
    }
  }
  if (reached != o.nodes_.size()) {
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) {
        throw ValidationError("cycle through node '" + o.nodes_[i].id + "'");
      }
    }
  }

  o.related_ = std::move(derived_related);
  o.related_.insert(o.related_.end(), related.begin(), related.end());
  // Explicit pairs are remembered separately for serialization.
  o.explicit_related_count_ = related.size();
  return o;
}

std::string Ontology::serialize() const {
  json doc = json::object();
  if (root_declared_) doc["root"] = root_id();
  json arr = json::array();
  for (std::size_t i = root_synthesized_ ? 1 : 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    json item = {{"id", n.id},
                 {"label", n.label},
                 {"description", n.description}};
    if (n.parent) item["parent"] = *n.parent;
    item["edge_type"] = std::string(to_string(n.edge_type));
    arr.push_back(std::move(item));
  }
  doc["nodes"] = std::move(arr);
  if (explicit_related_count_ > 0) {
    json rel = json::array();
    for (std::size_t i = related_.size() - explicit_related_count_;
         i < related_.size(); ++i) {
      rel.push_back({related_[i].first, related_[i].second});
    }
    doc["related"] = std::move(rel);
  }
  return doc.dump(2) + "\n";
}

bool Ontology::contains(std::string_view id) const {
  return index_.find(std::string(id)) != index_.end();
}

std::size_t Ontology::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw UnknownNode("'" + std::string(id) + "'");
  return it->second;
}

const IntentNode& Ontology::node(std::string_view id) const {
  return nodes_[index_of(id)];
}

std::vector<std::string> Ontology::non_root_ids() const {
  std::vector<std::string> ids;
  ids.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i != root_) ids.push_back(nodes_[i].id);
  }
  return ids;
}

const std::vector<std::string>& Ontology::children(std::string_view id) const {
  return children_[index_of(id)];
}

int Ontology::depth_of(std::string_view id) const {
  return nodes_[index_of(id)].depth;
}

const std::string& Ontology::lca(std::string_view u, std::string_view v) const {
  std::size_t a = index_of(u);
  std::size_t b = index_of(v);
  while (nodes_[a].depth > nodes_[b].depth) a = *parent_index_[a];
  while (nodes_[b].depth > nodes_[a].depth) b = *parent_index_[b];
  while (a != b) {
    a = *parent_index_[a];
    b = *parent_index_[b];
  }
  return nodes_[a].id;
}

const std::string& Ontology::domain_of(std::string_view id) const {
  std::size_t a = index_of(id);
  while (nodes_[a].depth > 1) a = *parent_index_[a];
  return nodes_[a].id;
}

void Ontology::sort_by_depth_then_id(std::vector<std::string>& ids) const {
  std::sort(ids.begin(), ids.end(),
            [this](const std::string& x, const std::string& y) {
              int dx = depth_of(x);
              int dy = depth_of(y);
              return dx != dy ? dx < dy : x < y;
            });
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

std::vector<std::string> Ontology::expand_subgraph(
    const std::vector<std::string>& seeds, ExpansionPolicy policy) const {
  std::set<std::size_t> out;
  const bool parents = policy == ExpansionPolicy::Parents ||
                       policy == ExpansionPolicy::ParentsAndSiblings;
  const bool siblings = policy == ExpansionPolicy::Siblings ||
                        policy == ExpansionPolicy::ParentsAndSiblings;
  for (const auto& seed : seeds) {
    std::size_t s = index_of(seed);
    out.insert(s);
    if (s == root_) continue;
    std::size_t p = *parent_index_[s];
    if (parents) out.insert(p);
    if (siblings) {
      for (const auto& sib : children_[p]) out.insert(index_.at(sib));
    }
  }
  out.erase(root_);
  std::vector<std::string> ids;
  ids.reserve(out.size());
  for (std::size_t i : out) ids.push_back(nodes_[i].id);
  sort_by_depth_then_id(ids);
  return ids;
}

}  // namespace ontointent
