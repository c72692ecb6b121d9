#include "docforge/relations.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace docforge {

std::string_view to_string(RelationKind kind) noexcept {
  switch (kind) {
    case RelationKind::inputs: return "inputs";
    case RelationKind::outputs: return "outputs";
    case RelationKind::contains: return "contains";
    case RelationKind::inherits: return "inherits";
    case RelationKind::implements: return "implements";
  }
  return "inputs";
}

std::optional<RelationKind> parse_relation_kind(std::string_view text) noexcept {
  for (auto k : {RelationKind::inputs, RelationKind::outputs, RelationKind::contains,
                 RelationKind::inherits, RelationKind::implements}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

namespace {

template <typename Map>
void sort_unique_values(Map& map) {
  for (auto& [_, values] : map) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
  }
}

void add_heads(const TypeExpr& t, std::set<std::string>& heads) { collect_heads(t, heads); }

}  // namespace

RelationIndex build_relation_index(const ApiGraph& graph) {
  RelationIndex index;

  for (const auto* f : all_functions(graph)) {
    const auto q = qualified_name(*f);
    const auto shape = desugar_method(*f, graph);
    std::set<std::string> in_heads;
    for (const auto& p : shape.params) add_heads(p.type, in_heads);
    for (const auto& h : in_heads) index.inputs[h].push_back(q);
    std::set<std::string> out_heads;
    add_heads(shape.ret, out_heads);
    for (const auto& h : out_heads) index.outputs[h].push_back(q);
  }

  for (const auto& t : graph.types) {
    const auto q = qualified_name(t);
    index.qualified.emplace(t.name, q);
    for (const auto& field : t.fields) {
      std::set<std::string> heads;
      add_heads(field.type, heads);
      for (const auto& h : heads) index.contains[h].push_back({q, field.name});
    }
    auto& up = index.inherits_up[t.name];
    auto& edges = index.parents[t.name];
    edges.type_params = t.type_params;
    for (const auto& s : t.supertypes) {
      up.push_back(s.name());
      index.inherited_by[s.name()].push_back(q);
      edges.parents.push_back(s);
    }
    for (const auto& i : t.implements) {
      index.implements[i.name()].push_back(q);
      edges.parents.push_back(i);
    }
  }
  for (const auto& i : graph.interfaces) {
    const auto q = qualified_name(i);
    index.qualified.emplace(i.name, q);
    auto& edges = index.parents[i.name];
    edges.type_params = i.type_params;
    for (const auto& e : i.extends) {
      index.inherited_by[e.name()].push_back(q);
      edges.parents.push_back(e);
    }
  }

  sort_unique_values(index.inputs);
  sort_unique_values(index.outputs);
  sort_unique_values(index.contains);
  sort_unique_values(index.inherits_up);
  sort_unique_values(index.inherited_by);
  sort_unique_values(index.implements);

  // Breadth-first search from every node, child -> parent.
  for (const auto& [start, _] : index.parents) {
    std::deque<std::pair<std::string, int>> queue{{start, 0}};
    std::set<std::string> seen{start};
    while (!queue.empty()) {
      auto [node, dist] = queue.front();
      queue.pop_front();
      index.subtype_reach.emplace(std::make_pair(start, node), dist);
      auto it = index.parents.find(node);
      if (it == index.parents.end()) continue;
      for (const auto& p : it->second.parents) {
        if (seen.insert(p.name()).second) queue.emplace_back(p.name(), dist + 1);
      }
    }
  }
  return index;
}

std::vector<std::string> relation_query(const RelationIndex& index, RelationKind kind,
                                        std::string_view name) {
  auto lookup = [&](const auto& map) -> std::vector<std::string> {
    auto it = map.find(name);
    return it == map.end() ? std::vector<std::string>{} : it->second;
  };
  switch (kind) {
    case RelationKind::inputs: return lookup(index.inputs);
    case RelationKind::outputs: return lookup(index.outputs);
    case RelationKind::inherits: return lookup(index.inherited_by);
    case RelationKind::implements: return lookup(index.implements);
    case RelationKind::contains: {
      std::vector<std::string> out;
      if (auto it = index.contains.find(name); it != index.contains.end()) {
        for (const auto& e : it->second) out.push_back(e.container + "::" + e.field);
      }
      return out;
    }
  }
  return {};
}

std::optional<int> subtype_distance(const RelationIndex& index, std::string_view sub,
                                    std::string_view super) {
  if (sub == super) return 0;
  auto it = index.subtype_reach.find({std::string(sub), std::string(super)});
  if (it == index.subtype_reach.end()) return std::nullopt;
  return it->second;
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const RelationIndex& index, const ApiGraph& graph) : index_(index) {
    for (const auto& t : graph.types) {
      names_.insert(t.name);
    }
    for (const auto& t : graph.types) {
      for (const auto& s : t.supertypes) {
        if (names_.contains(s.name())) children_[s.name()].insert(t.name);
      }
    }
  }

  std::vector<TreeNode> build() {
    std::vector<TreeNode> roots;
    for (const auto& name : names_) {
      auto it = index_.inherits_up.find(name);
      if (it == index_.inherits_up.end() || it->second.empty()) roots.push_back(node(name));
    }
    return roots;
  }

 private:
  TreeNode node(const std::string& name) {
    TreeNode n;
    n.name = name;
    if (auto it = index_.qualified.find(name); it != index_.qualified.end()) {
      n.qualified_name = it->second;
    }
    if (!expanded_.insert(name).second) {
      n.repeated = true;
      return n;
    }
    if (auto it = children_.find(name); it != children_.end()) {
      for (const auto& child : it->second) n.children.push_back(node(child));
    }
    return n;
  }

  const RelationIndex& index_;
  std::set<std::string> names_;
  std::map<std::string, std::set<std::string>> children_;
  std::set<std::string> expanded_;
};

}  // namespace

std::vector<TreeNode> inheritance_tree(const RelationIndex& index, const ApiGraph& graph) {
  return TreeBuilder(index, graph).build();
}

}  // namespace docforge
