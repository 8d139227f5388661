#include "stackgrid/tree_model.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <random>

namespace stackgrid {

using nlohmann::json;

std::size_t TreeRep::interior_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return !n.is_leaf(); }));
}

std::size_t TreeRep::leaf_count() const { return nodes.size() - interior_count(); }

void TreeRep::validate() const {
  if (dim < 3) throw InputError("dimension must be at least 3");
  if (nodes.empty()) throw InputError("empty tree");
  if (nodes[0].is_leaf()) throw InputError("root must have children");
  if (nodes[0].parent != kNoNode) throw InputError("root has a parent");
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const auto& node = nodes[id];
    if (node.is_leaf()) continue;
    if (node.children.size() != static_cast<std::size_t>(dim)) {
      throw InputError("node " + std::to_string(id) + " has " +
                       std::to_string(node.children.size()) + " children, expected " +
                       std::to_string(dim));
    }
    for (NodeId c : node.children) {
      if (c <= static_cast<NodeId>(id) || c >= static_cast<NodeId>(nodes.size()) ||
          nodes[c].parent != static_cast<NodeId>(id)) {
        throw InputError("inconsistent child link at node " + std::to_string(id));
      }
    }
  }
  if (leaf_count() != interior_count() * (dim - 1) + 1) {
    throw InputError("leaf count does not match a d-ary tree");
  }
}

namespace {

// Renumbers an arbitrary node table so ids become pre-order indices.
TreeRep renumber_preorder(int dim, const std::vector<TreeNode>& raw, NodeId root) {
  TreeRep out;
  out.dim = dim;
  out.nodes.reserve(raw.size());
  std::vector<std::pair<NodeId, NodeId>> stack{{root, kNoNode}};
  while (!stack.empty()) {
    auto [old_id, new_parent] = stack.back();
    stack.pop_back();
    const NodeId new_id = static_cast<NodeId>(out.nodes.size());
    out.nodes.push_back(TreeNode{{}, new_parent});
    if (new_parent != kNoNode) out.nodes[new_parent].children.push_back(new_id);
    const auto& kids = raw[old_id].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(*it, new_id);
  }
  return out;
}

void append_shape(const ShapeNode& shape, NodeId parent, std::vector<TreeNode>& nodes) {
  const NodeId id = static_cast<NodeId>(nodes.size());
  nodes.push_back(TreeNode{{}, parent});
  if (parent != kNoNode) nodes[parent].children.push_back(id);
  for (const auto& child : shape.children) append_shape(child, id, nodes);
}

ShapeNode shape_from_json(const json& node, int dim) {
  ShapeNode out;
  if (node.is_null()) return out;
  if (!node.is_array()) throw InputError("tree node must be null or an array");
  if (node.size() != static_cast<std::size_t>(dim)) {
    throw InputError("tree node has " + std::to_string(node.size()) + " children, expected " +
                     std::to_string(dim));
  }
  out.children.reserve(node.size());
  for (const auto& child : node) out.children.push_back(shape_from_json(child, dim));
  return out;
}

json node_to_json(const TreeRep& tree, NodeId id) {
  const auto& node = tree.nodes[id];
  if (node.is_leaf()) return nullptr;
  json arr = json::array();
  for (NodeId c : node.children) arr.push_back(node_to_json(tree, c));
  return arr;
}

}  // namespace

TreeRep tree_from_shape(int dim, const ShapeNode& root) {
  TreeRep tree;
  tree.dim = dim;
  append_shape(root, kNoNode, tree.nodes);
  tree.validate();
  return tree;
}

TreeRep parse_tree(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed tree JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("tree")) {
    throw InputError("tree JSON needs \"dim\" and \"tree\"");
  }
  if (!doc["dim"].is_number_integer()) throw InputError("\"dim\" must be an integer");
  const int dim = doc["dim"].get<int>();
  if (dim < 3) throw InputError("dimension must be at least 3");
  if (doc["tree"].is_null()) throw InputError("root must have children");
  return tree_from_shape(dim, shape_from_json(doc["tree"], dim));
}

std::string tree_to_json(const TreeRep& tree) {
  json doc;
  doc["dim"] = tree.dim;
  doc["tree"] = node_to_json(tree, tree.root());
  return doc.dump();
}

std::vector<VertexId> stacked_vertices(const TreeRep& tree) {
  std::vector<VertexId> out(tree.nodes.size(), kNoNode);
  VertexId next = tree.dim;
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    if (!tree.nodes[id].is_leaf()) out[id] = next++;
  }
  return out;
}

std::vector<std::vector<VertexId>> node_facets(const TreeRep& tree) {
  std::vector<std::vector<VertexId>> facets(tree.nodes.size());
  const auto apex = stacked_vertices(tree);
  for (int i = 0; i < tree.dim; ++i) facets[0].push_back(i);
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& node = tree.nodes[id];
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      auto f = facets[id];
      f[i] = apex[id];
      facets[node.children[i]] = std::move(f);
    }
  }
  return facets;
}

std::vector<std::size_t> subtree_sizes(const TreeRep& tree) {
  std::vector<std::size_t> size(tree.nodes.size(), 1);
  for (std::size_t id = tree.nodes.size(); id-- > 0;) {
    for (NodeId c : tree.nodes[id].children) size[id] += size[c];
  }
  return size;
}

int CaterpillarHierarchy::height() const {
  std::vector<int> depth(caterpillars.size(), 1);
  int best = 0;
  for (std::size_t i = 0; i < caterpillars.size(); ++i) {
    if (caterpillars[i].parent >= 0) depth[i] = depth[caterpillars[i].parent] + 1;
    best = std::max(best, depth[i]);
  }
  return best;
}

HeavyPaths heavy_paths(const TreeRep& tree) {
  HeavyPaths out;
  const auto size = subtree_sizes(tree);
  out.heavy_child.assign(tree.nodes.size(), -1);
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& kids = tree.nodes[id].children;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (out.heavy_child[id] < 0 || size[kids[i]] > size[kids[out.heavy_child[id]]]) {
        out.heavy_child[id] = static_cast<int>(i);
      }
    }
  }

  // Caterpillar tops are the root and every interior light child; pre-order
  // guarantees a parent caterpillar is created before its children.
  std::vector<int> owner(tree.nodes.size(), -1);
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& node = tree.nodes[id];
    if (node.is_leaf() || owner[id] >= 0) continue;
    Caterpillar cat;
    cat.parent = node.parent == kNoNode ? -1 : owner[node.parent];
    const int index = static_cast<int>(out.hierarchy.caterpillars.size());
    NodeId cur = static_cast<NodeId>(id);
    while (true) {
      cat.path.push_back(cur);
      owner[cur] = index;
      if (tree.nodes[cur].is_leaf()) break;
      cur = tree.nodes[cur].children[out.heavy_child[cur]];
    }
    out.hierarchy.caterpillars.push_back(std::move(cat));
  }
  return out;
}

int max_light_depth(const TreeRep& tree, const std::vector<int>& heavy_child) {
  std::vector<int> light(tree.nodes.size(), 0);
  int best = 0;
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& kids = tree.nodes[id].children;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      light[kids[i]] = light[id] + (static_cast<int>(i) == heavy_child[id] ? 0 : 1);
      best = std::max(best, light[kids[i]]);
    }
  }
  return best;
}

namespace {

class Balancer {
 public:
  Balancer(const TreeRep& tree, const std::vector<int>& heavy)
      : tree_(tree), heavy_(heavy), weight_(tree.nodes.size(), 0) {}

  std::vector<Int> run() {
    balance(tree_.root());
    return std::move(weight_);
  }

 private:
  NodeId heavy_of(NodeId v) const { return tree_.nodes[v].children[heavy_[v]]; }

  void add_along_heavy_path(NodeId top, const Int& delta) {
    for (NodeId cur = top;; cur = heavy_of(cur)) {
      weight_[cur] += delta;
      if (tree_.nodes[cur].is_leaf()) break;
    }
  }

  template <typename Fn>
  void for_light_children(NodeId v, Fn&& fn) {
    const auto& kids = tree_.nodes[v].children;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (static_cast<int>(i) != heavy_[v]) fn(kids[i]);
    }
  }

  void balance(NodeId top) {
    const auto& kids = tree_.nodes[top].children;
    const bool depth_one = std::all_of(kids.begin(), kids.end(),
                                       [&](NodeId c) { return tree_.nodes[c].is_leaf(); });
    if (depth_one) {
      for (NodeId c : kids) weight_[c] = 1;
      weight_[top] = tree_.dim;
      return;
    }

    std::vector<NodeId> path;
    for (NodeId cur = top;; cur = heavy_of(cur)) {
      path.push_back(cur);
      if (tree_.nodes[cur].is_leaf()) break;
    }
    const std::size_t interior = path.size() - 1;

    for (std::size_t i = 0; i < interior; ++i) {
      for_light_children(path[i], [&](NodeId c) {
        if (tree_.nodes[c].is_leaf()) {
          weight_[c] = 1;
        } else {
          balance(c);
        }
      });
    }
    weight_[path.back()] = 1;

    // Raise the lighter light children of each path node to the heaviest one.
    for (std::size_t i = 0; i < interior; ++i) {
      Int top_light = 0;
      for_light_children(path[i], [&](NodeId c) { top_light = std::max(top_light, weight_[c]); });
      for_light_children(path[i], [&](NodeId c) {
        if (weight_[c] < top_light) add_along_heavy_path(c, top_light - weight_[c]);
      });
    }

    Int delta_r = 0;
    for (std::size_t i = interior; i-- > 0;) {
      Int sum = 0;
      for (NodeId c : tree_.nodes[path[i]].children) sum += weight_[c];
      weight_[path[i]] = sum;
      for_light_children(path[i], [&](NodeId c) { delta_r = std::max(delta_r, weight_[c]); });
    }
    // Keeps every heavy child at least as heavy as its light siblings.
    for (NodeId v : path) weight_[v] += delta_r;
  }

  const TreeRep& tree_;
  const std::vector<int>& heavy_;
  std::vector<Int> weight_;
};

}  // namespace

WeightedTree balance_weights(const TreeRep& tree) {
  tree.validate();
  WeightedTree wt;
  wt.tree = tree;
  wt.heavy_child = heavy_paths(tree).heavy_child;
  wt.weight = Balancer(tree, wt.heavy_child).run();
  return wt;
}

std::string check_balanced(const WeightedTree& wt) {
  const auto& nodes = wt.tree.nodes;
  if (wt.weight.size() != nodes.size() || wt.heavy_child.size() != nodes.size()) {
    return "weight table size mismatch";
  }
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const auto& kids = nodes[id].children;
    const std::string where = "node " + std::to_string(id) + ": ";
    if (kids.empty()) {
      if (wt.weight[id] < 1) return where + "leaf weight below 1";
      continue;
    }
    Int sum = 0;
    for (NodeId c : kids) sum += wt.weight[c];
    if (sum != wt.weight[id]) return where + "weight differs from the sum of its children";
    const int h = wt.heavy_child[id];
    if (h < 0 || h >= static_cast<int>(kids.size())) return where + "bad heavy child";
    const Int* light = nullptr;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (static_cast<int>(i) == h) continue;
      const Int& w = wt.weight[kids[i]];
      if (light && *light != w) return where + "light children differ in weight";
      light = &w;
    }
    if (light && wt.weight[kids[h]] < *light) return where + "heavy child lighter than light child";
  }
  return {};
}

std::string weighted_tree_to_json(const WeightedTree& wt) {
  json doc;
  doc["dim"] = wt.tree.dim;
  doc["tree"] = node_to_json(wt.tree, wt.tree.root());
  json weights = json::array();
  for (const auto& w : wt.weight) weights.push_back(to_string(w));
  doc["weights"] = std::move(weights);
  doc["heavy_child"] = wt.heavy_child;
  doc["root_weight"] = to_string(wt.root_weight());
  return doc.dump();
}

TreeShape parse_tree_shape(std::string_view name) {
  if (name == "random") return TreeShape::random;
  if (name == "serpentine") return TreeShape::serpentine;
  if (name == "balanced_rounds") return TreeShape::balanced_rounds;
  throw InputError("unknown tree shape: " + std::string(name));
}

TreeRep gen_tree(TreeShape shape, int dim, int size, std::uint64_t seed) {
  if (dim < 3) throw InputError("dimension must be at least 3");
  if (size < 1) throw InputError("size must be at least 1");

  std::vector<TreeNode> raw(1);
  auto expand = [&](NodeId v) {
    for (int i = 0; i < dim; ++i) {
      raw[v].children.push_back(static_cast<NodeId>(raw.size()));
      raw.push_back(TreeNode{{}, v});
    }
  };
  expand(0);

  switch (shape) {
    case TreeShape::random: {
      std::mt19937_64 rng(seed);
      std::vector<NodeId> leaves = raw[0].children;
      for (int s = 1; s < size; ++s) {
        const std::size_t pick = static_cast<std::size_t>(rng() % leaves.size());
        const NodeId v = leaves[pick];
        expand(v);
        leaves[pick] = raw[v].children[0];
        for (int i = 1; i < dim; ++i) leaves.push_back(raw[v].children[i]);
      }
      break;
    }
    case TreeShape::serpentine: {
      NodeId last = 0;
      for (int s = 1; s < size; ++s) {
        const NodeId v = raw[last].children[s % dim];
        expand(v);
        last = v;
      }
      break;
    }
    case TreeShape::balanced_rounds: {
      std::vector<NodeId> frontier = raw[0].children;
      for (int r = 0; r < size; ++r) {
        std::vector<NodeId> next;
        for (NodeId v : frontier) {
          expand(v);
          next.insert(next.end(), raw[v].children.begin(), raw[v].children.end());
        }
        frontier = std::move(next);
      }
      break;
    }
  }
  TreeRep tree = renumber_preorder(dim, raw, 0);
  tree.validate();
  return tree;
}

void PolytopeGraph::add_edge(VertexId u, VertexId v) {
  if (u == v) throw InputError("self loop");
  adjacency.at(u).insert(v);
  adjacency.at(v).insert(u);
}

std::size_t PolytopeGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& adj : adjacency) total += adj.size();
  return total / 2;
}

std::vector<std::pair<VertexId, VertexId>> PolytopeGraph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId u = 0; u < vertex_count; ++u) {
    for (VertexId v : adjacency[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

PolytopeGraph parse_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed graph JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges") ||
      !doc["n"].is_number_integer() || !doc["edges"].is_array()) {
    throw InputError("graph JSON needs integer \"n\" and array \"edges\"");
  }
  const int n = doc["n"].get<int>();
  if (n < 1) throw InputError("graph needs at least one vertex");
  PolytopeGraph g(n);
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw InputError("edge must be a pair of integers");
    }
    const int u = e[0].get<int>();
    const int v = e[1].get<int>();
    if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("edge endpoint out of range");
    g.add_edge(u, v);
  }
  return g;
}

std::string graph_to_json(const PolytopeGraph& g) {
  json doc;
  doc["n"] = g.vertex_count;
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  return doc.dump();
}

PolytopeGraph graph_of_tree(const TreeRep& tree) {
  PolytopeGraph g(static_cast<int>(tree.vertex_count()));
  for (int i = 0; i < tree.dim; ++i) {
    for (int j = i + 1; j < tree.dim; ++j) g.add_edge(i, j);
  }
  const auto apex = stacked_vertices(tree);
  const auto facets = node_facets(tree);
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    if (apex[id] == kNoNode) continue;
    for (VertexId u : facets[id]) g.add_edge(apex[id], u);
  }
  return g;
}

namespace {

bool is_clique(const PolytopeGraph& g, const std::vector<VertexId>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (!g.adjacency[vs[i]].contains(vs[j])) return false;
    }
  }
  return true;
}

}  // namespace

GraphTree tree_from_graph(const PolytopeGraph& g, int dim, std::vector<VertexId> base) {
  if (dim < 3) throw InputError("dimension must be at least 3");
  const int n = g.vertex_count;
  if (base.size() != static_cast<std::size_t>(dim)) throw InputError("base must have d vertices");
  for (VertexId b : base) {
    if (b < 0 || b >= n) throw InputError("base vertex out of range");
  }
  if (std::set<VertexId>(base.begin(), base.end()).size() != base.size()) {
    throw InputError("base vertices must be distinct");
  }
  if (!is_clique(g, base)) throw InputError("base is not a clique");
  if (n < dim + 1) throw InputError("not a stacked polytope w.r.t. base: too few vertices");

  std::vector<std::set<VertexId>> adj = g.adjacency;
  std::vector<bool> in_base(n, false), removed(n, false);
  for (VertexId b : base) in_base[b] = true;

  std::vector<std::pair<VertexId, std::vector<VertexId>>> removals;
  int remaining = n;
  while (remaining > dim + 1) {
    VertexId pick = kNoNode;
    for (VertexId v = 0; v < n && pick == kNoNode; ++v) {
      if (removed[v] || in_base[v] || adj[v].size() != static_cast<std::size_t>(dim)) continue;
      std::vector<VertexId> nb(adj[v].begin(), adj[v].end());
      bool clique = true;
      for (std::size_t i = 0; i < nb.size() && clique; ++i) {
        for (std::size_t j = i + 1; j < nb.size() && clique; ++j) {
          clique = adj[nb[i]].contains(nb[j]);
        }
      }
      if (clique) pick = v;
    }
    if (pick == kNoNode) {
      throw InputError("not a stacked polytope w.r.t. base: no removable vertex");
    }
    removals.emplace_back(pick, std::vector<VertexId>(adj[pick].begin(), adj[pick].end()));
    for (VertexId u : adj[pick]) adj[u].erase(pick);
    adj[pick].clear();
    removed[pick] = true;
    --remaining;
  }

  VertexId top = kNoNode;
  for (VertexId v = 0; v < n; ++v) {
    if (!removed[v] && !in_base[v]) top = v;
  }
  if (top == kNoNode || adj[top] != std::set<VertexId>(base.begin(), base.end())) {
    throw InputError("not a stacked polytope w.r.t. base: remainder is not a simplex on the base");
  }

  // Replay the removals backwards as stackings.
  std::vector<TreeNode> raw(1);
  std::vector<VertexId> apex_of{top};
  std::map<std::vector<VertexId>, NodeId> leaf_of;
  auto stack_on = [&](NodeId node, const std::vector<VertexId>& facet, VertexId apex) {
    apex_of[node] = apex;
    for (std::size_t i = 0; i < facet.size(); ++i) {
      const NodeId child = static_cast<NodeId>(raw.size());
      raw.push_back(TreeNode{{}, node});
      apex_of.push_back(kNoNode);
      raw[node].children.push_back(child);
      auto f = facet;
      f[i] = apex;
      std::sort(f.begin(), f.end());
      leaf_of[f] = child;
    }
  };
  std::map<NodeId, std::vector<VertexId>> ordered;  // node -> ordered facet
  ordered[0] = base;
  stack_on(0, base, top);
  for (std::size_t i = 0; i < static_cast<std::size_t>(dim); ++i) {
    auto f = base;
    f[i] = top;
    ordered[raw[0].children[i]] = f;
  }
  for (auto it = removals.rbegin(); it != removals.rend(); ++it) {
    const auto& [v, nb] = *it;
    auto found = leaf_of.find(nb);
    if (found == leaf_of.end()) {
      throw InputError("not a stacked polytope w.r.t. base: neighbourhood is not a facet");
    }
    const NodeId node = found->second;
    leaf_of.erase(found);
    const auto facet = ordered[node];
    stack_on(node, facet, v);
    for (std::size_t i = 0; i < facet.size(); ++i) {
      auto f = facet;
      f[i] = v;
      ordered[raw[node].children[i]] = f;
    }
  }

  GraphTree out;
  out.tree = renumber_preorder(dim, raw, 0);
  out.tree.validate();

  // Pre-order walk of the raw table mirrors renumber_preorder.
  out.label = base;
  std::vector<NodeId> stack{0};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (apex_of[cur] != kNoNode) out.label.push_back(apex_of[cur]);
    for (auto c = raw[cur].children.rbegin(); c != raw[cur].children.rend(); ++c) {
      stack.push_back(*c);
    }
  }

  const PolytopeGraph rebuilt = graph_of_tree(out.tree);
  if (rebuilt.edge_count() != g.edge_count()) {
    throw InputError("not a stacked polytope w.r.t. base: edge sets differ");
  }
  for (auto [u, v] : rebuilt.edges()) {
    if (!g.adjacency[out.label[u]].contains(out.label[v])) {
      throw InputError("not a stacked polytope w.r.t. base: edge sets differ");
    }
  }
  return out;
}

std::vector<VertexId> default_base(const PolytopeGraph& g, int dim) {
  for (VertexId v = 0; v < g.vertex_count; ++v) {
    if (g.adjacency[v].size() != static_cast<std::size_t>(dim)) continue;
    std::vector<VertexId> base{v};
    base.insert(base.end(), g.adjacency[v].begin(), std::prev(g.adjacency[v].end()));
    std::sort(base.begin(), base.end());
    return base;
  }
  throw InputError("graph has no vertex of degree d");
}

namespace {

struct FaceStacker {
  PolytopeGraph graph;
  std::vector<std::vector<VertexId>> faces;

  VertexId stack(std::size_t face_index) {
    const VertexId v = graph.vertex_count++;
    graph.adjacency.emplace_back();
    const auto face = faces[face_index];
    for (VertexId u : face) graph.add_edge(u, v);
    for (std::size_t i = 0; i < face.size(); ++i) {
      auto f = face;
      f[i] = v;
      if (i == 0) {
        faces[face_index] = f;
      } else {
        faces.push_back(f);
      }
    }
    return v;
  }
};

FaceStacker build_b3() {
  FaceStacker s{PolytopeGraph(4), {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) s.graph.add_edge(u, v);
  }
  for (int round = 0; round < 2; ++round) {
    const std::size_t count = s.faces.size();
    for (std::size_t f = 0; f < count; ++f) s.stack(f);
  }
  return s;
}

}  // namespace

std::vector<std::vector<VertexId>> b3_faces() { return build_b3().faces; }

PolytopeGraph gen_lowerbound_graph(LowerBoundKind kind, int n) {
  FaceStacker s = build_b3();
  if (kind == LowerBoundKind::b3) return s.graph;
  if (n <= 0 || n % 36 != 0) throw InputError("gamma needs n to be a positive multiple of 36");
  const int extra = n - s.graph.vertex_count;
  const int faces = static_cast<int>(s.faces.size());
  // B3's own faces stay at indices 0..35; every stacking keeps the face it
  // split at its index, so later pushes never disturb those slots.
  for (int f = 0; f < faces; ++f) {
    const int count = extra / faces + (f < extra % faces ? 1 : 0);
    std::size_t current = static_cast<std::size_t>(f);
    for (int j = 0; j < count; ++j) {
      const std::size_t before = s.faces.size();
      s.stack(current);
      // Serpentine: the next stacking goes into the child replacing vertex (j+1) mod 3.
      const int child = (j + 1) % 3;
      current = child == 0 ? current : before + static_cast<std::size_t>(child - 1);
    }
  }
  return s.graph;
}

}  // namespace stackgrid
