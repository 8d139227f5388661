#pragma once

// Tree-representation of stacked d-polytopes: every interior node is a
// stacking onto its facet, its d children are the facets created by that
// stacking, the leaves are the final facets other than the base facet.

#include "stackgrid/exact_geometry.hpp"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stackgrid {

using NodeId = int;
using VertexId = int;
inline constexpr NodeId kNoNode = -1;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TreeNode {
  std::vector<NodeId> children;  // empty (leaf) or exactly dim entries
  NodeId parent = kNoNode;

  bool is_leaf() const { return children.empty(); }
};

/// Ordered d-ary stacking tree. Node ids are pre-order indices, root = 0.
struct TreeRep {
  int dim = 3;
  std::vector<TreeNode> nodes;

  NodeId root() const { return 0; }
  std::size_t interior_count() const;
  std::size_t leaf_count() const;
  /// Number of polytope vertices n = d + #interior.
  std::size_t vertex_count() const { return dim + interior_count(); }

  /// Structural checks; throws InputError.
  void validate() const;
};

/// Builds a tree in pre-order from a nested shape (used by generators).
struct ShapeNode {
  std::vector<ShapeNode> children;
};
TreeRep tree_from_shape(int dim, const ShapeNode& root);

/// {"dim": d, "tree": node}, node = null | [node x d].
TreeRep parse_tree(std::string_view text);
std::string tree_to_json(const TreeRep& tree);

/// Vertex stacked at each interior node: d, d+1, ... in pre-order; kNoNode
/// for leaves.
std::vector<VertexId> stacked_vertices(const TreeRep& tree);

/// Vertex sequence of every node's facet, root = (0, ..., d-1) and child i
/// replaces the i-th vertex of its parent's facet by the stacked vertex.
std::vector<std::vector<VertexId>> node_facets(const TreeRep& tree);

std::vector<std::size_t> subtree_sizes(const TreeRep& tree);

struct Caterpillar {
  std::vector<NodeId> path;  // heavy path, top to bottom leaf
  int parent = -1;           // index of the parent caterpillar
};

struct CaterpillarHierarchy {
  std::vector<Caterpillar> caterpillars;  // [0] contains the root
  /// Number of caterpillars on the longest root-to-leaf chain of H(T).
  int height() const;
};

struct HeavyPaths {
  std::vector<int> heavy_child;  // child index per node, -1 for leaves
  CaterpillarHierarchy hierarchy;
};

/// Heavy child = child with most subtree nodes, ties to the lowest index.
HeavyPaths heavy_paths(const TreeRep& tree);

/// Largest number of light edges on any root-leaf path.
int max_light_depth(const TreeRep& tree, const std::vector<int>& heavy_child);

struct WeightedTree {
  TreeRep tree;
  std::vector<Int> weight;
  std::vector<int> heavy_child;

  const Int& root_weight() const { return weight[tree.root()]; }
};

WeightedTree balance_weights(const TreeRep& tree);

/// Node-by-node balanced predicate plus sum consistency and leaf weights >= 1.
/// Returns an empty string when fine, else a description of the first failure.
std::string check_balanced(const WeightedTree& wt);

std::string weighted_tree_to_json(const WeightedTree& wt);

enum class TreeShape { random, serpentine, balanced_rounds };
TreeShape parse_tree_shape(std::string_view name);

/// random / serpentine: `size` interior nodes. balanced_rounds: `size` rounds,
/// every leaf expanded once per round.
TreeRep gen_tree(TreeShape shape, int dim, int size, std::uint64_t seed);

struct PolytopeGraph {
  int vertex_count = 0;
  std::vector<std::set<VertexId>> adjacency;

  explicit PolytopeGraph(int n = 0) : vertex_count(n), adjacency(n) {}
  void add_edge(VertexId u, VertexId v);
  std::size_t edge_count() const;
  std::vector<std::pair<VertexId, VertexId>> edges() const;
};

/// {"n": int, "edges": [[u, v], ...]}
PolytopeGraph parse_graph(std::string_view text);
std::string graph_to_json(const PolytopeGraph& g);

/// 1-skeleton of the polytope the tree describes (vertex ids as in
/// stacked_vertices).
PolytopeGraph graph_of_tree(const TreeRep& tree);

struct GraphTree {
  TreeRep tree;
  std::vector<VertexId> label;  // tree vertex id -> input graph vertex id
};

/// Inverse of graph_of_tree relative to a base facet. Throws InputError when
/// the graph is not a stacked polytope with `base` as a facet.
GraphTree tree_from_graph(const PolytopeGraph& g, int dim, std::vector<VertexId> base);

/// Picks a facet of a stacked polytope graph to use as base.
std::vector<VertexId> default_base(const PolytopeGraph& g, int dim);

enum class LowerBoundKind { b3, gamma };

/// B3: tetrahedron with every face stacked in two rounds (20 vertices).
/// Gamma_n: B3 with a serpentine 3-tree gadget glued into each of its 36
/// faces, n a positive multiple of 36.
PolytopeGraph gen_lowerbound_graph(LowerBoundKind kind, int n = 0);

/// Triangular faces produced while building B3 (36 of them).
std::vector<std::vector<VertexId>> b3_faces();

}  // namespace stackgrid
