#pragma once

// Flat embedding in Q^(d-1): the base simplex plus repeated weighted
// barycentric subdivision following the weighted stacking tree.

#include "stackgrid/exact_geometry.hpp"
#include "stackgrid/tree_model.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace stackgrid {

/// Sorted vertex set of size d-1.
using Ridge = std::vector<VertexId>;

/// A facet of the complex: a leaf node id, or kBaseFacet for f_B.
using FacetRef = NodeId;
inline constexpr FacetRef kBaseFacet = -1;

struct Stacking {
  NodeId node;       // interior node whose facet is subdivided
  VertexId apex;     // the stacked vertex
  std::vector<NodeId> children;
};

struct FlatComplex {
  int dim = 3;                                    // d; points live in Q^(d-1)
  std::vector<Point> coords;                      // by vertex id
  std::vector<std::vector<VertexId>> node_facets; // ordered facet of every tree node
  std::vector<NodeId> leaves;                     // final facets other than f_B, pre-order
  std::vector<VertexId> base_facet;
  std::vector<Stacking> stackings;                // pre-order
  std::map<Ridge, std::pair<FacetRef, FacetRef>> ridges;
  Int L;
  Rat lambda;
  Rat R_eff;

  const std::vector<VertexId>& facet(FacetRef f) const {
    return f == kBaseFacet ? base_facet : node_facets[f];
  }
  PointSeq facet_points(FacetRef f) const;
  PointSeq node_points(NodeId node) const;
  bool is_base_ridge(const Ridge& r) const;
};

struct BaseSimplex {
  PointSeq vertices;
  Int L;
  Rat lambda;
};

/// v0 at the origin and the others at L e_j (e_1 and e_2 exchanged in even
/// dimensions so that the bracket is +L^(d-1)), L the least integer with
/// L^(d-1) >= R; lambda = L^(d-1) / R rescales every face-weight.
BaseSimplex base_simplex(int dim, const Int& R);

/// p = sum_i (a_i / W) u_i. The sub-simplex replacing u_i has |bracket|
/// equal to (a_i / W) times the facet's.
Point place_stacked_vertex(std::span<const Point> facet, std::span<const Rat> child_weights,
                           const Rat& W);

FlatComplex build_flat(const WeightedTree& wt);

/// Vertex sequence of the ridge of `facet` opposite its i-th vertex, sorted.
Ridge ridge_without(const std::vector<VertexId>& facet, std::size_t i);

/// Orders the facet as X∘s for ridge X: ridge vertices first (ascending),
/// then the remaining vertex.
std::vector<VertexId> facet_after_ridge(const Ridge& ridge, const std::vector<VertexId>& facet);

/// Rebuilds the ridge incidence table of a facet list.
std::map<Ridge, std::pair<FacetRef, FacetRef>> ridge_table(
    const std::vector<VertexId>& base_facet, const std::vector<std::vector<VertexId>>& node_facets,
    const std::vector<NodeId>& leaves);

/// JSON with exact rationals as "num/den" strings.
std::string flat_to_json(const FlatComplex& flat);

}  // namespace stackgrid
