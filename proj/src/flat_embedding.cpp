#include "stackgrid/flat_embedding.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace stackgrid {

PointSeq FlatComplex::facet_points(FacetRef f) const {
  PointSeq out;
  for (VertexId v : facet(f)) out.push_back(coords[v]);
  return out;
}

PointSeq FlatComplex::node_points(NodeId node) const {
  PointSeq out;
  for (VertexId v : node_facets[node]) out.push_back(coords[v]);
  return out;
}

bool FlatComplex::is_base_ridge(const Ridge& r) const {
  auto it = ridges.find(r);
  return it != ridges.end() &&
         (it->second.first == kBaseFacet || it->second.second == kBaseFacet);
}

BaseSimplex base_simplex(int dim, const Int& R) {
  if (dim < 3) throw GeometryError("dimension must be at least 3");
  if (R < 3) throw GeometryError("root weight must be at least 3");
  BaseSimplex out;
  const unsigned long k = static_cast<unsigned long>(dim - 1);
  mpz_root(out.L.get_mpz_t(), R.get_mpz_t(), k);
  Int power;
  mpz_pow_ui(power.get_mpz_t(), out.L.get_mpz_t(), k);
  if (power < R) {
    out.L += 1;
    mpz_pow_ui(power.get_mpz_t(), out.L.get_mpz_t(), k);
  }
  out.lambda = make_rat(power, R);
  for (int v = 0; v < dim; ++v) {
    Point p(k, Rat(0));
    if (v > 0) p[v - 1] = out.L;
    out.vertices.push_back(std::move(p));
  }
  // With the origin first the bracket is (-1)^(d-1) L^(d-1); one swap makes
  // it positive in even dimensions too.
  if (dim % 2 == 0) std::swap(out.vertices[1], out.vertices[2]);
  return out;
}

Point place_stacked_vertex(std::span<const Point> facet, std::span<const Rat> child_weights,
                           const Rat& W) {
  if (facet.size() != child_weights.size() || facet.empty()) {
    throw GeometryError("one weight per facet vertex required");
  }
  Rat sum = 0;
  for (const auto& a : child_weights) {
    if (sgn(a) <= 0) throw GeometryError("barycentric weights must be positive");
    sum += a;
  }
  if (sum != W) throw GeometryError("barycentric weights do not sum to the facet weight");
  Point p(facet.front().size(), Rat(0));
  for (std::size_t i = 0; i < facet.size(); ++i) {
    const Rat t = child_weights[i] / W;
    for (std::size_t c = 0; c < p.size(); ++c) p[c] += t * facet[i][c];
  }
  return p;
}

Ridge ridge_without(const std::vector<VertexId>& facet, std::size_t i) {
  Ridge r;
  r.reserve(facet.size() - 1);
  for (std::size_t j = 0; j < facet.size(); ++j) {
    if (j != i) r.push_back(facet[j]);
  }
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<VertexId> facet_after_ridge(const Ridge& ridge, const std::vector<VertexId>& facet) {
  std::vector<VertexId> out = ridge;
  for (VertexId v : facet) {
    if (!std::binary_search(ridge.begin(), ridge.end(), v)) {
      out.push_back(v);
      return out;
    }
  }
  throw GeometryError("facet does not extend the ridge");
}

std::map<Ridge, std::pair<FacetRef, FacetRef>> ridge_table(
    const std::vector<VertexId>& base_facet, const std::vector<std::vector<VertexId>>& node_facets,
    const std::vector<NodeId>& leaves) {
  std::map<Ridge, std::vector<FacetRef>> incident;
  auto add = [&](FacetRef f, const std::vector<VertexId>& verts) {
    for (std::size_t i = 0; i < verts.size(); ++i) incident[ridge_without(verts, i)].push_back(f);
  };
  add(kBaseFacet, base_facet);
  for (NodeId leaf : leaves) add(leaf, node_facets[leaf]);

  std::map<Ridge, std::pair<FacetRef, FacetRef>> out;
  for (auto& [ridge, facets] : incident) {
    if (facets.size() != 2) {
      throw GeometryError("ridge incident to " + std::to_string(facets.size()) + " facets");
    }
    out.emplace(ridge, std::make_pair(facets[0], facets[1]));
  }
  return out;
}

FlatComplex build_flat(const WeightedTree& wt) {
  const TreeRep& tree = wt.tree;
  tree.validate();
  if (!check_balanced(wt).empty()) throw GeometryError("weights are not balanced");

  const BaseSimplex base = base_simplex(tree.dim, wt.root_weight());
  FlatComplex flat;
  flat.dim = tree.dim;
  flat.L = base.L;
  flat.lambda = base.lambda;
  flat.R_eff = wt.root_weight() * base.lambda;
  flat.coords = base.vertices;
  flat.node_facets = node_facets(tree);
  flat.base_facet = flat.node_facets[tree.root()];

  const auto apex = stacked_vertices(tree);
  flat.coords.resize(tree.vertex_count());
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& node = tree.nodes[id];
    if (node.is_leaf()) {
      flat.leaves.push_back(static_cast<NodeId>(id));
      continue;
    }
    std::vector<Rat> a;
    for (NodeId c : node.children) a.emplace_back(wt.weight[c] * flat.lambda);
    const PointSeq facet = flat.node_points(static_cast<NodeId>(id));
    flat.coords[apex[id]] = place_stacked_vertex(facet, a, Rat(wt.weight[id] * flat.lambda));
    flat.stackings.push_back(Stacking{static_cast<NodeId>(id), apex[id], node.children});
  }
  flat.ridges = ridge_table(flat.base_facet, flat.node_facets, flat.leaves);
  return flat;
}

std::string flat_to_json(const FlatComplex& flat) {
  using nlohmann::json;
  json doc;
  doc["dim"] = flat.dim;
  doc["L"] = to_string(flat.L);
  doc["lambda"] = to_string(flat.lambda);
  doc["R_eff"] = to_string(flat.R_eff);
  json coords = json::array();
  for (const auto& p : flat.coords) {
    json row = json::array();
    for (const auto& c : p) row.push_back(to_string(c));
    coords.push_back(std::move(row));
  }
  doc["coords"] = std::move(coords);
  doc["base_facet"] = flat.base_facet;
  json facets = json::array();
  for (NodeId leaf : flat.leaves) facets.push_back(flat.node_facets[leaf]);
  doc["facets"] = std::move(facets);
  doc["node_facets"] = flat.node_facets;
  return doc.dump();
}

}  // namespace stackgrid
