#include "stackgrid/lifting.hpp"

#include <algorithm>

namespace stackgrid {

PointSeq LiftedComplex::lifted_points(const std::vector<VertexId>& verts) const {
  PointSeq out;
  out.reserve(verts.size());
  for (VertexId v : verts) out.push_back(lift(flat.coords[v], z[v]));
  return out;
}

std::string ridge_to_string(const Ridge& r) {
  std::string out = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(r[i]);
  }
  return out + ")";
}

std::vector<Rat> vertical_shifts(const WeightedTree& wt, const Rat& lambda) {
  const auto apex = stacked_vertices(wt.tree);
  std::vector<Rat> zeta(wt.tree.vertex_count(), Rat(0));
  for (std::size_t id = 0; id < wt.tree.nodes.size(); ++id) {
    const auto& kids = wt.tree.nodes[id].children;
    if (kids.empty()) continue;
    const int h = wt.heavy_child[id];
    const Int& heavy = wt.weight[kids[h]];
    const Int& light = wt.weight[kids[h == 0 ? 1 : 0]];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (static_cast<int>(i) != h && wt.weight[kids[i]] != light) {
        throw StageError("lift", "unbalanced weights at node " + std::to_string(id));
      }
    }
    if (heavy < light) {
      throw StageError("lift", "heavy child lighter than light child at node " + std::to_string(id));
    }
    zeta[apex[id]] = (lambda * heavy) * (lambda * light);
  }
  return zeta;
}

LiftedComplex lift_heights(const FlatComplex& flat, const std::vector<Rat>& zeta) {
  LiftedComplex out;
  out.flat = flat;
  out.zeta = zeta;
  out.z.assign(flat.coords.size(), Rat(0));
  for (const auto& s : flat.stackings) {
    if (sgn(zeta.at(s.apex)) <= 0) {
      throw StageError("lift", "non-positive vertical shift at vertex " + std::to_string(s.apex));
    }
    const PointSeq parent = out.lifted_points(flat.node_facets[s.node]);
    out.z[s.apex] = height_on_hyperplane(parent, flat.coords[s.apex]) + zeta[s.apex];
  }
  return out;
}

StressMap stress_map(const LiftedComplex& lifted) {
  const FlatComplex& flat = lifted.flat;
  StressMap out;
  for (const auto& [ridge, facets] : flat.ridges) {
    const auto [f, g] = facets;
    const PointSeq X = lifted.lifted_points(ridge);
    const PointSeq S = lifted.lifted_points(facet_after_ridge(ridge, flat.facet(f)));
    const PointSeq T = lifted.lifted_points(facet_after_ridge(ridge, flat.facet(g)));
    const BaseSide side = f == kBaseFacet   ? BaseSide::first
                          : g == kBaseFacet ? BaseSide::second
                                            : BaseSide::none;
    out.emplace(ridge, stress_of_ridge(X, S, T, side));
  }
  return out;
}

StressMap incremental_stress_map(const LiftedComplex& lifted) {
  const FlatComplex& flat = lifted.flat;
  StressMap out;
  for (std::size_t i = 0; i < flat.base_facet.size(); ++i) {
    out.emplace(ridge_without(flat.base_facet, i), Rat(0));
  }
  auto flat_bracket = [&](const std::vector<VertexId>& verts) {
    PointSeq pts;
    for (VertexId v : verts) pts.push_back(flat.coords[v]);
    return bracket(pts);
  };

  for (const auto& s : flat.stackings) {
    const auto& D = flat.node_facets[s.node];
    const Rat& zeta = lifted.zeta[s.apex];
    const Rat d_vol = abs(flat_bracket(D));
    std::vector<Rat> child_vol;
    for (NodeId c : s.children) child_vol.push_back(abs(flat_bracket(flat.node_facets[c])));

    // Exterior ridges: the boundary of D, now bordering child i.
    for (std::size_t i = 0; i < D.size(); ++i) {
      auto it = out.find(ridge_without(D, i));
      if (it == out.end()) throw StageError("lift", "exterior ridge missing from stress table");
      it->second -= zeta / child_vol[i];
    }
    // Interior ridges: shared by children i and j, containing the apex.
    for (std::size_t i = 0; i < D.size(); ++i) {
      for (std::size_t j = i + 1; j < D.size(); ++j) {
        Ridge X;
        for (std::size_t k = 0; k < D.size(); ++k) {
          if (k != i && k != j) X.push_back(D[k]);
        }
        X.push_back(s.apex);
        std::sort(X.begin(), X.end());
        const bool fresh = out.emplace(X, zeta * d_vol / (child_vol[i] * child_vol[j])).second;
        if (!fresh) throw StageError("lift", "interior ridge created twice");
      }
    }
  }
  return out;
}

LiftedComplex lift(const FlatComplex& flat, const std::vector<Rat>& zeta) {
  LiftedComplex out = lift_heights(flat, zeta);
  out.stresses = stress_map(out);
  return out;
}

StressSummary summarize(const StressMap& stresses, const FlatComplex& flat) {
  StressSummary out;
  bool have_interior = false, have_boundary = false;
  for (const auto& [ridge, w] : stresses) {
    if (flat.is_base_ridge(ridge)) {
      if (!have_boundary || w < out.min_boundary) out.min_boundary = w;
      if (!have_boundary || w > out.max_boundary) out.max_boundary = w;
      have_boundary = true;
    } else {
      if (!have_interior || w < out.min_interior) out.min_interior = w;
      if (!have_interior || w > out.max_interior) out.max_interior = w;
      have_interior = true;
    }
  }
  out.ridge_count = stresses.size();
  return out;
}

StressSummary check_lift_bounds(const LiftedComplex& lifted, const Rat& R_eff) {
  for (const auto& [ridge, w] : lifted.stresses) {
    if (lifted.flat.is_base_ridge(ridge)) {
      if (!(w < 0 && w > -R_eff)) {
        throw StageError("lift", "base ridge " + ridge_to_string(ridge) + " has stress " +
                                     to_string(w) + " outside (-" + to_string(R_eff) + ", 0)");
      }
    } else if (w < 1) {
      throw StageError("lift", "interior ridge " + ridge_to_string(ridge) + " has stress " +
                                   to_string(w) + " < 1");
    }
  }
  return summarize(lifted.stresses, lifted.flat);
}

}  // namespace stackgrid
