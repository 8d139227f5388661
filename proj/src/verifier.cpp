#include "stackgrid/verifier.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <thread>

namespace stackgrid {

namespace {

PointSeq rational_points(const Realization& r, const std::vector<VertexId>& verts) {
  PointSeq out;
  out.reserve(verts.size());
  for (VertexId v : verts) {
    Point p;
    for (const auto& c : r.coords.at(v)) p.emplace_back(c);
    out.push_back(std::move(p));
  }
  return out;
}

// Coefficients c with [F∘x] = c · (x, 1) for the d points of facet F.
std::vector<Int> hyperplane(const Realization& r, const std::vector<VertexId>& facet) {
  const std::size_t d = facet.size();
  std::vector<std::vector<Int>> rows;
  for (VertexId v : facet) {
    auto row = r.coords.at(v);
    row.emplace_back(1);
    rows.push_back(std::move(row));
  }
  std::vector<Int> coef(d + 1);
  for (std::size_t j = 0; j <= d; ++j) {
    std::vector<std::vector<Int>> minor;
    for (const auto& row : rows) {
      std::vector<Int> m;
      for (std::size_t k = 0; k <= d; ++k) {
        if (k != j) m.push_back(row[k]);
      }
      minor.push_back(std::move(m));
    }
    const Int det = determinant(std::move(minor));
    coef[j] = ((d + j) % 2 == 0) ? det : Int(-det);
  }
  return coef;
}

Int evaluate(const std::vector<Int>& coef, const std::vector<Int>& x) {
  Int out = coef.back();
  for (std::size_t j = 0; j < x.size(); ++j) out += coef[j] * x[j];
  return out;
}

std::vector<std::vector<VertexId>> all_facets(const Realization& r) {
  std::vector<std::vector<VertexId>> out{r.base_facet};
  out.insert(out.end(), r.facets.begin(), r.facets.end());
  return out;
}

CheckResult check_facet(const Realization& r, const std::vector<VertexId>& facet,
                        std::size_t index) {
  CheckResult out;
  const std::vector<Int> coef = hyperplane(r, facet);
  if (std::all_of(coef.begin(), coef.end() - 1, [](const Int& c) { return c == 0; })) {
    out.ok = false;
    out.witnesses.push_back({"degenerate_facet", {static_cast<int>(index)}, "0"});
    return out;
  }
  Int centroid_sum = 0;
  int side = 0;
  std::vector<std::pair<VertexId, Int>> values;
  for (VertexId v = 0; v < static_cast<VertexId>(r.coords.size()); ++v) {
    const Int value = evaluate(coef, r.coords[v]);
    centroid_sum += value;
    if (std::find(facet.begin(), facet.end(), v) != facet.end()) continue;
    values.emplace_back(v, value);
  }
  side = sgn(centroid_sum);
  for (const auto& [v, value] : values) {
    if (side == 0 || sgn(value) != side) {
      out.ok = false;
      out.witnesses.push_back(
          {"vertex_off_supporting_side", {static_cast<int>(index), v}, to_string(value)});
      return out;
    }
  }
  return out;
}

}  // namespace

CheckResult verify_convexity_stress(const Realization& r) {
  CheckResult out;
  for (VertexId v = 0; v < static_cast<VertexId>(r.coords.size()); ++v) {
    if (sgn(r.coords[v].back()) < 0) {
      out.ok = false;
      out.witnesses.push_back({"negative_height", {v}, to_string(r.coords[v].back())});
    }
  }
  std::vector<NodeId> ids(r.facets.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<NodeId>(i);
  std::map<Ridge, std::pair<FacetRef, FacetRef>> ridges;
  try {
    ridges = ridge_table(r.base_facet, r.facets, ids);
  } catch (const GeometryError& e) {
    out.ok = false;
    out.witnesses.push_back({"not_a_pseudomanifold", {}, e.what()});
    return out;
  }
  for (const auto& [ridge, facets] : ridges) {
    const auto [f, g] = facets;
    const auto& fv = f == kBaseFacet ? r.base_facet : r.facets[f];
    const auto& gv = g == kBaseFacet ? r.base_facet : r.facets[g];
    const BaseSide side = f == kBaseFacet   ? BaseSide::first
                          : g == kBaseFacet ? BaseSide::second
                                            : BaseSide::none;
    Rat w;
    try {
      w = stress_of_ridge(rational_points(r, ridge),
                          rational_points(r, facet_after_ridge(ridge, fv)),
                          rational_points(r, facet_after_ridge(ridge, gv)), side);
    } catch (const GeometryError& e) {
      out.ok = false;
      out.witnesses.push_back({"inconsistent_ridge", ridge, e.what()});
      continue;
    }
    const bool base = side != BaseSide::none;
    if ((base && sgn(w) >= 0) || (!base && sgn(w) <= 0)) {
      out.ok = false;
      out.witnesses.push_back({base ? "base_ridge_stress" : "interior_ridge_stress", ridge,
                               to_string(w)});
    }
  }
  return out;
}

CheckResult verify_convexity_global(const Realization& r, int threads) {
  const auto facets = all_facets(r);
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, facets.size());
  std::vector<CheckResult> partial(workers);
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < facets.size(); i += workers) {
      CheckResult c = check_facet(r, facets[i], i);
      if (!c.ok) {
        partial[w].ok = false;
        partial[w].witnesses.insert(partial[w].witnesses.end(), c.witnesses.begin(),
                                    c.witnesses.end());
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  CheckResult out;
  for (auto& p : partial) {
    out.ok = out.ok && p.ok;
    out.witnesses.insert(out.witnesses.end(), p.witnesses.begin(), p.witnesses.end());
  }
  return out;
}

CheckResult verify_bounds(const Realization& r, const Rat& R_eff, int d) {
  CheckResult out;
  const Rat xy_bound = Rat(10 * d * d) * R_eff * R_eff;
  const Rat z_bound = 6 * R_eff * R_eff * R_eff;
  for (VertexId v = 0; v < static_cast<VertexId>(r.coords.size()); ++v) {
    const auto& p = r.coords[v];
    for (std::size_t j = 0; j < p.size(); ++j) {
      const bool height = j + 1 == p.size();
      const Rat c(p[j]);
      if (sgn(c) < 0 || c > (height ? z_bound : xy_bound)) {
        out.ok = false;
        out.witnesses.push_back(
            {height ? "height_out_of_bounds" : "coordinate_out_of_bounds", {v, static_cast<int>(j)},
             to_string(p[j])});
      }
    }
  }
  return out;
}

CheckResult verify_combinatorics(const Realization& r, const TreeRep& tree, int threads) {
  CheckResult out;
  const std::size_t expected = tree.interior_count() * (tree.dim - 1) + 2;
  if (r.facets.size() + 1 != expected) {
    out.ok = false;
    out.witnesses.push_back(
        {"facet_count", {static_cast<int>(r.facets.size() + 1), static_cast<int>(expected)}, ""});
    return out;
  }
  auto sorted_sets = [](std::vector<std::vector<VertexId>> sets) {
    for (auto& s : sets) std::sort(s.begin(), s.end());
    std::sort(sets.begin(), sets.end());
    return sets;
  };
  const auto facets = node_facets(tree);
  std::vector<std::vector<VertexId>> leaves;
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    if (tree.nodes[id].is_leaf()) leaves.push_back(facets[id]);
  }
  const auto want = sorted_sets(leaves);
  const auto have = sorted_sets(r.facets);
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (want[i] != have[i]) {
      out.ok = false;
      out.witnesses.push_back({"facet_mismatch", have[i], ""});
      return out;
    }
  }
  auto base = r.base_facet;
  std::sort(base.begin(), base.end());
  if (base != sorted_sets({facets[tree.root()]}).front()) {
    out.ok = false;
    out.witnesses.push_back({"base_facet_mismatch", r.base_facet, ""});
    return out;
  }
  CheckResult global = verify_convexity_global(r, threads);
  out.ok = global.ok;
  out.witnesses = std::move(global.witnesses);
  return out;
}

Certificate certify(const Realization& r, const TreeRep& tree, int threads) {
  Certificate c;
  auto take = [&](CheckResult res) {
    c.witnesses.insert(c.witnesses.end(), res.witnesses.begin(), res.witnesses.end());
    return res.ok;
  };
  c.convex_by_stress = take(verify_convexity_stress(r));
  c.convex_global = take(verify_convexity_global(r, threads));
  c.bounds_ok = take(verify_bounds(r, r.meta.R_eff, r.dim));
  // The global check already ran; only the combinatorial part adds witnesses.
  CheckResult combo = verify_combinatorics(r, tree, threads);
  c.combinatorics_ok = combo.ok;
  if (!combo.ok && c.convex_global) take(std::move(combo));
  return c;
}

std::string certificate_to_json(const Certificate& c) {
  using nlohmann::json;
  json doc;
  doc["convex_by_stress"] = c.convex_by_stress;
  doc["convex_global"] = c.convex_global;
  doc["bounds_ok"] = c.bounds_ok;
  doc["combinatorics_ok"] = c.combinatorics_ok;
  json ws = json::array();
  for (const auto& w : c.witnesses) {
    ws.push_back({{"kind", w.kind}, {"ids", w.ids}, {"value", w.value}});
  }
  doc["witnesses"] = std::move(ws);
  return doc.dump();
}

}  // namespace stackgrid
