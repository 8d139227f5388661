#include "stackgrid/rounding.hpp"

#include <algorithm>
#include <numeric>

namespace stackgrid {

namespace {

Int int_pow(const Int& base, int exp) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
  return out;
}

Int as_integer(const Rat& r, const char* what) {
  if (r.get_den() != 1) throw StageError("round", std::string(what) + " is not integral");
  return r.get_num();
}

}  // namespace

GridParams grid_params(int d, const Int& L, const Rat& R_eff) {
  if (R_eff < 3) throw GeometryError("R_eff must be at least 3");
  GridParams p;
  p.d = d;
  p.L = L;
  p.R_eff = R_eff;
  const Rat spread = Rat(d * d) * int_pow(L, d - 2);
  p.alpha = 1 / (10 * spread * R_eff);
  p.alpha_z = 1 / (3 * R_eff);
  p.delta_plus = 1 + p.alpha * spread;
  p.delta_minus = 1 - p.alpha * spread;
  return p;
}

FlatComplex perturb_flat(const FlatComplex& flat, const Rat& alpha) {
  FlatComplex out = flat;
  for (auto& p : out.coords) {
    for (auto& c : p) c = floor_to_multiple(c, alpha);
  }
  return out;
}

RatioRange check_perturbation(const FlatComplex& original, const FlatComplex& perturbed,
                              const GridParams& params) {
  RatioRange out{params.delta_plus, params.delta_minus};
  auto check = [&](FacetRef f) {
    const Rat before = bracket(original.facet_points(f));
    const Rat after = bracket(perturbed.facet_points(f));
    const Rat ratio = after / before;
    if (ratio < params.delta_minus || ratio > params.delta_plus) {
      throw StageError("perturb", "facet " + std::to_string(f) + " volume ratio " +
                                      to_string(ratio) + " outside [" +
                                      to_string(params.delta_minus) + ", " +
                                      to_string(params.delta_plus) + "]");
    }
    out.min = std::min(out.min, ratio);
    out.max = std::max(out.max, ratio);
  };
  check(kBaseFacet);
  for (std::size_t node = 0; node < original.node_facets.size(); ++node) {
    check(static_cast<FacetRef>(node));
  }
  return out;
}

std::vector<Rat> adjusted_shifts(const FlatComplex& perturbed) {
  std::vector<Rat> zeta(perturbed.coords.size(), Rat(0));
  for (const auto& s : perturbed.stackings) {
    std::vector<Rat> vol;
    for (NodeId c : s.children) vol.push_back(abs(bracket(perturbed.node_points(c))));
    std::vector<std::size_t> order(vol.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vol[a] > vol[b]; });
    zeta[s.apex] = vol[order[0]] * vol[order[1]];
  }
  return zeta;
}

Realization round_and_scale(const FlatComplex& perturbed, const std::vector<Rat>& zeta_adjusted,
                            const GridParams& params, RoundingTrace* trace) {
  RoundingTrace local;
  RoundingTrace& t = trace ? *trace : local;

  LiftedComplex lifted = lift(perturbed, zeta_adjusted);
  for (const auto& [ridge, w] : lifted.stresses) {
    if (perturbed.is_base_ridge(ridge)) {
      if (!(w < 0 && w > -2 * params.R_eff)) {
        throw StageError("perturb", "base ridge " + ridge_to_string(ridge) + " stress " +
                                        to_string(w) + " outside (-2 R_eff, 0)");
      }
    } else if (w < Rat(4, 5)) {
      throw StageError("perturb", "interior ridge " + ridge_to_string(ridge) + " stress " +
                                      to_string(w) + " < 4/5");
    }
  }
  t.perturbed = summarize(lifted.stresses, perturbed);

  t.z_max = *std::max_element(lifted.z.begin(), lifted.z.end());
  if (!(t.z_max > 0 && t.z_max < 2 * params.R_eff * params.R_eff)) {
    throw StageError("round", "z_max " + to_string(t.z_max) + " outside (0, 2 R_eff^2)");
  }

  for (auto& z : lifted.z) z = floor_to_multiple(z, params.alpha_z);
  lifted.stresses = stress_map(lifted);
  bool first = true;
  for (const auto& s : perturbed.stackings) {
    const Rat& z = lifted.z[s.apex];
    if (sgn(z) <= 0) {
      throw StageError("round", "vertex " + std::to_string(s.apex) + " rounded to height " +
                                    to_string(z));
    }
    if (first || z < t.min_rounded_height) t.min_rounded_height = z;
    first = false;
  }
  for (const auto& [ridge, w] : lifted.stresses) {
    const bool base = perturbed.is_base_ridge(ridge);
    if ((base && sgn(w) >= 0) || (!base && sgn(w) <= 0)) {
      throw StageError("round", "ridge " + ridge_to_string(ridge) + " has stress " +
                                    to_string(w) + " of the wrong sign after height rounding");
    }
  }
  t.z_rounded = summarize(lifted.stresses, perturbed);

  Realization out;
  out.dim = perturbed.dim;
  out.base_facet = perturbed.base_facet;
  for (NodeId leaf : perturbed.leaves) out.facets.push_back(perturbed.node_facets[leaf]);
  out.meta.R_eff = params.R_eff;
  out.meta.L = params.L;
  out.meta.alpha = params.alpha;
  out.meta.alpha_z = params.alpha_z;
  out.meta.max_xy = 0;
  out.meta.max_z = 0;
  for (std::size_t v = 0; v < perturbed.coords.size(); ++v) {
    std::vector<Int> p;
    for (const auto& c : perturbed.coords[v]) {
      p.push_back(as_integer(c / params.alpha, "scaled coordinate"));
      out.meta.max_xy = std::max(out.meta.max_xy, p.back());
    }
    p.push_back(as_integer(lifted.z[v] / params.alpha_z, "scaled height"));
    out.meta.max_z = std::max(out.meta.max_z, p.back());
    out.coords.push_back(std::move(p));
  }
  return out;
}

}  // namespace stackgrid
