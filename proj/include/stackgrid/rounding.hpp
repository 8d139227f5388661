#pragma once

// Grid rounding: flat coordinates down to multiples of alpha, vertical shifts
// recomputed from the perturbed volumes, heights down to multiples of
// alpha_z, then everything scaled to integers.

#include "stackgrid/lifting.hpp"

#include <vector>

namespace stackgrid {

struct GridParams {
  Rat alpha;
  Rat alpha_z;
  Int L;
  Rat R_eff;
  int d = 3;
  Rat delta_plus;
  Rat delta_minus;
};

/// alpha = 1/(10 d^2 L^(d-2) R_eff), alpha_z = 1/(3 R_eff),
/// delta_± = 1 ± alpha d^2 L^(d-2).
GridParams grid_params(int d, const Int& L, const Rat& R_eff);

struct RealizationMeta {
  Rat R_eff;
  Int L;
  Rat alpha;
  Rat alpha_z;
  Int max_xy;
  Int max_z;
};

struct Realization {
  int dim = 3;
  std::vector<std::vector<Int>> coords;    // by vertex id, in Z^d
  std::vector<std::vector<VertexId>> facets;  // every facet except f_B
  std::vector<VertexId> base_facet;
  RealizationMeta meta;
};

FlatComplex perturb_flat(const FlatComplex& flat, const Rat& alpha);

struct RatioRange {
  Rat min;
  Rat max;
};

/// Ratio of perturbed to original bracket over every node facet and f_B;
/// throws StageError unless all lie in [delta_minus, delta_plus].
RatioRange check_perturbation(const FlatComplex& original, const FlatComplex& perturbed,
                              const GridParams& params);

/// zeta'_i = product of the two largest |bracket|s among the d facets created
/// by stacking i (ties to the lower child index). Indexed by vertex id.
std::vector<Rat> adjusted_shifts(const FlatComplex& perturbed);

struct RoundingTrace {
  StressSummary perturbed;  // lifted with zeta'
  Rat z_max;
  StressSummary z_rounded;
  Rat min_rounded_height;   // smallest non-base height after z rounding
};

/// Relifts with zeta', rounds heights, scales to integers. Every
/// stage invariant is checked and reported as StageError when violated.
Realization round_and_scale(const FlatComplex& perturbed, const std::vector<Rat>& zeta_adjusted,
                            const GridParams& params, RoundingTrace* trace = nullptr);

}  // namespace stackgrid
