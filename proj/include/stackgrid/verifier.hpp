#pragma once

// Certification of a realization from its integer coordinates and facet list
// alone. Nothing computed by the pipeline is trusted.

#include "stackgrid/rounding.hpp"

#include <string>
#include <vector>

namespace stackgrid {

struct Witness {
  std::string kind;
  std::vector<int> ids;
  std::string value;  // exact
};

struct CheckResult {
  bool ok = true;
  std::vector<Witness> witnesses;
};

struct Certificate {
  bool convex_by_stress = false;
  bool convex_global = false;
  bool bounds_ok = false;
  bool combinatorics_ok = false;
  std::vector<Witness> witnesses;

  bool all_ok() const { return convex_by_stress && convex_global && bounds_ok && combinatorics_ok; }
};

/// All heights >= 0, interior ridge stresses > 0, base ridge stresses < 0.
CheckResult verify_convexity_stress(const Realization& r);

/// Every facet, f_B included, is supporting: all other vertices lie strictly
/// on the side of its hyperplane that holds the vertex centroid.
CheckResult verify_convexity_global(const Realization& r, int threads = 1);

/// Coordinates >= 0, non-height coordinates <= 10 d^2 R_eff^2, heights <= 6 R_eff^3.
CheckResult verify_bounds(const Realization& r, const Rat& R_eff, int d);

/// Facet count and facet vertex sets match the tree; facets are supporting.
CheckResult verify_combinatorics(const Realization& r, const TreeRep& tree, int threads = 1);

Certificate certify(const Realization& r, const TreeRep& tree, int threads = 1);

std::string certificate_to_json(const Certificate& c);

}  // namespace stackgrid
