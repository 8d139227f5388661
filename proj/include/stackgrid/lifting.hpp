#pragma once

// Vertical shifts, lifted heights, and ridge stresses of the lifted flat
// embedding. Stresses come from final coordinates (direct) and from replaying
// the stackings (incremental); the two must agree exactly.

#include "stackgrid/flat_embedding.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace stackgrid {

using StressMap = std::map<Ridge, Rat>;

class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct LiftedComplex {
  FlatComplex flat;
  std::vector<Rat> z;      // by vertex id
  std::vector<Rat> zeta;   // by vertex id, 0 on base vertices
  StressMap stresses;

  PointSeq lifted_points(const std::vector<VertexId>& verts) const;
};

/// zeta_i = A_i * B_i from the lambda-scaled heavy and light child weights.
std::vector<Rat> vertical_shifts(const WeightedTree& wt, const Rat& lambda);

/// Replays the stackings: z(apex) = height of the lifted parent facet above
/// the apex projection plus zeta. Stresses are left empty.
LiftedComplex lift_heights(const FlatComplex& flat, const std::vector<Rat>& zeta);

/// Every ridge stress evaluated from the final lifted coordinates.
StressMap stress_map(const LiftedComplex& lifted);

/// Same table accumulated stacking by stacking: fresh interior ridges get
/// zeta |⟦D⟧ / (⟦S⟧⟦T⟧)|, ridges of the subdivided facet lose zeta / |⟦S⟧|.
StressMap incremental_stress_map(const LiftedComplex& lifted);

/// lift_heights followed by stress_map.
LiftedComplex lift(const FlatComplex& flat, const std::vector<Rat>& zeta);

struct StressSummary {
  Rat min_interior;
  Rat max_interior;
  Rat min_boundary;  // most negative base-ridge stress
  Rat max_boundary;
  std::size_t ridge_count = 0;
};

StressSummary summarize(const StressMap& stresses, const FlatComplex& flat);

/// Interior stresses >= 1, base-ridge stresses in (-R_eff, 0). Throws
/// StageError naming the offending ridge.
StressSummary check_lift_bounds(const LiftedComplex& lifted, const Rat& R_eff);

std::string ridge_to_string(const Ridge& r);

}  // namespace stackgrid
