#pragma once

// Exact rational kernel: brackets (scaled signed simplex volumes), hyperplane
// heights, creasings and ridge stresses. Every function is pure.

#include <gmpxx.h>

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stackgrid {

using Int = mpz_class;
using Rat = mpq_class;

using Point = std::vector<Rat>;
using PointSeq = std::vector<Point>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical fraction num/den. Throws GeometryError on a zero denominator.
Rat make_rat(const Int& num, const Int& den = 1);

/// "num/den", or just "num" for integers.
std::string to_string(const Rat& r);
std::string to_string(const Int& i);
Rat parse_rat(std::string_view text);

Rat floor_to_multiple(const Rat& value, const Rat& step);
Int floor_div(const Rat& value, const Rat& step);

/// Determinant by Gaussian elimination over Q. `m` must be square.
Rat determinant(std::vector<std::vector<Rat>> m);
/// Fraction-free (Bareiss) determinant over Z.
Int determinant(std::vector<std::vector<Int>> m);

/// det of the k x k matrix whose columns are the k points of dimension k-1
/// with a row of ones appended: (k-1)! times the signed simplex volume.
Rat bracket(std::span<const Point> points);
Int bracket(std::span<const std::vector<Int>> points);

/// Drops the last coordinate.
Point project(const Point& p);
PointSeq project(std::span<const Point> points);
Point lift(const Point& p, const Rat& z);

/// bracket of the projections, written ⟦S⟧ in the formulas.
Rat projected_bracket(std::span<const Point> points);

/// z-coordinate above `p` of the hyperplane spanned by the d points of S in
/// Q^d. Throws GeometryError when the hyperplane is vertical.
Rat height_on_hyperplane(std::span<const Point> S, const Point& p);

/// Creasing of h(S) and h(T) along their common prefix X, where S = X∘s and
/// T = X∘t. Evaluated as [T∘s] / (⟦T⟧⟦S⟧).
Rat creasing(std::span<const Point> S, std::span<const Point> T);

/// Same quantity through the hyperplane heights: (z_T(r) - z_S(r)) / ⟦S⟧
/// with r the projection of the last point of S. Kept as a cross-check.
Rat creasing_by_heights(std::span<const Point> S, std::span<const Point> T);

enum class BaseSide { none, first, second };

/// Stress on ridge X between facets S_facet = X∘s and T_facet = X∘t.
/// Left/right is read off the sign of ⟦X∘s⟧; `base` names the argument that
/// is the base facet, for which the convention is interchanged.
Rat stress_of_ridge(std::span<const Point> X, std::span<const Point> S_facet,
                    std::span<const Point> T_facet, BaseSide base);

}  // namespace stackgrid
