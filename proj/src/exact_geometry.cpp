#include "stackgrid/exact_geometry.hpp"

#include <utility>

namespace stackgrid {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw GeometryError("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }
std::string to_string(const Int& i) { return i.get_str(); }

Rat parse_rat(std::string_view text) {
  Rat r;
  if (r.set_str(std::string(text), 10) != 0) {
    throw GeometryError("not a rational: " + std::string(text));
  }
  if (r.get_den() == 0) throw GeometryError("zero denominator");
  r.canonicalize();
  return r;
}

Int floor_div(const Rat& value, const Rat& step) {
  if (sgn(step) <= 0) throw GeometryError("grid step must be positive");
  Rat q = value / step;
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rat floor_to_multiple(const Rat& value, const Rat& step) {
  return Rat(floor_div(value, step)) * step;
}

Rat determinant(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw GeometryError("determinant of a non-square matrix");
  }
  // Clear denominators row by row and run the fraction-free integer
  // elimination; far cheaper than canonicalizing rationals at every step.
  Int scale = 1;
  std::vector<std::vector<Int>> ints(n, std::vector<Int>(n));
  for (std::size_t r = 0; r < n; ++r) {
    Int lcm = 1;
    for (const auto& c : m[r]) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    for (std::size_t c = 0; c < n; ++c) {
      Int factor;
      mpz_divexact(factor.get_mpz_t(), lcm.get_mpz_t(), m[r][c].get_den_mpz_t());
      ints[r][c] = m[r][c].get_num() * factor;
    }
    scale *= lcm;
  }
  return make_rat(determinant(std::move(ints)), scale);
}

Int determinant(std::vector<std::vector<Int>> m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw GeometryError("determinant of a non-square matrix");
  }
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

template <typename Scalar>
std::vector<std::vector<Scalar>> bracket_matrix(std::span<const std::vector<Scalar>> points) {
  const std::size_t k = points.size();
  std::vector<std::vector<Scalar>> m;
  m.reserve(k);
  for (const auto& p : points) {
    if (p.size() + 1 != k) {
      throw GeometryError("bracket needs k points of dimension k-1");
    }
    auto row = p;
    row.emplace_back(1);
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace

Rat bracket(std::span<const Point> points) { return determinant(bracket_matrix(points)); }

Int bracket(std::span<const std::vector<Int>> points) {
  return determinant(bracket_matrix(points));
}

Point project(const Point& p) {
  if (p.size() < 2) throw GeometryError("projection needs dimension >= 2");
  return Point(p.begin(), p.end() - 1);
}

PointSeq project(std::span<const Point> points) {
  PointSeq out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(project(p));
  return out;
}

Point lift(const Point& p, const Rat& z) {
  Point out = p;
  out.push_back(z);
  return out;
}

Rat projected_bracket(std::span<const Point> points) { return bracket(project(points)); }

Rat height_on_hyperplane(std::span<const Point> S, const Point& p) {
  if (S.empty() || S.size() != p.size() + 1) {
    throw GeometryError("height_on_hyperplane needs d points in Q^d and a point in Q^(d-1)");
  }
  Rat base = projected_bracket(S);
  if (base == 0) throw GeometryError("vertical hyperplane");
  PointSeq ext(S.begin(), S.end());
  ext.push_back(lift(p, 0));
  return bracket(ext) / base;
}

namespace {

void check_ridge_pair(std::span<const Point> S, std::span<const Point> T) {
  if (S.size() != T.size() || S.empty() || S.front().size() != S.size()) {
    throw GeometryError("creasing needs two sequences of d points in Q^d");
  }
  for (std::size_t i = 0; i + 1 < S.size(); ++i) {
    if (S[i] != T[i]) throw GeometryError("creasing: sequences do not share their ridge prefix");
  }
}

}  // namespace

namespace {

// [T∘s_d] / (⟦T⟧⟦S⟧) with both projected brackets already known.
Rat creasing_with(std::span<const Point> S, std::span<const Point> T, const Rat& s_vol,
                  const Rat& t_vol) {
  PointSeq ts(T.begin(), T.end());
  ts.push_back(S.back());
  return bracket(ts) / (t_vol * s_vol);
}

}  // namespace

Rat creasing(std::span<const Point> S, std::span<const Point> T) {
  check_ridge_pair(S, T);
  Rat s_vol = projected_bracket(S);
  Rat t_vol = projected_bracket(T);
  if (s_vol == 0 || t_vol == 0) throw GeometryError("creasing: vertical hyperplane");
  return creasing_with(S, T, s_vol, t_vol);
}

Rat creasing_by_heights(std::span<const Point> S, std::span<const Point> T) {
  check_ridge_pair(S, T);
  Rat s_vol = projected_bracket(S);
  if (s_vol == 0) throw GeometryError("creasing: vertical hyperplane");
  Point r = project(S.back());
  return (height_on_hyperplane(T, r) - height_on_hyperplane(S, r)) / s_vol;
}

Rat stress_of_ridge(std::span<const Point> X, std::span<const Point> S_facet,
                    std::span<const Point> T_facet, BaseSide base) {
  if (S_facet.size() != X.size() + 1 || T_facet.size() != X.size() + 1) {
    throw GeometryError("stress_of_ridge: facets must extend the ridge by one point");
  }
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (S_facet[i] != X[i] || T_facet[i] != X[i]) {
      throw GeometryError("stress_of_ridge: facet does not start with the ridge");
    }
  }
  const Rat s_vol = projected_bracket(S_facet);
  const Rat t_vol = projected_bracket(T_facet);
  if (sgn(s_vol) == 0 || sgn(t_vol) == 0) throw GeometryError("stress_of_ridge: degenerate facet");
  bool s_left = sgn(s_vol) > 0;
  bool t_left = sgn(t_vol) > 0;
  if (base == BaseSide::first) s_left = !s_left;
  if (base == BaseSide::second) t_left = !t_left;
  if (s_left == t_left) {
    throw GeometryError("stress_of_ridge: no consistent left/right assignment");
  }
  return s_left ? creasing_with(S_facet, T_facet, s_vol, t_vol)
                : creasing_with(T_facet, S_facet, t_vol, s_vol);
}

}  // namespace stackgrid
