#include "stackgrid/flat_embedding.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>

using namespace stackgrid;

namespace {

const char* kTetra = R"({"dim":3,"tree":[null,null,null]})";
const char* kNested = R"({"dim":3,"tree":[null,[null,null,null],null]})";

Point pt(std::initializer_list<Rat> c) { return Point(c); }

Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace

TEST_CASE("base simplex examples") {
  const BaseSimplex b3 = base_simplex(3, 3);
  CHECK(b3.L == 2);
  CHECK(b3.lambda == Rat(4, 3));
  CHECK(b3.vertices == PointSeq{pt({0, 0}), pt({2, 0}), pt({0, 2})});
  CHECK(oracle::bracket(b3.vertices) == 4);

  const BaseSimplex b4 = base_simplex(3, 4);
  CHECK(b4.L == 2);
  CHECK(b4.lambda == 1);

  const BaseSimplex d4 = base_simplex(4, 8);
  CHECK(d4.L == 2);
  CHECK(d4.lambda == 1);
  CHECK(oracle::bracket(d4.vertices) == 8);
  CHECK(d4.vertices[0] == pt({0, 0, 0}));

  const BaseSimplex d5 = base_simplex(5, 17);  // 2^4 < 17 <= 3^4
  CHECK(d5.L == 3);
  CHECK(d5.lambda == Rat(81, 17));
  CHECK_THROWS_AS(base_simplex(3, 2), GeometryError);
}

TEST_CASE("stacked vertex placement") {
  const PointSeq tri{pt({0, 0}), pt({2, 0}), pt({0, 2})};
  const std::vector<Rat> equal{Rat(4, 3), Rat(4, 3), Rat(4, 3)};
  CHECK(place_stacked_vertex(tri, equal, 4) == pt({Rat(2, 3), Rat(2, 3)}));
  const std::vector<Rat> skew{2, 1, 1};
  CHECK(place_stacked_vertex(tri, skew, 4) == pt({Rat(1, 2), Rat(1, 2)}));
  const std::vector<Rat> zero{0, 2, 2};
  CHECK_THROWS_AS(place_stacked_vertex(tri, zero, 4), GeometryError);
}

TEST_CASE("tetrahedron flat embedding") {
  const FlatComplex flat = build_flat(balance_weights(parse_tree(kTetra)));
  CHECK(flat.coords == PointSeq{pt({0, 0}), pt({2, 0}), pt({0, 2}), pt({Rat(2, 3), Rat(2, 3)})});
  CHECK(flat.leaves.size() == 3);
  for (NodeId leaf : flat.leaves) CHECK(abs_rat(oracle::bracket(flat.node_points(leaf))) == Rat(4, 3));
  CHECK(flat.R_eff == 4);
  CHECK(flat.lambda == Rat(4, 3));
  CHECK(flat.ridges.size() == 6);
}

TEST_CASE("nested stacking lies strictly inside its parent") {
  const WeightedTree wt = balance_weights(parse_tree(kNested));
  const FlatComplex flat = build_flat(wt);
  CHECK(flat.L == 3);
  CHECK(flat.lambda == Rat(3, 2));
  for (const Stacking& s : flat.stackings) {
    const int parent = sgn(oracle::bracket(flat.node_points(s.node)));
    CHECK(parent != 0);
    for (NodeId c : s.children) CHECK(sgn(oracle::bracket(flat.node_points(c))) == parent);
  }
}

TEST_CASE("facet areas follow the scaled weights and tile the base") {
  for (int d = 3; d <= 5; ++d) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const WeightedTree wt = balance_weights(gen_tree(TreeShape::random, d, 20, seed));
      const FlatComplex flat = build_flat(wt);
      Int L_pow = 1;
      for (int i = 1; i < d; ++i) L_pow *= flat.L;
      CHECK(flat.R_eff == Rat(L_pow));
      CHECK(oracle::bracket(flat.facet_points(kBaseFacet)) == Rat(L_pow));
      Rat total = 0;
      for (std::size_t v = 0; v < wt.tree.nodes.size(); ++v) {
        CHECK(abs_rat(oracle::bracket(flat.node_points(static_cast<NodeId>(v)))) ==
              flat.lambda * Rat(wt.weight[v]));
      }
      for (NodeId leaf : flat.leaves) total += abs_rat(oracle::bracket(flat.node_points(leaf)));
      CHECK(total == Rat(L_pow));
    }
  }
}

TEST_CASE("every ridge has exactly two facets") {
  const WeightedTree wt = balance_weights(gen_tree(TreeShape::random, 4, 30, 5));
  const FlatComplex flat = build_flat(wt);
  std::map<Ridge, int> count;
  auto add = [&](const std::vector<VertexId>& facet) {
    for (std::size_t i = 0; i < facet.size(); ++i) {
      Ridge r;
      for (std::size_t j = 0; j < facet.size(); ++j) {
        if (j != i) r.push_back(facet[j]);
      }
      std::sort(r.begin(), r.end());
      ++count[r];
    }
  };
  add(flat.base_facet);
  for (NodeId leaf : flat.leaves) add(flat.node_facets[leaf]);
  CHECK(count.size() == flat.ridges.size());
  for (const auto& [r, c] : count) {
    CHECK(c == 2);
    CHECK(flat.ridges.count(r) == 1);
  }
  std::size_t base_ridges = 0;
  for (const auto& [r, facets] : flat.ridges) base_ridges += flat.is_base_ridge(r) ? 1 : 0;
  CHECK(base_ridges == 4);
}

TEST_CASE("ridge helpers") {
  CHECK(ridge_without({5, 2, 9}, 1) == Ridge{5, 9});
  CHECK(facet_after_ridge({2, 9}, {9, 4, 2}) == std::vector<VertexId>{2, 9, 4});
  CHECK_THROWS(build_flat(WeightedTree{parse_tree(kTetra), {Int(4), Int(2), Int(1), Int(1)}, {0}}));
}
