// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Every bound is compared exactly.

#include "stackgrid/pipeline.hpp"

#include "oracles.hpp"
#include "tree_oracles.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

using namespace stackgrid;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects failures from worker threads; keeps the first few messages.
class Failures {
 public:
  void add(const std::string& what) {
    std::lock_guard lock(mutex_);
    if (messages_.size() < 5) messages_.push_back(what);
    ++count_;
  }
  std::size_t count() const { return count_; }
  std::string summary() const {
    std::string out;
    for (const auto& m : messages_) out += "\n      " + m;
    return out;
  }

 private:
  std::mutex mutex_;
  std::vector<std::string> messages_;
  std::size_t count_ = 0;
};

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
}

int failed_criteria = 0;

Clock::time_point criterion_start = Clock::now();

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s (%.1f s): %s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              seconds_since(criterion_start), detail.c_str());
  criterion_start = Clock::now();
  std::fflush(stdout);
  if (!ok) ++failed_criteria;
}

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

std::vector<std::vector<int>> facets_of(const Realization& r) {
  std::vector<std::vector<int>> out{r.base_facet};
  out.insert(out.end(), r.facets.begin(), r.facets.end());
  return out;
}

// ---------------------------------------------------------------------------

void criterion_fixture() {
  const auto start = Clock::now();
  const PipelineResult res = run_pipeline(parse_tree(R"({"dim":3,"tree":[null,null,null]})"));
  const double elapsed = seconds_since(start);
  const std::vector<std::vector<Int>> want{{0, 0, 0}, {1440, 0, 0}, {0, 1440, 0}, {480, 480, 21}};
  const bool ok = res.realization.coords == want && res.report.R_eff == 4 &&
                  res.report.alpha == Rat(1, 720) && res.report.alpha_z == Rat(1, 12) &&
                  res.report.certificate.all_ok() && elapsed < 1.0;
  report(1, "end-to-end fixture", ok,
         "vertices (0,0,0),(1440,0,0),(0,1440,0),(480,480,21), R_eff=4, alpha=1/720, "
         "alpha_z=1/12, certificate all-true in " + fmt("%.3f s", elapsed));
}

// Instances of the bound sweep: sizes spread evenly up to the per-dimension cap.
struct SweepInstance {
  int d;
  int n;
  std::uint64_t seed;
};

std::vector<SweepInstance> sweep_instances() {
  std::vector<SweepInstance> out;
  for (int d = 3; d <= 5; ++d) {
    const int n_max = d == 3 ? 200 : 80;
    for (int i = 0; i < 200; ++i) {
      const int n = d + 1 + (i * (n_max - d - 1)) / 199;
      out.push_back({d, n, static_cast<std::uint64_t>(1000 * d + i)});
    }
  }
  return out;
}

// Recomputes every stage from the library building blocks and compares each
// stage against its bound here, independently of the pipeline's own checks.
std::string stage_violation(const TreeRep& tree) {
  const int d = tree.dim;
  const WeightedTree wt = balance_weights(tree);
  const FlatComplex flat = build_flat(wt);
  const Rat& R_eff = flat.R_eff;

  const LiftedComplex lifted = lift_heights(flat, vertical_shifts(wt, flat.lambda));
  const StressMap direct = stress_map(lifted);
  if (incremental_stress_map(lifted) != direct) return "direct and incremental stresses differ";
  for (const auto& [ridge, w] : direct) {
    if (flat.is_base_ridge(ridge)) {
      if (!(w < 0 && w > -R_eff)) return "pre-rounding base stress " + to_string(w);
    } else if (w < 1) {
      return "pre-rounding interior stress " + to_string(w);
    }
  }

  const GridParams params = grid_params(d, flat.L, R_eff);
  const FlatComplex perturbed = perturb_flat(flat, params.alpha);
  const Rat lo = 1 - 1 / (10 * R_eff);
  const Rat hi = 1 + 1 / (10 * R_eff);
  for (NodeId node = kBaseFacet; node < static_cast<NodeId>(flat.node_facets.size()); ++node) {
    const Rat before = oracle::bracket(flat.facet_points(node));
    const Rat after = oracle::bracket(perturbed.facet_points(node));
    const Rat ratio = after / before;
    if (ratio < lo || ratio > hi) return "volume ratio " + to_string(ratio);
  }

  const LiftedComplex relifted = lift_heights(perturbed, adjusted_shifts(perturbed));
  for (const auto& [ridge, w] : stress_map(relifted)) {
    if (flat.is_base_ridge(ridge)) {
      if (!(w < 0 && w > -2 * R_eff)) return "perturbed base stress " + to_string(w);
    } else if (w < Rat(4, 5)) {
      return "perturbed interior stress " + to_string(w);
    }
  }
  const Rat z_max = *std::max_element(relifted.z.begin(), relifted.z.end());
  if (!(z_max < 2 * R_eff * R_eff)) return "z_max " + to_string(z_max);

  LiftedComplex rounded = relifted;
  for (auto& z : rounded.z) z = floor_to_multiple(z, params.alpha_z);
  for (const Stacking& s : perturbed.stackings) {
    if (rounded.z[s.apex] <= 0) return "rounded height " + to_string(rounded.z[s.apex]);
  }
  for (const auto& [ridge, w] : stress_map(rounded)) {
    const bool base = flat.is_base_ridge(ridge);
    if ((base && w >= 0) || (!base && w <= 0)) return "rounded stress " + to_string(w);
  }
  return "";
}

void criteria_bounds_and_stages() {
  const auto instances = sweep_instances();
  Failures bound_failures;
  Failures stage_failures;
  std::atomic<std::size_t> certified{0};
  const auto start = Clock::now();
  parallel_for(instances.size(), [&](std::size_t i) {
    const SweepInstance& inst = instances[i];
    const std::string tag = "d=" + std::to_string(inst.d) + " n=" + std::to_string(inst.n) +
                            " seed=" + std::to_string(inst.seed);
    const TreeRep tree = gen_tree(TreeShape::random, inst.d, inst.n - inst.d, inst.seed);
    try {
      const PipelineResult res = run_pipeline(tree);
      const Realization& r = res.realization;
      const int d = inst.d;
      const Rat& R_eff = res.report.R_eff;
      const Rat xy_bound = Rat(10 * d * d) * R_eff * R_eff;
      const Rat z_bound = 6 * R_eff * R_eff * R_eff;
      bool ok = r.coords.size() == static_cast<std::size_t>(inst.n);
      for (const auto& p : r.coords) {
        ok = ok && p.size() == static_cast<std::size_t>(d);
        for (std::size_t j = 0; j < p.size() && ok; ++j) {
          ok = p[j] >= 0 && Rat(p[j]) <= (j + 1 == p.size() ? z_bound : xy_bound);
        }
      }
      ok = ok && res.report.certificate.all_ok();
      if (ok) {
        ++certified;
      } else {
        bound_failures.add(tag);
      }
    } catch (const std::exception& e) {
      bound_failures.add(tag + ": " + e.what());
    }
    try {
      if (auto why = stage_violation(tree); !why.empty()) stage_failures.add(tag + ": " + why);
    } catch (const std::exception& e) {
      stage_failures.add(tag + ": " + e.what());
    }
  });
  const double elapsed = seconds_since(start);
  report(2, "grid bounds on 600 random trees", bound_failures.count() == 0 && elapsed < 600,
         std::to_string(certified.load()) + "/" + std::to_string(instances.size()) +
             " certified with max non-z <= 10 d^2 R_eff^2 and max z <= 6 R_eff^3 (d=3..5, "
             "n<=200/80); sweep incl. stage recomputation " + fmt("%.1f s", elapsed) +
             bound_failures.summary());
  report(3, "stage invariants on every sweep instance", stage_failures.count() == 0,
         std::to_string(instances.size() - stage_failures.count()) + "/" +
             std::to_string(instances.size()) +
             " pass: lift stresses >= 1 / in (-R_eff,0); volume ratios in [1-1/(10R_eff), "
             "1+1/(10R_eff)]; perturbed stresses >= 4/5 / > -2R_eff; z_max < 2R_eff^2; rounded "
             "stresses and heights of the right sign" +
             stage_failures.summary());
}

// Pushes a non-root stacked vertex just below the hyperplane of the facet it
// was stacked on, which makes that vertex a reflex point of the surface.
Realization dent(const PipelineResult& res, std::size_t which) {
  Realization r = res.realization;
  const auto apex = stacked_vertices(res.tree);
  const auto facets = node_facets(res.tree);
  std::vector<NodeId> inner;
  for (std::size_t id = 1; id < res.tree.nodes.size(); ++id) {
    if (!res.tree.nodes[id].is_leaf()) inner.push_back(static_cast<NodeId>(id));
  }
  const NodeId node = inner[which % inner.size()];
  Int lowest = r.coords[facets[node][0]].back();
  for (VertexId u : facets[node]) lowest = std::min(lowest, r.coords[u].back());
  r.coords[apex[node]].back() = lowest - 1;
  return r;
}

void criterion_dual_oracle() {
  const TreeShape shapes[] = {TreeShape::random, TreeShape::serpentine, TreeShape::random,
                              TreeShape::balanced_rounds};
  Failures failures;
  std::atomic<std::size_t> agree_valid{0};
  std::atomic<std::size_t> agree_negative{0};
  constexpr std::size_t kValid = 1000;
  constexpr std::size_t kNegative = 100;
  parallel_for(kValid + kNegative, [&](std::size_t i) {
    const int d = 3 + static_cast<int>(i % 3);
    const TreeShape shape = i < kValid ? shapes[i % 4] : TreeShape::random;
    const int size = shape == TreeShape::balanced_rounds ? 1 + static_cast<int>(i / 4 % 2)
                                                         : 2 + static_cast<int>(i * 7 % 40);
    const std::string tag = "instance " + std::to_string(i);
    try {
      const PipelineResult res = run_pipeline(gen_tree(shape, d, size, 5000 + i));
      if (!res.report.stress_paths_agree) failures.add(tag + ": stress paths differ");
      const Realization r = i < kValid ? res.realization : dent(res, i);
      const bool by_stress = verify_convexity_stress(r).ok;
      const bool global = verify_convexity_global(r).ok;
      const bool brute = oracle::all_facets_supporting(r.coords, facets_of(r));
      const bool expected = i < kValid;
      if (by_stress == global && global == brute && brute == expected) {
        ++(i < kValid ? agree_valid : agree_negative);
      } else {
        failures.add(tag + ": stress=" + std::to_string(by_stress) +
                     " global=" + std::to_string(global) + " brute=" + std::to_string(brute));
      }
    } catch (const std::exception& e) {
      failures.add(tag + ": " + e.what());
    }
  });
  report(4, "stress and global convexity oracles agree", failures.count() == 0,
         std::to_string(agree_valid.load()) + "/1000 valid instances accepted by both, " +
             std::to_string(agree_negative.load()) +
             "/100 dented negatives rejected by both (brute-force facet oracle concurs); direct "
             "and incremental stresses identical on every ridge" +
             failures.summary());
}

void criterion_balancing() {
  Failures failures;
  std::atomic<int> worst_depth_margin{100};
  parallel_for(500, [&](std::size_t i) {
    const int d = 3 + static_cast<int>(i % 3);
    const int k = 1 + static_cast<int>(i * 37 % 197);
    const TreeRep tree = gen_tree(TreeShape::random, d, k, 9000 + i);
    const WeightedTree wt = balance_weights(tree);
    const auto n = tree.vertex_count();
    const std::string tag = "tree " + std::to_string(i);
    if (auto why = oracle::balanced_violation(tree, wt.weight); !why.empty()) {
      failures.add(tag + ": " + why);
    }
    if (wt.root_weight() > oracle::root_weight_bound(d, n)) {
      failures.add(tag + ": R=" + to_string(wt.root_weight()));
    }
    const int depth = oracle::light_depth(tree);
    const int cap = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
    if (depth > cap) failures.add(tag + ": light depth " + std::to_string(depth));
    int seen = worst_depth_margin.load();
    while (cap - depth < seen && !worst_depth_margin.compare_exchange_weak(seen, cap - depth)) {
    }
  });
  report(5, "balanced face-weights on 500 random trees", failures.count() == 0,
         std::to_string(500 - failures.count()) +
             "/500 balanced node-by-node with leaves >= 1 and sums exact, R <= (2d)^ceil(log2 n), "
             "light depth <= floor(log2 n) (tightest margin " +
             std::to_string(worst_depth_margin.load()) + ")" + failures.summary());
}

void criterion_b3() {
  const PolytopeGraph g = gen_lowerbound_graph(LowerBoundKind::b3);
  const auto faces = b3_faces();
  int degree3 = 0;
  for (const auto& adj : g.adjacency) degree3 += adj.size() == 3 ? 1 : 0;
  bool ok = g.vertex_count == 20 && faces.size() == 36 && degree3 == 12;
  std::size_t converted = 0;
  for (const auto& face : faces) {
    try {
      if (tree_from_graph(g, 3, face).tree.interior_count() == 17) ++converted;
    } catch (const std::exception&) {
    }
  }
  ok = ok && converted == faces.size();
  std::size_t realized_facets = 0;
  bool certified = false;
  try {
    const PipelineResult res = run_pipeline(g, 3, faces.front());
    realized_facets = res.realization.facets.size() + 1;
    certified = res.report.certificate.all_ok() &&
                oracle::all_facets_supporting(res.realization.coords, facets_of(res.realization));
  } catch (const std::exception&) {
  }
  ok = ok && certified && realized_facets == 36;
  report(6, "B3 lower-bound graph", ok,
         std::to_string(g.vertex_count) + " vertices, " + std::to_string(faces.size()) +
             " faces, " + std::to_string(degree3) + " of degree 3; tree_from_graph succeeded from " +
             std::to_string(converted) + "/36 faces; realization " +
             (certified ? "certified" : "NOT certified") + " with " +
             std::to_string(realized_facets) + " facets");
}

void criterion_growth() {
  const int sizes[] = {25, 50, 100, 200};
  constexpr int kSeeds = 5;
  struct Row {
    Int max_xy = 0;
    Int max_z = 0;
    Rat R_eff = 0;
    bool within = true;
  };
  std::vector<Row> rows(4);
  std::mutex mutex;
  parallel_for(4 * kSeeds, [&](std::size_t i) {
    const int n = sizes[i / kSeeds];
    const PipelineResult res =
        run_pipeline(gen_tree(TreeShape::random, 3, n - 3, 7 + i % kSeeds));
    const Rat& R_eff = res.report.R_eff;
    const bool within = Rat(res.realization.meta.max_xy) <= 90 * R_eff * R_eff &&
                        Rat(res.realization.meta.max_z) <= 6 * R_eff * R_eff * R_eff;
    std::lock_guard lock(mutex);
    Row& row = rows[i / kSeeds];
    row.max_xy = std::max(row.max_xy, res.realization.meta.max_xy);
    row.max_z = std::max(row.max_z, res.realization.meta.max_z);
    row.R_eff = std::max(row.R_eff, R_eff);
    row.within = row.within && within;
  });
  bool ok = true;
  std::ostringstream detail;
  detail << "d=3, max over " << kSeeds << " seeds:";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    ok = ok && row.within;
    if (i > 0) ok = ok && row.max_xy >= rows[i - 1].max_xy && row.max_z >= rows[i - 1].max_z;
    const double logn = std::log(static_cast<double>(sizes[i]));
    detail << "\n      n=" << sizes[i] << "  max_xy=" << row.max_xy << " (n^"
           << fmt("%.2f", std::log(row.max_xy.get_d()) / logn) << ")  max_z=" << row.max_z
           << " (n^" << fmt("%.2f", std::log(row.max_z.get_d()) / logn) << ")  R_eff=" << row.R_eff;
  }
  report(7, "max-coordinate growth is monotone and below the bound curve", ok, detail.str());
}

}  // namespace

int main() {
  const auto start = Clock::now();
  criterion_fixture();
  criteria_bounds_and_stages();
  criterion_dual_oracle();
  criterion_balancing();
  criterion_b3();
  criterion_growth();
  std::printf("%d criteria failed; total %.1f s\n", failed_criteria, seconds_since(start));
  return failed_criteria == 0 ? 0 : 1;
}
