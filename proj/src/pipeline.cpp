#include "stackgrid/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <sstream>

namespace stackgrid {

using nlohmann::json;

namespace {

class StageTimer {
 public:
  StageTimer(PipelineReport& report, std::string stage)
      : report_(report), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    report_.timing_ms[stage_] = std::chrono::duration<double, std::milli>(elapsed).count();
  }

 private:
  PipelineReport& report_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
};

template <typename Fn>
auto staged(const std::string& stage, Fn&& fn) {
  try {
    return fn();
  } catch (const GeometryError& e) {
    throw StageError(stage, e.what());
  }
}

void record(PipelineReport& report, std::string stage, std::string name, const Rat& value,
            std::string relation, std::string bound) {
  report.invariants.push_back(
      {std::move(stage), std::move(name), to_string(value), std::move(relation), std::move(bound)});
}

}  // namespace

PipelineResult run_pipeline(const TreeRep& tree, const PipelineOptions& options) {
  tree.validate();
  PipelineResult result;
  result.tree = tree;
  PipelineReport& rep = result.report;
  rep.d = tree.dim;
  rep.n = tree.vertex_count();
  rep.k = tree.interior_count();

  WeightedTree wt;
  {
    StageTimer timer(rep, "balance");
    const HeavyPaths hp = heavy_paths(tree);
    rep.light_depth = max_light_depth(tree, hp.heavy_child);
    rep.hierarchy_height = hp.hierarchy.height();
    wt = balance_weights(tree);
    if (auto why = check_balanced(wt); !why.empty()) throw StageError("balance", why);
    rep.R = wt.root_weight();
  }

  FlatComplex flat;
  {
    StageTimer timer(rep, "flat");
    flat = staged("flat", [&] { return build_flat(wt); });
    rep.L = flat.L;
    rep.lambda = flat.lambda;
    rep.R_eff = flat.R_eff;
    rep.bound_ratio =
        rep.R_eff.get_d() / std::pow(static_cast<double>(rep.n), std::log2(2.0 * rep.d));
  }

  {
    StageTimer timer(rep, "lift");
    const LiftedComplex lifted = staged("lift", [&] {
      return lift(flat, vertical_shifts(wt, flat.lambda));
    });
    const StressMap incremental = staged("lift", [&] { return incremental_stress_map(lifted); });
    rep.stress_paths_agree = incremental == lifted.stresses;
    if (!rep.stress_paths_agree) {
      throw StageError("lift", "direct and incremental stresses disagree");
    }
    rep.lift = check_lift_bounds(lifted, rep.R_eff);
    record(rep, "lift", "min_interior_stress", rep.lift.min_interior, ">=", "1");
    record(rep, "lift", "min_boundary_stress", rep.lift.min_boundary, ">", to_string(-rep.R_eff));
    record(rep, "lift", "max_boundary_stress", rep.lift.max_boundary, "<", "0");
    if (options.dump_ridges) rep.ridge_dump["lift"] = lifted.stresses;
  }

  GridParams params;
  FlatComplex perturbed;
  std::vector<Rat> zeta_adjusted;
  {
    StageTimer timer(rep, "perturb");
    params = staged("perturb", [&] { return grid_params(tree.dim, flat.L, flat.R_eff); });
    rep.alpha = params.alpha;
    rep.alpha_z = params.alpha_z;
    perturbed = perturb_flat(flat, params.alpha);
    rep.perturbation = staged("perturb", [&] { return check_perturbation(flat, perturbed, params); });
    record(rep, "perturb", "min_volume_ratio", rep.perturbation.min, ">=",
           to_string(params.delta_minus));
    record(rep, "perturb", "max_volume_ratio", rep.perturbation.max, "<=",
           to_string(params.delta_plus));
    zeta_adjusted = adjusted_shifts(perturbed);
  }

  {
    StageTimer timer(rep, "round");
    result.realization = staged("round", [&] {
      return round_and_scale(perturbed, zeta_adjusted, params, &rep.rounding);
    });
    const auto& t = rep.rounding;
    record(rep, "perturb", "min_interior_stress", t.perturbed.min_interior, ">=", "4/5");
    record(rep, "perturb", "min_boundary_stress", t.perturbed.min_boundary, ">",
           to_string(-2 * rep.R_eff));
    record(rep, "round", "z_max", t.z_max, "<", to_string(2 * rep.R_eff * rep.R_eff));
    record(rep, "round", "min_interior_stress", t.z_rounded.min_interior, ">", "0");
    record(rep, "round", "max_boundary_stress", t.z_rounded.max_boundary, "<", "0");
    record(rep, "round", "min_height", t.min_rounded_height, ">", "0");
    rep.max_xy = result.realization.meta.max_xy;
    rep.max_z = result.realization.meta.max_z;
    record(rep, "final", "max_xy", Rat(rep.max_xy), "<=",
           to_string(Rat(10 * rep.d * rep.d) * rep.R_eff * rep.R_eff));
    record(rep, "final", "max_z", Rat(rep.max_z), "<=",
           to_string(6 * rep.R_eff * rep.R_eff * rep.R_eff));
  }

  {
    StageTimer timer(rep, "verify");
    rep.certificate = certify(result.realization, tree, options.threads);
  }
  return result;
}

PipelineResult run_pipeline(const PolytopeGraph& graph, int dim,
                            std::optional<std::vector<VertexId>> base,
                            const PipelineOptions& options) {
  GraphTree gt = tree_from_graph(graph, dim, base ? *base : default_base(graph, dim));
  PipelineResult result = run_pipeline(gt.tree, options);
  result.labels = std::move(gt.label);
  return result;
}

PipelineResult run_pipeline_text(std::string_view text, int graph_dim,
                                 const PipelineOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed input JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("tree")) return run_pipeline(parse_tree(text), options);
  if (doc.is_object() && doc.contains("edges")) {
    const int dim = doc.contains("dim") && doc["dim"].is_number_integer() ? doc["dim"].get<int>()
                                                                          : graph_dim;
    return run_pipeline(parse_graph(text), dim, std::nullopt, options);
  }
  throw InputError("input is neither a tree nor a graph document");
}

namespace {

json summary_json(const StressSummary& s) {
  return {{"min_interior", to_string(s.min_interior)},
          {"max_interior", to_string(s.max_interior)},
          {"min_boundary", to_string(s.min_boundary)},
          {"max_boundary", to_string(s.max_boundary)},
          {"ridges", s.ridge_count}};
}

json stress_dump_json(const StressMap& m) {
  json out = json::array();
  for (const auto& [ridge, w] : m) out.push_back({{"ridge", ridge}, {"stress", to_string(w)}});
  return out;
}

}  // namespace

std::string emit_report(const PipelineReport& r) {
  json doc;
  doc["input"] = {{"d", r.d}, {"n", r.n}, {"k", r.k}};
  doc["R"] = to_string(r.R);
  doc["R_eff"] = to_string(r.R_eff);
  doc["L"] = to_string(r.L);
  doc["lambda"] = to_string(r.lambda);
  doc["alpha"] = to_string(r.alpha);
  doc["alpha_z"] = to_string(r.alpha_z);
  doc["balance"] = {{"light_depth", r.light_depth}, {"hierarchy_height", r.hierarchy_height}};
  doc["lift"] = summary_json(r.lift);
  doc["lift"]["direct_equals_incremental"] = r.stress_paths_agree;
  doc["perturbation"] = {{"min_ratio", to_string(r.perturbation.min)},
                         {"max_ratio", to_string(r.perturbation.max)}};
  doc["perturbed_stresses"] = summary_json(r.rounding.perturbed);
  doc["perturbed_stresses"]["interior_at_least_4_5"] = r.rounding.perturbed.min_interior >= Rat(4, 5);
  doc["z_max"] = to_string(r.rounding.z_max);
  doc["rounded_stresses"] = summary_json(r.rounding.z_rounded);
  doc["rounded_stresses"]["min_height"] = to_string(r.rounding.min_rounded_height);
  doc["final"] = {{"max_xy", to_string(r.max_xy)}, {"max_z", to_string(r.max_z)}};
  doc["bound_ratio_monitor"] = r.bound_ratio;
  json inv = json::array();
  for (const auto& i : r.invariants) {
    inv.push_back({{"stage", i.stage},
                   {"name", i.name},
                   {"value", i.value},
                   {"relation", i.relation},
                   {"bound", i.bound}});
  }
  doc["invariants"] = std::move(inv);
  doc["certificate"] = json::parse(certificate_to_json(r.certificate));
  doc["timing_ms"] = r.timing_ms;
  if (!r.ridge_dump.empty()) {
    json dump;
    for (const auto& [stage, m] : r.ridge_dump) dump[stage] = stress_dump_json(m);
    doc["ridge_stresses"] = std::move(dump);
  }
  return doc.dump();
}

std::string realization_to_json(const Realization& r, const TreeRep& tree,
                                const std::vector<VertexId>& labels) {
  json doc;
  doc["dim"] = r.dim;
  json verts = json::array();
  for (const auto& p : r.coords) {
    json row = json::array();
    for (const auto& c : p) row.push_back(to_string(c));
    verts.push_back(std::move(row));
  }
  doc["vertices"] = std::move(verts);
  doc["facets"] = r.facets;
  doc["base_facet"] = r.base_facet;
  doc["meta"] = {{"R_eff", to_string(r.meta.R_eff)}, {"L", to_string(r.meta.L)},
                 {"alpha", to_string(r.meta.alpha)}, {"alpha_z", to_string(r.meta.alpha_z)},
                 {"max_xy", to_string(r.meta.max_xy)}, {"max_z", to_string(r.meta.max_z)}};
  doc["tree"] = json::parse(tree_to_json(tree));
  if (!labels.empty()) doc["labels"] = labels;
  return doc.dump();
}

RealizationDocument parse_realization(std::string_view text) {
  RealizationDocument out;
  try {
    const json doc = json::parse(text);
    Realization& r = out.realization;
    r.dim = doc.at("dim").get<int>();
    for (const auto& row : doc.at("vertices")) {
      std::vector<Int> p;
      for (const auto& c : row) {
        p.emplace_back(c.is_string() ? c.get<std::string>() : c.dump());
      }
      if (p.size() != static_cast<std::size_t>(r.dim)) throw InputError("vertex has wrong dimension");
      r.coords.push_back(std::move(p));
    }
    r.facets = doc.at("facets").get<std::vector<std::vector<VertexId>>>();
    r.base_facet = doc.at("base_facet").get<std::vector<VertexId>>();
    for (const auto& f : r.facets) {
      for (VertexId v : f) {
        if (v < 0 || v >= static_cast<VertexId>(r.coords.size())) {
          throw InputError("facet vertex out of range");
        }
      }
    }
    const auto& meta = doc.at("meta");
    r.meta.R_eff = parse_rat(meta.at("R_eff").get<std::string>());
    r.meta.L = Int(meta.at("L").get<std::string>());
    r.meta.alpha = parse_rat(meta.at("alpha").get<std::string>());
    r.meta.alpha_z = parse_rat(meta.at("alpha_z").get<std::string>());
    r.meta.max_xy = Int(meta.at("max_xy").get<std::string>());
    r.meta.max_z = Int(meta.at("max_z").get<std::string>());
    out.tree = parse_tree(doc.at("tree").dump());
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed realization JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("malformed integer in realization JSON: ") + e.what());
  } catch (const GeometryError& e) {
    throw InputError(std::string("malformed realization JSON: ") + e.what());
  }
  return out;
}

std::string emit_off(const Realization& r) {
  if (r.dim != 3) throw InputError("OFF output needs d = 3");
  const auto n = static_cast<long>(r.coords.size());
  std::vector<Int> sum(3, 0);
  for (const auto& p : r.coords) {
    for (int j = 0; j < 3; ++j) sum[j] += p[j];
  }
  std::vector<std::vector<VertexId>> faces{r.base_facet};
  faces.insert(faces.end(), r.facets.begin(), r.facets.end());

  std::ostringstream out;
  out << "OFF\n" << r.coords.size() << ' ' << faces.size() << " 0\n";
  for (const auto& p : r.coords) out << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  for (auto f : faces) {
    // n * (centroid - a), kept integral.
    const auto& a = r.coords[f[0]];
    const auto& b = r.coords[f[1]];
    const auto& c = r.coords[f[2]];
    std::vector<std::vector<Int>> m(3, std::vector<Int>(3));
    for (int j = 0; j < 3; ++j) {
      m[0][j] = b[j] - a[j];
      m[1][j] = c[j] - a[j];
      m[2][j] = sum[j] - n * a[j];
    }
    if (sgn(determinant(m)) > 0) std::swap(f[1], f[2]);
    out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  }
  return out.str();
}

std::vector<ExponentRow> exponent_table(int d_min, int d_max) {
  std::vector<ExponentRow> rows;
  for (int d = d_min; d <= d_max; ++d) {
    const double e = std::log2(2.0 * d);
    rows.push_back({d, 2 * e, 3 * e});
  }
  return rows;
}

std::string format_exponent(double value) {
  const double up = std::ceil(value * 100.0 - 1e-9) / 100.0;
  std::ostringstream out;
  out.precision(2);
  out << std::fixed << up;
  std::string s = out.str();
  if (s.size() > 3 && s.substr(s.size() - 3) == ".00") s.resize(s.size() - 3);
  return s;
}

}  // namespace stackgrid
