#pragma once

// End-to-end driver: tree -> balanced weights -> flat embedding -> lifting ->
// rounding -> certificate, plus the file formats the CLI reads and writes.

#include "stackgrid/verifier.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stackgrid {

struct PipelineOptions {
  int threads = 1;
  bool dump_ridges = false;  // per-ridge stress tables in the report
};

struct InvariantRecord {
  std::string stage;
  std::string name;
  std::string value;     // exact
  std::string relation;  // e.g. ">=", "in"
  std::string bound;     // exact
};

struct PipelineReport {
  int d = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  Int R;
  Rat R_eff;
  Int L;
  Rat lambda;
  Rat alpha;
  Rat alpha_z;
  int light_depth = 0;
  int hierarchy_height = 0;
  StressSummary lift;
  bool stress_paths_agree = false;
  RatioRange perturbation;
  RoundingTrace rounding;
  Int max_xy;
  Int max_z;
  double bound_ratio = 0;  // R_eff / n^log2(2d), monitoring only
  std::vector<InvariantRecord> invariants;
  Certificate certificate;
  std::map<std::string, double> timing_ms;
  std::map<std::string, StressMap> ridge_dump;
};

struct PipelineResult {
  TreeRep tree;
  Realization realization;
  PipelineReport report;
  std::vector<VertexId> labels;  // realization vertex -> input graph vertex (graph input only)
};

/// Fails fast with StageError (stage-tagged) or InputError.
PipelineResult run_pipeline(const TreeRep& tree, const PipelineOptions& options = {});
PipelineResult run_pipeline(const PolytopeGraph& graph, int dim,
                            std::optional<std::vector<VertexId>> base = std::nullopt,
                            const PipelineOptions& options = {});

/// Accepts either a tree document or a graph document.
PipelineResult run_pipeline_text(std::string_view text, int graph_dim,
                                 const PipelineOptions& options = {});

/// Deterministic JSON, exact rationals as "num/den" strings. Timing sits under
/// "timing_ms" and is the only run-dependent field.
std::string emit_report(const PipelineReport& report);

/// Realization plus its source tree (and graph labels when present).
std::string realization_to_json(const Realization& r, const TreeRep& tree,
                                const std::vector<VertexId>& labels = {});

struct RealizationDocument {
  Realization realization;
  TreeRep tree;
};
RealizationDocument parse_realization(std::string_view text);

/// OFF text for d = 3; faces counterclockwise seen from outside.
std::string emit_off(const Realization& r);

struct ExponentRow {
  int d;
  double xy_exponent;  // 2 log2(2d)
  double z_exponent;   // 3 log2(2d)
};
std::vector<ExponentRow> exponent_table(int d_min = 3, int d_max = 10);
/// Rounded up at the second decimal.
std::string format_exponent(double value);

}  // namespace stackgrid
