// stackgrid: generate stacking trees, balance them, realize them on the integer
// grid and verify realizations.
//
// Exit codes: 0 success, 2 invalid input, 3 certificate failure.

#include "stackgrid/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

using namespace stackgrid;

constexpr int kInvalidInput = 2;
constexpr int kCertificateFailure = 3;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small integer realizations of stacked polytopes"};
  app.require_subcommand(1);

  int dim = 3;
  std::uint64_t seed = 1;
  int n = 0;
  std::string shape = "random";
  std::string input;
  std::string output;
  std::string report_path;
  std::string format = "json";
  int threads = 1;
  bool dump_ridges = false;

  auto* gen = app.add_subcommand("gen", "generate a stacking tree or a lower-bound graph");
  gen->add_option("--shape", shape, "random|serpentine|balanced_rounds|b3|gamma")
      ->check(CLI::IsMember({"random", "serpentine", "balanced_rounds", "b3", "gamma"}));
  gen->add_option("--dim", dim, "dimension d >= 3");
  gen->add_option("--n", n, "vertex count (random, serpentine, gamma) or rounds (balanced_rounds)");
  gen->add_option("--seed", seed, "seed for the random shape");
  gen->add_option("--output", output, "output file (default stdout)");

  auto* balance = app.add_subcommand("balance", "print balanced face-weights of a tree");
  balance->add_option("--input", input, "tree JSON (default stdin)");
  balance->add_option("--output", output, "output file (default stdout)");

  auto* realize = app.add_subcommand("realize", "realize a tree or graph on the integer grid");
  realize->add_option("--input", input, "tree or graph JSON (default stdin)");
  realize->add_option("--dim", dim, "dimension for graph input");
  realize->add_option("--output", output, "output file (default stdout)");
  realize->add_option("--format", format, "json|off")->check(CLI::IsMember({"json", "off"}));
  realize->add_option("--report", report_path, "write the stage report JSON here");
  realize->add_option("--threads", threads, "threads for verification");
  realize->add_flag("--dump-ridges", dump_ridges, "include per-ridge stresses in the report");

  auto* verify = app.add_subcommand("verify", "certify a realization JSON");
  verify->add_option("--input", input, "realization JSON (default stdin)");
  verify->add_option("--output", output, "certificate output (default stdout)");
  verify->add_option("--threads", threads, "threads for verification");

  auto* stats = app.add_subcommand("stats", "grid exponents 2 log2(2d) and 3 log2(2d)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (shape == "b3" || shape == "gamma") {
        const auto kind = shape == "b3" ? LowerBoundKind::b3 : LowerBoundKind::gamma;
        write_output(output, graph_to_json(gen_lowerbound_graph(kind, n)));
        return 0;
      }
      const TreeShape ts = parse_tree_shape(shape);
      const int size = ts == TreeShape::balanced_rounds ? n : n - dim;
      write_output(output, tree_to_json(gen_tree(ts, dim, size, seed)));
      return 0;
    }
    if (*balance) {
      write_output(output, weighted_tree_to_json(balance_weights(parse_tree(read_input(input)))));
      return 0;
    }
    if (*realize) {
      PipelineOptions options;
      options.threads = threads;
      options.dump_ridges = dump_ridges;
      const PipelineResult result = run_pipeline_text(read_input(input), dim, options);
      if (format == "off") {
        write_output(output, emit_off(result.realization));
      } else {
        write_output(output, realization_to_json(result.realization, result.tree, result.labels));
      }
      if (!report_path.empty()) write_output(report_path, emit_report(result.report));
      return result.report.certificate.all_ok() ? 0 : kCertificateFailure;
    }
    if (*verify) {
      const RealizationDocument doc = parse_realization(read_input(input));
      const Certificate cert = certify(doc.realization, doc.tree, threads);
      write_output(output, certificate_to_json(cert));
      return cert.all_ok() ? 0 : kCertificateFailure;
    }
    if (*stats) {
      std::cout << "d  xy-exponent  z-exponent\n";
      for (const auto& row : exponent_table()) {
        std::cout << row.d << "  " << format_exponent(row.xy_exponent) << "  "
                  << format_exponent(row.z_exponent) << '\n';
      }
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const StageError& e) {
    std::cerr << "stage failure [" << e.stage() << "]: " << e.what() << '\n';
    return kCertificateFailure;
  } catch (const GeometryError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  }
  return 0;
}
