#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <CLI11.hpp>

#include "uniquemax/alternating.hpp"
#include "uniquemax/certifier.hpp"
#include "uniquemax/error.hpp"
#include "uniquemax/falsifier.hpp"
#include "uniquemax/families.hpp"
#include "uniquemax/grid.hpp"
#include "uniquemax/serialize.hpp"
#include "uniquemax/witness.hpp"

namespace uniquemax::cli {

namespace {

namespace fs = std::filesystem;

Subspace load_subspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot read subspace file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument,
                "subspace spec '" + path + "' is not valid JSON: " + e.what());
  }
  return subspace_from_json(j);
}

void validate(const RunConfig& c) {
  if (c.resolution < 3) {
    throw Error(ErrorKind::kInvalidArgument,
                "--resolution must be >= 3 (got " + std::to_string(c.resolution) + ")");
  }
  if (!c.subspace_path.empty()) load_subspace(c.subspace_path);
  if (!c.output_path.empty()) {
    const fs::path parent = fs::absolute(c.output_path).parent_path();
    if (!fs::is_directory(parent)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "output directory '" + parent.string() + "' does not exist");
    }
  }
  if (c.format != "json" && c.format != "csv") {
    throw Error(ErrorKind::kInvalidArgument, "--format must be json or csv");
  }
  if (c.format == "csv" && c.command != "grid-dump") {
    throw Error(ErrorKind::kInvalidArgument, "csv output is only available for grid-dump");
  }
  if (c.command == "witness" && c.coefs.size() != c.dim) {
    throw Error(ErrorKind::kDimensionMismatch,
                "--coefs has " + std::to_string(c.coefs.size()) + " entries but --dim is " +
                    std::to_string(c.dim));
  }
  if (c.command == "conjecture") parse_family(c.family);
}

/// Writes through a temporary file in the target directory, then renames.
void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.output_path.empty()) {
    out << text;
    return;
  }
  const fs::path target = fs::absolute(c.output_path);
  const fs::path temp =
      target.parent_path() / (target.filename().string() + ".tmp." + std::to_string(getpid()));
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    file << text;
    file.flush();
    if (!file) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw Error(ErrorKind::kInvalidArgument, "cannot write '" + temp.string() + "'");
    }
  }
  fs::rename(temp, target);
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

int run_command(const RunConfig& c, std::ostream& out) {
  if (c.command == "witness") {
    emit(c, pretty(to_json(analytic_max(CoefVector(c.coefs)))), out);
    return kSuccess;
  }
  if (c.command == "grid-dump") {
    const TwoChartGrid grid = build_grid(c.dim, c.resolution);
    if (c.format == "csv") {
      emit(c, grid_to_csv(grid), out);
    } else {
      Json points = Json::array();
      for (std::size_t i = 0; i < grid.size(); ++i) points.push_back(to_json(grid.point_at(i)));
      emit(c, pretty({{"dim", c.dim}, {"resolution", c.resolution}, {"points", points}}), out);
    }
    return kSuccess;
  }
  if (c.command == "conjecture") {
    const TwoChartGrid grid = build_grid(c.dim, c.resolution);
    FalsifyOptions opt;
    opt.tol_gap = c.tol_gap;
    opt.budget = c.budget;
    opt.cluster_radius = c.cluster_radius;
    std::string lines;
    for (const ExperimentReport& r :
         conjecture_probe(c.dim, parse_family(c.family), c.trials, c.seed, grid, opt)) {
      Json j = to_json(r);
      j["label"] = "empirical";
      lines += j.dump() + "\n";
    }
    emit(c, lines, out);
    return kSuccess;
  }

  const Subspace s = load_subspace(c.subspace_path);
  const TwoChartGrid grid = build_grid(s.ambient_dim(), c.resolution);
  if (c.command == "certify") {
    CertifierOptions opt;
    opt.cluster_radius = c.cluster_radius;
    const MaxCertificate cert = certify_max(s, CoefVector(c.coefs), grid, opt);
    emit(c, pretty(to_json(cert)), out);
    return cert.unique() ? kSuccess : kNotUnique;
  }
  if (c.command == "bounds") {
    const SampledSubspace sampled(s, grid);
    const SignBounds b = sign_bounds(sampled, c.probes, c.seed);
    const NormEquivalence eq = estimate_norm_equivalence(sampled, c.probes, c.seed);
    TailOptions tail_options;
    tail_options.seed = c.seed;
    const TailRadius t = tail_radius(s, b, eq, tail_options);
    emit(c,
         pretty({{"sign_bounds", to_json(b)}, {"norm_equivalence", to_json(eq)},
                 {"tail", to_json(t)}}),
         out);
    return kSuccess;
  }
  if (c.command == "alternate") {
    ExtractionOptions opt;
    opt.probes = c.probes;
    emit(c, pretty(to_json(extract_alternating(s, grid, c.seed, opt))), out);
    return kSuccess;
  }
  if (c.command == "falsify") {
    FalsifyOptions opt;
    opt.tol_gap = c.tol_gap;
    opt.budget = c.budget;
    opt.seed = c.seed;
    opt.cluster_radius = c.cluster_radius;
    const ExperimentReport r = falsify(s, grid, opt);
    emit(c, pretty(to_json(r)), out);
    return r.verdict == Verdict::kViolationFound ? kSuccess : kInconclusive;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown command '" + c.command + "'");
}

}  // namespace

ParseResult parse_args(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Unique-maximum subspaces of C0(R^n): witness, certify, stress-test",
               "uniquemax"};
  app.require_subcommand(1);

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output,-o", c.output_path, "Write output to this file");
  };
  auto add_resolution = [&](CLI::App* sub) {
    sub->add_option("--resolution", c.resolution, "Grid points per axis (>= 3)");
  };
  auto add_subspace = [&](CLI::App* sub) {
    sub->add_option("--subspace", c.subspace_path, "Subspace spec (JSON)")->required();
  };

  auto* witness = app.add_subcommand("witness", "Closed-form maximum of a witness element");
  witness->add_option("--dim", c.dim, "Ambient dimension")->required();
  witness->add_option("--coefs", c.coefs, "Coefficients a1,...,an")->required()->delimiter(',');
  add_output(witness);

  auto* certify = app.add_subcommand("certify", "Certify the global maximum of an element");
  add_subspace(certify);
  certify->add_option("--coefs", c.coefs, "Coefficients")->required()->delimiter(',');
  add_resolution(certify);
  certify->add_option("--cluster-radius", c.cluster_radius, "Cluster radius (0: 3 cells)");
  add_output(certify);

  auto* bounds = app.add_subcommand("bounds", "Sign bounds, norm equivalence, tail radius");
  add_subspace(bounds);
  add_resolution(bounds);
  bounds->add_option("--seed", c.seed, "Probe seed");
  bounds->add_option("--probes", c.probes, "Number of probes");
  add_output(bounds);

  auto* alternate = app.add_subcommand("alternate", "Extract an alternating hyperplane");
  add_subspace(alternate);
  add_resolution(alternate);
  alternate->add_option("--seed", c.seed, "Probe seed");
  alternate->add_option("--probes", c.probes, "Number of verification probes");
  add_output(alternate);

  auto* falsify_cmd = app.add_subcommand("falsify", "Search for a violation of unique maxima");
  add_subspace(falsify_cmd);
  add_resolution(falsify_cmd);
  falsify_cmd->add_option("--tol", c.tol_gap, "Relative gap tolerance");
  falsify_cmd->add_option("--budget", c.budget, "Gap evaluations");
  falsify_cmd->add_option("--seed", c.seed, "Search seed");
  falsify_cmd->add_option("--cluster-radius", c.cluster_radius, "Peak separation");
  add_output(falsify_cmd);

  auto* conjecture = app.add_subcommand("conjecture", "Probe random (n+1)-dim candidates");
  conjecture->add_option("--dim", c.dim, "Ambient dimension")->required();
  conjecture->add_option("--family", c.family, "gaussians | witness-gaussians | perturbed-witness");
  conjecture->add_option("--trials", c.trials, "Number of candidates");
  conjecture->add_option("--seed", c.seed, "First seed");
  conjecture->add_option("--tol", c.tol_gap, "Relative gap tolerance");
  conjecture->add_option("--budget", c.budget, "Gap evaluations per candidate");
  conjecture->add_option("--cluster-radius", c.cluster_radius, "Peak separation");
  add_resolution(conjecture);
  add_output(conjecture);

  auto* dump = app.add_subcommand("grid-dump", "Print the two-chart grid");
  dump->add_option("--dim", c.dim, "Ambient dimension")->required();
  add_resolution(dump);
  std::string dump_format = "csv";
  dump->add_option("--format", dump_format, "csv | json");
  add_output(dump);

  ParseResult result;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    result.message = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = kUsage;
    result.message = std::string(e.what()) + "\nRun with --help for usage.";
    return result;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.command == "grid-dump") c.format = dump_format;
  try {
    validate(c);
  } catch (const Error& e) {
    result.exit_code = kUsage;
    result.message = e.what();
    return result;
  }
  result.config = c;
  return result;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return run_command(config, out);
  } catch (const Error& e) {
    err << "uniquemax: " << to_string(e.kind()) << ": " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::kInvalidArgument:
      case ErrorKind::kDimensionMismatch:
      case ErrorKind::kBudgetExceeded:
        return kUsage;
      default:
        return kNumericFailure;
    }
  } catch (const std::exception& e) {
    err << "uniquemax: internal error: " << e.what() << "\n";
    return kNumericFailure;
  }
}

}  // namespace uniquemax::cli
