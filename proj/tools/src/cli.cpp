#include "infbern_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "infbern/bernoulli.hpp"
#include "infbern/csv.hpp"
#include "infbern/domain_io.hpp"
#include "infbern/errors.hpp"
#include "infbern/isoperimetry.hpp"
#include "infbern/papprox.hpp"
#include "infbern/solutions.hpp"
#include "infbern_cli/plot.hpp"

namespace fs = std::filesystem;

namespace infbern::cli {
namespace {

struct Globals {
  fs::path out_dir = ".";
  std::size_t samples = 1024;
  std::optional<double> tol;

  fs::path file(const std::string& name) const {
    fs::create_directories(out_dir);
    return out_dir / name;
  }
};

BernoulliAnalysis analyze_file(const std::string& path, const Globals& g) {
  auto profile = std::make_shared<const ParallelSetProfile>(build_profile(load_domain(path), g.samples));
  return analyze(profile, g.tol);
}

std::string kv(const std::string& key, double value) { return key + "=" + format_number(value) + "\n"; }

// Three weights that show the landscape below, at and above the threshold.
std::vector<double> default_weights(const BernoulliAnalysis& a) {
  const double above = 3.0 > a.lambda_star ? 3.0 : 1.4 * a.lambda_star;
  return {a.lambda_prime, a.lambda_star, above};
}

int cmd_analyze(const std::string& domain, const std::string& out_name, const Globals& g,
                std::ostream& out) {
  const auto a = analyze_file(domain, g);
  std::string report;
  report += kv("R_Omega", a.profile->inradius());
  report += kv("r_star", a.r_star);
  report += kv("lambda_infinity", a.lambda_star);
  report += kv("lambda_prime", a.lambda_prime);
  report += kv("r_sing", a.r_sing);
  report += kv("phi_max", a.phi_max);
  for (double w : {0.5 * a.lambda_star, a.lambda_star, 2.0 * a.lambda_star}) {
    report += "class_at_" + format_number(w) + "=" + std::string(to_string(classify(a, w).tag)) + "\n";
  }
  write_text(g.file(out_name), report);
  out << report;
  return kOk;
}

int cmd_figure_f(const std::string& domain, std::vector<double> weights, std::size_t points,
                 const std::string& svg, const std::string& csv, const Globals& g) {
  const auto a = analyze_file(domain, g);
  if (weights.empty()) weights = default_weights(a);
  for (double w : weights) {
    if (!(w > 0.0)) throw DomainError("every Lambda must be > 0");
  }
  const auto& p = *a.profile;
  const double R = p.inradius();
  PlotSpec spec;
  spec.x_label = "r";
  spec.y_label = "f_Lambda(r)";
  spec.title = "energy gap f_Lambda(r) = 1/r - Lambda |Omega_r|";
  std::vector<double> rs(points);
  for (std::size_t i = 0; i < points; ++i) rs[i] = R * static_cast<double>(i + 1) / static_cast<double>(points);
  double lo = 0.0;
  for (double w : weights) {
    Curve c{"f_" + format_number(w), rs, {}};
    for (double r : rs) c.y.push_back(f_lambda(p, w, r));
    lo = std::min(lo, *std::min_element(c.y.begin(), c.y.end()));
    spec.curves.push_back(std::move(c));
  }
  spec.x_range = {0.0, R};
  spec.y_range = {lo - 0.5 / R, 4.0 / R};
  spec.output = g.file(svg);
  write_plot(spec, g.file(csv));
  return kOk;
}

int cmd_figure_minj(const std::string& domain, std::vector<double> weights, std::vector<double> range,
                    std::size_t points, const std::string& svg, const std::string& csv,
                    const Globals& g, std::ostream& out) {
  const auto a = analyze_file(domain, g);
  const auto& p = *a.profile;
  if (weights.empty()) weights = {a.lambda_star, default_weights(a)[2]};
  if (range.empty()) range = {0.0, 3.0 / a.r_star};
  if (range.size() != 2 || !(range[0] >= 0.0) || !(range[1] > range[0])) {
    throw DomainError("lambda range must be two values 0 <= lo < hi");
  }
  PlotSpec spec;
  spec.x_label = "lambda";
  spec.y_label = "min J^lambda_Lambda";
  spec.title = "lambda -> min J^lambda_Lambda";
  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i) {
    xs[i] = range[0] + (range[1] - range[0]) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double w : weights) {
    if (!(w > 0.0)) throw DomainError("every Lambda must be > 0");
    Curve c{"J_" + format_number(w), xs, {}};
    for (double x : xs) c.y.push_back(j_lambda_limit(p, x, w));
    lo = std::min(lo, *std::min_element(c.y.begin(), c.y.end()));
    hi = std::max(hi, *std::max_element(c.y.begin(), c.y.end()));
    const auto ce = ce_identity_check(p, w);
    out << "min_J_" << format_number(w) << "=" << format_number(ce.lhs) << " at lambda="
        << format_number(ce.lhs_restricted - ce.lhs > 1e-9 * ce.lhs ? 0.0 : ce.lambda_opt) << "\n";
    spec.curves.push_back(std::move(c));
  }
  const double pad = 0.05 * (hi - lo);
  spec.x_range = {range[0], range[1]};
  spec.y_range = {lo - pad, hi + pad};
  spec.output = g.file(svg);
  write_plot(spec, g.file(csv));
  return kOk;
}

int cmd_papprox(const std::string& domain, double weight, const std::vector<double>& exponents,
                const std::string& csv, const Globals& g, std::ostream& out) {
  const auto d = load_domain(domain);
  if (!d.as_ball()) throw UnsupportedDomain("p-approximation supported on balls only");
  const auto table = convergence_table(d, weight, exponents);
  const auto text = table.to_csv();
  write_text(g.file(csv), text);
  out << text;
  return kOk;
}

int cmd_potential(const std::string& domain, double r, double h, double solver_tol,
                  const std::string& csv, const Globals& g, std::ostream& out) {
  const auto d = load_domain(domain);
  if (!(r > 0.0) || r >= d.inradius()) throw DomainError("potential needs 0 < r < inradius");
  PotentialStats stats;
  const auto w = infinity_potential(d, r, h, {solver_tol, 1'000'000}, &stats);
  const auto rep = sandwich_report(d, r, w);
  const auto csv_path = g.file(csv);
  write_grid_csv(w, csv_path);
  std::string report;
  report += kv("lower_bound_violation", rep.lower_violation);
  report += kv("upper_bound_violation", rep.upper_violation);
  report += kv("d_hat_deviation", rep.d_hat_deviation);
  report += kv("ring_deviation", rep.ring_deviation);
  report += kv("constant", rep.constant);
  report += kv("tolerance", rep.tolerance);
  report += kv("sweeps", static_cast<double>(stats.sweeps));
  report += kv("unknowns", static_cast<double>(stats.unknowns));
  report += std::string("certified=") + (rep.certified() ? "true" : "false") + "\n";
  write_text(csv_path.string() + ".report.txt", report);
  out << report;
  return kOk;
}

int cmd_isoper(std::uint64_t seed, std::size_t count, bool with_ball, const std::string& csv,
               const Globals& g, std::ostream& out, std::ostream& err) {
  auto records = batch_isoperimetric(seed, count, {g.samples, false});
  if (with_ball) records.push_back(compare_with_ball(ConvexDomain::ball(2, 1.0), g.samples));
  write_text(g.file(csv), batch_table(records).to_csv());
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : records) worst = std::min(worst, r.gap);
  out << "records=" << records.size() << "\nmin_gap=" << format_number(worst) << "\n";
  if (worst < -1e-6) {
    err << "isoperimetric inequality violated beyond tolerance\n";
    return kGeometryInconsistency;
  }
  return kOk;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UnsupportedDomain*>(&e)) return kUnsupportedDomain;
  if (dynamic_cast<const HypothesisViolation*>(&e) || dynamic_cast<const NotApplicable*>(&e)) {
    return kHypothesisViolation;
  }
  if (dynamic_cast<const SolverDivergence*>(&e)) return kSolverDivergence;
  if (dynamic_cast<const GeometryInconsistency*>(&e) ||
      dynamic_cast<const ProfileResolutionError*>(&e)) {
    return kGeometryInconsistency;
  }
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidDomain*>(&e) ||
      dynamic_cast<const DomainError*>(&e) || dynamic_cast<const NoRootError*>(&e)) {
    return kInputError;
  }
  return kFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supremal Bernoulli free-boundary toolkit"};
  app.name(args.empty() ? "infbern" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  double tol = 0.0;
  std::string out_dir = ".";
  app.add_option("--out-dir", out_dir, "Directory for written files")->capture_default_str();
  app.add_option("--samples", g.samples, "Profile resolution")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{64}, std::size_t{1} << 20));
  auto* tol_opt = app.add_option("--tol", tol, "Root tolerance override")->check(CLI::PositiveNumber);

  std::string domain;
  auto add_domain = [&](CLI::App* sub) {
    sub->add_option("domain", domain, "Domain description (JSON)")->required();
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Thresholds and radii of a domain");
  add_domain(analyze_cmd);
  std::string analyze_out = "analyze.txt";
  analyze_cmd->add_option("--out", analyze_out, "Report file")->capture_default_str();

  std::vector<double> weights;
  std::size_t f_points = 512;
  std::size_t j_points = 1001;
  std::string svg;
  std::string csv;

  auto* fig_f = app.add_subcommand("figure-f", "Plot r -> f_Lambda(r)");
  add_domain(fig_f);
  fig_f->add_option("--lambdas", weights, "Weights (default: lambda', lambda_inf, one above)")
      ->delimiter(',');
  fig_f->add_option("--points", f_points, "Samples on (0, R]")->check(CLI::Range(2, 1'000'000));
  fig_f->add_option("--svg", svg, "Plot file (default figure_f.svg)");
  fig_f->add_option("--csv", csv, "Table file (default figure_f.csv)");

  std::vector<double> range;
  auto* fig_j = app.add_subcommand("figure-minj", "Plot lambda -> min J^lambda_Lambda");
  add_domain(fig_j);
  fig_j->add_option("--Lambda", weights, "Weights (default: lambda_inf and one above)")->delimiter(',');
  fig_j->add_option("--lambda-range", range, "lo,hi of the slope axis")->delimiter(',')->expected(2);
  fig_j->add_option("--points", j_points, "Samples on the slope axis")->check(CLI::Range(2, 1'000'000));
  fig_j->add_option("--svg", svg, "Plot file (default figure_minj.svg)");
  fig_j->add_option("--csv", csv, "Table file (default figure_minj.csv)");

  double weight = 3.0;
  std::vector<double> exponents{10, 20, 40, 80, 160};
  auto* pap = app.add_subcommand("papprox", "p-approximation convergence table (balls)");
  add_domain(pap);
  pap->add_option("--Lambda", weight, "Weight")->capture_default_str();
  pap->add_option("--p", exponents, "Exponents")->delimiter(',')->capture_default_str();
  pap->add_option("--csv", csv, "Table file (default papprox.csv)");

  double radius = 0.0;
  double spacing = 1.0 / 128.0;
  double solver_tol = 1e-8;
  auto* pot = app.add_subcommand("potential", "Infinity-harmonic potential and sandwich report");
  add_domain(pot);
  pot->set_help_flag("--help", "Print this help message and exit");  // frees -h for the spacing
  pot->add_option("--r", radius, "Core radius")->required();
  pot->add_option("--h", spacing, "Grid spacing")->capture_default_str()->check(CLI::PositiveNumber);
  pot->add_option("--solver-tol", solver_tol, "Stop when the largest update is below this")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  pot->add_option("--csv", csv, "Field file (default potential.csv)");

  std::uint64_t seed = 7;
  std::size_t count = 50;
  bool with_ball = false;
  auto* iso = app.add_subcommand("isoper", "Isoperimetric comparison on random polygons");
  iso->add_option("--seed", seed, "Generator seed")->capture_default_str();
  iso->add_option("--count", count, "Number of polygons")->capture_default_str()->check(CLI::PositiveNumber);
  iso->add_flag("--with-ball", with_ball, "Append the unit disk as a reference row");
  iso->add_option("--csv", csv, "Table file (default isoper.csv)");

  try {
    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  }

  g.out_dir = out_dir;
  if (*tol_opt) g.tol = tol;
  auto pick = [](const std::string& given, const char* fallback) {
    return given.empty() ? std::string(fallback) : given;
  };

  try {
    if (*analyze_cmd) return cmd_analyze(domain, analyze_out, g, out);
    if (*fig_f) {
      return cmd_figure_f(domain, weights, f_points, pick(svg, "figure_f.svg"), pick(csv, "figure_f.csv"), g);
    }
    if (*fig_j) {
      return cmd_figure_minj(domain, weights, range, j_points,
                             pick(svg, "figure_minj.svg"), pick(csv, "figure_minj.csv"), g, out);
    }
    if (*pap) return cmd_papprox(domain, weight, exponents, pick(csv, "papprox.csv"), g, out);
    if (*pot) {
      return cmd_potential(domain, radius, spacing, solver_tol, pick(csv, "potential.csv"), g, out);
    }
    if (*iso) return cmd_isoper(seed, count, with_ball, pick(csv, "isoper.csv"), g, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kFailure;
}

}  // namespace infbern::cli
