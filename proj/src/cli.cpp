#include "smp/cli.hpp"

#include "smp/errors.hpp"
#include "smp/json_io.hpp"
#include "smp/moment_curve.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace smp {

std::vector<PlotRow> emit_plot_data(const Certificate& cert, std::size_t samples, const EvalConfig& cfg) {
  std::vector<PlotRow> rows;
  if (cert.p_interval.empty() || samples == 0) return rows;
  const double step = cert.p_interval.length() / static_cast<double>(samples + 1);
  for (std::size_t i = 1; i <= samples; ++i) {
    const double p = cert.p_interval.lower + step * static_cast<double>(i);
    if (!(p > 0) || is_even_integer(p) || !cert.p_interval.contains(p)) continue;
    const auto cmp = majorant_comparison(cert.frequencies, cert.coefficients, p, cfg);
    rows.push_back({p, cmp.lhs, cmp.rhs, static_cast<double>(cmp.difference)});
  }
  return rows;
}

void write_plot_csv(const std::vector<PlotRow>& rows, std::ostream& os) {
  os << "p,lhs,rhs,difference\n";
  os.precision(17);
  for (const auto& r : rows) os << r.p << ',' << r.lhs << ',' << r.rhs << ',' << r.difference << '\n';
}

namespace {

struct Options {
  std::string input;
  std::string plot;
  std::size_t plot_samples = 5;
  int d = 0;
  double p = std::nan("");
  std::size_t count = 2;
  std::size_t budget = 64;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  EvalConfig cfg;
};

std::string read_input(const std::string& path) {
  if (path.empty()) throw DomainError("--input is required");
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot open input file " + path);
    ss << f.rdbuf();
  }
  return ss.str();
}

void maybe_plot(const Options& opt, const Certificate& cert, std::ostream& err) {
  if (opt.plot.empty()) return;
  std::ofstream f(opt.plot);
  if (!f) throw DomainError("cannot write plot file " + opt.plot);
  write_plot_csv(emit_plot_data(cert, opt.plot_samples, opt.cfg), f);
  err << "plot data written to " << opt.plot << "\n";
}

std::string to_string(Abundance a) {
  switch (a) {
    case Abundance::Yes:
      return "yes";
    case Abundance::No:
      return "no";
    case Abundance::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

int cmd_classify(const Options& opt, std::ostream& out, std::ostream& err) {
  const FrequencySet set = frequency_set_from_json(parse_json(read_input(opt.input)));
  const auto d = static_cast<std::size_t>(set.dim());
  // Infinite sets are judged on a finite prefix with at least d+2 points.
  const std::vector<Point> pts = set.is_finite() ? set.points() : set.prefix(std::max(set.size(), d + 2));
  const FrequencySet finite(set.dim(), pts);
  const int aff = affine_dimension(pts);
  const bool independent = pts.size() == static_cast<std::size_t>(aff) + 1;
  const AbundanceReport abundance = is_affinely_abundant(set, opt.budget);

  Json j;
  j["dim"] = set.dim();
  j["finite"] = set.is_finite();
  j["points_considered"] = pts.size();
  j["affine_dimension"] = aff;
  j["affinely_independent"] = independent && set.is_finite();
  j["abundance"] = {{"verdict", to_string(abundance.verdict)},
                    {"reason", abundance.reason},
                    {"distinct_values", abundance.distinct_values},
                    {"points_scanned", abundance.points_scanned}};
  if (independent && set.is_finite()) {
    j["smp_status"] = "holds_all_p";
    j["reason"] = "affinely independent: the norm depends only on |a_n|";
  } else {
    try {
      const Certificate cert = construct_independent(finite, opt.cfg);
      j["smp_status"] = "violated_with_certificate";
      j["certificate"] = to_json(cert);
      maybe_plot(opt, cert, err);
    } catch (const NumericalError& e) {
      err << e.what() << "\n";
      j["smp_status"] = "holds_even_p_only_unknown";
      j["reason"] = "not affinely independent; the violation could not be certified numerically";
    }
  }
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_construct(const Options& opt, std::ostream& out, std::ostream& err) {
  const FrequencySet set = frequency_set_from_json(parse_json(read_input(opt.input)));
  if (set.is_finite()) {
    const Certificate cert = construct_independent(set, opt.cfg);
    out << to_json(cert).dump(2) << "\n";
    maybe_plot(opt, cert, err);
    return kExitOk;
  }
  const AbundantResult res = construct_abundant(set, opt.count, opt.cfg, std::max<std::size_t>(opt.budget, 16));
  out << to_json(res).dump(2) << "\n";
  if (!res.certificates.empty()) maybe_plot(opt, res.certificates.front(), err);
  if (!res.complete) err << res.explanation << "\n";
  return res.certificates.empty() ? kExitInconclusive : kExitOk;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const Certificate cert = certificate_from_json(parse_json(read_input(opt.input)));
  std::optional<double> p;
  if (!std::isnan(opt.p)) p = opt.p;
  const Verification v = verify_certificate(cert, opt.cfg, p);
  out << to_json(v).dump(2) << "\n";
  maybe_plot(opt, cert, err);
  switch (v.verdict) {
    case Verdict::True:
      return kExitOk;
    case Verdict::False:
      return kExitHypothesis;
    case Verdict::Inconclusive:
      break;
  }
  return kExitInconclusive;
}

int cmd_moment(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.d < 1) throw DomainError("moment: --d must be >= 1");
  if (std::isnan(opt.p)) throw DomainError("moment: --p is required");
  const Certificate cert = construct_moment(opt.d, opt.p, opt.cfg);
  out << to_json(cert).dump(2) << "\n";
  maybe_plot(opt, cert, err);
  return kExitOk;
}

int cmd_weak_majorant(const Options& opt, std::ostream& out, std::ostream&) {
  if (opt.d < 1) throw DomainError("weak-majorant: --d must be >= 1");
  if (std::isnan(opt.p)) throw DomainError("weak-majorant: --p is required");
  std::vector<std::int64_t> support;
  for (std::size_t i = 1; i <= opt.count; ++i) support.push_back(static_cast<std::int64_t>(i));
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(support.size());
  double worst = 0;
  std::size_t violations = 0;
  WeakMajorantRatio last;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    CoefficientVector A(n), a(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      A(i) = 0.1 + unit(rng);
      a(i) = (2 * unit(rng) - 1) * A(i);
    }
    last = weak_majorant_ratio(opt.d, opt.p, a, A, support, opt.cfg);
    worst = std::max(worst, last.ratio);
    if (last.ratio > last.bound + 1e-6) ++violations;
  }
  Json j;
  j["d"] = opt.d;
  j["p"] = opt.p;
  j["support"] = support;
  j["trials"] = opt.trials;
  j["seed"] = opt.seed;
  j["method"] = last.method;
  j["bound"] = last.bound;
  j["max_ratio"] = worst;
  j["violations"] = violations;
  out << j.dump(2) << "\n";
  return violations == 0 ? kExitOk : kExitHypothesis;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strict majorant property: classify frequency sets, construct and verify counterexamples", "smp"};
  app.require_subcommand(1);
  Options opt;

  auto add_eval = [&](CLI::App* sc) {
    sc->add_option("--grid", opt.cfg.grid_points_per_axis, "quadrature points per axis");
    sc->add_option("--cutoff", opt.cfg.series_total_degree_cutoff, "series total degree cutoff");
    sc->add_option("--tol", opt.cfg.backend_agreement_tol, "quadrature agreement tolerance");
    sc->add_option("--safety", opt.cfg.margin_safety_factor, "margin safety factor (> 1)");
    sc->add_option("--max-points", opt.cfg.max_total_points, "largest quadrature grid, in points");
    sc->add_option("--workers", opt.cfg.workers, "quadrature threads (0 = all cores)");
    sc->add_option("--plot", opt.plot, "write p, lhs, rhs, difference samples as CSV");
    sc->add_option("--plot-samples", opt.plot_samples, "number of p samples for --plot");
  };

  auto* classify = app.add_subcommand("classify", "affine dimension, abundance and strict majorant status");
  classify->add_option("--input", opt.input, "frequency set JSON (- for stdin)")->required();
  classify->add_option("--budget", opt.budget, "scan budget for abundance");
  add_eval(classify);

  auto* construct = app.add_subcommand("construct", "build a certified counterexample");
  construct->add_option("--input", opt.input, "frequency set JSON (- for stdin)")->required();
  construct->add_option("--count", opt.count, "certificates wanted for an infinite set");
  construct->add_option("--budget", opt.budget, "streamed candidates for an infinite set");
  add_eval(construct);

  auto* verify = app.add_subcommand("verify", "recompute a certificate's inequality");
  verify->add_option("--input", opt.input, "certificate JSON (- for stdin)")->required();
  verify->add_option("--p", opt.p, "exponent to test instead of p_tested");
  add_eval(verify);

  auto* moment = app.add_subcommand("moment", "counterexample on the moment curve");
  moment->add_option("--d", opt.d, "dimension")->required();
  moment->add_option("--p", opt.p, "exponent, not an even integer")->required();
  add_eval(moment);

  auto* weak = app.add_subcommand("weak-majorant", "weak majorant ratios on the moment curve");
  weak->add_option("--d", opt.d, "dimension")->required();
  weak->add_option("--p", opt.p, "exponent in [2, 2d]")->required();
  weak->add_option("--count", opt.count, "support points t = 1..count");
  weak->add_option("--trials", opt.trials, "random coefficient pairs");
  weak->add_option("--seed", opt.seed, "random seed");
  add_eval(weak);

  std::vector<std::string> argv_storage{"smp"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitHypothesis;
  }

  try {
    opt.cfg.validate();
    if (classify->parsed()) return cmd_classify(opt, out, err);
    if (construct->parsed()) return cmd_construct(opt, out, err);
    if (verify->parsed()) return cmd_verify(opt, out, err);
    if (moment->parsed()) return cmd_moment(opt, out, err);
    if (weak->parsed()) return cmd_weak_majorant(opt, out, err);
  } catch (const NumericalError& e) {
    err << "numerically inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitHypothesis;
  }
  err << app.help();
  return kExitHypothesis;
}

}  // namespace smp
