#include "smp/lp_engine.hpp"

#include "smp/cvector.hpp"
#include "smp/errors.hpp"
#include "smp/torus_quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>

namespace smp {

using Ld = long double;
using Cld = std::complex<Ld>;

std::string to_string(TaylorMode mode) {
  switch (mode) {
    case TaylorMode::Diagonal:
      return "diagonal";
    case TaylorMode::SingleGenerator:
      return "single_generator";
    case TaylorMode::General:
      return "general";
  }
  return "unknown";
}

namespace detail {

RelationLattice relation_lattice(const std::vector<Point>& freqs) {
  RelationLattice out;
  if (freqs.empty()) return out;
  const IntMatrix null = integer_null_space(columns_of(freqs));
  if (null.cols() == 1) {
    out.mode = TaylorMode::SingleGenerator;
    out.generator = to_point(null.col(0));
  } else if (null.cols() > 1) {
    out.mode = TaylorMode::General;
  }
  return out;
}

}  // namespace detail

void EvalConfig::validate() const {
  if (grid_points_per_axis < 4) throw DomainError("EvalConfig: grid_points_per_axis must be >= 4");
  if (series_total_degree_cutoff < 0) throw DomainError("EvalConfig: series_total_degree_cutoff must be >= 0");
  if (!(backend_agreement_tol > 0)) throw DomainError("EvalConfig: backend_agreement_tol must be positive");
  if (!(margin_safety_factor > 1)) throw DomainError("EvalConfig: margin_safety_factor must be > 1");
  if (max_total_points < 1) throw DomainError("EvalConfig: max_total_points must be positive");
}

namespace {

int check_frequencies(const std::vector<Point>& freqs, Eigen::Index coeff_count) {
  if (freqs.empty()) throw DimensionError("no frequencies");
  if (static_cast<Eigen::Index>(freqs.size()) != coeff_count)
    throw DimensionError("coefficient count " + std::to_string(coeff_count) + " differs from frequency count " +
                         std::to_string(freqs.size()));
  const std::size_t d = freqs.front().size();
  for (const auto& n : freqs)
    if (n.size() != d) throw DimensionError("frequencies of mixed dimension");
  return static_cast<int>(d);
}

void check_coefficients(const CoefficientVector& c) {
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (!std::isfinite(c(i))) throw DomainError("non-finite coefficient");
}

// Rounding bound for a pairwise sum of M terms with mean absolute value m.
Ld rounding_floor(std::int64_t points, Ld abs_mean) {
  return std::numeric_limits<Ld>::epsilon() * (std::log2(static_cast<Ld>(points)) + 4) * abs_mean;
}

std::int64_t checked_grid(std::int64_t n, int dim, const EvalConfig& cfg) {
  const std::int64_t total = quadrature::grid_size(n, dim);
  if (total < 0 || total > cfg.max_total_points)
    throw BudgetExceeded("quadrature grid " + std::to_string(n) + "^" + std::to_string(dim) +
                         " exceeds max_total_points = " + std::to_string(cfg.max_total_points));
  return total;
}

bool can_refine(std::int64_t n, int dim, const EvalConfig& cfg) {
  const std::int64_t total = quadrature::grid_size(2 * n, dim);
  return total >= 0 && total <= cfg.max_total_points;
}

struct Level {
  std::array<Ld, 3> mean{};
  std::array<Ld, 3> floor{};
};

// Evaluates lhs = |sum |a| e|^p, rhs = |sum a e|^p and their difference on one grid.
Level comparison_level(const std::vector<Point>& freqs, const std::vector<Ld>& a, int dim, std::int64_t n, Ld p,
                       unsigned workers) {
  const std::size_t m = a.size();
  const Ld half_p = p / 2;
  auto integrand = [&](const Cld* ph, Ld* out) {
    Cld fs = 0, fa = 0;
    for (std::size_t k = 0; k < m; ++k) {
      fs += a[k] * ph[k];
      fa += std::abs(a[k]) * ph[k];
    }
    const Ld w = std::norm(fa);
    const Ld u = std::norm(fs);
    const Ld u_minus_w = std::real((fs - fa) * std::conj(fs + fa));
    out[0] = std::pow(w, half_p);
    out[1] = std::pow(u, half_p);
    out[2] = w > 0 ? out[0] * std::expm1(half_p * std::log1p(u_minus_w / w)) : out[1];
  };
  const auto sums = quadrature::grid_sums<Ld, 3>(freqs, dim, n, workers, integrand);
  Level lv;
  for (std::size_t k = 0; k < 3; ++k) {
    lv.mean[k] = sums.mean(k);
    lv.floor[k] = rounding_floor(sums.points, sums.abs_mean(k));
  }
  return lv;
}

Ld norm_level(const std::vector<Point>& freqs, const std::vector<Ld>& a, int dim, std::int64_t n, Ld p,
              unsigned workers, Ld& floor) {
  const std::size_t m = a.size();
  const bool square = p == 2;
  auto integrand = [&](const Cld* ph, Ld* out) {
    Cld f = 0;
    for (std::size_t k = 0; k < m; ++k) f += a[k] * ph[k];
    const Ld u = std::norm(f);
    out[0] = square ? u : std::pow(u, p / 2);
  };
  const auto sums = quadrature::grid_sums<Ld, 1>(freqs, dim, n, workers, integrand);
  floor = rounding_floor(sums.points, sums.abs_mean());
  return sums.mean();
}

std::vector<Ld> to_ld(const CoefficientVector& c) {
  std::vector<Ld> out(static_cast<std::size_t>(c.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i) out[static_cast<std::size_t>(i)] = c(i);
  return out;
}

}  // namespace

QuadratureResult lp_norm_quadrature(const std::vector<Point>& freqs, const CoefficientVector& coeffs, double p,
                                    const EvalConfig& cfg) {
  cfg.validate();
  if (!(p > 0)) throw DomainError("lp_norm_quadrature: p must be positive");
  const int dim = check_frequencies(freqs, coeffs.size());
  check_coefficients(coeffs);
  const auto a = to_ld(coeffs);
  const Ld lp = p;

  std::int64_t n = cfg.grid_points_per_axis;
  checked_grid(n, dim, cfg);
  Ld floor_coarse = 0, floor_fine = 0;
  Ld coarse = norm_level(freqs, a, dim, std::max<std::int64_t>(n / 2, 1), lp, cfg.workers, floor_coarse);
  Ld fine = norm_level(freqs, a, dim, n, lp, cfg.workers, floor_fine);
  auto error_of = [&] {
    return std::abs(fine - coarse) + floor_fine + std::numeric_limits<double>::epsilon() * std::abs(fine);
  };
  auto accepted = [&] { return error_of() <= cfg.backend_agreement_tol * std::max<Ld>(1, std::abs(fine)); };
  while (!accepted() && can_refine(n, dim, cfg)) {
    n *= 2;
    coarse = fine;
    fine = norm_level(freqs, a, dim, n, lp, cfg.workers, floor_fine);
  }
  return {static_cast<double>(fine), static_cast<double>(error_of()), n, accepted()};
}

MajorantComparison majorant_comparison(const std::vector<Point>& freqs, const CoefficientVector& coeffs, double p,
                                       const EvalConfig& cfg) {
  cfg.validate();
  if (!(p > 0)) throw DomainError("majorant_comparison: p must be positive");
  const int dim = check_frequencies(freqs, coeffs.size());
  check_coefficients(coeffs);
  const auto a = to_ld(coeffs);
  const Ld lp = p;

  std::int64_t n = cfg.grid_points_per_axis;
  checked_grid(n, dim, cfg);
  Level coarse = comparison_level(freqs, a, dim, std::max<std::int64_t>(n / 2, 1), lp, cfg.workers);
  Level fine = comparison_level(freqs, a, dim, n, lp, cfg.workers);
  auto two_level = [&] { return std::abs(fine.mean[2] - coarse.mean[2]); };
  auto accepted = [&] {
    return two_level() + fine.floor[2] <= cfg.backend_agreement_tol * std::abs(fine.mean[2]) ||
           two_level() <= 3 * fine.floor[2];
  };
  while (!accepted() && can_refine(n, dim, cfg)) {
    n *= 2;
    coarse = fine;
    fine = comparison_level(freqs, a, dim, n, lp, cfg.workers);
  }
  MajorantComparison out;
  out.lhs = static_cast<double>(fine.mean[0]);
  out.rhs = static_cast<double>(fine.mean[1]);
  out.difference = fine.mean[2];
  out.error_estimate = static_cast<double>(two_level() + fine.floor[2]);
  out.grid = n;
  out.converged = accepted();
  return out;
}

Rational lp_norm_even_exact(const std::vector<Point>& freqs, const Vector<Rational>& coeffs, int s,
                            std::int64_t budget) {
  if (s < 1) throw DomainError("lp_norm_even_exact: s must be >= 1");
  check_frequencies(freqs, coeffs.size());
  std::int64_t tuples = 1;
  for (int i = 0; i < s; ++i) {
    tuples *= static_cast<std::int64_t>(freqs.size());
    if (tuples > budget)
      throw BudgetExceeded("lp_norm_even_exact: " + std::to_string(freqs.size()) + "^" + std::to_string(s) +
                           " tuples exceed the budget " + std::to_string(budget));
  }
  std::map<Point, Rational> base;
  for (std::size_t k = 0; k < freqs.size(); ++k) base[freqs[k]] += coeffs(static_cast<Eigen::Index>(k));
  std::map<Point, Rational> cur = base;
  for (int step = 1; step < s; ++step) {
    std::map<Point, Rational> next;
    for (const auto& [f, x] : cur)
      for (const auto& [n, y] : base) {
        Point g = f;
        for (std::size_t j = 0; j < g.size(); ++j) g[j] += n[j];
        next[g] += x * y;
      }
    cur = std::move(next);
  }
  Rational total = 0;
  for (const auto& [f, x] : cur) total += x * x;
  return total;
}

Rational lp_norm_even_exact(const std::vector<Point>& freqs, const CoefficientVector& coeffs, int s,
                            std::int64_t budget) {
  check_coefficients(coeffs);
  Vector<Rational> exact(coeffs.size());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) exact(i) = Rational(coeffs(i));
  return lp_norm_even_exact(freqs, exact, s, budget);
}

int i_indicator(const IntVector& u, const std::vector<Point>& freqs) {
  if (static_cast<std::size_t>(u.size()) != freqs.size()) throw DimensionError("i_indicator: length mismatch");
  if (freqs.empty()) return 1;
  const IntVector sum = columns_of(freqs) * u;
  for (Eigen::Index j = 0; j < sum.size(); ++j)
    if (sum(j) != 0) return 0;
  return 1;
}

TaylorResult<double> lp_norm_taylor(const std::vector<Point>& freqs, const CoefficientVector& b, double p,
                                    const EvalConfig& cfg) {
  cfg.validate();
  check_coefficients(b);
  const Vector<Ld> bl = b.cast<Ld>();
  const auto r = lp_norm_taylor<Ld>(freqs, bl, static_cast<Ld>(p), cfg.series_total_degree_cutoff);
  TaylorResult<double> out;
  out.value = static_cast<double>(r.value);
  out.truncation_estimate = static_cast<double>(r.truncation_estimate);
  out.truncated = r.truncated;
  out.mode = r.mode;
  out.cutoff = r.cutoff;
  out.terms = r.terms;
  return out;
}

namespace {

// log |binom(p/2, j)| and its sign; sign 0 when the coefficient vanishes.
std::pair<Ld, int> log_abs_binom(Ld p, std::int64_t j) {
  Ld acc = 0;
  int sign = 1;
  for (std::int64_t l = 0; l < j; ++l) {
    const Ld f = p - 2 * static_cast<Ld>(l);
    if (f == 0) return {0, 0};
    if (f < 0) sign = -sign;
    acc += std::log(std::abs(f)) - std::log(2 * static_cast<Ld>(l + 1));
  }
  return {acc, sign};
}

void check_difference_inputs(const std::vector<Point>& freqs, const CoefficientVector& a, double p) {
  if (!(p > 0)) throw DomainError("smp_difference: p must be positive");
  check_frequencies(freqs, a.size());
  check_coefficients(a);
  if (freqs.size() != freqs.front().size() + 1)
    throw DimensionError("smp_difference: need d+1 frequencies in Z^d");
  if (lifted_det(freqs) == 0) throw HypothesisError("smp_difference: det(~n_0, ..., ~n_d) = 0");
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(std::abs(a(i)) < 1)) throw DomainError("smp_difference: |a_i| must be < 1");
}

}  // namespace

MainTerm main_term(const std::vector<Point>& freqs, const CoefficientVector& a, double p) {
  const CVector cv = cvector_of(freqs);
  if (a.size() != cv.size()) throw DimensionError("main_term: coefficient count must be d+1");
  MainTerm out;
  out.log10_abs = -std::numeric_limits<double>::infinity();
  // |a^k| - a^k with k = c_- + c_+ is 0 or 2|a^k|.
  int sign = 1;
  Ld log_power = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const std::int64_t k = cv.c_plus[static_cast<std::size_t>(i)] + cv.c_minus[static_cast<std::size_t>(i)];
    if (k == 0) continue;
    if (a(i) == 0) return out;
    if (a(i) < 0 && k % 2 != 0) sign = -sign;
    log_power += static_cast<Ld>(k) * std::log(std::abs(static_cast<Ld>(a(i))));
  }
  if (sign > 0) return out;
  const auto [lb_minus, s_minus] = log_abs_binom(p, cv.c_minus.order());
  const auto [lb_plus, s_plus] = log_abs_binom(p, cv.c_plus.order());
  if (s_minus == 0 || s_plus == 0) return out;
  const Ld log_abs = std::log(Ld(4)) + lb_minus + lb_plus + log_multinomial(cv.c_minus) + log_multinomial(cv.c_plus) +
                     log_power;
  const int total_sign = -s_minus * s_plus;
  out.value = total_sign * std::exp(log_abs);
  out.log10_abs = static_cast<double>(log_abs / std::numbers::ln10_v<Ld>);
  return out;
}

SmpDifference smp_difference(const std::vector<Point>& freqs, const CoefficientVector& a, double p,
                             const EvalConfig& cfg) {
  cfg.validate();
  check_difference_inputs(freqs, a, p);
  std::vector<Point> full;
  full.reserve(freqs.size() + 1);
  full.emplace_back(freqs.front().size(), 0);
  full.insert(full.end(), freqs.begin(), freqs.end());
  CoefficientVector coeffs(a.size() + 1);
  coeffs << 1.0, a;

  const MajorantComparison cmp = majorant_comparison(full, coeffs, p, cfg);
  SmpDifference out;
  out.difference = cmp.difference;
  out.error_estimate = cmp.error_estimate;
  out.main = main_term(freqs, a, p);
  out.lhs = cmp.lhs;
  out.rhs = cmp.rhs;
  out.grid = cmp.grid;
  out.converged = cmp.converged;
  out.probative = out.main.value != 0;
  return out;
}

SeriesDifference<long double> smp_difference_series(const std::vector<Point>& freqs, const CoefficientVector& a,
                                                    double p, const EvalConfig& cfg) {
  cfg.validate();
  check_difference_inputs(freqs, a, p);
  const CVector cv = cvector_of(freqs);
  // Binomials and multinomials at degree |c| overflow long double long before the difference does.
  using Wide = boost::multiprecision::cpp_bin_float_50;
  Vector<Wide> b(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) b(i) = Wide(a(i));
  const Wide safety(cfg.margin_safety_factor);
  std::int64_t extra = cfg.series_total_degree_cutoff;
  auto wide = series_difference<Wide>(freqs, b, Wide(p), cv.order() + extra);
  for (int step = 0; step < 2 && abs(wide.difference) <= safety * wide.truncation_estimate; ++step) {
    extra = std::max<std::int64_t>(2 * extra, 8);
    wide = series_difference<Wide>(freqs, b, Wide(p), cv.order() + extra);
  }
  SeriesDifference<long double> out;
  out.difference = wide.difference.convert_to<long double>();
  out.truncation_estimate = wide.truncation_estimate.convert_to<long double>();
  out.mode = wide.mode;
  out.cutoff = wide.cutoff;
  out.terms = wide.terms;
  return out;
}

double g_function(double r, double p, const EvalConfig& cfg) {
  if (!(r >= 0)) throw DomainError("g_function: r must be nonnegative");
  if (!(p > 0)) throw DomainError("g_function: p must be positive");
  if (r == 0) return 1.0;
  // |1 + r e(t)|^2 = (1 - r)^2 + 4 r cos^2(pi t), symmetric about t = 1/2.
  auto f = [&](double theta) {
    const double c = std::cos(theta / 2);
    return std::pow((1 - r) * (1 - r) + 4 * r * c * c, p / 2);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double tol = std::max(1e-15, cfg.backend_agreement_tol * 1e-3);
  return integrator.integrate(f, 0.0, std::numbers::pi, tol) / std::numbers::pi;
}

}  // namespace smp
