#pragma once

// L^p([0,1]^d) norms of exponential sums sum_n a_n e(n.x), raised to the
// p-th power, by three backends that check each other: tensor rectangle
// quadrature on the torus, the truncated binomial series around the
// constant term, and exact enumeration of frequency-sum collisions at even p.

#include "smp/integer.hpp"
#include "smp/taylor_series.hpp"

#include <cstdint>
#include <vector>

namespace smp {

struct EvalConfig {
  std::int64_t grid_points_per_axis = 256;
  std::int64_t series_total_degree_cutoff = 24;
  double backend_agreement_tol = 1e-10;
  double margin_safety_factor = 10.0;
  std::int64_t max_total_points = std::int64_t{1} << 24;  ///< refinement stops here
  unsigned workers = 0;                                    ///< 0: hardware concurrency

  /// Throws DomainError on out-of-range fields.
  void validate() const;
};

using CoefficientVector = Eigen::VectorXd;

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  std::int64_t grid = 0;  ///< points per axis of the finest grid used
  bool converged = false;
};

/// integral over [0,1]^d of |sum_k coeffs_k e(freqs_k.x)|^p. The grid is
/// doubled per axis from cfg.grid_points_per_axis until the values on N and
/// N/2 agree within backend_agreement_tol (relative to max(1, value)), or
/// the point budget is reached; the estimate is |Q_N - Q_{N/2}| plus a
/// rounding bound.
QuadratureResult lp_norm_quadrature(const std::vector<Point>& freqs, const CoefficientVector& coeffs, double p,
                                    const EvalConfig& cfg);

/// Both sides of the majorant comparison on one grid.
struct MajorantComparison {
  double lhs = 0;         ///< || sum |a_k| e(n_k.x) ||_p^p
  double rhs = 0;         ///< || sum  a_k  e(n_k.x) ||_p^p
  long double difference = 0;  ///< rhs - lhs, integrated pointwise without cancellation
  double error_estimate = 0;   ///< for difference
  std::int64_t grid = 0;
  bool converged = false;
};

/// Requires sum_k |a_k| e(n_k.x) to be nonvanishing on the torus, which
/// holds when one coefficient dominates the others (e.g. the constant term
/// 1 with sum of the rest < 1). Refines until the difference is resolved to
/// relative tolerance or to rounding level.
MajorantComparison majorant_comparison(const std::vector<Point>& freqs, const CoefficientVector& coeffs, double p,
                                       const EvalConfig& cfg);

/// Exact ||sum_k a_k e(n_k.x)||_{2s}^{2s} = sum_F |P_s(F)|^2 where P_s(F)
/// sums prod a over s-tuples of frequencies adding to F. Throws
/// BudgetExceeded when |freqs|^s exceeds `budget`.
Rational lp_norm_even_exact(const std::vector<Point>& freqs, const Vector<Rational>& coeffs, int s,
                            std::int64_t budget = 10'000'000);
/// Doubles convert to rationals exactly.
Rational lp_norm_even_exact(const std::vector<Point>& freqs, const CoefficientVector& coeffs, int s,
                            std::int64_t budget = 10'000'000);

/// 1 iff sum_i u_i n_i = 0 exactly.
int i_indicator(const IntVector& u, const std::vector<Point>& freqs);

/// Series backend for ||1 + sum_i b_i e(n_i.x)||_p^p in long double, with
/// degree cutoff cfg.series_total_degree_cutoff. The constant term sits at
/// frequency 0 and is not listed in freqs.
TaylorResult<double> lp_norm_taylor(const std::vector<Point>& freqs, const CoefficientVector& b, double p,
                                    const EvalConfig& cfg);

/// -2 binom(p/2,|c_-|) binom(p/2,|c_+|) multinom(c_-) multinom(c_+)
///    (|a^(c_- + c_+)| - a^(c_- + c_+))
struct MainTerm {
  long double value = 0;
  double log10_abs = 0;  ///< -inf when value = 0
};
MainTerm main_term(const std::vector<Point>& freqs, const CoefficientVector& a, double p);

struct SmpDifference {
  long double difference = 0;  ///< ||1 + sum a_i e(n_i.x)||^p - ||1 + sum |a_i| e(n_i.x)||^p
  double error_estimate = 0;
  MainTerm main;
  double lhs = 0;  ///< majorant side
  double rhs = 0;  ///< signed side
  std::int64_t grid = 0;
  bool converged = false;
  bool probative = false;  ///< main term nonzero

  /// difference > safety x error_estimate, on a converged grid.
  bool certified(double safety) const {
    return converged && difference > static_cast<long double>(safety) * error_estimate;
  }
};

/// freqs = n_0..n_d in Z^d with det(~n_0..~n_d) != 0; the constant term 1 sits
/// at frequency 0. Requires max |a_i| < 1. Evaluated by quadrature.
SmpDifference smp_difference(const std::vector<Point>& freqs, const CoefficientVector& a, double p,
                             const EvalConfig& cfg);

/// Same difference summed from the series, keeping degrees up to
/// |c| + cfg.series_total_degree_cutoff. The extra degree is doubled, at most
/// twice, while the sign is not resolved by the safety factor. Requires sum |a_i| < 1.
SeriesDifference<long double> smp_difference_series(const std::vector<Point>& freqs, const CoefficientVector& a,
                                                    double p, const EvalConfig& cfg);

/// G(r) = integral_0^1 |1 + r e(t)|^p dt by tanh-sinh quadrature of the
/// folded integral (1/pi) integral_0^pi (1 + r^2 + 2r cos t)^(p/2) dt.
double g_function(double r, double p, const EvalConfig& cfg);

}  // namespace smp
