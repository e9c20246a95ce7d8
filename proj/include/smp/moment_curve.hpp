#pragma once

// Points gamma(t) = (t, t^2, ..., t^d) on the moment curve, closed forms for
// the certificate vector of d+1 consecutive points, the Vandermonde
// identity behind them, and the weak majorant comparison on the curve.

#include "smp/cvector.hpp"
#include "smp/integer.hpp"
#include "smp/lp_engine.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace smp {

struct MomentParams {
  int d = 1;
  std::int64_t k = 1;
};

/// (t, t^2, ..., t^d); throws std::overflow_error past 64 bits.
Point gamma_point(int d, std::int64_t t);

/// gamma(k), ..., gamma(k+d).
std::vector<Point> moment_points(const MomentParams& params);

/// c_i = (-1)^i (k...(k+i-1) / i!) ((k+i+1)...(k+d) / (d-i)!), with
/// v = (d! (d-1)! ... 1!) c and D = d! (d-1)! ... 1!. Both quotients are
/// checked to be exact.
CVector c_closed_form(const MomentParams& params);

/// Smallest k >= 1 with min_i |c_i(k)| > p/2.
std::int64_t moment_k_for(int d, double p);

/// d! (d-1)! ... 1!
BigInt superfactorial(int d);

/// det of the (d+1) x (d+1) matrix with entries (k+i)^j, 0 <= i, j <= d.
BigInt vandermonde_det(int d, std::int64_t k);

/// vandermonde_det(d, k) == superfactorial(d).
bool vandermonde_check(int d, std::int64_t k);

struct WeakMajorantRatio {
  double ratio = 0;  ///< ||sum a_n e(gamma(n).x)||_p / ||sum A_n e(gamma(n).x)||_p
  double bound = 0;  ///< (d!)^(1/2d)
  double numerator = 0;
  double denominator = 0;
  double error_estimate = 0;  ///< on the ratio; 0 for the exact even-p path
  std::string method;         ///< "even_exact" or "quadrature"
};

/// Requires 2 <= p <= 2d, |a_n| <= A_n, and at most 6 support points.
WeakMajorantRatio weak_majorant_ratio(int d, double p, const CoefficientVector& a, const CoefficientVector& A,
                                      const std::vector<std::int64_t>& support, const EvalConfig& cfg);

/// Number of ordered r-tuples that are rearrangements of `tuple`, i.e. the
/// diagonal solutions of sum_i n_i^j = sum_i m_i^j (1 <= j <= d) for fixed n.
/// Requires r <= d.
std::int64_t vinogradov_diagonal_count(int d, const std::vector<std::int64_t>& tuple);

struct VinogradovSearch {
  std::int64_t tuples = 0;       ///< r-tuples enumerated in the box
  std::int64_t solutions = 0;    ///< ordered pairs (n, m) solving the system
  std::int64_t non_diagonal = 0; ///< pairs where m is not a rearrangement of n
  std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> examples;  ///< first few non-diagonal
};

/// Exhaustive search over [-radius, radius]^r. Throws BudgetExceeded when
/// (2 radius + 1)^r exceeds `budget`.
VinogradovSearch vinogradov_search(int r, int d, std::int64_t radius, std::int64_t budget = 5'000'000);

}  // namespace smp
