#include "smp/moment_curve.hpp"

#include "smp/errors.hpp"
#include "smp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace smp {

Point gamma_point(int d, std::int64_t t) {
  if (d < 1) throw DimensionError("gamma_point: d must be >= 1");
  Point out(static_cast<std::size_t>(d));
  BigInt power = 1;
  for (int j = 0; j < d; ++j) {
    power *= t;
    out[static_cast<std::size_t>(j)] = to_int64(power);
  }
  return out;
}

std::vector<Point> moment_points(const MomentParams& params) {
  if (params.d < 1 || params.k < 1) throw DomainError("moment_points: need d >= 1 and k >= 1");
  std::vector<Point> pts;
  for (int i = 0; i <= params.d; ++i) pts.push_back(gamma_point(params.d, params.k + i));
  return pts;
}

BigInt superfactorial(int d) {
  BigInt acc = 1, fact = 1;
  for (int j = 1; j <= d; ++j) {
    fact *= j;
    acc *= fact;
  }
  return acc;
}

namespace {

BigInt factorial(std::int64_t n) {
  BigInt acc = 1;
  for (std::int64_t j = 2; j <= n; ++j) acc *= j;
  return acc;
}

BigInt exact_quotient(const BigInt& num, const BigInt& den) {
  if (num % den != 0) throw std::logic_error("c_closed_form: non-integral quotient " + num.str() + " / " + den.str());
  return num / den;
}

}  // namespace

CVector c_closed_form(const MomentParams& params) {
  const int d = params.d;
  const std::int64_t k = params.k;
  if (d < 1 || k < 1) throw DomainError("c_closed_form: need d >= 1 and k >= 1");
  IntVector c(d + 1);
  for (int i = 0; i <= d; ++i) {
    BigInt left = 1, right = 1;
    for (int l = 0; l < i; ++l) left *= k + l;
    for (int l = i + 1; l <= d; ++l) right *= k + l;
    const BigInt value = exact_quotient(left, factorial(i)) * exact_quotient(right, factorial(d - i));
    c(i) = i % 2 == 0 ? value : BigInt(-value);
  }
  const BigInt s = superfactorial(d);
  CVector cv = build_c(IntVector(c * s));
  if (cv.D != s) throw std::logic_error("c_closed_form: closed form is not primitive");
  return cv;
}

std::int64_t moment_k_for(int d, double p) {
  if (d < 1) throw DimensionError("moment_k_for: d must be >= 1");
  if (!(p > 0) || !std::isfinite(p)) throw DomainError("moment_k_for: p must be positive and finite");
  // min_i |c_i(k)| >= k^d / (d!)^2 grows without bound, so the loop ends.
  for (std::int64_t k = 1;; ++k) {
    const CVector cv = c_closed_form({d, k});
    BigInt smallest = -1;
    for (Eigen::Index i = 0; i < cv.c.size(); ++i) {
      const BigInt a = abs(cv.c(i));
      if (smallest < 0 || a < smallest) smallest = a;
    }
    if (smallest.convert_to<double>() > p / 2) return k;
  }
}

BigInt vandermonde_det(int d, std::int64_t k) {
  if (d < 1) throw DimensionError("vandermonde_det: d must be >= 1");
  IntMatrix m(d + 1, d + 1);
  for (int i = 0; i <= d; ++i) {
    BigInt power = 1;
    for (int j = 0; j <= d; ++j) {
      m(j, i) = power;
      power *= k + i;
    }
  }
  return det_exact(m);
}

bool vandermonde_check(int d, std::int64_t k) { return vandermonde_det(d, k) == superfactorial(d); }

WeakMajorantRatio weak_majorant_ratio(int d, double p, const CoefficientVector& a, const CoefficientVector& A,
                                      const std::vector<std::int64_t>& support, const EvalConfig& cfg) {
  if (d < 1) throw DimensionError("weak_majorant_ratio: d must be >= 1");
  if (!(p >= 2 && p <= 2.0 * d)) throw DomainError("weak_majorant_ratio: p must lie in [2, 2d]");
  if (support.empty() || support.size() > 6) throw DomainError("weak_majorant_ratio: support must have 1 to 6 points");
  if (a.size() != static_cast<Eigen::Index>(support.size()) || A.size() != a.size())
    throw DimensionError("weak_majorant_ratio: coefficient counts must match the support");
  if (std::set<std::int64_t>(support.begin(), support.end()).size() != support.size())
    throw DomainError("weak_majorant_ratio: support points must be distinct");
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(std::abs(a(i)) <= A(i))) throw DomainError("weak_majorant_ratio: need |a_n| <= A_n");
  if (A.isZero()) throw DomainError("weak_majorant_ratio: the majorant is identically zero");

  std::vector<Point> freqs;
  for (auto t : support) freqs.push_back(gamma_point(d, t));

  WeakMajorantRatio out;
  out.bound = std::pow(std::tgamma(d + 1.0), 1.0 / (2.0 * d));
  if (is_even_integer(p)) {
    const int s = static_cast<int>(std::lround(p / 2));
    const Rational num = lp_norm_even_exact(freqs, a, s);
    const Rational den = lp_norm_even_exact(freqs, A, s);
    out.numerator = num.convert_to<double>();
    out.denominator = den.convert_to<double>();
    out.ratio = std::pow(Rational(num / den).convert_to<double>(), 1.0 / p);
    out.method = "even_exact";
  } else {
    const auto qa = lp_norm_quadrature(freqs, a, p, cfg);
    const auto qA = lp_norm_quadrature(freqs, A, p, cfg);
    out.numerator = qa.value;
    out.denominator = qA.value;
    out.ratio = std::pow(qa.value / qA.value, 1.0 / p);
    out.error_estimate =
        out.ratio / p * ((qa.value > 0 ? qa.error_estimate / qa.value : 0) + qA.error_estimate / qA.value);
    out.method = "quadrature";
  }
  return out;
}

std::int64_t vinogradov_diagonal_count(int d, const std::vector<std::int64_t>& tuple) {
  const auto r = static_cast<int>(tuple.size());
  if (r < 1) throw DomainError("vinogradov_diagonal_count: empty tuple");
  if (r > d) throw DomainError("vinogradov_diagonal_count: need r <= d");
  std::map<std::int64_t, int> mult;
  for (auto t : tuple) ++mult[t];
  BigInt count = factorial(r);
  for (const auto& [value, m] : mult) count /= factorial(m);
  return to_int64(count);
}

VinogradovSearch vinogradov_search(int r, int d, std::int64_t radius, std::int64_t budget) {
  if (r < 1 || d < 1) throw DomainError("vinogradov_search: need r >= 1 and d >= 1");
  if (radius < 0) throw DomainError("vinogradov_search: negative radius");
  if (static_cast<long double>(r) * std::pow(static_cast<long double>(radius), d) >
      static_cast<long double>(std::numeric_limits<std::int64_t>::max()) / 2)
    throw DomainError("vinogradov_search: power sums overflow 64 bits");
  const std::int64_t side = 2 * radius + 1;
  std::int64_t total = 1;
  for (int i = 0; i < r; ++i) {
    total *= side;
    if (total > budget) throw BudgetExceeded("vinogradov_search: box exceeds the budget");
  }

  VinogradovSearch out;
  out.tuples = total;
  std::map<std::vector<std::int64_t>, std::vector<std::vector<std::int64_t>>> by_signature;
  std::vector<std::int64_t> n(static_cast<std::size_t>(r), -radius);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::vector<std::int64_t> sig(static_cast<std::size_t>(d), 0);
    for (auto x : n) {
      std::int64_t power = 1;
      for (int j = 0; j < d; ++j) {
        power *= x;
        sig[static_cast<std::size_t>(j)] += power;
      }
    }
    by_signature[sig].push_back(n);
    for (auto& x : n) {
      if (++x <= radius) break;
      x = -radius;
    }
  }
  for (const auto& [sig, group] : by_signature)
    for (const auto& u : group) {
      auto su = u;
      std::sort(su.begin(), su.end());
      for (const auto& w : group) {
        ++out.solutions;
        auto sw = w;
        std::sort(sw.begin(), sw.end());
        if (su != sw) {
          ++out.non_diagonal;
          if (out.examples.size() < 8) out.examples.emplace_back(u, w);
        }
      }
    }
  return out;
}

}  // namespace smp
