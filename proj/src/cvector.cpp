#include "smp/cvector.hpp"

#include "smp/errors.hpp"
#include "smp/lattice.hpp"

#include <cmath>

namespace smp {

MultiIndex CVector::abs_c() const {
  std::vector<std::int64_t> e(c_plus.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = c_plus[i] + c_minus[i];
  return MultiIndex(std::move(e));
}

IntVector build_v(const std::vector<Point>& freqs) {
  if (freqs.empty()) throw DimensionError("build_v: no frequencies");
  const auto d = static_cast<Eigen::Index>(freqs.front().size());
  if (static_cast<Eigen::Index>(freqs.size()) != d + 1)
    throw DimensionError("build_v: need d+1 = " + std::to_string(d + 1) + " frequencies in Z^" + std::to_string(d) +
                         ", got " + std::to_string(freqs.size()));
  const IntMatrix m = columns_of(freqs);
  IntVector v(d + 1);
  for (Eigen::Index i = 0; i <= d; ++i) {
    IntMatrix minor(d, d);
    for (Eigen::Index j = 0, col = 0; j <= d; ++j)
      if (j != i) minor.col(col++) = m.col(j);
    const BigInt det = d == 0 ? BigInt(1) : det_exact(minor);
    v(i) = (i % 2 == 0) ? det : BigInt(-det);
  }
  return v;
}

CVector build_c(const IntVector& v) {
  CVector cv;
  cv.v = v;
  cv.D = gcd_of(v);
  if (cv.D == 0) throw DomainError("build_c: v = 0, the frequency choice is degenerate");
  cv.c = v / cv.D;
  std::vector<std::int64_t> plus(static_cast<std::size_t>(v.size())), minus(plus.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const std::int64_t ci = to_int64(cv.c(i));
    plus[static_cast<std::size_t>(i)] = ci > 0 ? ci : 0;
    minus[static_cast<std::size_t>(i)] = ci < 0 ? -ci : 0;
  }
  cv.c_plus = MultiIndex(std::move(plus));
  cv.c_minus = MultiIndex(std::move(minus));
  cv.m_plus = std::max(cv.c_plus.order(), cv.c_minus.order());
  cv.m_minus = std::min(cv.c_plus.order(), cv.c_minus.order());
  return cv;
}

bool sign_condition(double p, const CVector& cv) {
  if (!(p > 0)) throw DomainError("sign_condition: p must be positive");
  if (is_even_integer(p)) throw DomainError("sign_condition: p in 2N, both coefficients may vanish");
  return -gen_binom_ld(p, cv.c_minus.order()) * gen_binom_ld(p, cv.c_plus.order()) > 0;
}

OpenInterval p_interval(const CVector& cv) {
  if (cv.m_plus < 2) throw HypothesisError("p_interval: m_+ = " + std::to_string(cv.m_plus) + " < 2");
  if (cv.m_plus == cv.m_minus) throw HypothesisError("p_interval: |c_+| = |c_-|");
  return {2.0 * static_cast<double>(cv.m_plus) - 4.0, 2.0 * static_cast<double>(cv.m_plus) - 2.0};
}

OpenInterval even_gap_around(double p) {
  if (!(p > 0) || is_even_integer(p)) throw DomainError("even_gap_around: p must be positive and not in 2N");
  const double m = std::floor(p / 2.0);
  return {2.0 * m, 2.0 * m + 2.0};
}

}  // namespace smp
