#pragma once

// The certificate vector c: the primitive integer generator of the null
// space of the d x (d+1) frequency matrix (n_0 ... n_d), its split into
// positive and negative parts, and the exponent ranges in which the
// corresponding Taylor coefficient has the sign that breaks the strict
// majorant inequality.

#include "smp/binomial.hpp"
#include "smp/integer.hpp"

#include <cstdint>
#include <vector>

namespace smp {

struct CVector {
  IntVector v;        ///< cofactor vector, (freq matrix) * v = 0
  BigInt D;           ///< gcd(v) > 0
  IntVector c;        ///< v / D
  MultiIndex c_plus;  ///< positive part
  MultiIndex c_minus; ///< negated negative part
  std::int64_t m_plus = 0;   ///< max(|c_+|, |c_-|)
  std::int64_t m_minus = 0;  ///< min(|c_+|, |c_-|)

  Eigen::Index size() const { return c.size(); }
  /// |c| = |c_+| + |c_-|
  std::int64_t order() const { return c_plus.order() + c_minus.order(); }
  /// c_+ + c_- = (|c_0|, ..., |c_d|)
  MultiIndex abs_c() const;
};

/// v_i = (-1)^i * (minor of [x; n_0 ... n_d] deleting the top row and
/// column i), i.e. det([x; n_0 ... n_d]) = x . v for every x.
IntVector build_v(const std::vector<Point>& freqs);

/// Primitive vector c = v / gcd(v) with its split. Throws DomainError when
/// v = 0 (the frequencies do not determine a one-dimensional null space).
CVector build_c(const IntVector& v);

inline CVector cvector_of(const std::vector<Point>& freqs) { return build_c(build_v(freqs)); }

/// -binom(p/2, |c_-|) * binom(p/2, |c_+|) > 0. Requires p not in 2N.
bool sign_condition(double p, const CVector& cv);

struct OpenInterval {
  double lower = 0;
  double upper = 0;

  bool contains(double p) const { return lower < p && p < upper; }
  double midpoint() const { return 0.5 * (lower + upper); }
  double length() const { return upper - lower; }
  bool empty() const { return !(lower < upper); }
};

/// (2 m_+ - 4, 2 m_+ - 2). Requires m_+ >= 2 and m_+ != m_-.
OpenInterval p_interval(const CVector& cv);

/// The interval (2m, 2m+2) containing p; binomial signs are constant on it.
OpenInterval even_gap_around(double p);

}  // namespace smp
