#pragma once

#include "smp/integer.hpp"

#include <cstdint>
#include <vector>

namespace smp {

/// Nonnegative exponent tuple; order() is the entry sum |beta|.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::int64_t> entries);

  const std::vector<std::int64_t>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }
  std::int64_t order() const { return order_; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<std::int64_t> entries_;
  std::int64_t order_ = 0;
};

/// binom(p/2, j) = (1 / (2^j j!)) * prod_{l<j} (p - 2l), evaluated in the
/// arithmetic of Real. Exactly zero when p is an even integer and j > p/2.
template <typename Real>
Real gen_binom_t(const Real& p, std::int64_t j) {
  Real acc(1);
  for (std::int64_t l = 0; l < j; ++l) acc *= (p - Real(2 * l)) / Real(2 * (l + 1));
  return acc;
}

/// binom(p/2, j) for real p > 0 (accumulated in long double).
double gen_binom(double p, std::int64_t j);
long double gen_binom_ld(long double p, std::int64_t j);

/// binom(p/2, j) exactly, for rational p.
Rational gen_binom_exact(const Rational& p, std::int64_t j);

/// |beta|! / (beta_0! ... beta_d!).
BigInt multinomial(const MultiIndex& beta);
long double log_multinomial(const MultiIndex& beta);

/// True when p is (numerically exactly) an even positive integer.
bool is_even_integer(double p);

}  // namespace smp
