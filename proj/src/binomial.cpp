#include "smp/binomial.hpp"

#include "smp/errors.hpp"

#include <cmath>
#include <numeric>

namespace smp {

MultiIndex::MultiIndex(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
  for (auto e : entries_) {
    if (e < 0) throw DomainError("MultiIndex: negative entry");
    order_ += e;
  }
}

double gen_binom(double p, std::int64_t j) { return static_cast<double>(gen_binom_ld(p, j)); }

long double gen_binom_ld(long double p, std::int64_t j) {
  if (j < 0) throw DomainError("gen_binom: j must be >= 0");
  return gen_binom_t<long double>(p, j);
}

Rational gen_binom_exact(const Rational& p, std::int64_t j) {
  if (j < 0) throw DomainError("gen_binom: j must be >= 0");
  return gen_binom_t<Rational>(p, j);
}

BigInt multinomial(const MultiIndex& beta) {
  // Product of binomials C(s_i, beta_i) with running partial sums s_i.
  BigInt result = 1;
  std::int64_t running = 0;
  for (auto b : beta.entries()) {
    for (std::int64_t k = 1; k <= b; ++k) {
      ++running;
      result *= running;
      result /= k;
    }
  }
  return result;
}

long double log_multinomial(const MultiIndex& beta) {
  long double r = std::lgamma(static_cast<long double>(beta.order()) + 1.0L);
  for (auto b : beta.entries()) r -= std::lgamma(static_cast<long double>(b) + 1.0L);
  return r;
}

bool is_even_integer(double p) { return p > 0 && std::fmod(p, 2.0) == 0.0; }

}  // namespace smp
