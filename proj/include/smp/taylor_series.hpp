#pragma once

// Double binomial expansion of |1 + sum_i b_i e(n_i.x)|^p around b = 0:
//
//   sum_{beta,gamma} binom(p/2,|beta|) binom(p/2,|gamma|)
//                    multinom(beta) multinom(gamma) b^(beta+gamma) I(beta-gamma)
//
// where I(u) = 1 iff sum_i u_i n_i = 0. The indicator is resolved through an
// integer basis of the relation lattice {u : sum_i u_i n_i = 0}, so only
// surviving pairs are visited.

#include "smp/binomial.hpp"
#include "smp/errors.hpp"
#include "smp/lattice.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace smp {

enum class TaylorMode {
  Diagonal,         ///< no relations: only beta = gamma survives
  SingleGenerator,  ///< relations are the multiples of one primitive c
  General           ///< pairs grouped by sum_i beta_i n_i
};

std::string to_string(TaylorMode mode);

template <typename Real>
struct TaylorResult {
  Real value{0};
  Real truncation_estimate{0};  ///< 10 x sum of |terms| in the two highest degrees kept
  bool truncated = true;        ///< false when the kept terms are the whole series
  TaylorMode mode = TaylorMode::Diagonal;
  std::int64_t cutoff = 0;
  std::size_t terms = 0;
};

/// (signed b) series minus (|b|) series, term by term.
template <typename Real>
struct SeriesDifference {
  Real difference{0};
  Real truncation_estimate{0};
  TaylorMode mode = TaylorMode::Diagonal;
  std::int64_t cutoff = 0;
  std::size_t terms = 0;
};

namespace detail {

template <typename Real>
Real abs_real(const Real& x) {
  return x < 0 ? Real(-x) : x;
}

template <typename Real>
Real to_real(const BigInt& x) {
  if constexpr (std::is_floating_point_v<Real>)
    return x.template convert_to<Real>();
  else
    return Real(x);
}

template <typename Real>
Real ipow(Real base, std::int64_t e) {
  Real acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

// Calls f(entries, order) for every multi-index of length m with order <= max_order.
template <typename F>
void for_each_multi_index(std::size_t m, std::int64_t max_order, F&& f) {
  if (max_order < 0) return;
  std::vector<std::int64_t> e(m, 0);
  if (m == 0) {
    f(e, std::int64_t{0});
    return;
  }
  auto rec = [&](auto&& self, std::size_t i, std::int64_t left, std::int64_t used) -> void {
    if (i + 1 == m) {
      for (std::int64_t v = 0; v <= left; ++v) {
        e[i] = v;
        f(e, used + v);
      }
      e[i] = 0;
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      e[i] = v;
      self(self, i + 1, left - v, used + v);
    }
    e[i] = 0;
  };
  rec(rec, 0, max_order, 0);
}

struct RelationLattice {
  TaylorMode mode = TaylorMode::Diagonal;
  std::vector<std::int64_t> generator;  ///< c, for SingleGenerator
};

RelationLattice relation_lattice(const std::vector<Point>& freqs);

// Visits every surviving (beta, gamma) with |beta| + |gamma| <= cutoff as
// visit(degree, magnitude, sign): magnitude is the term evaluated at |b|
// (it carries the binomial signs), sign is the sign of b^(beta+gamma).
// negative_only skips blocks whose terms all have sign +1.
template <typename Real, typename Visit>
TaylorMode visit_terms(const std::vector<Point>& freqs, const Vector<Real>& b, const Real& p, std::int64_t cutoff,
                       Visit&& visit, bool negative_only = false) {
  const std::size_t m = freqs.size();
  if (static_cast<std::size_t>(b.size()) != m) throw DimensionError("taylor: coefficient count differs from frequency count");
  std::vector<Real> mag(m);
  std::vector<int> sgn(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Real& bi = b(static_cast<Eigen::Index>(i));
    mag[i] = abs_real(bi);
    sgn[i] = bi < 0 ? -1 : 1;
  }
  std::vector<Real> binom(static_cast<std::size_t>(cutoff) + 1);
  binom[0] = Real(1);
  for (std::int64_t j = 1; j <= cutoff; ++j)
    binom[static_cast<std::size_t>(j)] = binom[static_cast<std::size_t>(j - 1)] * (p - Real(2 * (j - 1))) / Real(2 * j);

  // Builtin floats overflow a factorial table early; other types take it.
  std::vector<Real> fact;
  if constexpr (!std::is_floating_point_v<Real>) {
    fact.resize(static_cast<std::size_t>(cutoff) + 1);
    fact[0] = Real(1);
    for (std::int64_t j = 1; j <= cutoff; ++j) fact[static_cast<std::size_t>(j)] = fact[static_cast<std::size_t>(j - 1)] * Real(j);
  }
  auto multi = [&](const std::vector<std::int64_t>& e) {
    if constexpr (std::is_floating_point_v<Real>) {
      return to_real<Real>(multinomial(MultiIndex(e)));
    } else {
      std::int64_t n = 0;
      Real den(1);
      for (auto v : e) {
        n += v;
        den *= fact[static_cast<std::size_t>(v)];
      }
      return Real(fact[static_cast<std::size_t>(n)] / den);
    }
  };
  auto power_of = [&](const std::vector<std::int64_t>& e) {
    Real acc(1);
    for (std::size_t i = 0; i < m; ++i)
      if (e[i] != 0) acc *= ipow(mag[i], e[i]);
    return acc;
  };
  auto sign_of = [&](const std::vector<std::int64_t>& e) {
    int s = 1;
    for (std::size_t i = 0; i < m; ++i)
      if (sgn[i] < 0 && e[i] % 2 != 0) s = -s;
    return s;
  };

  const RelationLattice lattice = relation_lattice(freqs);
  switch (lattice.mode) {
    case TaylorMode::Diagonal:
      if (negative_only) break;
      for_each_multi_index(m, cutoff / 2, [&](const std::vector<std::int64_t>& beta, std::int64_t order) {
        const Real x = binom[static_cast<std::size_t>(order)] * multi(beta);
        std::vector<std::int64_t> twice(beta);
        for (auto& v : twice) v *= 2;
        visit(2 * order, Real(x * x * power_of(twice)), 1);
      });
      break;
    case TaylorMode::SingleGenerator: {
      const auto& c = lattice.generator;
      std::int64_t c_order = 0;
      for (auto ci : c) c_order += ci < 0 ? -ci : ci;
      const std::int64_t kmax = cutoff / c_order;
      for (std::int64_t k = -kmax; k <= kmax; ++k) {
        std::vector<std::int64_t> beta0(m, 0), gamma0(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
          const std::int64_t v = k * c[i];
          (v > 0 ? beta0[i] : gamma0[i]) = v > 0 ? v : -v;
        }
        // delta enters beta + gamma twice, so the sign is fixed by k c.
        std::vector<std::int64_t> shift(m);
        for (std::size_t i = 0; i < m; ++i) shift[i] = beta0[i] + gamma0[i];
        if (negative_only && sign_of(shift) > 0) continue;
        const std::int64_t base = (k < 0 ? -k : k) * c_order;
        for_each_multi_index(m, (cutoff - base) / 2, [&](const std::vector<std::int64_t>& delta, std::int64_t order) {
          std::vector<std::int64_t> beta(beta0), gamma(gamma0), both(m);
          for (std::size_t i = 0; i < m; ++i) {
            beta[i] += delta[i];
            gamma[i] += delta[i];
            both[i] = beta[i] + gamma[i];
          }
          std::int64_t ob = 0, og = 0;
          for (std::size_t i = 0; i < m; ++i) {
            ob += beta[i];
            og += gamma[i];
          }
          const Real x = binom[static_cast<std::size_t>(ob)] * binom[static_cast<std::size_t>(og)] * multi(beta) *
                         multi(gamma) * power_of(both);
          visit(base + 2 * order, x, sign_of(both));
        });
      }
      break;
    }
    case TaylorMode::General: {
      struct Half {
        std::vector<std::int64_t> exps;
        std::int64_t order;
        Real value;
      };
      std::map<Point, std::vector<Half>> groups;
      const std::size_t d = freqs.empty() ? 0 : freqs.front().size();
      for_each_multi_index(m, cutoff, [&](const std::vector<std::int64_t>& beta, std::int64_t order) {
        Point key(d, 0);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < d; ++j) key[j] += beta[i] * freqs[i][j];
        const Real x = binom[static_cast<std::size_t>(order)] * multi(beta) * power_of(beta);
        groups[key].push_back({beta, order, x});
      });
      std::vector<std::int64_t> both(m);
      for (const auto& [key, halves] : groups)
        for (const auto& hb : halves)
          for (const auto& hg : halves) {
            if (hb.order + hg.order > cutoff) continue;
            for (std::size_t i = 0; i < m; ++i) both[i] = hb.exps[i] + hg.exps[i];
            visit(hb.order + hg.order, Real(hb.value * hg.value), sign_of(both));
          }
      break;
    }
  }
  return lattice.mode;
}

template <typename Real>
Real top_two_degrees(const std::map<std::int64_t, Real>& abs_by_degree) {
  Real acc(0);
  int taken = 0;
  for (auto it = abs_by_degree.rbegin(); it != abs_by_degree.rend() && taken < 2; ++it, ++taken) acc += it->second;
  return acc;
}

template <typename Real>
void check_convergence(const Vector<Real>& b, const Real& p, bool even_p) {
  Real total(0);
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    const Real a = abs_real(b(i));
    if (!(a < Real(1))) throw DomainError("taylor: |b_i| >= 1 is outside the convergence domain");
    total += a;
  }
  if (!(p > Real(0))) throw DomainError("taylor: p must be positive");
  if (!even_p && !(total < Real(1)))
    throw DomainError("taylor: sum |b_i| >= 1, the binomial series is not absolutely convergent");
}

}  // namespace detail

/// Truncated series for ||1 + sum_i b_i e(n_i.x)||_p^p keeping total degree
/// |beta| + |gamma| <= cutoff. For even p the series is a polynomial and is
/// exact once cutoff >= p.
template <typename Real>
TaylorResult<Real> lp_norm_taylor(const std::vector<Point>& freqs, const Vector<Real>& b, const Real& p,
                                  std::int64_t cutoff) {
  if (cutoff < 0) throw DomainError("taylor: negative cutoff");
  const double p_double = [&] {
    if constexpr (std::is_floating_point_v<Real>)
      return static_cast<double>(p);
    else
      return p.template convert_to<double>();
  }();
  bool even_p = false;
  if constexpr (std::is_floating_point_v<Real>)
    even_p = is_even_integer(p_double);
  else
    even_p = denominator(p) == 1 && numerator(p) % 2 == 0;
  detail::check_convergence(b, p, even_p);

  TaylorResult<Real> out;
  out.cutoff = cutoff;
  std::map<std::int64_t, Real> abs_by_degree;
  out.mode = detail::visit_terms(freqs, b, p, cutoff, [&](std::int64_t degree, const Real& x, int sign) {
    const Real term = sign < 0 ? Real(-x) : x;
    out.value += term;
    abs_by_degree[degree] += detail::abs_real(term);
    ++out.terms;
  });
  if (even_p && Real(cutoff) >= p) {
    out.truncated = false;
  } else {
    out.truncation_estimate = Real(10) * detail::top_two_degrees(abs_by_degree);
  }
  return out;
}

/// Series for ||1 + sum b_i e(n_i.x)||_p^p - ||1 + sum |b_i| e(n_i.x)||_p^p.
/// Only terms where b^(beta+gamma) < 0 contribute, each as -2 x (term at |b|),
/// so the difference is summed without cancellation between the two norms.
template <typename Real>
SeriesDifference<Real> series_difference(const std::vector<Point>& freqs, const Vector<Real>& b, const Real& p,
                                         std::int64_t cutoff) {
  if (cutoff < 0) throw DomainError("taylor: negative cutoff");
  detail::check_convergence(b, p, false);
  SeriesDifference<Real> out;
  out.cutoff = cutoff;
  std::map<std::int64_t, Real> abs_by_degree;
  out.mode = detail::visit_terms(freqs, b, p, cutoff, [&](std::int64_t degree, const Real& x, int sign) {
    if (sign > 0) return;
    const Real term = Real(-2) * x;
    out.difference += term;
    abs_by_degree[degree] += detail::abs_real(term);
    ++out.terms;
  }, true);
  out.truncation_estimate = Real(10) * detail::top_two_degrees(abs_by_degree);
  return out;
}

}  // namespace smp
