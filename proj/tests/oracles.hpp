#pragma once

// Independent reference computations used by the tests. Each one is the
// slow, obvious version of what the library does cleverly.

#include "smp/integer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using smp::BigInt;
using smp::Point;
using smp::Rational;

/// Laplace expansion along the first row.
// Entrywise equality; Eigen's operator== trips Boost.Multiprecision's conversion traits.
inline bool same_matrix(const smp::IntMatrix& a, const smp::IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      if (a(r, c) != b(r, c)) return false;
  return true;
}

inline BigInt cofactor_det(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  BigInt acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    const BigInt term = m[0][j] * cofactor_det(minor);
    acc += j % 2 == 0 ? term : BigInt(-term);
  }
  return acc;
}

inline BigInt cofactor_det(const smp::IntMatrix& m) {
  std::vector<std::vector<BigInt>> rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) rows[static_cast<std::size_t>(r)].push_back(m(r, c));
  return cofactor_det(rows);
}

/// Null vector of the d x (d+1) frequency matrix by cofactors along an
/// artificial top row: v_i = (-1)^i det(freqs without column i).
inline std::vector<BigInt> cofactor_null_vector(const std::vector<Point>& freqs) {
  const std::size_t m = freqs.size();
  std::vector<BigInt> v(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (m == 1) {
      v[i] = 1;
      continue;
    }
    std::vector<std::vector<BigInt>> minor(m - 1);
    for (std::size_t r = 0; r + 1 < m; ++r)
      for (std::size_t c = 0; c < m; ++c)
        if (c != i) minor[r].push_back(freqs[c][r]);
    v[i] = i % 2 == 0 ? cofactor_det(minor) : BigInt(-cofactor_det(minor));
  }
  return v;
}

/// Plain rectangle rule on an n^d grid, one complex exponential per term.
inline double brute_lp_norm(const std::vector<Point>& freqs, const std::vector<double>& coeffs, double p,
                            std::int64_t n) {
  const std::size_t d = freqs.front().size();
  std::int64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= n;
  long double acc = 0;
  std::vector<std::int64_t> idx(d, 0);
  for (std::int64_t flat = 0; flat < total; ++flat) {
    std::int64_t rest = flat;
    for (std::size_t i = 0; i < d; ++i) {
      idx[i] = rest % n;
      rest /= n;
    }
    std::complex<double> f = 0;
    for (std::size_t k = 0; k < freqs.size(); ++k) {
      double phase = 0;
      for (std::size_t i = 0; i < d; ++i) phase += static_cast<double>(freqs[k][i] * idx[i]) / static_cast<double>(n);
      f += coeffs[k] * std::polar(1.0, 2 * std::numbers::pi * phase);
    }
    acc += std::pow(std::abs(f), p);
  }
  return static_cast<double>(acc / total);
}

/// ||F||_{2s}^{2s} as the constrained sum over all 2s-tuples (x, y) of
/// frequency indices with x_1 + ... + x_s = y_1 + ... + y_s.
inline Rational collision_power_norm(const std::vector<Point>& freqs, const std::vector<Rational>& coeffs, int s) {
  const std::size_t m = freqs.size();
  const std::size_t d = freqs.front().size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(2 * s), 0);
  Rational acc = 0;
  for (;;) {
    Point balance(d, 0);
    Rational prod = 1;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const std::int64_t sign = k < static_cast<std::size_t>(s) ? 1 : -1;
      for (std::size_t i = 0; i < d; ++i) balance[i] += sign * freqs[idx[k]][i];
      prod *= coeffs[idx[k]];
    }
    if (std::all_of(balance.begin(), balance.end(), [](std::int64_t x) { return x == 0; })) acc += prod;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == m) idx[k++] = 0;
    if (k == idx.size()) return acc;
  }
}

/// binom(p/2, j) straight from the defining product.
inline Rational gen_binom(const Rational& p, std::int64_t j) {
  Rational acc = 1;
  for (std::int64_t l = 0; l < j; ++l) acc *= (p / 2 - l) / Rational(l + 1);
  return acc;
}

/// Composite Simpson on [0, 1] for a 1-periodic integrand.
template <typename F>
double simpson(F&& f, int intervals) {
  const double h = 1.0 / intervals;
  double acc = f(0.0) + f(1.0);
  for (int i = 1; i < intervals; ++i) acc += (i % 2 == 1 ? 4 : 2) * f(i * h);
  return acc * h / 3;
}

inline std::vector<std::int64_t> random_ints(std::mt19937_64& rng, std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> u(lo, hi);
  std::vector<std::int64_t> out(n);
  for (auto& x : out) x = u(rng);
  return out;
}

}  // namespace oracle
