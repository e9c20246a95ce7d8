#pragma once

// Uniform tensor rectangle rule on [0,1)^d for integrands built from the
// characters e(n.x), n in a fixed frequency list. At grid point x = i/N the
// character e(n.x) is the root of unity w^((n.i) mod N), so each point
// costs one integer dot product and one table lookup per frequency.
//
// The grid is cut into fixed-size chunks that are summed pairwise; chunk
// sums are then combined pairwise in chunk order. The result is therefore
// bit-identical for any number of worker threads.

#include "smp/integer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <thread>
#include <vector>

namespace smp::quadrature {

inline constexpr std::int64_t kChunk = 4096;

/// Sums of K integrand components over a grid, with the matching sums of
/// absolute values used to bound rounding error.
template <typename Real, std::size_t K = 1>
struct GridSums {
  std::array<Real, K> sum{};
  std::array<Real, K> abs_sum{};
  std::int64_t points = 0;

  Real mean(std::size_t k = 0) const { return sum[k] / static_cast<Real>(points); }
  Real abs_mean(std::size_t k = 0) const { return abs_sum[k] / static_cast<Real>(points); }
};

namespace detail {

template <typename Real>
Real pairwise_sum(std::vector<Real>& v) {
  if (v.empty()) return Real(0);
  std::size_t n = v.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2 == 1) v[half] = v[n - 1];
    n = half + n % 2;
  }
  return v[0];
}

inline std::int64_t checked_power(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (std::int64_t{1} << 40) / std::max<std::int64_t>(base, 1)) return -1;
    r *= base;
  }
  return r;
}

}  // namespace detail

/// Table of e(k/N), k = 0..N-1.
template <typename Real>
std::vector<std::complex<Real>> roots_of_unity(std::int64_t n) {
  std::vector<std::complex<Real>> w(static_cast<std::size_t>(n));
  const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  for (std::int64_t k = 0; k < n; ++k) {
    const Real t = two_pi * static_cast<Real>(k) / static_cast<Real>(n);
    w[static_cast<std::size_t>(k)] = {std::cos(t), std::sin(t)};
  }
  return w;
}

/// Number of grid points N^dim, or -1 if it exceeds 2^40.
inline std::int64_t grid_size(std::int64_t n, int dim) { return detail::checked_power(n, dim); }

/// Sums integrand(phases, out) over the N^dim grid, where phases[k] =
/// e(freqs[k].x) and the integrand writes K values to out[0..K-1].
template <typename Real, std::size_t K, typename Integrand>
GridSums<Real, K> grid_sums(const std::vector<Point>& freqs, int dim, std::int64_t n, unsigned workers,
                            const Integrand& integrand) {
  const std::int64_t total = grid_size(n, dim);
  const auto table = roots_of_unity<Real>(n);
  const std::size_t nf = freqs.size();
  const auto ud = static_cast<std::size_t>(dim);
  // Frequencies reduced mod N so dot products stay small.
  std::vector<std::int64_t> reduced(nf * ud);
  for (std::size_t k = 0; k < nf; ++k)
    for (std::size_t j = 0; j < ud; ++j) {
      const std::int64_t r = freqs[k][j] % n;
      reduced[k * ud + j] = r < 0 ? r + n : r;
    }

  const std::int64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<std::array<Real, K>> chunk_sum(static_cast<std::size_t>(chunks)), chunk_abs(chunk_sum.size());

  auto worker = [&](unsigned id, unsigned stride) {
    std::array<std::vector<Real>, K> vals, avals;
    std::vector<std::complex<Real>> phases(nf);
    std::vector<std::int64_t> idx(std::max<std::size_t>(ud, 1));
    std::array<Real, K> out{};
    for (std::int64_t c = id; c < chunks; c += stride) {
      const std::int64_t begin = c * kChunk;
      const std::int64_t end = std::min(total, begin + kChunk);
      for (std::size_t k = 0; k < K; ++k) {
        vals[k].clear();
        avals[k].clear();
      }
      std::int64_t rest = begin;
      for (std::size_t j = 0; j < ud; ++j) {
        idx[j] = rest % n;
        rest /= n;
      }
      for (std::int64_t l = begin; l < end; ++l) {
        for (std::size_t k = 0; k < nf; ++k) {
          std::int64_t acc = 0;
          for (std::size_t j = 0; j < ud; ++j) acc += reduced[k * ud + j] * idx[j];
          phases[k] = table[static_cast<std::size_t>(acc % n)];
        }
        integrand(phases.data(), out.data());
        for (std::size_t k = 0; k < K; ++k) {
          vals[k].push_back(out[k]);
          avals[k].push_back(std::abs(out[k]));
        }
        for (std::size_t j = 0; j < ud; ++j) {
          if (++idx[j] < n) break;
          idx[j] = 0;
        }
      }
      for (std::size_t k = 0; k < K; ++k) {
        chunk_sum[static_cast<std::size_t>(c)][k] = detail::pairwise_sum(vals[k]);
        chunk_abs[static_cast<std::size_t>(c)][k] = detail::pairwise_sum(avals[k]);
      }
    }
  };

  unsigned threads = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
  if (chunks < 16) threads = 1;
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, chunks));
  if (threads <= 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
    for (auto& th : pool) th.join();
  }

  GridSums<Real, K> out;
  std::vector<Real> column(static_cast<std::size_t>(chunks));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t c = 0; c < column.size(); ++c) column[c] = chunk_sum[c][k];
    out.sum[k] = detail::pairwise_sum(column);
    for (std::size_t c = 0; c < column.size(); ++c) column[c] = chunk_abs[c][k];
    out.abs_sum[k] = detail::pairwise_sum(column);
  }
  out.points = total;
  return out;
}

}  // namespace smp::quadrature
