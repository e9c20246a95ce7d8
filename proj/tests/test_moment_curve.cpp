#include "doctest.h"
#include "oracles.hpp"

#include "smp/errors.hpp"
#include "smp/lattice.hpp"
#include "smp/moment_curve.hpp"

#include <cmath>
#include <random>

using namespace smp;

TEST_SUITE("moment_curve") {
  TEST_CASE("gamma_point") {
    CHECK(gamma_point(3, 2) == Point{2, 4, 8});
    CHECK(gamma_point(2, 3) == Point{3, 9});
    CHECK(gamma_point(1, -7) == Point{-7});
    CHECK(gamma_point(3, -2) == Point{-2, 4, -8});
  }

  TEST_CASE("c_closed_form examples") {
    IntVector a(3), b(3);
    a << 3, -3, 1;
    b << 6, -8, 3;
    CHECK(c_closed_form({2, 1}).c == a);
    CHECK(c_closed_form({2, 2}).c == b);
    const CVector cv = c_closed_form({2, 2});
    CHECK(cv.c_plus.order() == 9);
    CHECK(cv.c_minus.order() == 8);
  }

  TEST_CASE("closed forms match the cofactor construction") {
    for (int d = 1; d <= 5; ++d) {
      BigInt fact_sq = 1;
      for (int j = 2; j <= d; ++j) fact_sq *= j;
      fact_sq *= fact_sq;
      for (std::int64_t k = 1; k <= 20; ++k) {
        const CVector closed = c_closed_form({d, k});
        std::vector<Point> pts;
        for (std::int64_t t = k; t <= k + d; ++t) pts.push_back(gamma_point(d, t));
        const auto v = oracle::cofactor_null_vector(pts);
        IntVector expected(d + 1);
        for (int i = 0; i <= d; ++i) expected(i) = v[static_cast<std::size_t>(i)];
        CHECK(closed.v == expected);
        CHECK(sum_of(closed.c) == 1);
        BigInt kd = 1;
        for (int j = 0; j < d; ++j) kd *= k;
        for (Eigen::Index i = 0; i <= d; ++i) CHECK(abs(closed.c(i)) * fact_sq >= kd);
      }
    }
  }

  TEST_CASE("moment_k_for") {
    CHECK(moment_k_for(2, 3) == 2);
    CHECK(moment_k_for(1, 1) == 1);
    for (int d = 1; d <= 4; ++d)
      for (double p : {0.5, 1.0, 3.0, 7.0, 13.0}) {
        const std::int64_t k = moment_k_for(d, p);
        auto smallest = [&](std::int64_t kk) {
          const CVector cv = c_closed_form({d, kk});
          BigInt m = abs(cv.c(0));
          for (Eigen::Index i = 1; i < cv.c.size(); ++i) m = std::min(m, BigInt(abs(cv.c(i))));
          return m.convert_to<double>();
        };
        CHECK(smallest(k) > p / 2);
        if (k > 1) CHECK(smallest(k - 1) <= p / 2);
      }
  }

  TEST_CASE("vandermonde") {
    CHECK(vandermonde_det(1, 9) == 1);
    CHECK(vandermonde_det(3, 5) == 12);
    CHECK(vandermonde_det(4, 1) == 288);
    CHECK(superfactorial(4) == 288);
    for (int d = 1; d <= 6; ++d)
      for (std::int64_t k : {1, 2, 7, 50}) CHECK(vandermonde_check(d, k));
    IntMatrix m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(j, i) = BigInt(static_cast<std::int64_t>(std::pow(4 + i, j)));
    CHECK(oracle::cofactor_det(m) == vandermonde_det(2, 4));
  }

  TEST_CASE("weak majorant examples") {
    const EvalConfig cfg;
    const std::vector<std::int64_t> support{1, 2, 3, 4, 5};
    Eigen::VectorXd A(5), a(5);
    A << 1, 0.5, 0.8, 0.3, 0.9;
    for (double p : {2.0, 3.0, 4.0}) {
      const auto same = weak_majorant_ratio(2, p, A, A, support, cfg);
      CHECK(same.ratio == doctest::Approx(1).epsilon(1e-9));
    }
    a << 0.5, -0.5, 0.2, -0.3, 0.9;
    const auto parseval = weak_majorant_ratio(2, 2, a, A, support, cfg);
    CHECK(parseval.ratio <= 1.0);
    CHECK(parseval.ratio == doctest::Approx(std::sqrt(a.squaredNorm() / A.squaredNorm())).epsilon(1e-12));
    CHECK_THROWS_AS(weak_majorant_ratio(2, 5, a, A, support, cfg), DomainError);
    CHECK_THROWS_AS(weak_majorant_ratio(2, 1.5, a, A, support, cfg), DomainError);
    Eigen::VectorXd too_big = A;
    too_big(0) = 2;
    CHECK_THROWS_AS(weak_majorant_ratio(2, 3, too_big, A, support, cfg), DomainError);
  }

  TEST_CASE("weak majorant ratio stays within (d!)^(1/2d) under sign flips") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const EvalConfig cfg;
    const std::vector<std::int64_t> support{1, 2, 3, 4, 5};
    const double bound = std::pow(2.0, 0.25);
    for (double p : {2.0, 3.0, 4.0})
      for (int trial = 0; trial < 25; ++trial) {
        Eigen::VectorXd A(5), a(5);
        for (int i = 0; i < 5; ++i) {
          A(i) = 0.1 + unit(rng);
          a(i) = unit(rng) < 0.5 ? -A(i) : A(i);
        }
        const auto r = weak_majorant_ratio(2, p, a, A, support, cfg);
        CHECK(r.bound == doctest::Approx(bound));
        CHECK(r.ratio <= bound + 1e-6);
        // Equal moduli: at p = 2 the ratio is exactly 1.
        if (p == 2.0) CHECK(r.ratio == doctest::Approx(1).epsilon(1e-12));
      }
  }

  TEST_CASE("vinogradov diagonal count") {
    CHECK(vinogradov_diagonal_count(3, {1, 2, 3}) == 6);
    CHECK(vinogradov_diagonal_count(3, {4, 4, 4}) == 1);
    CHECK(vinogradov_diagonal_count(3, {4, 4, 1}) == 3);
    CHECK_THROWS_AS(vinogradov_diagonal_count(2, {1, 2, 3}), DomainError);
  }

  TEST_CASE("vinogradov systems with r <= d have only diagonal solutions") {
    for (int d = 1; d <= 3; ++d)
      for (int r = 1; r <= d; ++r) {
        const auto s = vinogradov_search(r, d, 5);
        CHECK(s.non_diagonal == 0);
        // Every solution is a permutation, so the brute-force total is the sum of diagonal counts.
        std::int64_t diagonal = 0;
        std::vector<std::int64_t> t(static_cast<std::size_t>(r), -5);
        for (std::int64_t i = 0; i < s.tuples; ++i) {
          diagonal += vinogradov_diagonal_count(d, t);
          for (auto& x : t) {
            if (++x <= 5) break;
            x = -5;
          }
        }
        CHECK(s.solutions == diagonal);
      }
    // r = d + 1 has non-diagonal solutions, e.g. 0 + 3 = 1 + 2 when d = 1.
    CHECK(vinogradov_search(2, 1, 5).non_diagonal > 0);
    CHECK_THROWS_AS(vinogradov_search(4, 3, 50, 1000), BudgetExceeded);
  }
}
