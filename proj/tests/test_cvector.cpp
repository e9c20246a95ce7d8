#include "doctest.h"
#include "oracles.hpp"

#include "smp/binomial.hpp"
#include "smp/cvector.hpp"
#include "smp/errors.hpp"
#include "smp/lattice.hpp"
#include "smp/moment_curve.hpp"

#include <cmath>
#include <random>

using namespace smp;

namespace {

IntVector ints(std::initializer_list<std::int64_t> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

// d+1 nonzero, affinely independent (det of lifted vectors != 0) frequencies.
std::vector<Point> random_simplex(std::mt19937_64& rng, int d, bool nonzero) {
  for (;;) {
    std::vector<Point> pts;
    for (int i = 0; i <= d; ++i) pts.push_back(oracle::random_ints(rng, static_cast<std::size_t>(d), -6, 6));
    if (nonzero && std::any_of(pts.begin(), pts.end(), [](const Point& p) {
          return std::all_of(p.begin(), p.end(), [](std::int64_t x) { return x == 0; });
        }))
      continue;
    if (lifted_det(pts) != 0) return pts;
  }
}

}  // namespace

TEST_SUITE("cvector") {
  TEST_CASE("build_v examples") {
    CHECK(build_v({{1}, {2}}) == ints({2, -1}));
    const IntVector v = build_v({{1, 1}, {2, 4}, {3, 9}});
    CHECK(v == ints({6, -6, 2}));
    CHECK(sum_of(v) == 2);
    CHECK(sum_of(v) == superfactorial(2));
    const IntVector degenerate = build_v({{0, 0}, {1, 1}, {2, 2}});
    CHECK(sum_of(degenerate) == 0);
    CHECK_THROWS_AS(build_v({{1, 2}, {3, 4}}), DimensionError);
  }

  TEST_CASE("build_v matches the cofactor oracle and lies in the null space") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
      const int d = 1 + trial % 4;
      std::vector<Point> freqs;
      for (int i = 0; i <= d; ++i) freqs.push_back(oracle::random_ints(rng, static_cast<std::size_t>(d), -8, 8));
      const IntVector v = build_v(freqs);
      const auto expected = oracle::cofactor_null_vector(freqs);
      for (int i = 0; i <= d; ++i) CHECK(v(i) == expected[static_cast<std::size_t>(i)]);
      CHECK(IntVector(columns_of(freqs) * v).isZero());
      CHECK(sum_of(v) == lifted_det(freqs));
    }
  }

  TEST_CASE("build_c examples") {
    const CVector a = build_c(ints({2, -1}));
    CHECK(a.c == ints({2, -1}));
    CHECK(a.D == 1);
    CHECK(a.c_plus.entries() == std::vector<std::int64_t>{2, 0});
    CHECK(a.c_minus.entries() == std::vector<std::int64_t>{0, 1});
    CHECK(a.m_plus == 2);
    CHECK(a.m_minus == 1);

    const CVector b = build_c(ints({6, -6, 2}));
    CHECK(b.D == 2);
    CHECK(b.c == ints({3, -3, 1}));
    CHECK(b.c_plus.order() == 4);
    CHECK(b.c_minus.order() == 3);

    const CVector c = build_c(ints({4, 0, -4}));
    CHECK(c.D == 4);
    CHECK(c.c == ints({1, 0, -1}));
    CHECK_THROWS_AS(build_c(ints({0, 0})), DomainError);
  }

  TEST_CASE("CVector invariants") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 200; ++trial) {
      const int d = 1 + trial % 4;
      const auto freqs = random_simplex(rng, d, false);
      const CVector cv = cvector_of(freqs);
      CHECK(IntVector(cv.D * cv.c) == cv.v);
      CHECK(gcd_of(cv.c) == 1);
      CHECK(IntVector(columns_of(freqs) * cv.c).isZero());
      CHECK(sum_of(cv.c) * cv.D == lifted_det(freqs));
      bool has_odd = false;
      for (Eigen::Index i = 0; i < cv.c.size(); ++i) {
        const auto plus = cv.c_plus[static_cast<std::size_t>(i)];
        const auto minus = cv.c_minus[static_cast<std::size_t>(i)];
        CHECK(plus >= 0);
        CHECK(minus >= 0);
        CHECK((plus == 0 || minus == 0));
        CHECK(cv.c(i) == plus - minus);
        if (cv.c(i) % 2 != 0) has_odd = true;
      }
      CHECK(has_odd);
      CHECK(cv.order() == cv.c_plus.order() + cv.c_minus.order());
      CHECK(cv.m_plus == std::max(cv.c_plus.order(), cv.c_minus.order()));
      CHECK(cv.m_minus == std::min(cv.c_plus.order(), cv.c_minus.order()));
    }
  }

  TEST_CASE("nonzero simplices have m_plus at least 2 and |c_+| != |c_-|") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
      const auto freqs = random_simplex(rng, 1 + trial % 3, true);
      const CVector cv = cvector_of(freqs);
      CHECK(cv.m_plus >= 2);
      CHECK(cv.m_plus != cv.m_minus);
    }
  }

  TEST_CASE("gen_binom examples") {
    CHECK(gen_binom(4, 1) == doctest::Approx(2));
    CHECK(gen_binom(1, 2) == doctest::Approx(-0.125));
    CHECK(gen_binom(4, 3) == 0.0);
    CHECK(gen_binom(7, 0) == 1.0);
    CHECK(gen_binom_exact(Rational(1), 2) == Rational(-1, 8));
    CHECK(gen_binom_exact(Rational(3), 2) == Rational(3, 8));
  }

  TEST_CASE("gen_binom agrees with the rational product") {
    for (int num = 1; num < 60; ++num) {
      const Rational p(num, 3);
      for (std::int64_t j = 0; j <= 12; ++j) {
        const double expected = oracle::gen_binom(p, j).convert_to<double>();
        CHECK(gen_binom(p.convert_to<double>(), j) == doctest::Approx(expected).epsilon(1e-13));
        CHECK(gen_binom_exact(p, j) == oracle::gen_binom(p, j));
      }
    }
  }

  TEST_CASE("gen_binom sign pattern") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    int sampled = 0;
    while (sampled < 300) {
      const double p = u(rng);
      if (is_even_integer(p)) continue;
      ++sampled;
      const auto turn = static_cast<std::int64_t>(std::ceil(p / 2));
      for (std::int64_t j = 0; j <= 12; ++j) {
        const double b = gen_binom(p, j);
        if (j <= turn)
          CHECK(b > 0);
        else
          CHECK(((j - turn) % 2 == 1 ? b < 0 : b > 0));
      }
    }
  }

  TEST_CASE("sign_condition examples") {
    const CVector a = build_c(ints({2, -1}));
    CHECK(sign_condition(1, a));
    CHECK_FALSE(sign_condition(3, a));
    CHECK_THROWS_AS(sign_condition(2, a), DomainError);
    CHECK(sign_condition(3, build_c(ints({6, -8, 3}))));
  }

  TEST_CASE("p_interval examples") {
    const auto a = p_interval(build_c(ints({2, -1})));
    CHECK(a.lower == 0);
    CHECK(a.upper == 2);
    const auto b = p_interval(build_c(ints({3, -3, 1})));
    CHECK(b.lower == 4);
    CHECK(b.upper == 6);
    const auto c = p_interval(build_c(ints({1, 1})));
    CHECK(c.lower == 0);
    CHECK(c.upper == 2);
    CHECK_THROWS_AS(p_interval(build_c(ints({1, -1}))), HypothesisError);
  }

  TEST_CASE("the whole p_interval satisfies the sign condition") {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 150; ++trial) {
      const CVector cv = cvector_of(random_simplex(rng, 1 + trial % 3, true));
      const OpenInterval iv = p_interval(cv);
      for (int s = 1; s < 20; ++s) {
        const double p = iv.lower + iv.length() * s / 20.0;
        if (is_even_integer(p)) continue;
        CHECK(sign_condition(p, cv));
        CHECK(gen_binom(p, cv.m_plus) < 0);
        CHECK(gen_binom(p, cv.m_minus) > 0);
      }
    }
  }

  TEST_CASE("multinomial") {
    CHECK(multinomial(MultiIndex({2, 0})) == 1);
    CHECK(multinomial(MultiIndex({1, 1, 1})) == 6);
    CHECK(multinomial(MultiIndex({3, 2})) == 10);
    CHECK(log_multinomial(MultiIndex({30, 20, 10})) ==
          doctest::Approx(std::log(multinomial(MultiIndex({30, 20, 10})).convert_to<double>())));
  }
}
