#include "doctest.h"
#include "oracles.hpp"

#include "smp/constructions.hpp"
#include "smp/errors.hpp"
#include "smp/moment_curve.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace smp;

namespace {

CoefficientVector vec(std::initializer_list<double> xs) {
  CoefficientVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Invariants every emitted, verified certificate must satisfy.
void check_certificate(const Certificate& cert) {
  CHECK(cert.p_interval.contains(cert.p_tested));
  CHECK_FALSE(is_even_integer(cert.p_tested));
  CHECK(sign_condition(cert.p_tested, cert.cvector));
  CHECK(cert.frequencies.size() == static_cast<std::size_t>(cert.dim) + 2);
  CHECK(std::all_of(cert.frequencies[0].begin(), cert.frequencies[0].end(), [](std::int64_t x) { return x == 0; }));
  CHECK(cert.coefficients(0) == 1.0);
  if (cert.status == CertificateStatus::Verified) {
    CHECK(cert.margin > 0);
    CHECK(cert.margin > static_cast<long double>(cert.eval_config.margin_safety_factor) * cert.error_estimate);
  }
  // The cvector certifies the translated frequencies.
  const CVector cv = cvector_of(cert.shifted_frequencies());
  CHECK(cv.c == cert.cvector.c);
}

std::vector<Point> random_general_set(std::mt19937_64& rng, int d) {
  for (;;) {
    std::set<Point> seen;
    std::vector<Point> pts;
    while (pts.size() < static_cast<std::size_t>(d) + 2) {
      Point p = oracle::random_ints(rng, static_cast<std::size_t>(d), -10, 10);
      if (seen.insert(p).second) pts.push_back(p);
    }
    if (affine_dimension(pts) == d) return pts;
  }
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("assign_signs") {
    IntVector c(2);
    c << 2, -1;
    CHECK(assign_signs(build_c(c), 0.1) == vec({0.1, -0.1}));
    IntVector c3(3);
    c3 << 3, -3, 1;
    CHECK(assign_signs(build_c(c3), 0.05) == vec({-0.05, 0.05, 0.05}));
    IntVector c1(3);
    c1 << 1, 0, -1;
    CHECK(assign_signs(build_c(c1), 0.2)(0) < 0);
  }

  TEST_CASE("assign_signs makes the main term strictly positive") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Point> freqs;
      for (;;) {
        freqs.clear();
        for (int i = 0; i < 3; ++i) freqs.push_back(oracle::random_ints(rng, 2, -5, 5));
        if (lifted_det(freqs) != 0) break;
      }
      const CVector cv = cvector_of(freqs);
      const CoefficientVector a = assign_signs(cv, 0.1);
      double prod = 1;
      for (Eigen::Index i = 0; i < a.size(); ++i) {
        const std::int64_t e = to_int64(abs(cv.c(i)));
        prod *= std::pow(a(i), static_cast<double>(e));
      }
      CHECK(prod < 0);
    }
  }

  TEST_CASE("construct_independent on {0,1,2}") {
    const EvalConfig cfg;
    const Certificate cert = construct_independent(FrequencySet(1, {{0}, {1}, {2}}), cfg);
    CHECK(cert.frequencies == std::vector<Point>{{0}, {1}, {2}});
    CHECK(cert.p_interval.lower == 0);
    CHECK(cert.p_interval.upper == 2);
    CHECK(cert.p_tested == 1);
    CHECK(cert.coefficients(1) == cert.magnitude);
    CHECK(cert.coefficients(2) == -cert.magnitude);
    CHECK(cert.status == CertificateStatus::Verified);
    CHECK(cert.theorem_tag == TheoremTag::Independent);
    check_certificate(cert);

    // An independent oracle sees rhs > lhs as well.
    std::vector<double> signed_c(cert.coefficients.data(), cert.coefficients.data() + 3), abs_c = signed_c;
    for (auto& x : abs_c) x = std::abs(x);
    const double rhs = oracle::brute_lp_norm(cert.frequencies, signed_c, 1, 8192);
    const double lhs = oracle::brute_lp_norm(cert.frequencies, abs_c, 1, 8192);
    CHECK(rhs - lhs == doctest::Approx(static_cast<double>(cert.margin)).epsilon(1e-4));
  }

  TEST_CASE("construct_independent with one empty half of c") {
    const EvalConfig cfg;
    const Certificate cert = construct_independent(FrequencySet(1, {{0}, {1}, {-1}}), cfg);
    CHECK(cert.cvector.m_minus == 0);
    CHECK(cert.cvector.m_plus == 2);
    CHECK(cert.status == CertificateStatus::Verified);
    check_certificate(cert);
    std::vector<double> signed_c(cert.coefficients.data(), cert.coefficients.data() + 3), abs_c = signed_c;
    for (auto& x : abs_c) x = std::abs(x);
    const double rhs = oracle::brute_lp_norm(cert.frequencies, signed_c, cert.p_tested, 8192);
    const double lhs = oracle::brute_lp_norm(cert.frequencies, abs_c, cert.p_tested, 8192);
    CHECK(rhs - lhs == doctest::Approx(static_cast<double>(cert.margin)).epsilon(1e-4));
  }

  TEST_CASE("construct_independent rejects affinely independent sets") {
    const EvalConfig cfg;
    CHECK_THROWS_AS(construct_independent(FrequencySet(2, {{0, 0}, {1, 0}, {0, 1}}), cfg), HypothesisError);
    CHECK_THROWS_AS(construct_independent(FrequencySet(1, {{4}}), cfg), HypothesisError);
  }

  TEST_CASE("construct_independent reduces lower-dimensional sets") {
    const EvalConfig cfg;
    const Certificate cert = construct_independent(FrequencySet(2, {{1, 1}, {2, 3}, {3, 5}}), cfg);
    REQUIRE(cert.lift.has_value());
    CHECK(cert.dim == 1);
    check_certificate(cert);
    // original = n_bullet + A * (translated reduced frequency)
    for (std::size_t i = 0; i < cert.frequencies.size(); ++i) {
      const IntVector x = to_int_vector(cert.original_points[0]) + cert.lift->basis * to_int_vector(cert.frequencies[i]);
      CHECK(to_point(x) == cert.original_points[i]);
    }
  }

  TEST_CASE("construct_independent succeeds on random sets in dimensions 1 and 2") {
    std::mt19937_64 rng(42);
    const EvalConfig cfg;
    for (int d = 1; d <= 2; ++d)
      for (int trial = 0; trial < 25; ++trial) {
        const auto pts = random_general_set(rng, d);
        Certificate cert;
        REQUIRE_NOTHROW(cert = construct_independent(FrequencySet(d, pts), cfg));
        CHECK(cert.status == CertificateStatus::Verified);
        check_certificate(cert);
      }
  }

  TEST_CASE("construct_independent succeeds on random sets in dimension 3") {
    std::mt19937_64 rng(43);
    EvalConfig cfg;
    cfg.grid_points_per_axis = 64;
    for (int trial = 0; trial < 25; ++trial) {
      const auto pts = random_general_set(rng, 3);
      Certificate cert;
      REQUIRE_NOTHROW(cert = construct_independent(FrequencySet(3, pts), cfg));
      CHECK(cert.status == CertificateStatus::Verified);
      check_certificate(cert);
    }
  }

  TEST_CASE("verify_certificate") {
    EvalConfig cfg;
    const Certificate cert = construct_independent(FrequencySet(1, {{0}, {1}, {2}}), cfg);
    EvalConfig finer = cfg;
    finer.grid_points_per_axis = 4 * cfg.grid_points_per_axis;
    const Verification ok = verify_certificate(cert, finer);
    CHECK(ok.verdict == Verdict::True);
    CHECK(ok.margin > 0);

    Certificate tampered = cert;
    tampered.coefficients = tampered.coefficients.cwiseAbs();
    const Verification bad = verify_certificate(tampered, cfg);
    CHECK(bad.verdict == Verdict::False);

    const Verification even = verify_certificate(cert, cfg, 2.0);
    CHECK(even.verdict == Verdict::False);
    CHECK(even.margin <= 0);

    // Outside the interval the sign condition fails and the inequality reverses.
    const Verification outside = verify_certificate(cert, cfg, 3.0);
    CHECK(outside.verdict == Verdict::False);
  }

  TEST_CASE("series certificates verify") {
    std::mt19937_64 rng(44);
    EvalConfig cfg;
    cfg.grid_points_per_axis = 64;
    int series = 0;
    for (int trial = 0; trial < 10 && series < 3; ++trial) {
      const Certificate cert = construct_independent(FrequencySet(2, random_general_set(rng, 2)), cfg);
      if (cert.method != CertificationMethod::Series) continue;
      ++series;
      const Verification v = verify_certificate(cert, cfg);
      CHECK(v.verdict == Verdict::True);
      CHECK(std::fabs(v.margin - cert.margin) <= 1e-6L * cert.margin);
    }
    CHECK(series > 0);
  }

  TEST_CASE("construct_abundant on the moment curve") {
    EvalConfig cfg;
    cfg.grid_points_per_axis = 64;
    const FrequencySet curve(2, {}, Generator::moment_curve(2));
    const AbundantResult res = construct_abundant(curve, 3, cfg, 64);
    REQUIRE(res.certificates.size() == 3);
    CHECK(res.complete);
    for (std::size_t i = 0; i < res.certificates.size(); ++i) {
      const Certificate& c = res.certificates[i];
      check_certificate(c);
      CHECK(c.theorem_tag == TheoremTag::Abundant);
      CHECK(c.cvector.D <= abs(res.v0));
      CHECK(c.cvector.v(0) == res.v0);
      if (i > 0) {
        CHECK(c.cvector.m_plus > res.certificates[i - 1].cvector.m_plus);
        CHECK(c.p_interval.lower >= res.certificates[i - 1].p_interval.upper);
      }
    }
    CHECK(res.certificates.front().status == CertificateStatus::Verified);
  }

  TEST_CASE("construct_abundant errors") {
    const EvalConfig cfg;
    CHECK_THROWS_AS(construct_abundant(FrequencySet(1, {{0}, {1}, {2}}), 2, cfg), HypothesisError);
    const FrequencySet line(2, {}, Generator::arith_progression({0, 0}, {1, 1}));
    CHECK_THROWS_AS(construct_abundant(line, 2, cfg), HypothesisError);
  }

  TEST_CASE("construct_abundant reports a partial list when the budget runs out") {
    EvalConfig cfg;
    cfg.grid_points_per_axis = 64;
    const FrequencySet curve(2, {}, Generator::moment_curve(2));
    const AbundantResult res = construct_abundant(curve, 50, cfg, 16);
    CHECK_FALSE(res.complete);
    CHECK(res.certificates.size() < 50);
    CHECK_FALSE(res.explanation.empty());
  }

  TEST_CASE("construct_moment") {
    EvalConfig cfg;
    cfg.grid_points_per_axis = 64;
    const Certificate one = construct_moment(1, 1.0, cfg);
    CHECK(one.frequencies == std::vector<Point>{{0}, {1}, {2}});
    CHECK(one.status == CertificateStatus::Verified);
    check_certificate(one);

    const Certificate two = construct_moment(2, 3.0, cfg);
    IntVector c(3);
    c << 6, -8, 3;
    CHECK(two.cvector.c == c);
    CHECK(two.shifted_frequencies() == std::vector<Point>{{2, 4}, {3, 9}, {4, 16}});
    check_certificate(two);

    CHECK_THROWS_AS(construct_moment(2, 4.0, cfg), DomainError);

    const Certificate big = construct_moment(5, 1.0, cfg);
    CHECK(big.status == CertificateStatus::AnalyticOnly);
    CHECK(big.note.rfind("constructed, analytically justified, not desk-verified", 0) == 0);
    CHECK(sign_condition(1.0, big.cvector));
  }

  TEST_CASE("moment c has unit sum and odd order") {
    for (int d = 1; d <= 5; ++d)
      for (std::int64_t k = 1; k <= 20; ++k) {
        const CVector cv = c_closed_form({d, k});
        CHECK(sum_of(cv.c) == 1);
        CHECK(cv.order() % 2 == 1);
      }
  }
}
