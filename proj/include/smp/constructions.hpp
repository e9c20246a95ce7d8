#pragma once

// End-to-end counterexample recipes. Each produces a Certificate: the
// frequencies (the distinguished point translated to 0 first), real
// coefficients with a sign chosen against an odd entry of c, an open
// exponent interval on which the strict majorant inequality fails, and the
// numerical margin that certifies the failure at one exponent in it.

#include "smp/cvector.hpp"
#include "smp/frequency_set.hpp"
#include "smp/lattice.hpp"
#include "smp/lp_engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace smp {

enum class TheoremTag { Independent, Abundant, MomentCurve };
enum class CertificateStatus { Verified, AnalyticOnly };
/// How the margin was established: directly integrated difference on a
/// torus grid, or the series for the difference with its tail estimate.
enum class CertificationMethod { Quadrature, Series, None };

std::string to_string(TheoremTag tag);
std::string to_string(CertificateStatus status);
std::string to_string(CertificationMethod method);

/// Points of the original set are n_star + basis * (reduced point).
struct Lift {
  Point n_star;
  IntMatrix basis;
};

struct Certificate {
  static constexpr int kVersion = 1;

  int dim = 0;
  std::vector<Point> frequencies;      ///< 0 (for n_bullet), n_0 - n_bullet, ..., n_d - n_bullet
  std::vector<Point> original_points;  ///< n_bullet, n_0, ..., n_d in the input coordinates
  std::optional<Lift> lift;            ///< set when the input was reduced to full dimension
  CoefficientVector coefficients;      ///< 1 followed by a_0 .. a_d
  CVector cvector;
  OpenInterval p_interval;
  double p_tested = 0;
  double magnitude = 0;
  double lhs = 0;     ///< ||sum |a_n| e(n.x)||_p^p
  double rhs = 0;     ///< ||sum a_n e(n.x)||_p^p
  long double margin = 0;  ///< rhs - lhs, computed directly; may lie below the double range
  long double error_estimate = 0;
  long double main_term = 0;
  double main_term_log10 = 0;
  std::int64_t grid = 0;
  std::int64_t series_cutoff = 0;
  EvalConfig eval_config;
  TheoremTag theorem_tag = TheoremTag::Independent;
  CertificateStatus status = CertificateStatus::AnalyticOnly;
  CertificationMethod method = CertificationMethod::None;
  std::string note;

  /// a_0 .. a_d (the coefficients after the leading 1).
  CoefficientVector signed_part() const { return coefficients.tail(coefficients.size() - 1); }
  /// n_0 .. n_d after translation.
  std::vector<Point> shifted_frequencies() const { return {frequencies.begin() + 1, frequencies.end()}; }
};

/// -magnitude at the first index with odd c_i, +magnitude elsewhere.
CoefficientVector assign_signs(const CVector& cv, double magnitude);

struct MagnitudeSchedule {
  double start = 0.25;
  double floor = 1e-4;  ///< give up once the magnitude drops below this
};

/// Counterexample for a set that is not affinely independent.
/// Throws HypothesisError for affinely independent sets and NumericalError
/// when no magnitude in the schedule certifies.
Certificate construct_independent(const FrequencySet& set, const EvalConfig& cfg, MagnitudeSchedule schedule = {});

struct AbundantResult {
  std::vector<Certificate> certificates;  ///< strictly increasing m_+
  std::vector<Point> tuple;               ///< n_1 .. n_d
  Point n_bullet;
  BigInt v0;  ///< det(n_1 - n_bullet, ..., n_d - n_bullet), bounds every D
  std::size_t candidates_scanned = 0;
  bool complete = false;
  std::string explanation;
};

/// Counterexamples on an affinely abundant set: up to how_many
/// certificates with strictly increasing m_+. Candidates n_0 are streamed
/// from the set, at most scan_budget of them. Certificates that cannot be
/// verified numerically are kept with status AnalyticOnly.
AbundantResult construct_abundant(const FrequencySet& set, std::size_t how_many, const EvalConfig& cfg,
                                  std::size_t scan_budget = 256, MagnitudeSchedule schedule = {});

/// Moment-curve counterexample: {0, gamma(k), ..., gamma(k+d)} with k from the
/// closed forms. Verified numerically when feasible, AnalyticOnly otherwise.
Certificate construct_moment(int d, double p, const EvalConfig& cfg, MagnitudeSchedule schedule = {});

enum class Verdict { True, False, Inconclusive };
std::string to_string(Verdict v);

struct Verification {
  Verdict verdict = Verdict::Inconclusive;
  double p = 0;
  double lhs = 0;
  double rhs = 0;
  long double margin = 0;
  long double error_estimate = 0;
  std::int64_t grid = 0;
  CertificationMethod method = CertificationMethod::None;
  std::string reason;
};

/// Recomputes the comparison at p (default: cert.p_tested). Even integer p
/// is decided exactly; otherwise quadrature, then the difference series when
/// the grid cannot resolve the margin. A true verdict requires the margin to
/// exceed the safety factor times the error estimate.
Verification verify_certificate(const Certificate& cert, const EvalConfig& cfg, std::optional<double> p = std::nullopt);

}  // namespace smp
