#include "smp/constructions.hpp"

#include "smp/errors.hpp"
#include "smp/moment_curve.hpp"
#include "smp/torus_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace smp {

std::string to_string(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::Independent:
      return "independent";
    case TheoremTag::Abundant:
      return "abundant";
    case TheoremTag::MomentCurve:
      return "moment_curve";
  }
  return "unknown";
}

std::string to_string(CertificateStatus status) {
  return status == CertificateStatus::Verified ? "verified" : "analytic_only";
}

std::string to_string(CertificationMethod method) {
  switch (method) {
    case CertificationMethod::Quadrature:
      return "quadrature";
    case CertificationMethod::Series:
      return "series";
    case CertificationMethod::None:
      return "none";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

CoefficientVector assign_signs(const CVector& cv, double magnitude) {
  if (!(magnitude > 0)) throw DomainError("assign_signs: magnitude must be positive");
  CoefficientVector a = CoefficientVector::Constant(cv.c.size(), magnitude);
  for (Eigen::Index i = 0; i < cv.c.size(); ++i)
    if (cv.c(i) % 2 != 0) {
      a(i) = -magnitude;
      return a;
    }
  throw std::logic_error("assign_signs: c has no odd entry");
}

namespace {

// Below this the difference is lost in long double rounding of O(1) integrands.
constexpr double kQuadratureLog10Floor = -16.0;
// Margins are stored as long doubles.
constexpr double kLongDoubleLog10Floor = -4900.0;

bool grid_fits(int dim, const EvalConfig& cfg) {
  const std::int64_t total = quadrature::grid_size(cfg.grid_points_per_axis, dim);
  return total >= 0 && total <= cfg.max_total_points;
}

Point subtract(const Point& a, const Point& b) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

struct Attempt {
  bool certified = false;
  std::string diagnostics;
};

// One certification attempt at fixed coefficients; fills the numeric fields of cert.
Attempt certify_at(Certificate& cert, const CoefficientVector& a, const EvalConfig& cfg) {
  const auto freqs = cert.shifted_frequencies();
  const double p = cert.p_tested;
  const double safety = cfg.margin_safety_factor;
  const MainTerm main = main_term(freqs, a, p);
  cert.main_term = main.value;
  cert.main_term_log10 = main.log10_abs;
  std::ostringstream diag;
  diag << "magnitude " << std::abs(a(0)) << ": log10|main term| = " << main.log10_abs;

  bool have_norms = false;
  if (main.log10_abs >= kQuadratureLog10Floor && grid_fits(cert.dim, cfg)) {
    const SmpDifference r = smp_difference(freqs, a, p, cfg);
    cert.lhs = r.lhs;
    cert.rhs = r.rhs;
    cert.grid = r.grid;
    have_norms = true;
    diag << "; quadrature difference " << static_cast<double>(r.difference) << " +- " << r.error_estimate
         << " on grid " << r.grid;
    if (r.certified(safety) && r.difference > 0) {
      cert.margin = r.difference;
      cert.error_estimate = r.error_estimate;
      cert.method = CertificationMethod::Quadrature;
      return {true, diag.str()};
    }
    if (r.converged && r.difference < -static_cast<long double>(safety) * r.error_estimate)
      return {false, diag.str() + " (opposite sign)"};
  }

  if (a.cwiseAbs().sum() < 1 && main.log10_abs >= kLongDoubleLog10Floor) {
    const auto s = smp_difference_series(freqs, a, p, cfg);
    diag << "; series difference " << static_cast<double>(s.difference) << " +- "
         << static_cast<double>(s.truncation_estimate) << " at cutoff " << s.cutoff;
    if (s.difference > static_cast<long double>(safety) * s.truncation_estimate &&
        s.difference > std::numeric_limits<long double>::min()) {
      if (!have_norms) {
        std::vector<Point> all{Point(static_cast<std::size_t>(cert.dim), 0)};
        all.insert(all.end(), freqs.begin(), freqs.end());
        CoefficientVector abs_all(a.size() + 1);
        abs_all << 1.0, a.cwiseAbs();
        // Informational only: two refinements at most.
        EvalConfig lhs_cfg = cfg;
        lhs_cfg.max_total_points = std::min<std::int64_t>(
            cfg.max_total_points, 4 * quadrature::grid_size(cfg.grid_points_per_axis, cert.dim));
        cert.lhs = grid_fits(cert.dim, cfg) ? lp_norm_quadrature(all, abs_all, p, lhs_cfg).value
                                            : lp_norm_taylor(freqs, CoefficientVector(a.cwiseAbs()), p, cfg).value;
        cert.rhs = cert.lhs + static_cast<double>(s.difference);
        cert.grid = 0;
      }
      cert.margin = s.difference;
      cert.error_estimate = s.truncation_estimate;
      cert.series_cutoff = s.cutoff;
      cert.method = CertificationMethod::Series;
      return {true, diag.str()};
    }
  } else {
    diag << "; series not applicable";
  }
  return {false, diag.str()};
}

// Runs the magnitude schedule; on success the certificate is Verified.
bool certify(Certificate& cert, const EvalConfig& cfg, const MagnitudeSchedule& schedule, std::string& diagnostics) {
  for (double mag = schedule.start; mag >= schedule.floor; mag /= 2) {
    const CoefficientVector a = assign_signs(cert.cvector, mag);
    cert.coefficients.resize(a.size() + 1);
    cert.coefficients << 1.0, a;
    cert.magnitude = mag;
    const Attempt att = certify_at(cert, a, cfg);
    diagnostics += att.diagnostics + "\n";
    if (att.certified) {
      cert.status = CertificateStatus::Verified;
      return true;
    }
  }
  cert.method = CertificationMethod::None;
  cert.margin = 0;
  cert.error_estimate = 0;
  return false;
}

// Starts a certificate from n_bullet and n_0..n_d given in working coordinates.
Certificate start_certificate(const Point& n_bullet, const std::vector<Point>& others, TheoremTag tag,
                              const EvalConfig& cfg) {
  Certificate cert;
  cert.dim = static_cast<int>(n_bullet.size());
  cert.frequencies.emplace_back(n_bullet.size(), 0);
  for (const auto& n : others) cert.frequencies.push_back(subtract(n, n_bullet));
  cert.cvector = cvector_of(cert.shifted_frequencies());
  cert.theorem_tag = tag;
  cert.eval_config = cfg;
  return cert;
}

}  // namespace

Certificate construct_independent(const FrequencySet& set, const EvalConfig& cfg, MagnitudeSchedule schedule) {
  cfg.validate();
  const auto& pts = set.points();
  if (pts.empty()) throw DomainError("construct_independent: empty frequency set");
  const int aff = affine_dimension(pts);
  if (pts.size() == static_cast<std::size_t>(aff) + 1)
    throw HypothesisError("construct_independent: the set is affinely independent, so the strict majorant property "
                          "holds for every p > 0");

  std::vector<Point> working = pts;
  std::optional<Lift> lift;
  if (aff < set.dim()) {
    const FullDimReduction red = reduce_full_dim(set);
    working = red.reduced.points();
    lift = Lift{red.n_star, red.basis};
  }

  // n_bullet is the first point admitting d+1 affinely independent others,
  // collected greedily in input order.
  const auto d = static_cast<std::size_t>(aff);
  std::size_t bullet = 0;
  std::vector<std::size_t> chosen;
  for (bullet = 0; bullet < working.size(); ++bullet) {
    chosen.clear();
    std::vector<Point> simplex;
    for (std::size_t i = 0; i < working.size() && simplex.size() < d + 1; ++i) {
      if (i == bullet) continue;
      simplex.push_back(working[i]);
      if (is_affinely_independent(simplex))
        chosen.push_back(i);
      else
        simplex.pop_back();
    }
    if (chosen.size() == d + 1) break;
  }
  if (chosen.size() != d + 1) throw std::logic_error("construct_independent: no affinely independent subset found");

  std::vector<Point> others;
  for (auto i : chosen) others.push_back(working[i]);
  Certificate cert = start_certificate(working[bullet], others, TheoremTag::Independent, cfg);
  cert.original_points.push_back(pts[bullet]);
  for (auto i : chosen) cert.original_points.push_back(pts[i]);
  cert.lift = lift;
  cert.p_interval = p_interval(cert.cvector);
  cert.p_tested = cert.p_interval.midpoint();
  if (!sign_condition(cert.p_tested, cert.cvector))
    throw std::logic_error("construct_independent: sign condition fails at the interval midpoint");

  std::string diagnostics;
  if (!certify(cert, cfg, schedule, diagnostics))
    throw NumericalError("construct_independent: no magnitude down to " + std::to_string(schedule.floor) +
                         " certified the inequality at p = " + std::to_string(cert.p_tested) + " (|c| = " +
                         std::to_string(cert.cvector.order()) + ")\n" + diagnostics);
  if (lift) cert.note = "reduced to affine dimension " + std::to_string(aff) + " before construction";
  return cert;
}

AbundantResult construct_abundant(const FrequencySet& set, std::size_t how_many, const EvalConfig& cfg,
                                  std::size_t scan_budget, MagnitudeSchedule schedule) {
  cfg.validate();
  if (set.is_finite()) throw HypothesisError("construct_abundant: a finite set is not affinely abundant");
  const AbundanceReport report = is_affinely_abundant(set, scan_budget);
  if (report.verdict == Abundance::No) throw HypothesisError("construct_abundant: not affinely abundant (" + report.reason + ")");
  if (report.verdict == Abundance::Inconclusive)
    throw BudgetExceeded("construct_abundant: abundance not established (" + report.reason + ")");

  AbundantResult out;
  out.tuple = report.tuple;
  const std::size_t d = static_cast<std::size_t>(set.dim());
  auto in_tuple = [&](const Point& n) { return std::find(out.tuple.begin(), out.tuple.end(), n) != out.tuple.end(); };

  {
    auto s = set.stream();
    std::size_t seen = 0;
    bool found = false;
    while (auto n = s.next()) {
      if (++seen > scan_budget) break;
      if (in_tuple(*n)) continue;
      std::vector<Point> simplex{*n};
      simplex.insert(simplex.end(), out.tuple.begin(), out.tuple.end());
      if (is_affinely_independent(simplex)) {
        out.n_bullet = *n;
        found = true;
        break;
      }
    }
    if (!found) throw BudgetExceeded("construct_abundant: no n_bullet within the scan budget");
  }
  IntMatrix base(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j) base.col(static_cast<Eigen::Index>(j)) = to_int_vector(subtract(out.tuple[j], out.n_bullet));
  out.v0 = det_exact(base);

  std::int64_t last_m_plus = 0;
  auto s = set.stream();
  while (out.certificates.size() < how_many) {
    auto n0 = s.next();
    if (!n0) break;
    if (out.candidates_scanned >= scan_budget) break;
    ++out.candidates_scanned;
    if (*n0 == out.n_bullet || in_tuple(*n0)) continue;
    std::vector<Point> others{*n0};
    others.insert(others.end(), out.tuple.begin(), out.tuple.end());
    if (lifted_det(others) == 0) continue;
    Certificate cert = start_certificate(out.n_bullet, others, TheoremTag::Abundant, cfg);
    if (cert.cvector.m_plus <= last_m_plus) continue;
    cert.original_points.push_back(out.n_bullet);
    cert.original_points.insert(cert.original_points.end(), others.begin(), others.end());
    cert.p_interval = p_interval(cert.cvector);
    cert.p_tested = cert.p_interval.midpoint();
    std::string diagnostics;
    if (!certify(cert, cfg, schedule, diagnostics)) {
      cert.status = CertificateStatus::AnalyticOnly;
      cert.coefficients.resize(cert.cvector.c.size() + 1);
      cert.coefficients << 1.0, assign_signs(cert.cvector, schedule.start);
      cert.magnitude = schedule.start;
      cert.note = "constructed, analytically justified, not desk-verified";
    }
    last_m_plus = cert.cvector.m_plus;
    out.certificates.push_back(std::move(cert));
  }
  out.complete = out.certificates.size() == how_many;
  if (!out.complete)
    out.explanation = "found " + std::to_string(out.certificates.size()) + " of " + std::to_string(how_many) +
                      " certificates with strictly increasing m_+ among " + std::to_string(out.candidates_scanned) +
                      " streamed candidates";
  return out;
}

Certificate construct_moment(int d, double p, const EvalConfig& cfg, MagnitudeSchedule schedule) {
  cfg.validate();
  if (!(p > 0)) throw DomainError("construct_moment: p must be positive");
  if (is_even_integer(p)) throw DomainError("construct_moment: p in 2N, the strict majorant property holds there");
  const std::int64_t k = moment_k_for(d, p);
  const auto points = moment_points({d, k});
  Certificate cert = start_certificate(Point(static_cast<std::size_t>(d), 0), points, TheoremTag::MomentCurve, cfg);
  cert.original_points = cert.frequencies;
  if (cert.cvector.c != c_closed_form({d, k}).c) throw std::logic_error("construct_moment: closed form mismatch");
  if (!sign_condition(p, cert.cvector)) throw std::logic_error("construct_moment: sign condition fails");
  cert.p_interval = even_gap_around(p);
  cert.p_tested = p;

  std::string diagnostics;
  const bool verified = d <= 4 && certify(cert, cfg, schedule, diagnostics);
  if (!verified) {
    cert.status = CertificateStatus::AnalyticOnly;
    cert.coefficients.resize(d + 2);
    cert.coefficients << 1.0, assign_signs(cert.cvector, schedule.start);
    cert.magnitude = schedule.start;
    cert.note = "constructed, analytically justified, not desk-verified";
  }
  cert.note += (cert.note.empty() ? "" : "; ") + std::string("k = ") + std::to_string(k);
  return cert;
}

Verification verify_certificate(const Certificate& cert, const EvalConfig& cfg, std::optional<double> p) {
  cfg.validate();
  if (cert.frequencies.size() != static_cast<std::size_t>(cert.coefficients.size()))
    throw DimensionError("verify_certificate: coefficient count differs from frequency count");
  Verification out;
  out.p = p.value_or(cert.p_tested);
  if (!(out.p > 0)) throw DomainError("verify_certificate: p must be positive");
  const double safety = cfg.margin_safety_factor;
  const CoefficientVector abs_coeffs = cert.coefficients.cwiseAbs();

  if ((cert.coefficients.array() >= 0).all()) {
    out.verdict = Verdict::False;
    out.reason = "all coefficients are nonnegative, so both sides coincide";
    return out;
  }

  if (is_even_integer(out.p)) {
    try {
      const int s = static_cast<int>(std::lround(out.p / 2));
      const Rational lhs = lp_norm_even_exact(cert.frequencies, abs_coeffs, s);
      const Rational rhs = lp_norm_even_exact(cert.frequencies, cert.coefficients, s);
      out.lhs = lhs.convert_to<double>();
      out.rhs = rhs.convert_to<double>();
      out.margin = Rational(rhs - lhs).convert_to<long double>();
      out.verdict = rhs > lhs ? Verdict::True : Verdict::False;
      out.reason = "exact expansion at even p";
      return out;
    } catch (const BudgetExceeded&) {
      // fall through to the numerical path
    }
  }

  // The series applies to 1 + sum a_i e(n_i.x) with n_bullet at 0.
  const bool series_shape = cert.frequencies.size() == static_cast<std::size_t>(cert.dim) + 2 &&
                            std::all_of(cert.frequencies[0].begin(), cert.frequencies[0].end(),
                                        [](std::int64_t x) { return x == 0; }) &&
                            cert.coefficients(0) == 1.0;
  const bool resolvable = !series_shape || lifted_det(cert.shifted_frequencies()) == 0 ||
                          main_term(cert.shifted_frequencies(), cert.signed_part(), out.p).log10_abs >= kQuadratureLog10Floor;
  if (resolvable && grid_fits(cert.dim, cfg)) {
    const MajorantComparison cmp = majorant_comparison(cert.frequencies, cert.coefficients, out.p, cfg);
    out.lhs = cmp.lhs;
    out.rhs = cmp.rhs;
    out.margin = cmp.difference;
    out.error_estimate = cmp.error_estimate;
    out.grid = cmp.grid;
    out.method = CertificationMethod::Quadrature;
    const long double bar = static_cast<long double>(safety) * cmp.error_estimate;
    if (cmp.converged && cmp.difference > bar) {
      out.verdict = Verdict::True;
      out.reason = "quadrature margin exceeds the safety factor times the error estimate";
      return out;
    }
    if (cmp.converged && cmp.difference < -bar) {
      out.verdict = Verdict::False;
      out.reason = "quadrature shows the majorant side is larger";
      return out;
    }
  }

  if (series_shape) {
    const auto freqs = cert.shifted_frequencies();
    const CoefficientVector a = cert.signed_part();
    if (a.cwiseAbs().sum() < 1 && lifted_det(freqs) != 0) {
      const auto s = smp_difference_series(freqs, a, out.p, cfg);
      const long double bar = static_cast<long double>(safety) * s.truncation_estimate;
      if (s.difference > bar || s.difference < -bar) {
        out.margin = s.difference;
        out.error_estimate = s.truncation_estimate;
        out.method = CertificationMethod::Series;
        out.verdict = s.difference > bar ? Verdict::True : Verdict::False;
        out.reason = "difference series at cutoff " + std::to_string(s.cutoff);
        return out;
      }
    }
  }
  out.verdict = Verdict::Inconclusive;
  out.reason = "margin not resolved beyond the safety factor times the error estimate";
  return out;
}

}  // namespace smp
