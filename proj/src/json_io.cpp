#include "smp/json_io.hpp"

#include "smp/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace smp {

namespace {

Json big_to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

BigInt big_from_json(const Json& j, const char* what) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw DomainError(std::string(what) + ": expected an integer or a decimal string");
}

Json int_vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(big_to_json(v(i)));
  return out;
}

// Numbers when a double holds them, otherwise decimal strings in long double precision.
Json extended_to_json(long double x) {
  const long double ax = std::fabs(x);
  if (x == 0 || (ax >= std::numeric_limits<double>::min() && ax <= std::numeric_limits<double>::max()))
    return static_cast<double>(x);
  std::ostringstream ss;
  ss.precision(std::numeric_limits<long double>::max_digits10);
  ss << std::scientific << x;
  return ss.str();
}

long double extended_from_json(const Json& j, const char* key) {
  if (!j.contains(key)) return 0;
  const Json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return std::stold(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw DomainError(std::string("certificate: ") + key + " must be a number or a decimal string");
}

IntVector int_vector_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + ": expected an array");
  IntVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = big_from_json(j[i], what);
  return v;
}

Point point_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw DomainError(what + ": expected an array of integers");
  Point p;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw DomainError(what + ": expected an array of integers");
    p.push_back(x.get<std::int64_t>());
  }
  return p;
}

std::vector<Point> points_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw DomainError(what + ": expected an array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point_from_json(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string(where) + ": missing field \"" + key + "\"");
  return j.at(key);
}

double number(const Json& j, const char* key, const char* where) {
  const Json& v = field(j, key, where);
  if (!v.is_number()) throw DomainError(std::string(where) + ": field \"" + key + "\" must be a number");
  return v.get<double>();
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <typename E>
E enum_from(const Json& j, const char* key, const char* where, std::initializer_list<E> values) {
  const Json& v = field(j, key, where);
  if (v.is_string())
    for (E e : values)
      if (to_string(e) == v.get<std::string>()) return e;
  throw DomainError(std::string(where) + ": unrecognized \"" + key + "\"");
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const FrequencySet& set) {
  Json j;
  j["dim"] = set.dim();
  j["points"] = set.points();
  if (const auto& g = set.generator()) {
    Json params = Json::object();
    if (g->kind == GeneratorKind::MomentCurve) {
      params["start"] = g->params.at("start").front();
      j["generator"] = {{"kind", "moment_curve"}, {"params", params}};
    } else if (g->kind == GeneratorKind::ArithProgression) {
      params["base"] = g->params.at("base");
      params["step"] = g->params.at("step");
      j["generator"] = {{"kind", "arith_progression"}, {"params", params}};
    } else {
      throw DomainError("to_json: custom generators have no JSON form");
    }
  }
  return j;
}

FrequencySet frequency_set_from_json(const Json& j) {
  const char* where = "frequency set";
  const Json& dim_j = field(j, "dim", where);
  if (!dim_j.is_number_integer() || dim_j.get<std::int64_t>() < 1)
    throw DomainError("frequency set: \"dim\" must be a positive integer");
  const int dim = dim_j.get<int>();
  std::vector<Point> points = j.contains("points") ? points_from_json(j.at("points"), "points") : std::vector<Point>{};
  std::optional<Generator> generator;
  if (j.contains("generator") && !j.at("generator").is_null()) {
    const Json& g = j.at("generator");
    const Json& kind = field(g, "kind", "generator");
    const Json params = g.contains("params") ? g.at("params") : Json::object();
    if (kind == "moment_curve") {
      std::int64_t start = 1;
      if (params.contains("start")) {
        if (!params.at("start").is_number_integer()) throw DomainError("generator.params.start must be an integer");
        start = params.at("start").get<std::int64_t>();
      }
      generator = Generator::moment_curve(dim, start);
    } else if (kind == "arith_progression") {
      generator = Generator::arith_progression(point_from_json(field(params, "base", "generator.params"), "base"),
                                               point_from_json(field(params, "step", "generator.params"), "step"));
    } else {
      throw DomainError("generator.kind must be \"moment_curve\" or \"arith_progression\"");
    }
  }
  if (points.empty() && !generator) throw DomainError("frequency set: no points and no generator");
  return FrequencySet(dim, std::move(points), std::move(generator));
}

Json to_json(const CVector& cv) {
  Json j;
  j["v"] = int_vector_to_json(cv.v);
  j["D"] = big_to_json(cv.D);
  j["c"] = int_vector_to_json(cv.c);
  j["c_plus"] = cv.c_plus.entries();
  j["c_minus"] = cv.c_minus.entries();
  j["m_plus"] = cv.m_plus;
  j["m_minus"] = cv.m_minus;
  return j;
}

CVector cvector_from_json(const Json& j) {
  const CVector cv = build_c(int_vector_from_json(field(j, "v", "cvector"), "cvector.v"));
  if (j.contains("c") && int_vector_from_json(j.at("c"), "cvector.c") != cv.c)
    throw DomainError("cvector: c is not v / gcd(v)");
  return cv;
}

Json to_json(const EvalConfig& cfg) {
  return {{"grid_points_per_axis", cfg.grid_points_per_axis},
          {"series_total_degree_cutoff", cfg.series_total_degree_cutoff},
          {"backend_agreement_tol", cfg.backend_agreement_tol},
          {"margin_safety_factor", cfg.margin_safety_factor},
          {"max_total_points", cfg.max_total_points}};
}

EvalConfig eval_config_from_json(const Json& j) {
  EvalConfig cfg;
  if (!j.is_object()) throw DomainError("eval_config: expected an object");
  if (j.contains("grid_points_per_axis")) cfg.grid_points_per_axis = j.at("grid_points_per_axis").get<std::int64_t>();
  if (j.contains("series_total_degree_cutoff"))
    cfg.series_total_degree_cutoff = j.at("series_total_degree_cutoff").get<std::int64_t>();
  if (j.contains("backend_agreement_tol")) cfg.backend_agreement_tol = j.at("backend_agreement_tol").get<double>();
  if (j.contains("margin_safety_factor")) cfg.margin_safety_factor = j.at("margin_safety_factor").get<double>();
  if (j.contains("max_total_points")) cfg.max_total_points = j.at("max_total_points").get<std::int64_t>();
  cfg.validate();
  return cfg;
}

Json to_json(const Certificate& cert) {
  Json j;
  j["format"] = "smp-certificate";
  j["version"] = Certificate::kVersion;
  j["theorem_tag"] = to_string(cert.theorem_tag);
  j["status"] = to_string(cert.status);
  j["method"] = to_string(cert.method);
  j["dim"] = cert.dim;
  j["frequencies"] = cert.frequencies;
  j["original_points"] = cert.original_points;
  if (cert.lift) {
    Json basis = Json::array();
    for (Eigen::Index r = 0; r < cert.lift->basis.rows(); ++r) basis.push_back(int_vector_to_json(cert.lift->basis.row(r).transpose()));
    j["lift"] = {{"n_star", cert.lift->n_star}, {"basis", basis}};
  } else {
    j["lift"] = nullptr;
  }
  j["coefficients"] = std::vector<double>(cert.coefficients.data(), cert.coefficients.data() + cert.coefficients.size());
  j["cvector"] = to_json(cert.cvector);
  j["p_interval"] = {{"lower", cert.p_interval.lower}, {"upper", cert.p_interval.upper}};
  j["p_tested"] = cert.p_tested;
  j["magnitude"] = cert.magnitude;
  j["lhs"] = cert.lhs;
  j["rhs"] = cert.rhs;
  j["margin"] = extended_to_json(cert.margin);
  j["error_estimate"] = extended_to_json(cert.error_estimate);
  j["main_term"] = extended_to_json(cert.main_term);
  j["main_term_log10"] = finite_or_null(cert.main_term_log10);
  j["grid"] = cert.grid;
  j["series_cutoff"] = cert.series_cutoff;
  j["eval_config"] = to_json(cert.eval_config);
  j["note"] = cert.note;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  const char* where = "certificate";
  if (!j.is_object()) throw DomainError("certificate: expected an object");
  const Json& version = field(j, "version", where);
  if (!version.is_number_integer() || version.get<int>() != Certificate::kVersion)
    throw DomainError("certificate: unsupported version");
  Certificate cert;
  cert.theorem_tag = enum_from(j, "theorem_tag", where,
                               {TheoremTag::Independent, TheoremTag::Abundant, TheoremTag::MomentCurve});
  cert.status = enum_from(j, "status", where, {CertificateStatus::Verified, CertificateStatus::AnalyticOnly});
  cert.method = enum_from(j, "method", where,
                          {CertificationMethod::Quadrature, CertificationMethod::Series, CertificationMethod::None});
  cert.dim = field(j, "dim", where).get<int>();
  cert.frequencies = points_from_json(field(j, "frequencies", where), "frequencies");
  for (const auto& n : cert.frequencies)
    if (static_cast<int>(n.size()) != cert.dim) throw DimensionError("certificate: frequency of wrong dimension");
  if (j.contains("original_points")) cert.original_points = points_from_json(j.at("original_points"), "original_points");
  if (j.contains("lift") && !j.at("lift").is_null()) {
    const Json& l = j.at("lift");
    Lift lift;
    lift.n_star = point_from_json(field(l, "n_star", "lift"), "lift.n_star");
    const Json& rows = field(l, "basis", "lift");
    lift.basis = IntMatrix(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cert.dim));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const IntVector row = int_vector_from_json(rows[r], "lift.basis");
      if (row.size() != cert.dim) throw DimensionError("certificate: lift basis has the wrong shape");
      lift.basis.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    cert.lift = std::move(lift);
  }
  const Json& coeffs = field(j, "coefficients", where);
  if (!coeffs.is_array()) throw DomainError("certificate: coefficients must be an array");
  cert.coefficients.resize(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_number()) throw DomainError("certificate: coefficients must be numbers");
    cert.coefficients(static_cast<Eigen::Index>(i)) = coeffs[i].get<double>();
  }
  if (cert.coefficients.size() != static_cast<Eigen::Index>(cert.frequencies.size()))
    throw DimensionError("certificate: coefficient count differs from frequency count");
  cert.cvector = cvector_from_json(field(j, "cvector", where));
  const Json& interval = field(j, "p_interval", where);
  cert.p_interval = {number(interval, "lower", "p_interval"), number(interval, "upper", "p_interval")};
  cert.p_tested = number(j, "p_tested", where);
  cert.magnitude = j.value("magnitude", 0.0);
  cert.lhs = j.value("lhs", 0.0);
  cert.rhs = j.value("rhs", 0.0);
  cert.margin = extended_from_json(j, "margin");
  cert.error_estimate = extended_from_json(j, "error_estimate");
  cert.main_term = extended_from_json(j, "main_term");
  cert.main_term_log10 = j.contains("main_term_log10") && j.at("main_term_log10").is_number()
                             ? j.at("main_term_log10").get<double>()
                             : -std::numeric_limits<double>::infinity();
  cert.grid = j.value("grid", std::int64_t{0});
  cert.series_cutoff = j.value("series_cutoff", std::int64_t{0});
  if (j.contains("eval_config")) cert.eval_config = eval_config_from_json(j.at("eval_config"));
  cert.note = j.value("note", std::string());
  return cert;
}

Json to_json(const Verification& v) {
  return {{"verdict", to_string(v.verdict)}, {"p", v.p},
          {"lhs", v.lhs},                    {"rhs", v.rhs},
          {"margin", extended_to_json(v.margin)}, {"error_estimate", extended_to_json(v.error_estimate)},
          {"grid", v.grid},                  {"method", to_string(v.method)},
          {"reason", v.reason}};
}

Json to_json(const AbundantResult& res) {
  Json j{{"tuple", res.tuple},
         {"n_bullet", res.n_bullet},
         {"v0", big_to_json(res.v0)},
         {"candidates_scanned", res.candidates_scanned},
         {"complete", res.complete},
         {"explanation", res.explanation},
         {"certificates", Json::array()}};
  for (const auto& c : res.certificates) j["certificates"].push_back(to_json(c));
  return j;
}

}  // namespace smp
