#include "smp/lattice.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace smp {

std::int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + x.str());
  return static_cast<std::int64_t>(x);
}

BigInt gcd_of(const IntVector& v) {
  BigInt g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  return g < 0 ? BigInt(-g) : g;
}

BigInt sum_of(const IntVector& v) {
  BigInt s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += v(i);
  return s;
}

IntMatrix columns_of(const std::vector<Point>& points) {
  if (points.empty()) return IntMatrix(0, 0);
  const auto rows = static_cast<Eigen::Index>(points.front().size());
  IntMatrix m(rows, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (static_cast<Eigen::Index>(points[j].size()) != rows) throw DimensionError("columns_of: ragged point list");
    for (Eigen::Index i = 0; i < rows; ++i) m(i, static_cast<Eigen::Index>(j)) = points[j][static_cast<std::size_t>(i)];
  }
  return m;
}

std::string to_string(const BigInt& x) { return x.str(); }

Eigen::Index lattice_rank(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return hnf(m).rank();
}

IntMatrix integer_null_space(const IntMatrix& m) {
  if (m.rows() == 0) return IntMatrix::Identity(m.cols(), m.cols());
  // U * m^T = B with U unimodular; rows of U facing zero rows of B are null.
  const auto tri = hnf(IntMatrix(m.transpose()));
  const Eigen::Index rank = tri.rank();
  return tri.U.bottomRows(m.cols() - rank).transpose();
}

BigInt lifted_det(const std::vector<Point>& points) {
  if (points.empty()) throw DimensionError("lifted_det: no points");
  const std::size_t d = points.front().size();
  if (points.size() != d + 1)
    throw DimensionError("lifted_det: need d+1 = " + std::to_string(d + 1) + " points, got " + std::to_string(points.size()));
  IntMatrix m(static_cast<Eigen::Index>(d + 1), static_cast<Eigen::Index>(d + 1));
  for (std::size_t j = 0; j <= d; ++j) m.col(static_cast<Eigen::Index>(j)) = lifted(points[j]);
  return det_exact(m);
}

namespace {

// Rows are n - n_0 for the remaining points.
IntMatrix difference_rows(const std::vector<Point>& points) {
  const std::size_t d = points.front().size();
  IntMatrix m(static_cast<Eigen::Index>(points.size() - 1), static_cast<Eigen::Index>(d));
  for (std::size_t i = 1; i < points.size(); ++i)
    for (std::size_t j = 0; j < d; ++j)
      m(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j)) = BigInt(points[i][j]) - points[0][j];
  return m;
}

}  // namespace

int affine_dimension(const std::vector<Point>& points) {
  if (points.empty()) throw DomainError("affine_dimension: empty point set");
  if (points.size() == 1 || points.front().empty()) return 0;
  return static_cast<int>(lattice_rank(difference_rows(points)));
}

int affine_dimension(const FrequencySet& set, std::size_t prefix_len) {
  if (prefix_len == 0) throw DomainError("affine_dimension: prefix_len must be >= 1");
  auto pts = set.prefix(prefix_len);
  if (pts.size() < prefix_len) throw DomainError("affine_dimension: fewer than prefix_len points available");
  return affine_dimension(pts);
}

bool is_affinely_independent(const std::vector<Point>& points) {
  return static_cast<std::size_t>(affine_dimension(points)) + 1 == points.size();
}

bool is_affinely_independent(const FrequencySet& set, std::size_t prefix_len) {
  return static_cast<std::size_t>(affine_dimension(set, prefix_len)) + 1 == prefix_len;
}

Point FullDimReduction::lift(const Point& reduced_point) const {
  if (static_cast<Eigen::Index>(reduced_point.size()) != basis.cols()) throw DimensionError("lift: wrong reduced dimension");
  IntVector x = to_int_vector(n_star);
  if (basis.cols() > 0) x += basis * to_int_vector(reduced_point);
  return to_point(x);
}

FullDimReduction reduce_full_dim(const FrequencySet& set) {
  const auto& pts = set.points();
  if (pts.empty()) throw DomainError("reduce_full_dim: empty frequency set");
  const auto d = static_cast<Eigen::Index>(set.dim());
  if (pts.size() == 1 || d == 0)
    return {pts.front(), IntMatrix(d, 0), FrequencySet(0, {Point{}})};

  // Rows of B span the same lattice as the rows n - n_star, and the first
  // rank rows of E are the coordinates of each difference in that basis.
  const auto tri = hnf(difference_rows(pts));
  const Eigen::Index rank = tri.rank();
  IntMatrix basis = tri.B.topRows(rank).transpose();

  std::vector<Point> reduced;
  reduced.reserve(pts.size());
  reduced.emplace_back(static_cast<std::size_t>(rank), 0);
  for (Eigen::Index i = 0; i < tri.E.rows(); ++i) {
    IntVector coords = tri.E.row(i).head(rank).transpose();
    reduced.push_back(to_point(coords));
  }
  return {pts.front(), std::move(basis), FrequencySet(static_cast<int>(rank), std::move(reduced))};
}

namespace {

// Streams points until d+1 affinely independent ones are found or `cap`
// points have been consumed.
std::vector<Point> find_simplex(const FrequencySet& set, std::size_t cap, std::size_t& scanned) {
  std::vector<Point> chosen;
  const auto d = static_cast<std::size_t>(set.dim());
  auto s = set.stream();
  while (chosen.size() < d + 1 && scanned < cap) {
    auto p = s.next();
    if (!p) break;
    ++scanned;
    chosen.push_back(*p);
    if (!is_affinely_independent(chosen)) chosen.pop_back();
  }
  return chosen;
}

}  // namespace

AbundanceReport is_affinely_abundant(const FrequencySet& set, std::size_t scan_budget) {
  AbundanceReport report;
  const int d = set.dim();
  if (set.is_finite()) {
    report.verdict = Abundance::No;
    report.reason = "finite set";
    return report;
  }
  const auto& gen = *set.generator();
  if (gen.kind == GeneratorKind::ArithProgression) {
    // The generated points lie on the line through the first two of them.
    auto pts = set.points();
    pts.push_back(gen.point(0));
    pts.push_back(gen.point(1));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    report.affine_dim = affine_dimension(pts);
    if (report.affine_dim < d) {
      report.verdict = Abundance::No;
      report.reason = "affine dimension " + std::to_string(report.affine_dim) + " < " + std::to_string(d);
      return report;
    }
  } else if (gen.kind == GeneratorKind::MomentCurve) {
    report.affine_dim = d;
  }

  const std::size_t cap = set.size() + 8 * (scan_budget + static_cast<std::size_t>(d) + 1);
  report.simplex = find_simplex(set, cap, report.points_scanned);
  if (report.simplex.size() < static_cast<std::size_t>(d) + 1) {
    report.verdict = Abundance::Inconclusive;
    report.reason = "no " + std::to_string(d + 1) + " affinely independent points among the first " +
                    std::to_string(report.points_scanned);
    return report;
  }
  report.affine_dim = d;

  // Some d-tuple of the simplex has infinitely many determinant values when
  // the set is abundant; track all d+1 candidates.
  std::vector<std::vector<Point>> tuples;
  for (int omit = 0; omit <= d; ++omit) {
    std::vector<Point> t;
    for (int i = 0; i <= d; ++i)
      if (i != omit) t.push_back(report.simplex[static_cast<std::size_t>(i)]);
    tuples.push_back(std::move(t));
  }
  std::vector<std::set<BigInt>> seen(tuples.size());
  auto s = set.stream();
  std::size_t scanned = 0;
  while (scanned < cap) {
    auto p = s.next();
    if (!p) break;
    ++scanned;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      std::vector<Point> cols{*p};
      cols.insert(cols.end(), tuples[t].begin(), tuples[t].end());
      seen[t].insert(lifted_det(cols));
      if (seen[t].size() > scan_budget) {
        report.verdict = Abundance::Yes;
        report.tuple = tuples[t];
        report.distinct_values = seen[t].size();
        report.points_scanned = std::max(report.points_scanned, scanned);
        report.reason = "lifted determinants took more than " + std::to_string(scan_budget) + " distinct values";
        return report;
      }
    }
  }
  std::size_t best = 0;
  for (const auto& v : seen) best = std::max(best, v.size());
  report.distinct_values = best;
  report.points_scanned = std::max(report.points_scanned, scanned);
  report.verdict = Abundance::Inconclusive;
  report.reason = "scan budget exhausted";
  return report;
}

}  // namespace smp
