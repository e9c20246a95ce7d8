#include "smp/frequency_set.hpp"

#include "smp/errors.hpp"

#include <set>

namespace smp {

Generator Generator::moment_curve(int dim, std::int64_t start) {
  if (dim < 1) throw DimensionError("moment_curve: dim must be >= 1");
  Generator g;
  g.kind = GeneratorKind::MomentCurve;
  g.params["dim"] = {dim};
  g.params["start"] = {start};
  g.point = [dim, start](std::int64_t i) {
    const std::int64_t t = start + i;
    Point p(static_cast<std::size_t>(dim));
    std::int64_t power = 1;
    for (auto& x : p) {
      power *= t;
      x = power;
    }
    return p;
  };
  return g;
}

Generator Generator::arith_progression(Point base, Point step) {
  if (base.size() != step.size()) throw DimensionError("arith_progression: base and step differ in length");
  bool nonzero = false;
  for (auto s : step) nonzero = nonzero || s != 0;
  if (!nonzero) throw DomainError("arith_progression: step must be nonzero");
  Generator g;
  g.kind = GeneratorKind::ArithProgression;
  g.params["base"] = base;
  g.params["step"] = step;
  g.point = [base = std::move(base), step = std::move(step)](std::int64_t t) {
    Point p(base.size());
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = base[j] + t * step[j];
    return p;
  };
  return g;
}

FrequencySet::FrequencySet(int dim, std::vector<Point> points, std::optional<Generator> generator)
    : dim_(dim), points_(std::move(points)), generator_(std::move(generator)) {
  if (dim_ < 0) throw DimensionError("FrequencySet: negative dimension");
  std::set<Point> seen;
  for (const auto& p : points_) {
    if (static_cast<int>(p.size()) != dim_)
      throw DimensionError("FrequencySet: point has " + std::to_string(p.size()) + " coordinates, expected " +
                           std::to_string(dim_));
    if (!seen.insert(p).second) throw DomainError("FrequencySet: points must be pairwise distinct");
  }
  if (generator_ && !generator_->point) throw DomainError("FrequencySet: generator has no rule");
}

FrequencyStream FrequencySet::stream() const { return FrequencyStream(*this); }

std::vector<Point> FrequencySet::prefix(std::size_t n) const {
  std::vector<Point> out;
  auto s = stream();
  while (out.size() < n) {
    auto p = s.next();
    if (!p) break;
    out.push_back(std::move(*p));
  }
  return out;
}

std::optional<Point> FrequencyStream::next() {
  const auto& pts = set_->points();
  if (listed_pos_ < pts.size()) {
    listed_.insert(pts[listed_pos_]);
    return pts[listed_pos_++];
  }
  const auto& gen = set_->generator();
  if (!gen) return std::nullopt;
  for (;;) {
    Point p = gen->point(generator_pos_++);
    if (static_cast<int>(p.size()) != set_->dim()) throw DimensionError("FrequencyStream: generator produced wrong dimension");
    if (!listed_.contains(p)) return p;
  }
}

IntVector lifted(const Point& n) {
  IntVector v(static_cast<Eigen::Index>(n.size()) + 1);
  v(0) = 1;
  for (std::size_t i = 0; i < n.size(); ++i) v(static_cast<Eigen::Index>(i) + 1) = n[i];
  return v;
}

}  // namespace smp
