#pragma once

#include "smp/integer.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace smp {

enum class GeneratorKind { MomentCurve, ArithProgression, Custom };

/// Rule producing further points of an infinite frequency set. `point(i)`
/// yields the i-th generated point (i = 0, 1, ...); the rule must be
/// injective.
struct Generator {
  GeneratorKind kind = GeneratorKind::Custom;
  std::map<std::string, std::vector<std::int64_t>> params;
  std::function<Point(std::int64_t)> point;

  /// gamma(t) = (t, t^2, ..., t^dim) for t = start, start+1, ...
  static Generator moment_curve(int dim, std::int64_t start = 1);
  /// base + t*step for t = 0, 1, ...; step must be nonzero.
  static Generator arith_progression(Point base, Point step);
};

class FrequencyStream;

/// Ordered list of distinct integer frequencies in Z^dim, optionally
/// continued by a generator (an infinite set is its listed prefix followed
/// by every generated point not already listed).
class FrequencySet {
 public:
  FrequencySet(int dim, std::vector<Point> points, std::optional<Generator> generator = std::nullopt);

  int dim() const { return dim_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool is_finite() const { return !generator_.has_value(); }
  const std::optional<Generator>& generator() const { return generator_; }

  FrequencyStream stream() const;

  /// First `n` points of the stream (fewer if the set is finite and smaller).
  std::vector<Point> prefix(std::size_t n) const;

 private:
  int dim_;
  std::vector<Point> points_;
  std::optional<Generator> generator_;
};

/// Single-pass cursor over a FrequencySet. Owns its own state, so any
/// number of streams may walk the same set concurrently.
class FrequencyStream {
 public:
  explicit FrequencyStream(const FrequencySet& set) : set_(&set) {}
  std::optional<Point> next();

 private:
  const FrequencySet* set_;
  std::size_t listed_pos_ = 0;
  std::int64_t generator_pos_ = 0;
  std::set<Point> listed_;
};

/// (1, n) in Z^{d+1}.
IntVector lifted(const Point& n);

}  // namespace smp
