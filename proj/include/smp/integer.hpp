#pragma once

// Exact scalar types and the dense integer matrix/vector aliases used
// throughout the library. All integer linear algebra is done with
// arbitrary-precision integers stored in Eigen containers.

#include <Eigen/Core>

#include <boost/multiprecision/traits/is_byte_container.hpp>

#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

// Boost 1.74 probes every argument type for a byte-container
// `const_iterator`; Eigen 3.4 expressions declare one that may be `void`.
namespace boost::multiprecision::detail {
template <class C>
  requires std::is_base_of_v<Eigen::EigenBase<C>, C>
struct is_byte_container<C> : std::false_type {};
}  // namespace boost::multiprecision::detail

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace smp {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::cpp_rational_backend, mp::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<BigInt>;
using IntVector = Vector<BigInt>;

/// Plain machine-integer point, used for frequencies read from input.
using Point = std::vector<std::int64_t>;

inline IntVector to_int_vector(const Point& p) {
  IntVector v(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) v(static_cast<Eigen::Index>(i)) = p[i];
  return v;
}

/// Narrows to int64; throws std::overflow_error when the value does not fit.
std::int64_t to_int64(const BigInt& x);

inline Point to_point(const IntVector& v) {
  Point p(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) p[static_cast<std::size_t>(i)] = to_int64(v(i));
  return p;
}

/// Non-negative gcd of all entries; gcd of the empty vector is 0.
BigInt gcd_of(const IntVector& v);

/// Sum of entries.
BigInt sum_of(const IntVector& v);

/// Builds a matrix whose columns are the given points.
IntMatrix columns_of(const std::vector<Point>& points);

std::string to_string(const BigInt& x);

}  // namespace smp
