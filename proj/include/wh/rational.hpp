#pragma once

#include <string>

#include <boost/rational.hpp>

namespace wh {

/// Exact rational scalar. All lattice membership tests and coset reductions
/// go through this type; doubles never decide lattice questions.
using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

/// Parses "p", "-p" or "p/q" (q > 0 after normalization).
Rat parse_rational(const std::string& text);

/// A phase-plane point with exact rational coordinates.
struct RatPoint {
  Rat x{0}, y{0};

  friend RatPoint operator+(const RatPoint& a, const RatPoint& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend RatPoint operator-(const RatPoint& a, const RatPoint& b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend RatPoint operator-(const RatPoint& a) { return {-a.x, -a.y}; }
  friend bool operator==(const RatPoint& a, const RatPoint& b) {
    return a.x == b.x && a.y == b.y;
  }
};

/// Symplectic form x y' - y x', exact.
inline Rat omega(const RatPoint& a, const RatPoint& b) {
  return a.x * b.y - a.y * b.x;
}

}  // namespace wh
