#pragma once

#include "wh/types.hpp"

namespace wh::heisenberg {

/// A phase-plane point w = (x, y).
struct PhasePoint {
  double x{0}, y{0};

  friend PhasePoint operator+(PhasePoint a, PhasePoint b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend PhasePoint operator-(PhasePoint a, PhasePoint b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend PhasePoint operator-(PhasePoint a) { return {-a.x, -a.y}; }
};

/// Symplectic form x y' - y x'.
double omega(PhasePoint w, PhasePoint w2);

/// A group point (x, y, z) with |z| = 1. The central phase is stored as a
/// unit complex number and renormalized after every product.
struct GroupElement {
  PhasePoint p;
  cplx z{1.0, 0.0};
};

GroupElement identity();

/// (x,y,z)(x',y',z') = (x+x', y+y', z z' e^{pi i (x y' - y x')})
GroupElement multiply(const GroupElement& g, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);

inline GroupElement operator*(const GroupElement& g, const GroupElement& g2) {
  return multiply(g, g2);
}

/// s(x, y) = (x, y, 1)
GroupElement section(PhasePoint w);

/// pi(x, y, z) = (x, y)
PhasePoint projection(const GroupElement& g);

/// Central phase of s(w)s(w')s(w+w')^{-1}: e^{pi i (x y' - y x')}.
cplx cocycle(PhasePoint w, PhasePoint w2);

/// Commutator pairing e(w, w') = e^{2 pi i (x y' - y x')}.
cplx pairing(PhasePoint w, PhasePoint w2);

}  // namespace wh::heisenberg

namespace wh {
using heisenberg::GroupElement;
using heisenberg::PhasePoint;
}  // namespace wh
