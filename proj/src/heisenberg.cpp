#include "wh/heisenberg.hpp"

#include <cmath>
#include <numbers>

namespace wh::heisenberg {

double omega(PhasePoint w, PhasePoint w2) { return w.x * w2.y - w.y * w2.x; }

GroupElement identity() { return {{0.0, 0.0}, {1.0, 0.0}}; }

GroupElement multiply(const GroupElement& g, const GroupElement& g2) {
  GroupElement out;
  out.p = g.p + g2.p;
  out.z = g.z * g2.z * std::polar(1.0, std::numbers::pi * omega(g.p, g2.p));
  out.z /= std::abs(out.z);
  return out;
}

GroupElement inverse(const GroupElement& g) {
  // omega(w, -w) = 0, so the central part just conjugates.
  return {-g.p, std::conj(g.z)};
}

GroupElement section(PhasePoint w) { return {w, {1.0, 0.0}}; }

PhasePoint projection(const GroupElement& g) { return g.p; }

cplx cocycle(PhasePoint w, PhasePoint w2) {
  return std::polar(1.0, std::numbers::pi * omega(w, w2));
}

cplx pairing(PhasePoint w, PhasePoint w2) {
  return std::polar(1.0, 2.0 * std::numbers::pi * omega(w, w2));
}

}  // namespace wh::heisenberg
