#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wh/heisenberg.hpp"
#include "wh/hermite.hpp"
#include "wh/types.hpp"

namespace wh::schrodinger {

using heisenberg::GroupElement;
using heisenberg::PhasePoint;

/// Complex samples of a phase-plane function on a uniform rectangular
/// window. Samples sit at cell midpoints: point(p, q) = origin +
/// ((p+1/2) dx, (q+1/2) dy); the window is [origin.x, origin.x + nx dx] x
/// [origin.y, origin.y + ny dy]. Storage is row-major, index p * ny + q.
struct GridFunction2D {
  PhasePoint origin;
  double dx = 0, dy = 0;
  int nx = 0, ny = 0;
  std::vector<cplx> samples;

  static GridFunction2D make(PhasePoint origin, double dx, double dy, int nx,
                             int ny);
  /// Square window [-L, L]^2 with n x n cells.
  static GridFunction2D window(double L, int n);

  PhasePoint point(int p, int q) const {
    return {origin.x + (p + 0.5) * dx, origin.y + (q + 0.5) * dy};
  }
  cplx& at(int p, int q) { return samples[std::size_t(p) * ny + q]; }
  cplx at(int p, int q) const { return samples[std::size_t(p) * ny + q]; }

  double cell_area() const { return dx * dy; }
  /// sum |f|^2 dx dy
  double norm2() const;

  void fill(const std::function<cplx(PhasePoint)>& f);

  /// CSV with header `x,y,re,im`, row-major.
  void save_csv(std::ostream& os) const;
  void save_csv(const std::string& path) const;
  static GridFunction2D load_csv(std::istream& is);
  static GridFunction2D load_csv(const std::string& path);
};

/// D x D matrix of rho(g) compressed to the Hermite span,
///   (rho(x,y,z) phi)(t) = z e^{pi i (x y + 2 y t)} phi(t + x),
/// entries <rho(g) h_k, h_j> by quadrature. Central elements come out as
/// exactly z I (their compression is exact).
Operator rho_matrix(const GroupElement& g, const HermiteBasis& basis);

/// alpha(X)(w) = tr(X rho(s(w))^*).
cplx fourier_wigner(const Operator& x, PhasePoint w, const HermiteBasis& basis);

/// alpha(X) sampled on a grid (same quadrature path as fourier_wigner,
/// restructured so each grid column reuses one Hermite table).
GridFunction2D fourier_wigner_grid(const Operator& x, const HermiteBasis& basis,
                                   const GridFunction2D& geometry);
GridFunction2D fourier_wigner_grid(const Operator& x, const HermiteBasis& basis,
                                   double L, int n);

/// Riemann-sum Weyl transform, W(f) = sum f(w) rho(s(w)) dx dy over the
/// midpoint grid of f.
Operator weyl_transform(const GridFunction2D& f, const HermiteBasis& basis);

}  // namespace wh::schrodinger
