#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wh/hermite.hpp"
#include "wh/lattice.hpp"

namespace wh::induced {

using heisenberg::PhasePoint;
using lattice::LatticeSpec;
using lattice::NPerpIndex;
using lattice::TauRep;

/// Uniform G x G grid on the fundamental domain Omega = [0, 1/beta) x
/// [0, 1/alpha), points w_pq = (p dx, q dy) with dx = 1/(beta G), dy =
/// 1/(alpha G). The dual-lattice generators are exactly G grid steps, so
/// every covariant reduction lands back on a grid point.
struct OmegaGrid {
  LatticeSpec spec;
  int G = 0;
  Rat dx_r, dy_r;
  double dx = 0, dy = 0;

  static OmegaGrid make(const LatticeSpec& spec, int G);

  PhasePoint point(int p, int q) const { return {p * dx, q * dy}; }
  RatPoint rpoint(int p, int q) const { return {p * dx_r, q * dy_r}; }
  double cell_area() const { return dx * dy; }
  /// Index bound below which grid phase sums are alias-free (for a >= 2).
  long long aliasing_bound() const { return G; }

  friend bool operator==(const OmegaGrid& a, const OmegaGrid& b) {
    return a.spec.alpha == b.spec.alpha && a.spec.beta == b.spec.beta &&
           a.G == b.G;
  }
};

/// Restriction to s(Omega) of a covariant function G -> C^a; values off the
/// domain are reconstructed through covariance, never stored.
struct CovariantVectorField {
  OmegaGrid grid;
  int a = 0;
  std::vector<cplx> data;  // [(p*G + q)*a + i]

  static CovariantVectorField zero(const OmegaGrid& grid);

  cplx* at(int p, int q) { return &data[(std::size_t(p) * grid.G + q) * a]; }
  const cplx* at(int p, int q) const {
    return &data[(std::size_t(p) * grid.G + q) * a];
  }
  /// integral of ||phi(s(w))||^2 over Omega (rectangle rule)
  double norm2() const;
};

/// Restriction to s(Omega) of a covariant operator-valued function; cells
/// are a x a column-major blocks.
struct CovariantOperatorField {
  OmegaGrid grid;
  int a = 0;
  std::vector<cplx> data;  // [(p*G + q)*a*a ...]

  static CovariantOperatorField zero(const OmegaGrid& grid);

  cplx* cell(int p, int q) {
    return &data[(std::size_t(p) * grid.G + q) * a * a];
  }
  const cplx* cell(int p, int q) const {
    return &data[(std::size_t(p) * grid.G + q) * a * a];
  }
  Eigen::Map<Matrix> at(int p, int q) { return {cell(p, q), a, a}; }
  Eigen::Map<const Matrix> at(int p, int q) const { return {cell(p, q), a, a}; }

  double norm2() const;

  /// CSV with header `p,q,row,col,re,im`.
  void save_csv(std::ostream& os) const;
  void save_csv(const std::string& path) const;
};

CovariantOperatorField operator-(const CovariantOperatorField& a,
                                 const CovariantOperatorField& b);

/// <A, B> = integral of tr(A(s(w)) B(s(w))^*) over Omega.
cplx field_inner(const CovariantOperatorField& a, const CovariantOperatorField& b);
cplx field_inner(const CovariantVectorField& a, const CovariantVectorField& b);

/// Xi_n(s(w)) = e(w, n) tau(s(n)).
Matrix xi(NPerpIndex n, PhasePoint w, const TauRep& rep);
/// Same, with the phase computed from exact grid rationals.
Matrix xi_at(NPerpIndex n, int p, int q, const OmegaGrid& grid,
             const TauRep& rep);
/// The whole field of Xi_n on the grid.
CovariantOperatorField xi_field(NPerpIndex n, const OmegaGrid& grid,
                                const TauRep& rep);

/// Number of periodization terms needed so the discarded Gaussian tail of
/// every Hermite index <= kmax stays below tol.
int zak_tail_terms(int kmax, const LatticeSpec& spec, double tol = 1e-12);

/// Stage-1 periodization over (1/beta) Z:
///   u_phi(x, y, z) = z beta^{-1/2} e^{pi i x y} sum_{|j|<=J} e^{2 pi i j y / beta}
///                    phi(x + j/beta).
cplx weil_brezin(const Vector& hermite_coeffs,
                 const heisenberg::GroupElement& g, const Rat& beta, int J);

/// Zak / Weil-Brezin intertwiner, built by induction in stages: stage 2
/// evaluates the stage-1 periodization at s(r_i) g on the coset basis. This
/// is the grid-free evaluator; phi is given by Hermite coefficients.
Vector zak_at(const Vector& hermite_coeffs, const heisenberg::GroupElement& g,
              const TauRep& rep, int J = 0);

/// The intertwiner restricted to the grid (same stages, with the Hermite
/// evaluations shared across the grid).
CovariantVectorField zak(const Vector& hermite_coeffs, const OmegaGrid& grid,
                         const TauRep& rep, int J = 0);

/// (rho_N(g) phi)(s(w)) = phi(s(w) g), reduced through covariance. The
/// projection of g must be grid-aligned (exact rational check).
CovariantVectorField rho_n_apply(const lattice::Element& g,
                                 const CovariantVectorField& phi,
                                 const TauRep& rep);

/// F(s(w)) = sum_l phi_l(s(w)) (x) conj(psi_l(s(w))); pointwise rank is at
/// most the number of pairs.
CovariantOperatorField outer_field(std::span<const CovariantVectorField> phis,
                                   std::span<const CovariantVectorField> psis);

/// n-th coefficient of F against the Xi system:
///   alpha(F)(n) = integral of <F(s(w)), Xi_n(s(w))> over Omega.
/// Indices must satisfy |j|, |k| < G.
cplx fw_coefficient(const CovariantOperatorField& f, NPerpIndex n,
                    const TauRep& rep);

/// sum_n c_n Xi_n evaluated on the grid; same index bound as above.
CovariantOperatorField expand(const std::map<NPerpIndex, cplx>& coeffs,
                              const OmegaGrid& grid, const TauRep& rep);

/// tr((phi (x) conj(psi)) rho_N(g)^*) = <phi, rho_N(g) psi>; g grid-aligned.
cplx induced_trace(const CovariantVectorField& phi,
                   const CovariantVectorField& psi, const lattice::Element& g,
                   const TauRep& rep);

}  // namespace wh::induced
