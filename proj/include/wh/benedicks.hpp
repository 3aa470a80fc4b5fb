#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "wh/induced.hpp"
#include "wh/schrodinger.hpp"

namespace wh::benedicks {

using heisenberg::PhasePoint;
using induced::CovariantOperatorField;
using induced::OmegaGrid;
using lattice::LatticeSpec;
using lattice::NPerpIndex;
using lattice::TauRep;
using schrodinger::GridFunction2D;
using schrodinger::HermiteBasis;

/// Cell mask of the superlevel set B_eps = { w : |alpha(X)(w)| > eps } on the
/// sampling window of a grid function.
struct SupportMask {
  PhasePoint origin;
  double dx = 0, dy = 0;
  int nx = 0, ny = 0;
  double epsilon = 0;
  std::vector<std::uint8_t> cells;  // row-major, 1 = above the level

  /// True when w lands in a marked cell.
  bool contains(PhasePoint w) const;
};

struct SupportReport {
  double epsilon = 0;
  double measure = 0;       // cell_count * dx * dy
  long long cell_count = 0;
  PhasePoint window_lo, window_hi;
};

SupportMask superlevel_mask(const GridFunction2D& alpha_grid, double epsilon);
SupportReport superlevel_measure(const GridFunction2D& alpha_grid,
                                 double epsilon);

/// X^v = X rho(s(v))^*.
Operator translate_op(const Operator& x, PhasePoint v,
                      const HermiteBasis& basis);

/// All dual-lattice points n with |j|, |k| <= window such that n + v lands in
/// a marked cell of the mask.
std::vector<NPerpIndex> nv_set(const SupportMask& mask, PhasePoint v,
                               const LatticeSpec& spec, long long window);

struct PipelineReport {
  int rank = 0;
  long long a = 0;
  PhasePoint v;
  double epsilon = 0;
  int nv_size = 0;
  double support_measure = 0;
  double residual_rel = 0;       // ||F - F_hat|| / ||F||
  double parseval_tail_rel = 0;  // independent tail from Schrodinger-side
                                 // coefficients
  double min_sv_fraction = 0;    // grid fraction where sigma_min(F_hat) < tol
  bool zero_operator = false;
};

/// Shared resources for a batch of (v, eps) runs on the same operator.
struct PipelineContext {
  const HermiteBasis* basis = nullptr;
  const TauRep* rep = nullptr;
  const OmegaGrid* grid = nullptr;
  GridFunction2D alpha_x;       // alpha(X) on the support window
  long long fw_window = 8;      // index bound for N_v
  double sv_tol = 1e-8;
  double rank_tol = 1e-10;

  // rho(s(n))^* reused across v samples
  std::map<std::pair<long long, long long>, Operator> rho_cache;
};

PipelineContext make_context(const Operator& x, const HermiteBasis& basis,
                             const TauRep& rep, const OmegaGrid& grid,
                             double support_half_width, int support_cells,
                             long long fw_window);

/// One run of the support/reconstruction pipeline: translate, collect N_v,
/// expand the field coefficients on N_v, and measure what is missed.
PipelineReport reconstruction_residual(const Operator& x, PhasePoint v,
                                       double epsilon, PipelineContext& ctx);

/// Fraction of grid points where the smallest singular value of
/// sum_n c_n e(w, n) tau(s(n)) falls below tol.
double rank_dichotomy_scan(const std::map<NPerpIndex, cplx>& coeffs,
                           const TauRep& rep, const OmegaGrid& grid,
                           double tol);

/// CSV header `rank,a,vx,vy,epsilon,nv_size,support_measure,residual_rel,min_sv_fraction`.
void write_report_csv(std::ostream& os, std::span<const PipelineReport> rows);

}  // namespace wh::benedicks
