#include "wh/benedicks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "wh/kernels.hpp"

namespace wh::benedicks {

bool SupportMask::contains(PhasePoint w) const {
  const double fx = (w.x - origin.x) / dx;
  const double fy = (w.y - origin.y) / dy;
  if (fx < 0 || fy < 0) return false;
  const auto p = static_cast<long long>(fx);
  const auto q = static_cast<long long>(fy);
  if (p >= nx || q >= ny) return false;
  return cells[std::size_t(p) * ny + q] != 0;
}

SupportMask superlevel_mask(const GridFunction2D& alpha_grid, double epsilon) {
  if (epsilon <= 0)
    throw std::invalid_argument("superlevel_mask: epsilon must be positive");
  SupportMask m;
  m.origin = alpha_grid.origin;
  m.dx = alpha_grid.dx;
  m.dy = alpha_grid.dy;
  m.nx = alpha_grid.nx;
  m.ny = alpha_grid.ny;
  m.epsilon = epsilon;
  m.cells.resize(alpha_grid.samples.size());
  for (std::size_t i = 0; i < m.cells.size(); ++i)
    m.cells[i] = std::abs(alpha_grid.samples[i]) > epsilon ? 1 : 0;
  return m;
}

SupportReport superlevel_measure(const GridFunction2D& alpha_grid,
                                 double epsilon) {
  const SupportMask m = superlevel_mask(alpha_grid, epsilon);
  SupportReport r;
  r.epsilon = epsilon;
  r.cell_count = std::count(m.cells.begin(), m.cells.end(), std::uint8_t{1});
  r.measure = double(r.cell_count) * m.dx * m.dy;
  r.window_lo = m.origin;
  r.window_hi = {m.origin.x + m.nx * m.dx, m.origin.y + m.ny * m.dy};
  return r;
}

Operator translate_op(const Operator& x, PhasePoint v,
                      const HermiteBasis& basis) {
  if (x.basis != Basis::hermite || x.dim() != basis.D)
    throw std::invalid_argument("translate_op: operator not in hermite basis");
  const Operator r = schrodinger::rho_matrix(heisenberg::section(v), basis);
  return {Basis::hermite, x.m * r.m.adjoint()};
}

std::vector<NPerpIndex> nv_set(const SupportMask& mask, PhasePoint v,
                               const LatticeSpec& spec, long long window) {
  std::vector<NPerpIndex> out;
  for (long long j = -window; j <= window; ++j) {
    for (long long k = -window; k <= window; ++k) {
      const RatPoint n = spec.embed({j, k});
      const PhasePoint shifted{to_double(n.x) + v.x, to_double(n.y) + v.y};
      if (mask.contains(shifted)) out.push_back({j, k});
    }
  }
  return out;
}

PipelineContext make_context(const Operator& x, const HermiteBasis& basis,
                             const TauRep& rep, const OmegaGrid& grid,
                             double support_half_width, int support_cells,
                             long long fw_window) {
  PipelineContext ctx;
  ctx.basis = &basis;
  ctx.rep = &rep;
  ctx.grid = &grid;
  ctx.fw_window = fw_window;
  ctx.alpha_x = schrodinger::fourier_wigner_grid(x, basis, support_half_width,
                                                 support_cells);
  return ctx;
}

namespace {

const Operator& cached_rho(PipelineContext& ctx, NPerpIndex n) {
  const auto key = std::make_pair(n.j, n.k);
  auto it = ctx.rho_cache.find(key);
  if (it == ctx.rho_cache.end()) {
    const RatPoint np = ctx.rep->spec.embed(n);
    Operator r = schrodinger::rho_matrix(
        heisenberg::section({to_double(np.x), to_double(np.y)}), *ctx.basis);
    it = ctx.rho_cache.emplace(key, std::move(r)).first;
  }
  return it->second;
}

}  // namespace

PipelineReport reconstruction_residual(const Operator& x, PhasePoint v,
                                       double epsilon, PipelineContext& ctx) {
  const TauRep& rep = *ctx.rep;
  const OmegaGrid& grid = *ctx.grid;
  PipelineReport rep_out;
  rep_out.a = rep.spec.a;
  rep_out.v = v;
  rep_out.epsilon = epsilon;
  rep_out.rank = x.rank(ctx.rank_tol);
  if (rep_out.a <= rep_out.rank)
    throw std::invalid_argument(
        "reconstruction_residual: requires a > rank(X)");

  const SupportMask mask = superlevel_mask(ctx.alpha_x, epsilon);
  rep_out.support_measure =
      superlevel_measure(ctx.alpha_x, epsilon).measure;

  if (x.hs_norm() == 0.0) {
    rep_out.zero_operator = true;
    return rep_out;
  }

  const std::vector<NPerpIndex> nv = nv_set(mask, v, rep.spec, ctx.fw_window);
  rep_out.nv_size = static_cast<int>(nv.size());

  // F = sum_l sigma_l (Z u_l) (x) conj(Z v_l) over the rank decomposition
  // of X^v.
  const Operator xv = translate_op(x, v, *ctx.basis);
  Eigen::JacobiSVD<Matrix> svd(xv.m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  std::vector<induced::CovariantVectorField> phis, psis;
  for (int l = 0; l < sv.size(); ++l) {
    if (sv(l) <= ctx.rank_tol * sv(0)) break;
    phis.push_back(induced::zak(Vector(sv(l) * svd.matrixU().col(l)), grid, rep));
    psis.push_back(induced::zak(Vector(svd.matrixV().col(l)), grid, rep));
  }
  const CovariantOperatorField f = induced::outer_field(phis, psis);
  const double f_norm2 = f.norm2();

  std::map<NPerpIndex, cplx> coeffs;
  for (const NPerpIndex& n : nv) coeffs[n] = induced::fw_coefficient(f, n, rep);
  const CovariantOperatorField fhat = induced::expand(coeffs, grid, rep);
  const double res2 = (f - fhat).norm2();
  rep_out.residual_rel = std::sqrt(std::max(res2, 0.0) / f_norm2);

  // Independent tail from the Schrodinger-side coefficients alpha(X^v)(n).
  double captured = 0;
  for (const NPerpIndex& n : nv) {
    const cplx c = kernels::cdot(xv.data(), cached_rho(ctx, n).data(),
                                 std::size_t(xv.dim()) * xv.dim());
    captured += std::norm(c);
  }
  rep_out.parseval_tail_rel =
      std::sqrt(std::max(f_norm2 - captured, 0.0) / f_norm2);

  rep_out.min_sv_fraction = rank_dichotomy_scan(coeffs, rep, grid, ctx.sv_tol);
  return rep_out;
}

double rank_dichotomy_scan(const std::map<NPerpIndex, cplx>& coeffs,
                           const TauRep& rep, const OmegaGrid& grid,
                           double tol) {
  const CovariantOperatorField f = induced::expand(coeffs, grid, rep);
  const int G = grid.G;
  long long low = 0;
  for (int p = 0; p < G; ++p) {
    for (int q = 0; q < G; ++q) {
      Eigen::JacobiSVD<Matrix> svd(f.at(p, q));
      const auto& sv = svd.singularValues();
      if (sv(sv.size() - 1) < tol) ++low;
    }
  }
  return double(low) / (double(G) * G);
}

void write_report_csv(std::ostream& os, std::span<const PipelineReport> rows) {
  os << "rank,a,vx,vy,epsilon,nv_size,support_measure,residual_rel,"
        "min_sv_fraction\n";
  char buf[256];
  for (const PipelineReport& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%lld,%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g\n",
                  r.rank, r.a, r.v.x, r.v.y, r.epsilon, r.nv_size,
                  r.support_measure, r.residual_rel, r.min_sv_fraction);
    os << buf;
  }
}

}  // namespace wh::benedicks
