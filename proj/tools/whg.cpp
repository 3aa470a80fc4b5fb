// whg — command-line driver: verification suites, the support/reconstruction
// pipeline, and CSV export.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wh/benedicks.hpp"
#include "wh/induced.hpp"
#include "wh/kernels.hpp"
#include "wh/lattice.hpp"
#include "wh/parallel.hpp"
#include "wh/schrodinger.hpp"

namespace {

using namespace wh;
using heisenberg::GroupElement;
using heisenberg::PhasePoint;
using induced::CovariantOperatorField;
using induced::CovariantVectorField;
using induced::OmegaGrid;
using lattice::Element;
using lattice::LatticeSpec;
using lattice::linv;
using lattice::lmul;
using lattice::lsection;
using lattice::make_lattice;
using lattice::NPerpIndex;
using lattice::TauRep;
using schrodinger::GridFunction2D;
using schrodinger::HermiteBasis;

struct RunConfig {
  int D = 64;
  int G = 64;
  int J = 0;  // 0 = tail rule
  std::string alpha, beta = "1";
  long long a = 0;  // 0 = rank + 1
  double L = 4.0;
  int P = 128;  // phase-plane cells per axis
  std::vector<double> eps{1e-1, 1e-2, 1e-3};
  unsigned long long seed = 0;
  int threads = 0;  // 0 = hardware
  std::string out;
  int rank = 1;
  int vgrid = 4;
  std::string simd = "auto";
  bool tamper_zeta = false;
  bool tamper_cocycle = false;
};

struct Resolved {
  LatticeSpec spec;
  TauRep rep;
  OmegaGrid grid;
  HermiteBasis basis;
};

Resolved resolve(const RunConfig& cfg) {
  Rat alpha, beta = parse_rational(cfg.beta);
  if (!cfg.alpha.empty()) {
    alpha = parse_rational(cfg.alpha);
  } else {
    const long long a = cfg.a > 0 ? cfg.a : cfg.rank + 1;
    alpha = Rat(a) / beta;
  }
  Resolved r{make_lattice(alpha, beta), {}, {}, {}};
  r.rep = TauRep::make(r.spec);
  r.grid = OmegaGrid::make(r.spec, cfg.G);
  r.basis = HermiteBasis::make(cfg.D);
  return r;
}

void apply_common(const RunConfig& cfg) {
  set_threads(cfg.threads > 0
                  ? cfg.threads
                  : int(std::max(1u, std::thread::hardware_concurrency())));
  if (cfg.simd == "scalar") {
    kernels::select(kernels::Variant::Scalar);
  } else if (cfg.simd == "avx2") {
    kernels::select(kernels::Variant::Avx2);
  } else {
    kernels::select_auto();
  }
  lattice::test_hooks::zeta_correction_enabled = !cfg.tamper_zeta;
  lattice::test_hooks::cocycle_enabled = !cfg.tamper_cocycle;
}

// ---------------------------------------------------------------------------
// verify

struct Table {
  struct Row {
    std::string name;
    double measured, tol;
    bool pass;
  };
  std::vector<Row> rows;
  std::vector<std::string> notes;

  void add(const std::string& name, double measured, double tol) {
    rows.push_back({name, measured, tol, measured <= tol});
  }
  void note(const std::string& text) { notes.push_back(text); }
  bool all_pass() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const Row& r) { return r.pass; });
  }
  void print(std::ostream& os) const {
    os << "  " << std::left << std::setw(46) << "check" << std::setw(14)
       << "measured" << std::setw(14) << "tolerance" << "status\n";
    char buf[64];
    for (const Row& r : rows) {
      std::snprintf(buf, sizeof buf, "%-13.3e %-13.3e", r.measured, r.tol);
      os << "  " << std::left << std::setw(46) << r.name << buf << " "
         << (r.pass ? "PASS" : "FAIL") << "\n";
    }
    for (const std::string& n : notes) os << "  " << n << "\n";
  }
};

cplx random_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  return std::polar(1.0, u(rng));
}

GroupElement random_group_element(std::mt19937_64& rng, double span = 3.0) {
  std::uniform_real_distribution<double> u(-span, span);
  return {{u(rng), u(rng)}, random_phase(rng)};
}

double element_distance(const GroupElement& g, const GroupElement& h) {
  return std::max({std::abs(g.p.x - h.p.x), std::abs(g.p.y - h.p.y),
                   std::abs(g.z - h.z)});
}

Vector basis_vector(int dim, int k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

Operator rank_one(int dim, int j, int k) {
  Operator x = Operator::zero(Basis::hermite, dim);
  x.m(j, k) = 1.0;
  return x;
}

int cmd_verify(const RunConfig& cfg) {
  const long long fw_window = 4;
  {
    Rat beta = parse_rational(cfg.beta);
    Rat alpha = cfg.alpha.empty()
                    ? Rat(cfg.a > 0 ? cfg.a : cfg.rank + 1) / beta
                    : parse_rational(cfg.alpha);
    const Rat area = alpha * beta;
    if (is_integer(area) && area.numerator() > 0) {
      const long long a = area.numerator();
      if (std::max(a - 1, fw_window) >= cfg.G) {
        std::cerr << "verify: aliasing precondition violated: indices up to "
                  << std::max(a - 1, fw_window) << " need |j|,|k| < G = "
                  << cfg.G << "\n";
        return 2;
      }
    }
  }
  const Resolved r = resolve(cfg);
  const LatticeSpec& spec = r.spec;
  const TauRep& rep = r.rep;
  const OmegaGrid& grid = r.grid;
  const HermiteBasis& basis = r.basis;
  const long long a = spec.a;

  std::mt19937_64 rng(cfg.seed);
  Table t;

  {  // group algebra
    double err = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto g1 = random_group_element(rng), g2 = random_group_element(rng),
                 g3 = random_group_element(rng);
      err = std::max(err, element_distance(multiply(multiply(g1, g2), g3),
                                           multiply(g1, multiply(g2, g3))));
    }
    t.add("group associativity (1000 triples)", err, 1e-12);

    err = 0;
    for (int i = 0; i < 100; ++i) {
      const auto g1 = random_group_element(rng), g2 = random_group_element(rng);
      const auto comm = multiply(multiply(g1, g2),
                                 multiply(inverse(g1), inverse(g2)));
      const GroupElement want{{0, 0},
                              heisenberg::pairing(g1.p, g2.p)};
      err = std::max(err, element_distance(comm, want));
    }
    t.add("group commutator = e(pi g, pi g')", err, 1e-12);

    err = 0;
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
      const PhasePoint w{u(rng), u(rng)}, w2{u(rng), u(rng)};
      GroupElement rhs = heisenberg::section(w + w2);
      rhs.z *= heisenberg::cocycle(w, w2);
      err = std::max(err, element_distance(multiply(heisenberg::section(w),
                                                    heisenberg::section(w2)),
                                           rhs));
    }
    t.add("section splitting s(w)s(w')", err, 1e-12);
  }

  {  // character
    std::uniform_int_distribution<long long> ji(-6, 6);
    double err = 0;
    for (int i = 0; i < 200; ++i) {
      const Element h{{Rat(ji(rng)) / spec.beta, Rat(ji(rng)) * spec.beta},
                      random_phase(rng)};
      const Element h2{{Rat(ji(rng)) / spec.beta, Rat(ji(rng)) * spec.beta},
                       random_phase(rng)};
      err = std::max(err, std::abs(lattice::zeta(lmul(h, h2), spec) -
                                   lattice::zeta(h, spec) *
                                       lattice::zeta(h2, spec)));
    }
    t.add("zeta multiplicative on M (200 products)", err, 1e-12);
  }

  {  // twirl average, a in 2..5
    double err = 0;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (long long aa = 2; aa <= 5; ++aa) {
      const TauRep rr = TauRep::make(make_lattice(Rat(aa), Rat(1)));
      for (int trial = 0; trial < 20; ++trial) {
        Operator tt = Operator::zero(Basis::tau, int(aa));
        for (int rI = 0; rI < aa; ++rI)
          for (int c = 0; c < aa; ++c) tt.m(rI, c) = cplx{u(rng), u(rng)};
        const Operator tw = lattice::twirl(tt, rr);
        const Matrix want =
            double(aa) * tt.m.trace() * Matrix::Identity(aa, aa);
        err = std::max(err,
                       (tw.m - want).norm() / std::max(tt.hs_norm(), 1e-300));
      }
    }
    t.add("twirl average = a tr(T) I (a=2..5)", err, 1e-10);
  }

  {  // trace dichotomy on S and N-shifted representatives
    double err = 0;
    for (long long j = -a; j <= 2 * a; ++j) {
      for (long long k = -a; k <= 2 * a; ++k) {
        const cplx tr = lattice::trace_tau({j, k}, rep);
        cplx want = 0;
        if (j % a == 0 && k % a == 0)
          want = lattice::zeta(lsection(spec.embed({j, k})), spec) * double(a);
        err = std::max(err, std::abs(tr - want) / double(a));
      }
    }
    t.add("trace dichotomy on N-perp", err, 1e-10);
  }

  {  // tau gram
    const Matrix gram = lattice::tau_gram(rep);
    const double err =
        (gram - double(a) * Matrix::Identity(a * a, a * a)).cwiseAbs().maxCoeff();
    t.add("tau gram = a I over S", err, 1e-10);

    // inner products at N-shifted representatives (n - n' in N, n outside S)
    double err2 = 0;
    for (const NPerpIndex& n : rep.s_domain) {
      const NPerpIndex shifted{n.j + a, n.k};
      const cplx lhs =
          (rep.tau_of(shifted) * rep.tau_of(n).adjoint()).trace();
      const Element prod = lmul(lsection(spec.embed(shifted)),
                                lsection(-spec.embed(n)));
      const cplx rhs = double(a) * lattice::zeta(prod, spec);
      err2 = std::max(err2, std::abs(lhs - rhs));
    }
    t.add("tau inner products at N-shifts", err2, 1e-10);
  }

  {  // xi gram: <Xi_n, Xi_n'> = (phase sum) dxdy tr(tau_n tau_n'^*)
    const long long w = std::min<long long>(4, cfg.G - 1);
    double err = 0;
    const long long aG = a * cfg.G;
    auto axis_sum = [&](long long m) {
      cplx s = 0;
      for (int p = 0; p < cfg.G; ++p)
        s += std::polar(1.0, 2.0 * std::numbers::pi *
                                 double(((p * m) % aG + aG) % aG) / double(aG));
      return s;
    };
    for (long long j = -w; j <= w; ++j)
      for (long long k = -w; k <= w; ++k)
        for (long long j2 = -w; j2 <= w; ++j2)
          for (long long k2 = -w; k2 <= w; ++k2) {
            const cplx tt =
                (rep.tau_of({j, k}) * rep.tau_of({j2, k2}).adjoint()).trace();
            const cplx val = axis_sum(k - k2) * std::conj(axis_sum(j - j2)) *
                             grid.cell_area() * tt;
            const cplx want = (j == j2 && k == k2) ? 1.0 : 0.0;
            err = std::max(err, std::abs(val - want));
          }
    t.add("xi gram orthonormality (|j|,|k|<=4)", err, 1e-10);
  }

  const int J = cfg.J > 0 ? cfg.J : induced::zak_tail_terms(5, spec);

  {  // lattice action pointwise (rho_N(s(n)) = Xi_n ·)
    double err = 0;
    for (int k = 0; k <= 3; ++k) {
      const CovariantVectorField phi =
          induced::zak(basis_vector(std::max(cfg.D, 6), k), grid, rep, J);
      for (const NPerpIndex& n : rep.s_domain) {
        const CovariantVectorField lhs =
            induced::rho_n_apply(lsection(spec.embed(n)), phi, rep);
        for (int p = 0; p < cfg.G; ++p)
          for (int q = 0; q < cfg.G; ++q) {
            const Matrix xi_m = induced::xi_at(n, p, q, grid, rep);
            Eigen::Map<const Vector> src(phi.at(p, q), a);
            Eigen::Map<const Vector> got(lhs.at(p, q), a);
            err = std::max(err, (Vector(xi_m * src) - got).cwiseAbs().maxCoeff());
          }
      }
    }
    t.add("lattice action pointwise (Xi)", err, 1e-9);
  }

  {  // zak unitarity + covariance
    double err = 0;
    for (int k = 0; k <= 5; ++k) {
      const CovariantVectorField z =
          induced::zak(basis_vector(6, k), grid, rep, J);
      err = std::max(err, std::abs(z.norm2() - 1.0));
    }
    t.add("zak unitarity (k<=5)", err, 1e-6);

    double cerr = 0;
    const Vector c = basis_vector(6, 2);
    const CovariantVectorField z = induced::zak(c, grid, rep, J);
    for (const RatPoint& nu :
         {spec.nperp_gen1(), spec.nperp_gen2()}) {
      const Matrix tau_nu = rep.tau_of(spec.index_of(nu));
      const PhasePoint nud{to_double(nu.x), to_double(nu.y)};
      for (int p = 0; p < cfg.G; p += std::max(1, cfg.G / 8))
        for (int q = 0; q < cfg.G; q += std::max(1, cfg.G / 8)) {
          const GroupElement shifted = multiply(
              heisenberg::section(nud), heisenberg::section(grid.point(p, q)));
          const Vector lhs = induced::zak_at(c, shifted, rep, J);
          Eigen::Map<const Vector> base(z.at(p, q), a);
          cerr = std::max(cerr,
                          (lhs - Vector(tau_nu * base)).cwiseAbs().maxCoeff());
        }
    }
    t.add("zak covariance (dual generators)", cerr, 1e-8);
  }

  {  // zak intertwining vs rho_N
    double err = 0;
    const int JD = cfg.J > 0 ? cfg.J : induced::zak_tail_terms(cfg.D - 1, spec);
    for (const NPerpIndex& n : rep.s_domain) {
      const Operator rmat =
          schrodinger::rho_matrix(heisenberg::section(
                                      {to_double(spec.embed(n).x),
                                       to_double(spec.embed(n).y)}),
                                  basis);
      const Vector c = basis_vector(cfg.D, 1);
      const CovariantVectorField lhs =
          induced::zak(Vector(rmat.m * c), grid, rep, JD);
      const CovariantVectorField rhs = induced::rho_n_apply(
          lsection(spec.embed(n)), induced::zak(c, grid, rep, JD), rep);
      double diff2 = 0, norm2 = 0;
      for (std::size_t i = 0; i < lhs.data.size(); ++i) {
        diff2 += std::norm(lhs.data[i] - rhs.data[i]);
        norm2 += std::norm(rhs.data[i]);
      }
      err = std::max(err, std::sqrt(diff2 / norm2));
    }
    t.add("zak intertwines rho and rho_N", err, 1e-6);
  }

  {  // two-path coefficients
    double err = 0;
    const std::pair<int, int> pairs[] = {{0, 0}, {0, 1}, {1, 1},
                                         {2, 0}, {1, 2}, {3, 3}};
    for (const auto& [hp, hq] : pairs) {
      const CovariantVectorField zp =
          induced::zak(basis_vector(cfg.D, hp), grid, rep, J);
      const CovariantVectorField zq =
          induced::zak(basis_vector(cfg.D, hq), grid, rep, J);
      const CovariantOperatorField f =
          induced::outer_field({&zp, 1}, {&zq, 1});
      const Operator x = rank_one(cfg.D, hp, hq);
      for (long long j = -fw_window; j <= fw_window; ++j)
        for (long long k = -fw_window; k <= fw_window; ++k) {
          const RatPoint n = spec.embed({j, k});
          const cplx lhs = induced::fw_coefficient(f, {j, k}, rep);
          const cplx rhs = schrodinger::fourier_wigner(
              x, {to_double(n.x), to_double(n.y)}, basis);
          err = std::max(err, std::abs(lhs - rhs));
        }
    }
    t.add("coefficient path agreement (|j|,|k|<=4)", err, 1e-6);
  }

  {  // induced trace identity on grid-aligned w
    const CovariantVectorField zp =
        induced::zak(basis_vector(cfg.D, 0), grid, rep, J);
    const CovariantVectorField zq =
        induced::zak(basis_vector(cfg.D, 1), grid, rep, J);
    const Operator x = rank_one(cfg.D, 0, 1);
    double err = 0;
    for (int p = 0; p < cfg.G; p += std::max(1, cfg.G / 4))
      for (int q = 0; q < cfg.G; q += std::max(1, cfg.G / 4)) {
        const cplx lhs =
            induced::induced_trace(zp, zq, lsection(grid.rpoint(p, q)), rep);
        const cplx rhs =
            schrodinger::fourier_wigner(x, grid.point(p, q), basis);
        err = std::max(err, std::abs(lhs - rhs));
      }
    t.add("induced trace matches alpha", err, 1e-6);
  }

  {  // round trips
    GridFunction2D f = GridFunction2D::window(cfg.L, cfg.P);
    f.fill([](PhasePoint w) {
      return cplx{std::exp(-std::numbers::pi * (w.x * w.x + w.y * w.y) / 2), 0};
    });
    const Operator wf = schrodinger::weyl_transform(f, basis);
    const GridFunction2D back = schrodinger::fourier_wigner_grid(
        wf, basis, GridFunction2D::window(cfg.L, cfg.P));
    double diff2 = 0;
    for (std::size_t i = 0; i < f.samples.size(); ++i)
      diff2 += std::norm(back.samples[i] - f.samples[i]);
    t.add("roundtrip alpha(W(f)) = f",
          std::sqrt(diff2 * f.cell_area() / f.norm2()), 1e-3);

    const Operator x = rank_one(cfg.D, 1, 2);
    const GridFunction2D ax = schrodinger::fourier_wigner_grid(
        x, basis, GridFunction2D::window(cfg.L, cfg.P));
    const Operator wx = schrodinger::weyl_transform(ax, basis);
    t.add("roundtrip W(alpha(X)) = X", (wx.m - x.m).norm() / x.m.norm(), 1e-3);

    // declared-resolution check: halving dx must not move the result
    GridFunction2D f2 = GridFunction2D::window(cfg.L, 2 * cfg.P);
    f2.fill([](PhasePoint w) {
      return cplx{std::exp(-std::numbers::pi * (w.x * w.x + w.y * w.y) / 2), 0};
    });
    const Operator wf2 = schrodinger::weyl_transform(f2, basis);
    t.add("weyl refinement (halve dx)", (wf.m - wf2.m).norm() /
                                            std::max(wf2.m.norm(), 1e-300),
          1e-3);
  }

  {  // translation phase law
    Operator x = rank_one(cfg.D, 0, 0);
    x.m(1, 0) = 0.3;
    const PhasePoint v{0.5, -0.25};
    const Operator xv = benedicks::translate_op(x, v, basis);
    double err = 0;
    for (int i = -3; i <= 3; ++i)
      for (int j = -3; j <= 3; ++j) {
        const PhasePoint w{i * 0.4, j * 0.4};
        const cplx lhs = schrodinger::fourier_wigner(xv, w, basis);
        const cplx rhs = std::conj(heisenberg::cocycle(w, v)) *
                         schrodinger::fourier_wigner(x, w + v, basis);
        err = std::max(err, std::abs(lhs - rhs));
      }
    t.add("translation phase law", err, 1e-8);
  }

  {  // parseval window monotonicity
    const CovariantVectorField z0 =
        induced::zak(basis_vector(6, 0), grid, rep, J);
    const CovariantOperatorField f = induced::outer_field({&z0, 1}, {&z0, 1});
    const double total = f.norm2();
    double prev = total;
    double worst_increase = 0;
    for (long long w : {1LL, 2LL, 4LL}) {
      double captured = 0;
      for (long long j = -w; j <= w; ++j)
        for (long long k = -w; k <= w; ++k)
          captured += std::norm(induced::fw_coefficient(f, {j, k}, rep));
      const double tail = total - captured;
      worst_increase = std::max(worst_increase, tail - prev);
      prev = tail;
    }
    t.add("parseval window tail monotone", worst_increase, 1e-12);
  }

  {  // reported diagnostics
    std::ostringstream os;
    const GroupElement g{{0.5, 0.5}, {1.0, 0.0}};
    const Operator rm = schrodinger::rho_matrix(g, basis);
    const int K = std::min(8, cfg.D);
    const Matrix leak =
        rm.m * rm.m.adjoint() - Matrix::Identity(cfg.D, cfg.D);
    os << "unitarity leakage at g=(0.5,0.5): low-block "
       << leak.topLeftCorner(K, K).cwiseAbs().maxCoeff() << ", full "
       << leak.cwiseAbs().maxCoeff() << " (D = " << cfg.D << ")";
    t.note(os.str());
    std::ostringstream os2;
    os2 << "zak periodization J = " << J << " (tail < 1e-12 for k <= 5)";
    t.note(os2.str());
    t.note("kernel variant: " +
           std::string(kernels::name(kernels::active())));
  }

  t.print(std::cout);
  std::cout << (t.all_pass() ? "verify: all checks passed\n"
                             : "verify: FAILURES present\n");
  return t.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// benedicks

int cmd_benedicks(const RunConfig& cfg) {
  const Resolved r = resolve(cfg);
  Operator x = Operator::zero(Basis::hermite, cfg.D);
  for (int l = 0; l < cfg.rank && l < cfg.D; ++l) x.m(l, l) = 1.0;
  const int rank = x.rank();
  if (r.spec.a <= rank) {
    std::cerr << "benedicks: requires a > rank(X); got a = " << r.spec.a
              << ", rank = " << rank << "\n";
    return 2;
  }
  benedicks::PipelineContext ctx = benedicks::make_context(
      x, r.basis, r.rep, r.grid, cfg.L, cfg.P, std::min<long long>(8, cfg.G - 1));

  std::vector<benedicks::PipelineReport> rows;
  const double wx = to_double(r.spec.omega_width_x());
  const double wy = to_double(r.spec.omega_width_y());
  for (int s = 0; s < cfg.vgrid; ++s) {
    for (int u = 0; u < cfg.vgrid; ++u) {
      const PhasePoint v{s * wx / cfg.vgrid, u * wy / cfg.vgrid};
      for (double eps : cfg.eps) {
        rows.push_back(benedicks::reconstruction_residual(x, v, eps, ctx));
      }
    }
  }

  const std::string path = cfg.out.empty() ? "benedicks_report.csv" : cfg.out;
  std::ofstream os(path);
  if (!os) {
    std::cerr << "benedicks: cannot open " << path << "\n";
    return 2;
  }
  benedicks::write_report_csv(os, rows);

  double min_res = 1e300, max_res = 0, max_frac = 0;
  bool any_zero = false;
  for (const auto& row : rows) {
    if (row.zero_operator) {
      any_zero = true;
      continue;
    }
    min_res = std::min(min_res, row.residual_rel);
    max_res = std::max(max_res, row.residual_rel);
    max_frac = std::max(max_frac, row.min_sv_fraction);
  }
  std::cout << "wrote " << rows.size() << " rows to " << path << "\n"
            << "rank = " << rank << ", a = " << r.spec.a << "\n";
  if (any_zero) std::cout << "zero operator: residuals reported as 0\n";
  if (max_res > 0) {
    std::cout << "residual_rel in [" << min_res << ", " << max_res
              << "]; all > 0: the expansion over N_v cannot reproduce a "
                 "rank-deficient field exactly\n"
              << "max singular fraction " << max_frac << " (tol " << 1e-8
              << ")\n";
  }
  std::cout << "note: at finite resolution the obstruction appears as "
               "strictly positive residuals plus the rank dichotomy, not as "
               "a literal X = 0\n";
  return 0;
}

// ---------------------------------------------------------------------------
// dump

int cmd_dump(const RunConfig& cfg, const std::string& what) {
  const Resolved r = resolve(cfg);
  const std::string path = cfg.out.empty() ? what + ".csv" : cfg.out;
  if (what == "alpha") {
    Operator x = Operator::zero(Basis::hermite, cfg.D);
    for (int l = 0; l < cfg.rank && l < cfg.D; ++l) x.m(l, l) = 1.0;
    const GridFunction2D g =
        schrodinger::fourier_wigner_grid(x, r.basis, cfg.L, cfg.P);
    g.save_csv(path);
  } else if (what == "field") {
    const int J = cfg.J > 0 ? cfg.J : 0;
    std::vector<CovariantVectorField> phis, psis;
    for (int l = 0; l < cfg.rank && l < cfg.D; ++l) {
      phis.push_back(
          induced::zak(basis_vector(cfg.D, l), r.grid, r.rep, J));
      psis.push_back(phis.back());
    }
    const CovariantOperatorField f = induced::outer_field(phis, psis);
    f.save_csv(path);
  } else if (what == "gram") {
    const Matrix gram = lattice::tau_gram(r.rep);
    std::ofstream os(path);
    if (!os) {
      std::cerr << "dump: cannot open " << path << "\n";
      return 2;
    }
    os << "row,col,re,im\n";
    char buf[128];
    for (int i = 0; i < gram.rows(); ++i)
      for (int j = 0; j < gram.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", i, j,
                      gram(i, j).real(), gram(i, j).imag());
        os << buf;
      }
  } else {
    std::cerr << "dump: unknown selector '" << what
              << "' (expected alpha|field|gram)\n";
    return 2;
  }
  std::cout << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Weyl-Heisenberg lattice calculus toolkit"};
  app.set_config("--config", "", "plain key = value config file");
  app.add_option("--D", cfg.D, "Hermite truncation dimension");
  app.add_option("--G", cfg.G, "grid points per axis on the fundamental domain");
  app.add_option("--J", cfg.J, "Zak periodization terms (0 = tail rule)");
  app.add_option("--alpha", cfg.alpha, "lattice alpha as p/q");
  app.add_option("--beta", cfg.beta, "lattice beta as p/q");
  app.add_option("--a", cfg.a, "lattice area (alternative to --alpha)");
  app.add_option("--L", cfg.L, "phase-plane window half-width");
  app.add_option("--P", cfg.P, "phase-plane cells per axis");
  app.add_option("--eps", cfg.eps, "superlevel thresholds")->delimiter(',');
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
  app.add_option("--out", cfg.out, "output path");
  app.add_option("--rank", cfg.rank, "rank of the test projector");
  app.add_option("--vgrid", cfg.vgrid, "v samples per axis");
  app.add_option("--simd", cfg.simd, "kernel variant: auto|scalar|avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  app.add_flag("--tamper-zeta", cfg.tamper_zeta)->group("");
  app.add_flag("--tamper-cocycle", cfg.tamper_cocycle)->group("");

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  auto* bene = app.add_subcommand("benedicks", "support/reconstruction pipeline");
  std::string selector;
  auto* dump = app.add_subcommand("dump", "export grids as CSV");
  dump->add_option("what", selector, "alpha|field|gram");
  for (CLI::App* sub : {verify, bene, dump}) sub->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    apply_common(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (bene->parsed()) return cmd_benedicks(cfg);
    if (dump->parsed()) return cmd_dump(cfg, selector);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
