#include "wh/induced.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wh/kernels.hpp"
#include "wh/parallel.hpp"

namespace wh::induced {

namespace {
constexpr double kPi = std::numbers::pi;

/// e^{2 pi i m / d} with m reduced mod d.
cplx root_of_unity(long long m, long long d) {
  m %= d;
  if (m < 0) m += d;
  if (m == 0) return {1.0, 0.0};
  return std::polar(1.0, 2.0 * kPi * double(m) / double(d));
}

void check_index(NPerpIndex n, const OmegaGrid& grid, const char* who) {
  const long long bound = grid.aliasing_bound();
  if (std::llabs(n.j) >= bound || std::llabs(n.k) >= bound) {
    std::ostringstream os;
    os << who << ": index (" << n.j << ", " << n.k
       << ") at or beyond the aliasing bound |j|,|k| < " << bound;
    throw std::domain_error(os.str());
  }
}

void check_same_grid(const OmegaGrid& a, const OmegaGrid& b, const char* who) {
  if (!(a == b)) throw std::invalid_argument(std::string(who) + ": grid mismatch");
}
}  // namespace

OmegaGrid OmegaGrid::make(const LatticeSpec& spec, int G) {
  if (G < 1) throw std::invalid_argument("OmegaGrid: G must be positive");
  OmegaGrid g;
  g.spec = spec;
  g.G = G;
  g.dx_r = spec.omega_width_x() / G;
  g.dy_r = spec.omega_width_y() / G;
  g.dx = to_double(g.dx_r);
  g.dy = to_double(g.dy_r);
  return g;
}

CovariantVectorField CovariantVectorField::zero(const OmegaGrid& grid) {
  CovariantVectorField f;
  f.grid = grid;
  f.a = static_cast<int>(grid.spec.a);
  f.data.assign(std::size_t(grid.G) * grid.G * f.a, cplx{});
  return f;
}

double CovariantVectorField::norm2() const {
  return kernels::norm2(data.data(), data.size()) * grid.cell_area();
}

CovariantOperatorField CovariantOperatorField::zero(const OmegaGrid& grid) {
  CovariantOperatorField f;
  f.grid = grid;
  f.a = static_cast<int>(grid.spec.a);
  f.data.assign(std::size_t(grid.G) * grid.G * f.a * f.a, cplx{});
  return f;
}

double CovariantOperatorField::norm2() const {
  return kernels::norm2(data.data(), data.size()) * grid.cell_area();
}

void CovariantOperatorField::save_csv(std::ostream& os) const {
  os << "p,q,row,col,re,im\n";
  char buf[160];
  for (int p = 0; p < grid.G; ++p) {
    for (int q = 0; q < grid.G; ++q) {
      const cplx* c = cell(p, q);
      for (int col = 0; col < a; ++col) {
        for (int row = 0; row < a; ++row) {
          const cplx v = c[col * a + row];
          std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%.17g,%.17g\n", p, q,
                        row, col, v.real(), v.imag());
          os << buf;
        }
      }
    }
  }
}

void CovariantOperatorField::save_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  save_csv(os);
}

CovariantOperatorField operator-(const CovariantOperatorField& a,
                                 const CovariantOperatorField& b) {
  check_same_grid(a.grid, b.grid, "field difference");
  CovariantOperatorField out = a;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
  return out;
}

cplx field_inner(const CovariantOperatorField& a,
                 const CovariantOperatorField& b) {
  check_same_grid(a.grid, b.grid, "field_inner");
  return kernels::cdot(a.data.data(), b.data.data(), a.data.size()) *
         a.grid.cell_area();
}

cplx field_inner(const CovariantVectorField& a, const CovariantVectorField& b) {
  check_same_grid(a.grid, b.grid, "field_inner");
  return kernels::cdot(a.data.data(), b.data.data(), a.data.size()) *
         a.grid.cell_area();
}

Matrix xi(NPerpIndex n, PhasePoint w, const TauRep& rep) {
  const RatPoint np = rep.spec.embed(n);
  const double arg =
      2.0 * kPi * (w.x * to_double(np.y) - w.y * to_double(np.x));
  return std::polar(1.0, arg) * rep.tau_of(n);
}

Matrix xi_at(NPerpIndex n, int p, int q, const OmegaGrid& grid,
             const TauRep& rep) {
  // e(w_pq, n) = e^{2 pi i (p k - q j)/(a G)}, an exact root of unity.
  const long long aG = grid.spec.a * grid.G;
  return root_of_unity(p * n.k - q * n.j, aG) * rep.tau_of(n);
}

CovariantOperatorField xi_field(NPerpIndex n, const OmegaGrid& grid,
                                const TauRep& rep) {
  std::map<NPerpIndex, cplx> one;
  one[n] = cplx{1.0, 0.0};
  return expand(one, grid, rep);
}

int zak_tail_terms(int kmax, const LatticeSpec& spec, double tol) {
  const double t = schrodinger::hermite_tail_threshold(kmax + 1, tol);
  return static_cast<int>(std::ceil(to_double(spec.beta) * t)) + 1;
}

cplx weil_brezin(const Vector& hermite_coeffs,
                 const heisenberg::GroupElement& g, const Rat& beta, int J) {
  const int K = static_cast<int>(hermite_coeffs.size());
  if (K < 1) throw std::invalid_argument("weil_brezin: empty coefficients");
  if (J <= 0) throw std::invalid_argument("weil_brezin: J must be positive");
  const double b = to_double(beta);
  std::vector<double> vals(K);
  cplx sum = 0;
  for (int j = -J; j <= J; ++j) {
    schrodinger::hermite_values(K, g.p.x + j / b, vals.data());
    cplx phi = 0;
    for (int k = 0; k < K; ++k) phi += hermite_coeffs(k) * vals[k];
    sum += std::polar(1.0, 2.0 * kPi * j * g.p.y / b) * phi;
  }
  return g.z / std::sqrt(b) * std::polar(1.0, kPi * g.p.x * g.p.y) * sum;
}

Vector zak_at(const Vector& hermite_coeffs, const heisenberg::GroupElement& g,
              const TauRep& rep, int J) {
  if (J <= 0)
    J = zak_tail_terms(static_cast<int>(hermite_coeffs.size()) - 1, rep.spec);
  const long long a = rep.spec.a;
  Vector out(a);
  for (long long i = 0; i < a; ++i) {
    const PhasePoint ri{to_double(rep.coset_reps[i].x),
                        to_double(rep.coset_reps[i].y)};
    out(i) = weil_brezin(hermite_coeffs,
                         heisenberg::multiply(heisenberg::section(ri), g),
                         rep.spec.beta, J);
  }
  return out;
}

CovariantVectorField zak(const Vector& hermite_coeffs, const OmegaGrid& grid,
                         const TauRep& rep, int J) {
  const LatticeSpec& spec = grid.spec;
  const int K = static_cast<int>(hermite_coeffs.size());
  if (K < 1) throw std::invalid_argument("zak: empty coefficient vector");
  if (J <= 0) J = zak_tail_terms(K - 1, spec);

  const int G = grid.G;
  const double beta = to_double(spec.beta);
  const double inv_sqrt_beta = 1.0 / std::sqrt(beta);

  // v(j, p) = phi(x_p + j/beta); one Hermite evaluation per shifted point.
  Eigen::MatrixXcd shifts(2 * J + 1, G);
  std::vector<double> vals(K);
  for (int j = -J; j <= J; ++j) {
    for (int p = 0; p < G; ++p) {
      schrodinger::hermite_values(K, p * grid.dx + j / beta, vals.data());
      cplx acc = 0;
      for (int k = 0; k < K; ++k) acc += hermite_coeffs(k) * vals[k];
      shifts(j + J, p) = acc;
    }
  }

  CovariantVectorField out = CovariantVectorField::zero(grid);
  const int a = out.a;
  for (int p = 0; p < G; ++p) {
    for (int q = 0; q < G; ++q) {
      const PhasePoint w = grid.point(p, q);
      for (int i = 0; i < a; ++i) {
        const PhasePoint ri{to_double(rep.coset_reps[i].x),
                            to_double(rep.coset_reps[i].y)};
        const GroupElement g2 =
            heisenberg::multiply(heisenberg::section(ri), heisenberg::section(w));
        cplx sum = 0;
        for (int j = -J; j <= J; ++j) {
          sum += std::polar(1.0, 2.0 * kPi * j * g2.p.y / beta) *
                 shifts(j + J, p);
        }
        out.at(p, q)[i] = g2.z * inv_sqrt_beta *
                          std::polar(1.0, kPi * g2.p.x * g2.p.y) * sum;
      }
    }
  }
  return out;
}

CovariantVectorField rho_n_apply(const lattice::Element& g,
                                 const CovariantVectorField& phi,
                                 const TauRep& rep) {
  const OmegaGrid& grid = phi.grid;
  const Rat px = g.p.x / grid.dx_r, py = g.p.y / grid.dy_r;
  if (!is_integer(px)) {
    std::ostringstream os;
    os << "rho_n_apply: x coordinate " << g.p.x.numerator() << "/"
       << g.p.x.denominator() << " is not grid-aligned";
    throw std::domain_error(os.str());
  }
  if (!is_integer(py)) {
    std::ostringstream os;
    os << "rho_n_apply: y coordinate " << g.p.y.numerator() << "/"
       << g.p.y.denominator() << " is not grid-aligned";
    throw std::domain_error(os.str());
  }
  const long long P = px.numerator(), Q = py.numerator();
  const int G = grid.G;
  const int a = phi.a;

  CovariantVectorField out = CovariantVectorField::zero(grid);
  for (int p = 0; p < G; ++p) {
    for (int q = 0; q < G; ++q) {
      const long long p0 = (((p + P) % G) + G) % G;
      const long long q0 = (((q + Q) % G) + G) % G;
      // s(w) g = h s(w0) with pi(h) in N-perp
      const lattice::Element gpp =
          lattice::lmul(lattice::lsection(grid.rpoint(p, q)), g);
      const lattice::Element h = lattice::lmul(
          gpp, lattice::linv(lattice::lsection(grid.rpoint(int(p0), int(q0)))));
      const Matrix tau_h = h.z * rep.tau_of(rep.spec.index_of(h.p));
      Eigen::Map<const Vector> src(phi.at(int(p0), int(q0)), a);
      Eigen::Map<Vector> dst(out.at(p, q), a);
      dst = tau_h * src;
    }
  }
  return out;
}

CovariantOperatorField outer_field(std::span<const CovariantVectorField> phis,
                                   std::span<const CovariantVectorField> psis) {
  if (phis.size() != psis.size() || phis.empty())
    throw std::invalid_argument("outer_field: need equally many phis and psis");
  const OmegaGrid& grid = phis[0].grid;
  for (const auto& f : phis) check_same_grid(grid, f.grid, "outer_field");
  for (const auto& f : psis) check_same_grid(grid, f.grid, "outer_field");

  CovariantOperatorField out = CovariantOperatorField::zero(grid);
  const int G = grid.G, a = out.a;
  for (std::size_t l = 0; l < phis.size(); ++l) {
    for (int p = 0; p < G; ++p) {
      for (int q = 0; q < G; ++q) {
        const cplx* u = phis[l].at(p, q);
        const cplx* v = psis[l].at(p, q);
        cplx* c = out.cell(p, q);
        for (int col = 0; col < a; ++col) {
          kernels::axpy(std::conj(v[col]), u, c + std::size_t(col) * a, a);
        }
      }
    }
  }
  return out;
}

cplx fw_coefficient(const CovariantOperatorField& f, NPerpIndex n,
                    const TauRep& rep) {
  const OmegaGrid& grid = f.grid;
  check_index(n, grid, "fw_coefficient");
  const int G = grid.G, a = f.a;
  const long long aG = grid.spec.a * G;
  const Matrix tau_n = rep.tau_of(n);

  // <F(s(w)), Xi_n(s(w))> = conj(e(w,n)) tr(F(s(w)) tau(s(n))^*); the phase
  // factorizes over the two grid axes.
  std::vector<cplx> traces(std::size_t(G) * G);
  parallel_for(G, [&](std::size_t pb, std::size_t pe) {
    for (std::size_t p = pb; p < pe; ++p)
      for (int q = 0; q < G; ++q)
        traces[p * G + q] = kernels::cdot(f.cell(int(p), q), tau_n.data(),
                                          std::size_t(a) * a);
  });
  std::vector<cplx> vbar(G), ubar(G), rowsum(G);
  for (int q = 0; q < G; ++q) vbar[q] = root_of_unity(-q * n.j, aG);
  for (int p = 0; p < G; ++p) ubar[p] = root_of_unity(p * n.k, aG);
  for (int p = 0; p < G; ++p)
    rowsum[p] = kernels::cdot(&traces[std::size_t(p) * G], vbar.data(), G);
  return kernels::cdot(rowsum.data(), ubar.data(), G) * grid.cell_area();
}

CovariantOperatorField expand(const std::map<NPerpIndex, cplx>& coeffs,
                              const OmegaGrid& grid, const TauRep& rep) {
  CovariantOperatorField out = CovariantOperatorField::zero(grid);
  const int G = grid.G, a = out.a;
  const long long aG = grid.spec.a * G;
  for (const auto& [n, c] : coeffs) {
    check_index(n, grid, "expand");
    const Matrix tau_n = rep.tau_of(n);
    std::vector<cplx> up(G), vq(G);
    for (int p = 0; p < G; ++p) up[p] = root_of_unity(p * n.k, aG);
    for (int q = 0; q < G; ++q) vq[q] = root_of_unity(-q * n.j, aG);
    parallel_for(G, [&](std::size_t pb, std::size_t pe) {
      for (std::size_t p = pb; p < pe; ++p) {
        const cplx cp = c * up[p];
        for (int q = 0; q < G; ++q) {
          kernels::axpy(cp * vq[q], tau_n.data(), out.cell(int(p), q),
                        std::size_t(a) * a);
        }
      }
    });
  }
  return out;
}

cplx induced_trace(const CovariantVectorField& phi,
                   const CovariantVectorField& psi, const lattice::Element& g,
                   const TauRep& rep) {
  const CovariantVectorField moved = rho_n_apply(g, psi, rep);
  return field_inner(phi, moved);
}

}  // namespace wh::induced
