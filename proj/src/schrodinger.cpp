#include "wh/schrodinger.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wh/kernels.hpp"
#include "wh/parallel.hpp"

namespace wh {

int Operator::rank(double tol_rel) const {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol_rel * sv(0)) ++r;
  }
  return r;
}

cplx hs_inner(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim() || a.basis != b.basis)
    throw std::invalid_argument("hs_inner: operator basis mismatch");
  return kernels::cdot(a.data(), b.data(),
                       std::size_t(a.dim()) * std::size_t(a.dim()));
}

}  // namespace wh

namespace wh::schrodinger {

namespace {
constexpr double kPi = std::numbers::pi;

/// weights[i] * exp(2 pi i y t_i) for every grid row y; row-contiguous per q.
std::vector<cplx> phase_table(const GridFunction2D& g,
                              const HermiteBasis& basis) {
  const int n = basis.node_count();
  std::vector<cplx> table(std::size_t(g.ny) * n);
  for (int q = 0; q < g.ny; ++q) {
    const double y = g.point(0, q).y;
    for (int i = 0; i < n; ++i) {
      table[std::size_t(q) * n + i] =
          basis.weights[i] * std::polar(1.0, 2.0 * kPi * y * basis.nodes[i]);
    }
  }
  return table;
}
}  // namespace

GridFunction2D GridFunction2D::make(PhasePoint origin, double dx, double dy,
                                    int nx, int ny) {
  if (nx < 1 || ny < 1 || dx <= 0 || dy <= 0)
    throw std::invalid_argument("GridFunction2D: bad geometry");
  GridFunction2D g;
  g.origin = origin;
  g.dx = dx;
  g.dy = dy;
  g.nx = nx;
  g.ny = ny;
  g.samples.assign(std::size_t(nx) * ny, cplx{});
  return g;
}

GridFunction2D GridFunction2D::window(double L, int n) {
  return make({-L, -L}, 2.0 * L / n, 2.0 * L / n, n, n);
}

double GridFunction2D::norm2() const {
  return kernels::norm2(samples.data(), samples.size()) * dx * dy;
}

void GridFunction2D::fill(const std::function<cplx(PhasePoint)>& f) {
  for (int p = 0; p < nx; ++p)
    for (int q = 0; q < ny; ++q) at(p, q) = f(point(p, q));
}

void GridFunction2D::save_csv(std::ostream& os) const {
  os << "x,y,re,im\n";
  char buf[160];
  for (int p = 0; p < nx; ++p) {
    for (int q = 0; q < ny; ++q) {
      const PhasePoint w = point(p, q);
      const cplx v = at(p, q);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", w.x, w.y,
                    v.real(), v.imag());
      os << buf;
    }
  }
}

void GridFunction2D::save_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  save_csv(os);
}

GridFunction2D GridFunction2D::load_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,y,re,im", 0) != 0)
    throw std::runtime_error("GridFunction2D: missing x,y,re,im header");
  std::vector<double> xs, ys;
  std::vector<cplx> vals;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double x, y, re, im;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg,%lg", &x, &y, &re, &im) != 4)
      throw std::runtime_error("GridFunction2D: bad row: " + line);
    xs.push_back(x);
    ys.push_back(y);
    vals.emplace_back(re, im);
  }
  if (vals.empty()) throw std::runtime_error("GridFunction2D: empty csv");
  std::size_t ny = 1;
  while (ny < xs.size() && xs[ny] == xs[0]) ++ny;
  if (vals.size() % ny != 0)
    throw std::runtime_error("GridFunction2D: ragged csv");
  const std::size_t nx = vals.size() / ny;
  const double dy = ny > 1 ? ys[1] - ys[0] : 1.0;
  const double dx = nx > 1 ? xs[ny] - xs[0] : dy;
  GridFunction2D g = make({xs[0] - 0.5 * dx, ys[0] - 0.5 * dy}, dx, dy,
                          static_cast<int>(nx), static_cast<int>(ny));
  g.samples = std::move(vals);
  return g;
}

GridFunction2D GridFunction2D::load_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return load_csv(is);
}

Operator rho_matrix(const GroupElement& g, const HermiteBasis& basis) {
  const int D = basis.D;
  if (g.p.x == 0.0 && g.p.y == 0.0) {
    Operator out = Operator::identity(Basis::hermite, D);
    out.m *= g.z;
    return out;
  }
  const int n = basis.node_count();
  const Eigen::MatrixXd shifted = basis.shifted_table(g.p.x);
  Eigen::VectorXd cr(n), ci(n);
  for (int i = 0; i < n; ++i) {
    const cplx ph = basis.weights[i] *
                    std::polar(1.0, 2.0 * kPi * g.p.y * basis.nodes[i]);
    cr(i) = ph.real();
    ci(i) = ph.imag();
  }
  const Eigen::MatrixXd re = basis.table.transpose() * (cr.asDiagonal() * shifted);
  const Eigen::MatrixXd im = basis.table.transpose() * (ci.asDiagonal() * shifted);
  const cplx front = g.z * std::polar(1.0, kPi * g.p.x * g.p.y);
  Operator out{Basis::hermite, Matrix(D, D)};
  out.m.real() = re;
  out.m.imag() = im;
  out.m *= front;
  return out;
}

cplx fourier_wigner(const Operator& x, PhasePoint w, const HermiteBasis& basis) {
  if (x.basis != Basis::hermite)
    throw std::invalid_argument("fourier_wigner: operator not in hermite basis");
  if (x.dim() != basis.D)
    throw std::invalid_argument("fourier_wigner: dimension mismatch");
  const Operator r = rho_matrix(heisenberg::section(w), basis);
  return kernels::cdot(x.data(), r.data(), std::size_t(basis.D) * basis.D);
}

GridFunction2D fourier_wigner_grid(const Operator& x, const HermiteBasis& basis,
                                   const GridFunction2D& geometry) {
  if (x.basis != Basis::hermite || x.dim() != basis.D)
    throw std::invalid_argument("fourier_wigner_grid: operator mismatch");
  GridFunction2D out = GridFunction2D::make(geometry.origin, geometry.dx,
                                            geometry.dy, geometry.nx,
                                            geometry.ny);
  const int n = basis.node_count();
  const std::vector<cplx> phases = phase_table(out, basis);
  const Eigen::MatrixXd xr = x.m.real();
  const Eigen::MatrixXd xi = x.m.imag();
  parallel_for(out.nx, [&](std::size_t pb, std::size_t pe) {
    for (std::size_t p = pb; p < pe; ++p) {
      const double xc = out.point(static_cast<int>(p), 0).x;
      const Eigen::MatrixXd shifted = basis.shifted_table(xc);
      // q(i) = sum_{jk} X_{jk} h_j(t_i) h_k(t_i + x)
      const Eigen::MatrixXd zr = (xr * shifted.transpose()).transpose();
      const Eigen::MatrixXd zi = (xi * shifted.transpose()).transpose();
      Eigen::VectorXd qr = (basis.table.array() * zr.array()).rowwise().sum();
      Eigen::VectorXd qi = (basis.table.array() * zi.array()).rowwise().sum();
      std::vector<cplx> qv(n);
      for (int i = 0; i < n; ++i) qv[i] = {qr(i), qi(i)};
      for (int q = 0; q < out.ny; ++q) {
        const PhasePoint w = out.point(static_cast<int>(p), q);
        const cplx s =
            kernels::cdot(qv.data(), &phases[std::size_t(q) * n], n);
        out.at(static_cast<int>(p), q) = std::polar(1.0, -kPi * w.x * w.y) * s;
      }
    }
  }, 4);
  return out;
}

GridFunction2D fourier_wigner_grid(const Operator& x, const HermiteBasis& basis,
                                   double L, int n) {
  return fourier_wigner_grid(x, basis, GridFunction2D::window(L, n));
}

Operator weyl_transform(const GridFunction2D& f, const HermiteBasis& basis) {
  const int D = basis.D;
  const int n = basis.node_count();
  const std::vector<cplx> phases = phase_table(f, basis);

  const std::size_t chunk = 4;
  const std::size_t nchunks = (std::size_t(f.nx) + chunk - 1) / chunk;
  std::vector<Matrix> partial(nchunks, Matrix::Zero(D, D));
  parallel_for(f.nx, [&](std::size_t pb, std::size_t pe) {
    Matrix acc = Matrix::Zero(D, D);
    std::vector<cplx> c(n);
    for (std::size_t p = pb; p < pe; ++p) {
      std::fill(c.begin(), c.end(), cplx{});
      const double xc = f.point(static_cast<int>(p), 0).x;
      for (int q = 0; q < f.ny; ++q) {
        const PhasePoint w = f.point(static_cast<int>(p), q);
        const cplx gq =
            f.at(static_cast<int>(p), q) * std::polar(1.0, kPi * w.x * w.y);
        if (gq != cplx{})
          kernels::axpy(gq, &phases[std::size_t(q) * n], c.data(), n);
      }
      const Eigen::MatrixXd shifted = basis.shifted_table(xc);
      Eigen::VectorXd cr(n), ci(n);
      for (int i = 0; i < n; ++i) {
        cr(i) = c[i].real();
        ci(i) = c[i].imag();
      }
      acc.real() += basis.table.transpose() * (cr.asDiagonal() * shifted);
      acc.imag() += basis.table.transpose() * (ci.asDiagonal() * shifted);
    }
    partial[pb / chunk] = std::move(acc);
  }, chunk);

  Operator out = Operator::zero(Basis::hermite, D);
  for (const Matrix& m : partial) out.m += m;
  out.m *= f.cell_area();
  return out;
}

}  // namespace wh::schrodinger
