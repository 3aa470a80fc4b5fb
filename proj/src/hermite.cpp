#include "wh/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wh::schrodinger {

namespace {
constexpr double kPi = std::numbers::pi;
const double kTwoSqrtPi = 2.0 * std::sqrt(kPi);
}  // namespace

void hermite_values(int K, double t, double* out) {
  if (K <= 0) return;
  out[0] = std::pow(2.0, 0.25) * std::exp(-kPi * t * t);
  if (K == 1) return;
  out[1] = kTwoSqrtPi * t * out[0];
  for (int k = 1; k + 1 < K; ++k) {
    out[k + 1] =
        (kTwoSqrtPi * t * out[k] - std::sqrt(double(k)) * out[k - 1]) /
        std::sqrt(double(k + 1));
  }
}

double hermite_tail_threshold(int K, double tol) {
  // Start past the classical turning point sqrt((2K+1)/(2 pi)) and walk out
  // until every basis function is below tol. Decay is monotone out there.
  double t = std::sqrt((2.0 * K + 1.0) / (2.0 * kPi)) + 0.5;
  std::vector<double> vals(K);
  for (;; t += 0.25) {
    hermite_values(K, t, vals.data());
    double m = 0;
    for (double v : vals) m = std::max(m, std::abs(v));
    if (m < tol) return t;
    if (t > 1e4) throw std::runtime_error("hermite_tail_threshold: no decay");
  }
}

void gauss_legendre(int q, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(q);
  weights.resize(q);
  for (int i = 0; i < (q + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_q.
    double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[q - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[q - 1 - i] = w;
  }
}

HermiteBasis HermiteBasis::make(int D, int Q, double panel_width) {
  if (D < 1) throw std::invalid_argument("HermiteBasis: D must be positive");
  if (Q < 2) throw std::invalid_argument("HermiteBasis: Q must be >= 2");
  HermiteBasis b;
  b.D = D;
  b.Q = Q;
  b.T = hermite_tail_threshold(D, 1e-14);
  b.panels = static_cast<int>(std::ceil(2.0 * b.T / panel_width));
  b.T = b.panels * panel_width / 2.0;  // snap so panels tile [-T, T] exactly

  std::vector<double> gx, gw;
  gauss_legendre(Q, gx, gw);
  const int n = b.panels * Q;
  b.nodes.resize(n);
  b.weights.resize(n);
  for (int p = 0; p < b.panels; ++p) {
    const double lo = -b.T + p * panel_width;
    const double mid = lo + 0.5 * panel_width;
    for (int i = 0; i < Q; ++i) {
      b.nodes[p * Q + i] = mid + 0.5 * panel_width * gx[i];
      b.weights[p * Q + i] = 0.5 * panel_width * gw[i];
    }
  }
  b.table = b.shifted_table(0.0);
  return b;
}

double HermiteBasis::eval(int k, double t) const {
  if (k < 0 || k >= D)
    throw std::out_of_range("HermiteBasis::eval: index outside truncation");
  std::vector<double> vals(k + 1);
  hermite_values(k + 1, t, vals.data());
  return vals[k];
}

Eigen::MatrixXd HermiteBasis::shifted_table(double shift) const {
  const int n = node_count();
  Eigen::MatrixXd out(n, D);
  std::vector<double> vals(D);
  for (int i = 0; i < n; ++i) {
    hermite_values(D, nodes[i] + shift, vals.data());
    for (int k = 0; k < D; ++k) out(i, k) = vals[k];
  }
  return out;
}

}  // namespace wh::schrodinger
