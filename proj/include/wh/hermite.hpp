#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wh/types.hpp"

namespace wh::schrodinger {

/// Evaluates h_0..h_{K-1} at t into out[0..K), where h_0(t) = 2^{1/4}
/// e^{-pi t^2} and the rest follow the stable three-term recurrence on the
/// functions themselves:
///   h_{k+1}(t) = (2 sqrt(pi) t h_k(t) - sqrt(k) h_{k-1}(t)) / sqrt(k+1).
void hermite_values(int K, double t, double* out);

/// Smallest half-width beyond which |h_k(t)| < tol for all k < K.
double hermite_tail_threshold(int K, double tol = 1e-14);

/// Gauss-Legendre nodes/weights on [-1, 1] (Newton on Legendre polynomials).
void gauss_legendre(int q, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Hermite-truncated model of L^2(R): D basis functions and a composite
/// Gauss-Legendre rule on [-T, T] wide enough that every basis function is
/// below 1e-14 at the endpoints.
struct HermiteBasis {
  int D = 0;
  double T = 0;
  int Q = 0;       // nodes per panel
  int panels = 0;
  std::vector<double> nodes, weights;  // size n = panels * Q
  Eigen::MatrixXd table;               // n x D, table(i, k) = h_k(nodes[i])

  static HermiteBasis make(int D, int Q = 24, double panel_width = 0.5);

  int node_count() const { return static_cast<int>(nodes.size()); }

  /// h_k(t); rejects k outside the truncation.
  double eval(int k, double t) const;

  /// n x D matrix of h_k(nodes[i] + shift).
  Eigen::MatrixXd shifted_table(double shift) const;
};

}  // namespace wh::schrodinger
