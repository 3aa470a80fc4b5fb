#pragma once

#include <atomic>
#include <map>
#include <vector>

#include "wh/heisenberg.hpp"
#include "wh/rational.hpp"
#include "wh/types.hpp"

namespace wh::lattice {

/// Index of n = (j/beta, k/alpha) in the dual lattice N-perp.
struct NPerpIndex {
  long long j = 0, k = 0;

  friend bool operator==(NPerpIndex a, NPerpIndex b) {
    return a.j == b.j && a.k == b.k;
  }
  friend bool operator<(NPerpIndex a, NPerpIndex b) {
    return a.j != b.j ? a.j < b.j : a.k < b.k;
  }
};

/// Rectangular isotropic lattice N = alpha Z x beta Z with integer area
/// a = alpha beta, together with the derived tower
///   N  subset  M = (1/beta) Z x beta Z  subset  N-perp = (1/beta) Z x (1/alpha) Z
/// and the fundamental domain Omega = [0, 1/beta) x [0, 1/alpha).
struct LatticeSpec {
  Rat alpha, beta;
  long long a = 0;

  RatPoint n_gen1() const { return {alpha, Rat(0)}; }
  RatPoint n_gen2() const { return {Rat(0), beta}; }
  RatPoint m_gen1() const { return {1 / beta, Rat(0)}; }
  RatPoint m_gen2() const { return {Rat(0), beta}; }
  RatPoint nperp_gen1() const { return {1 / beta, Rat(0)}; }
  RatPoint nperp_gen2() const { return {Rat(0), 1 / alpha}; }

  Rat omega_width_x() const { return 1 / beta; }
  Rat omega_width_y() const { return 1 / alpha; }

  bool in_n(const RatPoint& w) const;
  bool in_m(const RatPoint& w) const;
  bool in_nperp(const RatPoint& w) const;

  RatPoint embed(NPerpIndex n) const { return {n.j / beta, n.k / alpha}; }
  /// Inverse of embed; w must lie in N-perp.
  NPerpIndex index_of(const RatPoint& w) const;
};

/// Validates alpha, beta > 0 and alpha*beta integral; verifies isotropy and
/// duality on generators. Throws std::invalid_argument naming the violated
/// condition.
LatticeSpec make_lattice(const Rat& alpha, const Rat& beta);

/// Group element with exact rational phase-plane coordinates. The central
/// phase stays a unit complex number; every membership or coset decision is
/// made on the rational part.
struct Element {
  RatPoint p;
  cplx z{1.0, 0.0};
};

Element lsection(const RatPoint& w);
Element lmul(const Element& g, const Element& g2);
Element linv(const Element& g);
heisenberg::GroupElement to_group(const Element& g);

/// e(n, n') as a root of unity, e^{2 pi i (j k' - k j') / a}.
cplx pairing(NPerpIndex n, NPerpIndex n2, const LatticeSpec& spec);

/// The character zeta on the preimage of M: zeta(x, y, z) = z (-1)^{jk}
/// where (x, y) = j (1/beta, 0) + k (0, beta). The quadratic sign is what
/// cancels the cocycle and makes this multiplicative. Throws
/// std::domain_error when the projection is not in M.
cplx zeta(const Element& h, const LatticeSpec& spec);

/// The a-dimensional representation of the preimage of N-perp induced from
/// zeta, realized on the coset basis r_i = (0, i/alpha), i = 0..a-1.
struct TauRep {
  LatticeSpec spec;
  std::vector<RatPoint> coset_reps;   // a entries
  std::vector<NPerpIndex> s_domain;   // a^2 coset representatives of N-perp/N
  std::map<std::pair<long long, long long>, Matrix> cache;  // tau(s(n)), n in S

  static TauRep make(const LatticeSpec& spec);

  long long dim() const { return spec.a; }
  /// tau(s(n)) for any dual-lattice index (cached for n in S).
  Matrix tau_of(NPerpIndex n) const;
};

/// Matrix of tau at h (projection must lie in N-perp): the (i', i) entry is
/// zeta(s(r_i') h s(r_i)^{-1}) when that argument lies in the preimage of M,
/// else 0; exactly one nonzero entry per column.
Operator tau_matrix(const Element& h, const TauRep& rep);

/// sum_{n in S} tau(s(n)) T tau(s(n))^{-1}; equals a tr(T) I.
Operator twirl(const Operator& t, const TauRep& rep);

/// tr(tau(s(n))).
cplx trace_tau(NPerpIndex n, const TauRep& rep);

/// a^2 x a^2 matrix of <tau(s(n)), tau(s(n'))> over n, n' in S.
Matrix tau_gram(const TauRep& rep);

namespace test_hooks {
/// When false, zeta drops its quadratic sign correction. Exists so the test
/// suite can demonstrate that the correction is load-bearing.
extern std::atomic<bool> zeta_correction_enabled;
/// When false, lattice-side group products drop the cocycle phase.
extern std::atomic<bool> cocycle_enabled;
}  // namespace test_hooks

}  // namespace wh::lattice
