#include "wh/lattice.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wh {

Rat parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(std::stoll(text));
    }
    const long long num = std::stoll(text.substr(0, slash));
    const long long den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational p/q: '" + text + "'");
  }
}

}  // namespace wh

namespace wh::lattice {

namespace test_hooks {
std::atomic<bool> zeta_correction_enabled{true};
std::atomic<bool> cocycle_enabled{true};
}  // namespace test_hooks

namespace {
constexpr double kPi = std::numbers::pi;

/// e^{i pi q} for rational q, computed from the reduced fraction so that
/// half-integer q gives exact axis values.
cplx half_turn_phase(const Rat& q) {
  if (q.denominator() == 1) {
    return (q.numerator() % 2 == 0) ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
  }
  if (q.denominator() == 2) {
    // numerator odd; e^{i pi (odd)/2} = +-i
    const long long r = ((q.numerator() % 4) + 4) % 4;  // 1 or 3
    return r == 1 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
  }
  return std::polar(1.0, kPi * to_double(q));
}
}  // namespace

bool LatticeSpec::in_n(const RatPoint& w) const {
  return is_integer(w.x / alpha) && is_integer(w.y / beta);
}

bool LatticeSpec::in_m(const RatPoint& w) const {
  return is_integer(w.x * beta) && is_integer(w.y / beta);
}

bool LatticeSpec::in_nperp(const RatPoint& w) const {
  return is_integer(w.x * beta) && is_integer(w.y * alpha);
}

NPerpIndex LatticeSpec::index_of(const RatPoint& w) const {
  const Rat j = w.x * beta, k = w.y * alpha;
  if (!is_integer(j) || !is_integer(k))
    throw std::domain_error("index_of: point not in the dual lattice");
  return {j.numerator(), k.numerator()};
}

LatticeSpec make_lattice(const Rat& alpha, const Rat& beta) {
  if (alpha <= Rat(0) || beta <= Rat(0))
    throw std::invalid_argument("make_lattice: alpha and beta must be positive");
  const Rat area = alpha * beta;
  if (!is_integer(area)) {
    std::ostringstream os;
    os << "make_lattice: area(R^2/N) = alpha*beta = " << area.numerator() << "/"
       << area.denominator()
       << " is not a positive integer, so N is not isotropic";
    throw std::invalid_argument(os.str());
  }
  LatticeSpec spec{alpha, beta, area.numerator()};
  // Isotropy and duality sanity on generators: omega values must be integral
  // (e = 1) for N x N and N x N-perp pairs.
  const RatPoint ngens[] = {spec.n_gen1(), spec.n_gen2()};
  const RatPoint dgens[] = {spec.nperp_gen1(), spec.nperp_gen2()};
  for (const auto& n : ngens) {
    for (const auto& n2 : ngens)
      if (!is_integer(omega(n, n2)))
        throw std::invalid_argument("make_lattice: N not isotropic");
    for (const auto& d : dgens)
      if (!is_integer(omega(n, d)))
        throw std::invalid_argument("make_lattice: dual generators not in N-perp");
  }
  return spec;
}

Element lsection(const RatPoint& w) { return {w, {1.0, 0.0}}; }

Element lmul(const Element& g, const Element& g2) {
  Element out;
  out.p = g.p + g2.p;
  out.z = g.z * g2.z;
  if (test_hooks::cocycle_enabled.load(std::memory_order_relaxed)) {
    out.z *= half_turn_phase(omega(g.p, g2.p));
  }
  out.z /= std::abs(out.z);
  return out;
}

Element linv(const Element& g) { return {-g.p, std::conj(g.z)}; }

heisenberg::GroupElement to_group(const Element& g) {
  return {{to_double(g.p.x), to_double(g.p.y)}, g.z};
}

cplx pairing(NPerpIndex n, NPerpIndex n2, const LatticeSpec& spec) {
  const Rat q = Rat(2) * omega(spec.embed(n), spec.embed(n2));
  return half_turn_phase(q);
}

cplx zeta(const Element& h, const LatticeSpec& spec) {
  const Rat j = h.p.x * spec.beta, k = h.p.y / spec.beta;
  if (!is_integer(j) || !is_integer(k)) {
    std::ostringstream os;
    os << "zeta: projection (" << h.p.x.numerator() << "/" << h.p.x.denominator()
       << ", " << h.p.y.numerator() << "/" << h.p.y.denominator()
       << ") is not in M";
    throw std::domain_error(os.str());
  }
  if (!test_hooks::zeta_correction_enabled.load(std::memory_order_relaxed))
    return h.z;
  const bool flip = (j.numerator() % 2 != 0) && (k.numerator() % 2 != 0);
  return flip ? -h.z : h.z;
}

TauRep TauRep::make(const LatticeSpec& spec) {
  TauRep rep;
  rep.spec = spec;
  const long long a = spec.a;
  rep.coset_reps.reserve(a);
  for (long long i = 0; i < a; ++i)
    rep.coset_reps.push_back({Rat(0), Rat(i) / spec.alpha});
  rep.s_domain.reserve(a * a);
  for (long long j = 0; j < a; ++j)
    for (long long k = 0; k < a; ++k) rep.s_domain.push_back({j, k});
  for (const NPerpIndex& n : rep.s_domain) {
    Matrix u = tau_matrix(lsection(spec.embed(n)), rep).m;
    const double leak =
        (u * u.adjoint() - Matrix::Identity(a, a)).cwiseAbs().maxCoeff();
    if (leak > 1e-12)
      throw std::runtime_error("TauRep: cached matrix not unitary");
    rep.cache.emplace(std::make_pair(n.j, n.k), std::move(u));
  }
  return rep;
}

Matrix TauRep::tau_of(NPerpIndex n) const {
  const auto it = cache.find({n.j, n.k});
  if (it != cache.end()) return it->second;
  return tau_matrix(lsection(spec.embed(n)), *this).m;
}

Operator tau_matrix(const Element& h, const TauRep& rep) {
  const LatticeSpec& spec = rep.spec;
  if (!spec.in_nperp(h.p))
    throw std::domain_error("tau_matrix: projection not in N-perp");
  const long long a = spec.a;
  const long long k = (h.p.y * spec.alpha).numerator();
  Matrix m = Matrix::Zero(a, a);
  for (long long i = 0; i < a; ++i) {
    const long long ip = ((i - k) % a + a) % a;
    const Element arg = lmul(lmul(lsection(rep.coset_reps[ip]), h),
                             linv(lsection(rep.coset_reps[i])));
    m(ip, i) = zeta(arg, spec);
  }
  return {Basis::tau, std::move(m)};
}

Operator twirl(const Operator& t, const TauRep& rep) {
  const long long a = rep.spec.a;
  if (t.dim() != a)
    throw std::invalid_argument("twirl: operator dimension != a");
  Matrix acc = Matrix::Zero(a, a);
  for (const NPerpIndex& n : rep.s_domain) {
    const Matrix u = rep.tau_of(n);
    acc += u * t.m * u.adjoint();
  }
  return {Basis::tau, std::move(acc)};
}

cplx trace_tau(NPerpIndex n, const TauRep& rep) { return rep.tau_of(n).trace(); }

Matrix tau_gram(const TauRep& rep) {
  const long long a2 = rep.spec.a * rep.spec.a;
  Matrix gram(a2, a2);
  for (long long r = 0; r < a2; ++r) {
    const Matrix ur = rep.tau_of(rep.s_domain[r]);
    for (long long c = 0; c < a2; ++c) {
      gram(r, c) = (ur * rep.tau_of(rep.s_domain[c]).adjoint()).trace();
    }
  }
  return gram;
}

}  // namespace wh::lattice
