#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wh/lattice.hpp"

using namespace wh;
using namespace wh::lattice;

namespace {

std::mt19937_64 rng(0);

cplx random_phase() {
  std::uniform_real_distribution<double> u(-3.14, 3.14);
  return std::polar(1.0, u(rng));
}

Element random_m_element(const LatticeSpec& spec, int span = 6) {
  std::uniform_int_distribution<long long> d(-span, span);
  return {{Rat(d(rng)) / spec.beta, Rat(d(rng)) * spec.beta}, random_phase()};
}

struct HookGuard {
  ~HookGuard() {
    test_hooks::zeta_correction_enabled = true;
    test_hooks::cocycle_enabled = true;
  }
};

}  // namespace

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK(parse_rational("2") == Rat(2));
  CHECK(parse_rational("-5/3") == Rat(-5, 3));
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("make_lattice derives the tower") {
  const LatticeSpec spec = make_lattice(Rat(2), Rat(1));
  CHECK(spec.a == 2);
  // N-perp = Z x (1/2) Z, M = Z x Z
  CHECK(spec.in_nperp({Rat(1), Rat(1, 2)}));
  CHECK(spec.in_nperp({Rat(-3), Rat(5, 2)}));
  CHECK(!spec.in_nperp({Rat(1, 2), Rat(0)}));
  CHECK(spec.in_m({Rat(1), Rat(1)}));
  CHECK(!spec.in_m({Rat(1), Rat(1, 2)}));
  CHECK(spec.in_n({Rat(2), Rat(1)}));
  CHECK(!spec.in_n({Rat(1), Rat(1)}));
  // duality oracle: e(nu, w) = 1 for generators nu of N and w of N-perp
  for (const RatPoint& nu : {spec.n_gen1(), spec.n_gen2()}) {
    for (const RatPoint& w : {spec.nperp_gen1(), spec.nperp_gen2()}) {
      CHECK(is_integer(omega(nu, w)));
    }
  }
  CHECK(make_lattice(Rat(3), Rat(1)).a == 3);
  CHECK(TauRep::make(make_lattice(Rat(3), Rat(1))).s_domain.size() == 9);
  CHECK(make_lattice(Rat(3, 2), Rat(2)).a == 3);

  CHECK_THROWS_AS(make_lattice(Rat(1, 2), Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(make_lattice(Rat(-2), Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(make_lattice(Rat(2), Rat(0)), std::invalid_argument);
}

TEST_CASE("index embedding round trip") {
  const LatticeSpec spec = make_lattice(Rat(3, 2), Rat(2));
  for (long long j = -4; j <= 4; ++j) {
    for (long long k = -4; k <= 4; ++k) {
      const NPerpIndex n{j, k};
      CHECK(spec.index_of(spec.embed(n)) == n);
    }
  }
  CHECK_THROWS_AS(spec.index_of({Rat(1, 3), Rat(0)}), std::domain_error);
}

TEST_CASE("zeta character values") {
  const LatticeSpec spec = make_lattice(Rat(2), Rat(1));
  const cplx z = random_phase();
  CHECK(zeta({{Rat(0), Rat(0)}, z}, spec) == z);
  CHECK(zeta(lsection(spec.m_gen1()), spec) == cplx{1.0, 0.0});
  CHECK(zeta(lsection(spec.m_gen2()), spec) == cplx{1.0, 0.0});
  CHECK_THROWS_AS(zeta(lsection({Rat(1, 2), Rat(0)}), spec), std::domain_error);
}

TEST_CASE("zeta is multiplicative (brute-force product check)") {
  for (const LatticeSpec& spec :
       {make_lattice(Rat(2), Rat(1)), make_lattice(Rat(3, 2), Rat(2))}) {
    double err = 0;
    for (int i = 0; i < 200; ++i) {
      const Element h = random_m_element(spec), h2 = random_m_element(spec);
      err = std::max(err, std::abs(zeta(lmul(h, h2), spec) -
                                   zeta(h, spec) * zeta(h2, spec)));
    }
    CHECK(err <= 1e-12);
  }
}

TEST_CASE("the quadratic correction in zeta is load-bearing") {
  HookGuard guard;
  const LatticeSpec spec = make_lattice(Rat(2), Rat(1));
  const Element h = lsection(spec.m_gen1());
  const Element h2 = lsection(spec.m_gen2());
  test_hooks::zeta_correction_enabled = false;
  const double violation = std::abs(zeta(lmul(h, h2), spec) -
                                    zeta(h, spec) * zeta(h2, spec));
  test_hooks::zeta_correction_enabled = true;
  CHECK(violation > 1.0);  // it is exactly 2
  CHECK(std::abs(zeta(lmul(h, h2), spec) - zeta(h, spec) * zeta(h2, spec)) <
        1e-15);
}

TEST_CASE("tau on central elements and on N") {
  for (long long a : {2LL, 3LL}) {
    const LatticeSpec spec = make_lattice(Rat(a), Rat(1));
    const TauRep rep = TauRep::make(spec);
    const cplx z = random_phase();
    const Operator central = tau_matrix({{Rat(0), Rat(0)}, z}, rep);
    CHECK((central.m - z * Matrix::Identity(a, a)).norm() < 1e-14);
    for (long long c = -1; c <= 1; ++c) {
      for (long long d = -1; d <= 1; ++d) {
        const NPerpIndex n{c * a, d * a};  // element of N
        const Matrix got = rep.tau_of(n);
        const cplx zn = zeta(lsection(spec.embed(n)), spec);
        CHECK((got - zn * Matrix::Identity(a, a)).cwiseAbs().maxCoeff() <
              1e-13);
      }
    }
  }
}

TEST_CASE("tau precondition") {
  const TauRep rep = TauRep::make(make_lattice(Rat(2), Rat(1)));
  CHECK_THROWS_AS(tau_matrix(lsection({Rat(1, 3), Rat(0)}), rep),
                  std::domain_error);
}

TEST_CASE("tau conjugation law over S, a in {2,3,4}") {
  for (long long a : {2LL, 3LL, 4LL}) {
    const LatticeSpec spec = make_lattice(Rat(a), Rat(1));
    const TauRep rep = TauRep::make(spec);
    double err = 0;
    for (const NPerpIndex& n : rep.s_domain) {
      const Matrix u = rep.tau_of(n);
      for (const NPerpIndex& n2 : rep.s_domain) {
        const Matrix v = rep.tau_of(n2);
        const Matrix lhs = u * v * u.adjoint();
        const Matrix rhs = pairing(n, n2, spec) * v;
        err = std::max(err, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    }
    CHECK(err <= 1e-12);
  }
}

TEST_CASE("projective law: tau(s(n)) tau(s(n')) = psi tau(s(n+n'))") {
  const LatticeSpec spec = make_lattice(Rat(3), Rat(1));
  const TauRep rep = TauRep::make(spec);
  std::uniform_int_distribution<std::size_t> pick(0, rep.s_domain.size() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    const NPerpIndex n = rep.s_domain[pick(rng)];
    const NPerpIndex n2 = rep.s_domain[pick(rng)];
    const Element prod = lmul(lsection(spec.embed(n)), lsection(spec.embed(n2)));
    const Matrix lhs = rep.tau_of(n) * rep.tau_of(n2);
    const Matrix rhs = prod.z * rep.tau_of({n.j + n2.j, n.k + n2.k});
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("twirl identities") {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (long long a : {2LL, 3LL, 4LL, 5LL}) {
    const TauRep rep = TauRep::make(make_lattice(Rat(a), Rat(1)));
    const Operator id = Operator::identity(Basis::tau, int(a));
    CHECK((twirl(id, rep).m - double(a * a) * Matrix::Identity(a, a)).norm() <
          1e-12);

    Operator e00 = Operator::zero(Basis::tau, int(a));
    e00.m(0, 0) = 1.0;
    CHECK((twirl(e00, rep).m - double(a) * Matrix::Identity(a, a)).norm() <
          1e-12);

    double err = 0;
    for (int trial = 0; trial < 20; ++trial) {
      Operator t = Operator::zero(Basis::tau, int(a));
      for (int r = 0; r < a; ++r)
        for (int c = 0; c < a; ++c) t.m(r, c) = cplx{u(rng), u(rng)};
      const Matrix want = double(a) * t.m.trace() * Matrix::Identity(a, a);
      err = std::max(err, (twirl(t, rep).m - want).norm() / t.hs_norm());
    }
    CHECK(err <= 1e-10);
  }
  const TauRep rep = TauRep::make(make_lattice(Rat(2), Rat(1)));
  CHECK_THROWS_AS(twirl(Operator::identity(Basis::tau, 3), rep),
                  std::invalid_argument);
}

TEST_CASE("trace dichotomy") {
  for (long long a : {2LL, 3LL, 5LL}) {
    const LatticeSpec spec = make_lattice(Rat(a), Rat(1));
    const TauRep rep = TauRep::make(spec);
    CHECK(std::abs(trace_tau({0, 0}, rep) - cplx{double(a), 0}) < 1e-12);
    for (const NPerpIndex& n : rep.s_domain) {
      if (n == NPerpIndex{0, 0}) continue;
      CHECK(std::abs(trace_tau(n, rep)) < 1e-12);
    }
    // nonzero indices inside N
    for (long long c : {-2LL, 1LL, 2LL}) {
      for (long long d : {-1LL, 1LL}) {
        const NPerpIndex n{c * a, d * a};
        const cplx want =
            zeta(lsection(spec.embed(n)), spec) * double(a);
        CHECK(std::abs(trace_tau(n, rep) - want) < 1e-12);
      }
    }
  }
}

TEST_CASE("gram of the tau system") {
  for (long long a : {2LL, 3LL, 4LL}) {
    const LatticeSpec spec = make_lattice(Rat(a), Rat(1));
    const TauRep rep = TauRep::make(spec);
    const Matrix gram = tau_gram(rep);
    CHECK((gram - double(a) * Matrix::Identity(a * a, a * a))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);

    // inner products at N-shifted representatives, against the direct
    // matrix-product value
    for (const NPerpIndex& n : rep.s_domain) {
      for (const NPerpIndex shift :
           {NPerpIndex{a, 0}, NPerpIndex{0, a}, NPerpIndex{a, a}}) {
        const NPerpIndex ns{n.j + shift.j, n.k + shift.k};
        const cplx lhs = (rep.tau_of(ns) * rep.tau_of(n).adjoint()).trace();
        const Element prod =
            lmul(lsection(spec.embed(ns)), lsection(-spec.embed(n)));
        const cplx rhs = double(a) * zeta(prod, spec);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
        CHECK(std::abs(std::abs(lhs) - double(a)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("cached tau matrices are unitary") {
  for (const LatticeSpec& spec :
       {make_lattice(Rat(4), Rat(1)), make_lattice(Rat(3, 2), Rat(2))}) {
    const TauRep rep = TauRep::make(spec);
    const long long a = spec.a;
    for (const auto& [key, u] : rep.cache) {
      CHECK((u * u.adjoint() - Matrix::Identity(a, a)).cwiseAbs().maxCoeff() <=
            1e-12);
    }
  }
}

TEST_CASE("disabling the cocycle breaks the trace dichotomy") {
  HookGuard guard;
  const LatticeSpec spec = make_lattice(Rat(2), Rat(1));
  test_hooks::cocycle_enabled = false;
  const TauRep broken = TauRep::make(spec);
  double worst = 0;
  for (long long j = 0; j < 2; ++j) {
    for (long long k = 0; k < 2; ++k) {
      const NPerpIndex n{j, k};
      cplx want = 0;
      if (j % 2 == 0 && k % 2 == 0)
        want = zeta(lsection(spec.embed(n)), spec) * 2.0;
      worst = std::max(worst, std::abs(trace_tau(n, broken) - want));
    }
  }
  test_hooks::cocycle_enabled = true;
  CHECK(worst > 1e-3);
}
