#include "doctest.h"
#include "nsv/coset.hpp"
#include "nsv/qseries.hpp"

using namespace nsv;

namespace {
RatFunc R(long n, long d = 1) { return RatFunc(rat(n, d)); }
}  // namespace

TEST_CASE("coefficients") {
  auto d = build_LaLb();
  RatFunc t = RatFunc::t();
  CHECK(d.a1 + d.b1 == R(1));
  CHECK(d.a2 + d.b2 == R(0));
  CHECK(d.a3 + d.b3 == R(1));
  CHECK(ratfunc_eval_t(d.a1, Rational(2)) == GaussRational(rat(2, 3)));
  CHECK(d.a2 * d.b2 == t / ((R(1) + t) * (R(1) + t)));
  CHECK(ratfunc_eval_t(d.ca, Rational(2)) == GaussRational(0));
  CHECK(d.ca + d.cb == central_charge() + R(1, 2));
}

TEST_CASE("single modes") {
  // the L^ns summand only sees the NS grading
  auto V = verma22_fock();
  RVec v1 = RVec::basis(V, {{}, {1}, {}});
  CHECK(mode_action(QuadField{R(1), R(0), R(0)}, 0, v1, 4) == v1.scaled(kac_weight(2, 2) + R(1, 2)));
  // L^psi_0 psi(-1/2)1 = 1/2 psi(-1/2)1
  auto F = vacuum_fock();
  RVec p = RVec::basis(F, {{}, {}, {1}});
  CHECK(mode_action(QuadField{R(0), R(0), R(1)}, 0, p, 4) == p.scaled(R(1, 2)));
  RVec p3 = RVec::basis(F, {{}, {}, {3, 1}});
  CHECK(mode_action(QuadField{R(0), R(0), R(1)}, 0, p3, 4) == p3.scaled(R(2)));
  // the field state is recovered from mode -2 on the vacuum
  auto d = build_LaLb();
  RVec vac = RVec::highest(F);
  CHECK(mode_action(d.La, -2, vac, 4) == d.La.state(F));
  CHECK(mode_action(d.Lb, -2, vac, 4) == d.Lb.state(F));
  CHECK(mode_action(d.La, -1, vac, 4).is_zero());
  CHECK_THROWS_AS(mode_action(d.La, -3, vac, 4), CutoffExceeded);
}

TEST_CASE("central term from the vacuum") {
  auto d = build_LaLb();
  auto F = vacuum_fock();
  RVec vac = RVec::highest(F);
  CHECK(mode_action(d.La, 2, mode_action(d.La, -2, vac, 8), 8) == vac.scaled(d.ca / R(2)));
  CHECK(mode_action(d.Lb, 2, mode_action(d.Lb, -2, vac, 8), 8) == vac.scaled(d.cb / R(2)));
  CHECK(mode_action(d.La, 1, mode_action(d.Lb, -1, vac, 8), 8).is_zero());
}

TEST_CASE("commuting pair axioms") {
  auto rep = verify_commuting_pair(6, 2);
  CHECK(rep.checks > 0);
}

TEST_CASE("L0 matrices and eigenvectors") {
  auto m = l0_matrices();
  RatFunc h = kac_weight(2, 2);
  auto d = build_LaLb();
  CHECK(m.a[0][0] == d.a1 * (h + R(1, 2)));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(m.a[i][j] + m.b[i][j] == (i == j ? h + R(1, 2) : R(0)));
  // eigenvalues h_{2,1}(a) and h_{2,3}(a)
  RatFunc e1 = virasoro_weight(2, 1, coset_a()), e3 = virasoro_weight(2, 3, coset_a());
  CHECK(m.a[0][0] + m.a[1][1] == e1 + e3);
  CHECK(m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0] == e1 * e3);

  auto hv = hw_vector_2122();
  CHECK(hv.ratio == R(2) * RatFunc::i() * RatFunc::s() / (RatFunc::t() - R(1)));
  CHECK(hv.eb == virasoro_weight(2, 1, coset_b()));
  auto hv3 = hw_vector_23();
  CHECK(hv3.ea == e3);
}

TEST_CASE("joint highest-weight search") {
  auto n1 = hw_search(1, 8);
  REQUIRE(n1.size() == 1);
  CHECK(n1[0].vec.terms.begin()->first.empty());
  auto n2 = hw_search(2, 8);
  REQUIRE(n2.size() == 1);
  CHECK(n2[0].vec.terms.size() == 1);
  CHECK(n2[0].vec.terms.begin()->first == PBWMonomial{{}, {}, {1}});
  auto n3 = hw_search(3, 8);
  REQUIRE(n3.size() == 1);
  for (int n = 1; n <= 3; ++n) {
    auto c = hw_search(n, 8);
    CHECK(c[0].ea == virasoro_weight(1, n, coset_a()));
    CHECK(c[0].eb == virasoro_weight(1, n, coset_b()));
  }
  // the weight-2 space is spanned by L(-2)1 (x) 1, G(-3/2)1 (x) psi(-1/2)1, 1 (x) psi(-3/2)psi(-1/2)1
  CHECK(weight_basis(*vacuum_fock(), 4, 0).size() == 3);
}
