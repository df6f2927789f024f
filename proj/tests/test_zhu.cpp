#include "doctest.h"
#include "nsv/zhu.hpp"


using namespace nsv;

namespace {

RatFunc R(long n, long d = 1) { return RatFunc(rat(n, d)); }
XYPoly X() { return XYPoly::x(); }
XYPoly Y() { return XYPoly::y(); }
XYPoly K(const RatFunc& k) { return XYPoly(k); }

}  // namespace

TEST_CASE("generators") {
  auto V = RSpec::verma(central_charge(), kac_weight(2, 2));
  auto one = zhu_reduce(RVec::highest(V));
  CHECK(one.evenPoly == K(R(1)));
  CHECK(one.oddPoly.is_zero());
  auto g = zhu_reduce(act(Mode::Gmode(-1), RVec::highest(V)));
  CHECK(g.evenPoly.is_zero());
  CHECK(g.oddPoly == K(R(1)));
}

TEST_CASE("f and g for the (2,2) singular vector match the closed forms") {
  RatFunc h = kac_weight(2, 2);
  auto z = zhu_polynomials_22();
  XYPoly d = X() - Y();
  XYPoly f = d * d - (X() + Y() + K(h / R(2))).scaled(R(2, 3) * h);
  XYPoly g = d * d - (X() + Y() + K(h / R(2) - R(1, 4))).scaled(R(2, 3) * h + R(1));
  CHECK(z.f == f);
  CHECK(z.g == g);

  // explicit form of G(-1/2) w_{2,2}
  auto V = RSpec::verma(central_charge(), h);
  RVec gw(V);
  RatFunc k = R(2, 3) * h + R(1);
  gw.add({{1, 1}, {1}, {}}, R(1));
  gw.add({{1}, {3}, {}}, R(1));
  gw.add({{2}, {1}, {}}, R(-2) * k);
  gw.add({{}, {5}, {}}, -k);
  CHECK(act(Mode::Gmode(-1), singular_vector_generic(2, 2)) == gw);
}

TEST_CASE("reduction rules agree with the module action") {
  // generic h so nothing special happens
  RatFunc h = RatFunc::t() / R(3) + R(2, 7);
  auto V = RSpec::verma(central_charge(), h);
  for (int deg2 = 0; deg2 <= 5; ++deg2)
    for (int par = 0; par <= 1; ++par) {
      auto basis = weight_basis(*V, deg2, par);
      for (auto& b : basis) {
        RVec v = RVec::basis(V, b);
        RatFunc wt = h + R(deg2, 2);
        auto rv = zhu_reduce(v);
        CHECK(zhu_reduce(act(Mode::Lmode(-1), v)) == rv.times(X() - Y() - K(wt)));
        CHECK(zhu_reduce(act(Mode::Lmode(-2), v)) == rv.times(Y().scaled(R(2)) - X() + K(wt)));
        // (L(-3) + 2L(-2) + L(-1)) v is in O(M)
        auto l3 = zhu_reduce(act(Mode::Lmode(-3), v) + act(Mode::Lmode(-2), v).scaled(R(2)) + act(Mode::Lmode(-1), v));
        CHECK(l3.evenPoly.is_zero());
        CHECK(l3.oddPoly.is_zero());
        // [G(-3/2) v] = -[G(-1/2) v], [G(-5/2) v] = [G(-1/2) v]
        auto g1 = zhu_reduce(act(Mode::Gmode(-1), v));
        auto g3 = zhu_reduce(act(Mode::Gmode(-3), v));
        auto g5 = zhu_reduce(act(Mode::Gmode(-5), v));
        CHECK(g3 == g1.times(K(R(-1))));
        CHECK(g5 == g1);
      }
    }
}

TEST_CASE("reduction is parity preserving and linear") {
  RatFunc h = RatFunc::t() + R(1, 5);
  auto V = RSpec::verma(central_charge(), h);
  for (int deg2 = 0; deg2 <= 6; ++deg2)
    for (int par = 0; par <= 1; ++par) {
      RVec sum(V);
      BimodElement acc;
      long k = 1;
      for (auto& b : weight_basis(*V, deg2, par)) {
        auto e = zhu_reduce(RVec::basis(V, b));
        CHECK((par == 0 ? e.oddPoly : e.evenPoly).is_zero());
        sum.add(b, R(k));
        acc = acc + e.times(K(R(k)));
        ++k;
      }
      CHECK(zhu_reduce(sum) == acc);
    }
}

TEST_CASE("factorization over Q(t)") {
  auto t = RatFunc::t();
  auto rep = zhu_factor_check(2, 2);
  CHECK(rep.fRoots.first == t - R(2) + t.inv());
  CHECK(rep.fRoots.second.is_zero());
  CHECK(rep.gRoots.first == t - R(1, 2));
  CHECK(rep.gRoots.second == t.inv() - R(1, 2));
  for (int r = 1; r <= 6; ++r)
    for (int s = 1; s <= 6; ++s)
      if ((r - s) % 2 == 0) CHECK_NOTHROW(zhu_factor_check(r, s));
  CHECK_THROWS_AS(zhu_factor_check(2, 1), BadParameter);
}

TEST_CASE("fusion weight support") {
  auto s22 = fusion_weight_support(2, 2);
  REQUIRE(s22.evenWeights.size() == 2);
  REQUIRE(s22.oddWeights.size() == 2);
  CHECK(s22.evenWeights[0].weight == kac_weight(3, 3));
  CHECK(s22.evenWeights[1].weight == kac_weight(1, 1));
  CHECK(s22.oddWeights[0].weight == kac_weight(3, 1));
  CHECK(s22.oddWeights[1].weight == kac_weight(1, 3));

  auto s11 = fusion_weight_support(1, 1);
  REQUIRE(s11.evenWeights.size() == 1);
  CHECK(s11.evenWeights[0].r == 2);
  CHECK(s11.oddWeights.empty());

  auto s31 = fusion_weight_support(3, 1);
  REQUIRE(s31.evenWeights.size() == 1);
  CHECK((s31.evenWeights[0].r == 4 && s31.evenWeights[0].s == 2));
  REQUIRE(s31.oddWeights.size() == 1);
  CHECK((s31.oddWeights[0].r == 2 && s31.oddWeights[0].s == 2));

  auto lad = s22.ladders(0);
  REQUIRE(lad.size() == 4);
  CHECK(!lad[0].halfShift);
  CHECK(!lad[1].halfShift);
  CHECK(lad[2].halfShift);
  CHECK(lad[3].halfShift);
}
