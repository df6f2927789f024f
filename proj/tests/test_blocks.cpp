#include <doctest.h>

#include <random>

#include "nsv/blocks.hpp"
#include "nsv/qseries.hpp"
#include "nsv/verma.hpp"
#include "nsv/zhu.hpp"

using namespace nsv;

namespace {

BigFloat bf(const Rational& q, long prec = 256) { return BigFloat::from_rational(q, prec); }

bool close(const BigComplex& a, const BigComplex& b, double tol) {
  return relative_difference(a, b).to_double() < tol;
}

CorrelatorOptions continued() {
  CorrelatorOptions o;
  o.allow_minimal = true;
  return o;
}

}  // namespace

TEST_CASE("2F1 special values") {
  long p = 256;
  BigFloat a = bf(rat(1, 3)), b = bf(rat(-2, 7)), c = bf(rat(5, 4));
  CHECK(close(hyp2f1(a, b, c, bf(0), p), BigComplex(bf(1)), 1e-70));
  BigFloat w = bf(rat(-3, 10));
  CHECK(close(hyp2f1(a, b, c, w, p), hyp2f1(b, a, c, w, p), 1e-70));

  // 2F1(1,1;2;w) = -log(1-w)/w
  BigFloat half = bf(rat(1, 2));
  BigComplex v = hyp2f1(bf(1), bf(1), bf(2), half, p);
  BigFloat expect = -(log(bf(1) - half) / half);
  CHECK(close(v, BigComplex(expect), 1e-70));

  // 2F1(a,b;b;w) = (1-w)^{-a}
  BigFloat w2 = bf(rat(-4, 5));
  CHECK(close(hyp2f1(a, b, b, w2, p), BigComplex(pow(bf(1) - w2, -a)), 1e-70));

  // terminating: 2F1(-2, b; c; w) = 1 - 2bw/c + b(b+1)w^2/(c(c+1))
  BigFloat poly = bf(1) - bf(2) * b * w / c + b * (b + bf(1)) * w * w / (c * (c + bf(1)));
  CHECK(close(hyp2f1(bf(-2), b, c, w, p), BigComplex(poly), 1e-70));
}

TEST_CASE("2F1 Euler transform used for the terminating replacement") {
  BigFloat w = bf(rat(-3, 10));
  for (int m = 1; m <= 4; ++m) {
    BigComplex lhs = hyp2f1(bf(3 * m + 1), bf(m), bf(2 * m + 1), w, 256);
    BigComplex rhs = BigComplex(pow(bf(1) - w, bf(-2 * m))) * hyp2f1(bf(m + 1), bf(-m), bf(2 * m + 1), w, 256);
    CHECK(close(lhs, rhs, 1e-70));
  }
}

TEST_CASE("the two expansions of the basis solutions near z = 1 agree") {
  // f1, f2 in powers of 1 - z against g1, g2 in powers of -(1-z)/z, for the
  // ODE parameters a = -b = 1 - l, c = 2 - 2l and for unrelated a, b, c
  std::mt19937 gen(99);
  std::uniform_int_distribution<int> pick(-250, 250);
  long p = 256;
  BigFloat one = bf(1);
  for (int k = 0; k < 8; ++k) {
    BigFloat a(p), b(p), c(p);
    if (k < 4) {
      Rational l = rat(pick(gen), 97);
      a = bf(1 - l);
      b = -a;
      c = bf(2 - 2 * l);
    } else {
      a = bf(rat(pick(gen), 89));
      b = bf(rat(pick(gen), 83));
      c = bf(rat(pick(gen), 79));
    }
    BigFloat z = bf(rat(55 + 10 * k / 2, 100));
    BigFloat omz = one - z, u = -(omz / z);
    BigComplex f1 = hyp2f1(a, b, a + b + one - c, omz, p);
    BigComplex g1 = BigComplex(pow(z, -a)) * hyp2f1(a, a - c + one, a + b - c + one, u, p);
    BigComplex f2 = BigComplex(pow(omz, c - a - b)) * hyp2f1(c - a, c - b, c - a - b + one, omz, p);
    BigComplex g2 = BigComplex(pow(z, a - c) * pow(omz, c - a - b)) * hyp2f1(one - a, c - a, c - a - b + one, u, p);
    CHECK(close(f1, g1, 1e-60));
    CHECK(close(f2, g2, 1e-60));
  }
}

TEST_CASE("2F1 errors") {
  CHECK_THROWS_AS(hyp2f1(bf(1), bf(1), bf(-2), bf(rat(1, 2)), 128), PoleParameter);
  CHECK_THROWS_AS(hyp2f1(bf(1), bf(1), bf(0), bf(rat(1, 2)), 128), PoleParameter);
  CHECK_THROWS_AS(hyp2f1(bf(1), bf(1), bf(2), bf(rat(11, 10)), 128), NoConvergence);
}

TEST_CASE("connection formula at random parameters") {
  std::mt19937 gen(20240611);
  std::uniform_int_distribution<int> tnum(-400, 400);
  std::uniform_int_distribution<int> xnum(55, 95);
  int done = 0;
  while (done < 10) {
    int n = tnum(gen);
    if (n % 100 == 0) continue;
    Rational T = rat(n, 100);
    Rational x = rat(xnum(gen), 100);
    auto cc = connection_check(bf(T), bf(x), 256);
    INFO("T = " << T.get_str() << ", x = " << x.get_str());
    CHECK(cc.rel.to_double() < 1e-25);
    ++done;
  }
}

TEST_CASE("minimal-model ratios") {
  CHECK(is_minimal_model_ratio(rat(2, 5)));  // 4/10
  CHECK(is_minimal_model_ratio(rat(3, 5)));
  CHECK(is_minimal_model_ratio(rat(2)));     // 4/2
  CHECK_FALSE(is_minimal_model_ratio(rat(3)));
  CHECK_FALSE(is_minimal_model_ratio(rat(7)));
  CHECK_FALSE(is_minimal_model_ratio(rat(1, 7)));
  CHECK_FALSE(is_minimal_model_ratio(rat(-3, 5)));
  CHECK_FALSE(is_minimal_model_ratio(rat(9, 3 * 3 * 3)));  // 1/3
  // brute force over small p, q
  for (int P = 1; P <= 12; ++P)
    for (int Q = 1; Q <= 12; ++Q) {
      if (std::gcd(P, Q) != 1) continue;
      bool found = false;
      for (int k = 1; k <= 6; ++k) {
        long p = long(k) * P, q = long(k) * Q;
        if (p < 2 || q < 2 || (p - q) % 2) continue;
        if (std::gcd(std::labs((p - q) / 2), q) == 1) found = true;
      }
      CHECK(is_minimal_model_ratio(rat(P, Q)) == found);
    }
}

TEST_CASE("ODE: closed forms, substitution and change of variables over Q(l)") {
  BpzReport rep = bpz_check(40);
  CHECK(rep.checks.size() == 4);
  RatFunc l = RatFunc::s();
  CHECK(bpz_psi2(l, 4).exponent == RatFunc(rat(-3, 2)) * (l - RatFunc(1)));
  CHECK(bpz_psi1(l, 4).exponent - bpz_psi2(l, 4).exponent == RatFunc(2) * l - RatFunc(2));
}

TEST_CASE("ODE residual detects a wrong closed form") {
  RatFunc l = RatFunc::s();
  auto psi = bpz_psi2(l, 12);
  psi.exponent = psi.exponent + RatFunc(1);
  auto res = bpz_residual(psi, l, 8);
  bool nonzero = false;
  for (auto& c : res.coeffs) nonzero = nonzero || !c.is_zero();
  CHECK(nonzero);

  // perturb one coefficient
  auto psi2 = bpz_psi2(l, 12);
  psi2.coeffs[3] = psi2.coeffs[3] + RatFunc(1);
  auto res2 = bpz_residual(psi2, l, 8);
  CHECK(res2.coeffs[0].is_zero());
  bool later = false;
  for (auto& c : res2.coeffs) later = later || !c.is_zero();
  CHECK(later);
}

TEST_CASE("factored residual agrees with the direct one") {
  RatFunc l = RatFunc::s(), lm1 = l - RatFunc(1), h = virasoro_h22(l);
  RatFunc rho = RatFunc(rat(-3, 2)) * lm1, kappa = RatFunc(rat(1, 2)) * lm1 + RatFunc(2) * h;
  RatFunc a = l, b = RatFunc(1) - l, c = RatFunc(3) - RatFunc(2) * l;
  for (auto& r : bpz_residual_factored(rho, kappa, a, b, c, l, 10)) CHECK(r.is_zero());
  // wrong prefactor exponent, wrong lower parameter: both methods see it
  auto bad = bpz_residual_factored(rho, kappa + RatFunc(1), a, b, c, l, 6);
  CHECK_FALSE(bad[0].is_zero());
  auto bad2 = bpz_residual_factored(rho, kappa, a, b, c + RatFunc(1), l, 6);
  bool any = false;
  for (auto& r : bad2) any = any || !r.is_zero();
  CHECK(any);

  FrobeniusSeries<RatFunc> psi = FrobeniusSeries<RatFunc>::power(binomial_series<RatFunc>(kappa + RatFunc(1), 10)) *
                                 FrobeniusSeries<RatFunc>::power(hyp2f1_coeffs<RatFunc>(a, b, c, 10, -1));
  psi.exponent = rho;
  // the indicial coefficient only sees rho, so look further out
  auto direct = bpz_residual(psi, l, 6);
  CHECK(direct.coeffs[0].is_zero());
  bool dany = false;
  for (auto& r : direct.coeffs) dany = dany || !r.is_zero();
  CHECK(dany);
}

TEST_CASE("ODE report strings") {
  BpzReport rep = bpz_check(4);
  CHECK(rep.leading_exponent == "-3/2*l+3/2");
  CHECK(rep.indicial_difference == "2*l-2");
}

TEST_CASE("ODE with l = a and l = b from the coset") {
  for (const RatFunc& l : {coset_a(), coset_b()}) {
    auto psi = bpz_psi2(l, 14);
    auto res = bpz_residual(psi, l, 10);
    for (auto& c : res.coeffs) CHECK(c.is_zero());
  }
  // psi_2 with l = a carries the t-factor of the NS correlator
  RatFunc a = coset_a();
  auto fa = hyp2f1_coeffs<RatFunc>(a, RatFunc(1) - a, RatFunc(3) - RatFunc(2) * a, 6, -1);
  RatFunc t = RatFunc::t(), half(rat(1, 2));
  auto ft = hyp2f1_coeffs<RatFunc>((RatFunc(1) + t) * half, (RatFunc(1) - t) * half, RatFunc(2) - t, 6, -1);
  for (int n = 0; n < 6; ++n) CHECK(fa[n] == ft[n]);
}

TEST_CASE("correlator normalization and first coefficient") {
  for (const Rational& t : {rat(-3, 5), rat(-7, 3), rat(3), rat(1, 7)}) {
    auto s = ns_correlator_series(t, 10);
    CHECK(s.lo == 0);
    CHECK(s.coeffs[0] == 1);
  }
  auto s25 = ns_correlator_series(rat(2, 5), 10, continued());
  CHECK(s25.coeffs[0] == 1);
  CHECK_THROWS_AS(ns_correlator_series(rat(2, 5), 10), ExcludedParameter);

  // w^1 coefficient: 8h/3 - sum over T = t, 1/t of ((1+T)/2)((1-T)/2)/(2-T)
  Rational t = rat(-3, 5);
  Rational h = 3 * (t - 1) * (t - 1) / (8 * t);
  Rational expect = 8 * h / 3;
  for (Rational T : {t, Rational(1 / t)}) expect -= ((1 + T) / 2) * ((1 - T) / 2) / (2 - T);
  auto s = ns_correlator_series(t, 4);
  CHECK(s.coeffs[1] == expect);
  CHECK(s.exponent == -2 * h);
}

TEST_CASE("correlator parameter exclusions") {
  CHECK_THROWS_AS(ns_correlator_series(rat(0), 5), ExcludedParameter);
  CHECK_THROWS_AS(ns_correlator_series(rat(1), 5), ExcludedParameter);
  CHECK_THROWS_AS(ns_correlator_series(rat(-1), 5), ExcludedParameter);
  CHECK_THROWS_AS(ns_correlator_series(rat(4), 5, continued()), ExcludedParameter);
  CHECK_THROWS_AS(ns_correlator_series(rat(1, 6), 5, continued()), ExcludedParameter);
}

TEST_CASE("degenerate branch equals the limit of the generic branch") {
  int len = 30;
  auto formal = correlator_factor_formal(len);
  for (int m : {1, 3}) {
    auto deg = correlator_factor_degenerate(m, len);
    for (int n = 0; n < len; ++n) {
      GaussRational lim = ratfunc_eval(formal[n], GaussRational(Rational(2 * m + 1)));
      CHECK(lim.im == 0);
      CHECK(lim.re == deg[n]);
    }
  }
  // the full correlator at t = 3 from the limit factor
  auto s3 = ns_correlator_series(rat(3), len);
  using QS = FrobeniusSeries<Rational>;
  std::vector<Rational> lim(len);
  for (int n = 0; n < len; ++n) lim[n] = ratfunc_eval(formal[n], GaussRational(Rational(3))).re;
  Rational h = rat(1, 2);
  QS rebuilt = QS::power(binomial_series<Rational>(8 * h / 3, len)) * QS::power(lim) *
               QS::power(correlator_factor(rat(1, 3), len));
  for (int n = 0; n < len; ++n) CHECK(rebuilt.coeffs[n] == s3.coeffs[n]);
  // the generic series itself hits a pole at T = 3
  CHECK_THROWS_AS(hyp2f1_coeffs<Rational>(Rational(2), Rational(-1), Rational(-1), 4, -1), PoleParameter);
}

TEST_CASE("correlator coefficients have poles only at excluded t") {
  auto s = ns_correlator_series_formal(8);
  CHECK(s.coeffs[0] == RatFunc(1));
  // strip factors t, (t - 2k), (2k t - 1) from each denominator
  for (int n = 0; n < 8; ++n) {
    SPoly d = s.coeffs[n].den();
    SPoly sv = SPoly::x();
    auto strip = [&](const SPoly& f) {
      while (d.degree() > 0 && (d % f).is_zero()) d = d / f;
    };
    strip(sv);
    for (int k = 1; k <= 8; ++k) {
      strip(SPoly(std::vector<GaussRational>{GaussRational(-2 * k), GaussRational(0), GaussRational(1)}));
      strip(SPoly(std::vector<GaussRational>{GaussRational(-1), GaussRational(0), GaussRational(2 * k)}));
    }
    INFO("coefficient " << n);
    CHECK(d.degree() == 0);
  }
}

TEST_CASE("rigidity scalar: both routes") {
  auto r = rigidity_scalar(rat(-3, 5), 256);
  CHECK(std::abs(r.routeB.re.to_double() - 10.547) < 1e-3);
  CHECK(r.rel.to_double() < 1e-25);
  CHECK_FALSE(r.degenerate);

  for (const Rational& t : {rat(-3, 5), rat(2, 5), rat(7), rat(1, 7), rat(-7, 3)}) {
    auto q = rigidity_scalar(t, 256, continued());
    INFO("t = " << t.get_str());
    CHECK(q.rel.to_double() < 1e-25);
    CHECK(std::abs(q.routeA.re.to_double()) > 1e-3);
  }
  CHECK(rigidity_scalar(rat(7), 256).degenerate);
  CHECK(rigidity_scalar(rat(1, 7), 256).degenerate);
  CHECK(rigidity_scalar(rat(3), 256).degenerate);
  CHECK_FALSE(rigidity_scalar(rat(2, 5), 256, continued()).theorem_applies);
  CHECK_THROWS_AS(rigidity_scalar(rat(2, 5), 256), ExcludedParameter);
  CHECK_THROWS_AS(rigidity_scalar(rat(-2), 256), ExcludedParameter);
  CHECK_THROWS_AS(rigidity_scalar(rat(-1, 3), 256), ExcludedParameter);
  CHECK_THROWS_AS(rigidity_scalar(rat(4), 256, continued()), ExcludedParameter);
}

TEST_CASE("gamma product simplification at random t") {
  std::mt19937 gen(7);
  std::uniform_int_distribution<int> num(-300, 300);
  int done = 0;
  long p = 256;
  while (done < 10) {
    int n = num(gen);
    if (n % 100 == 0) continue;
    Rational t = rat(n, 100);
    BigFloat T = bf(t), one = bf(1), half = bf(rat(1, 2));
    BigFloat lhs = (one - T) * gamma(T) * gamma(one - T) /
                   ((one - T) * half * gamma((one + T) * half) * gamma((one - T) * half));
    BigFloat pi = BigFloat::pi(p);
    BigFloat rhs = bf(2) * sin(pi * (one + T) * half) / sin(pi * T);
    CHECK(close(BigComplex(lhs), BigComplex(rhs), 1e-60));
    ++done;
  }
}

TEST_CASE("intrinsic dimension") {
  auto d = intrinsic_dimension(rat(-3, 5), 256);
  CHECK(std::abs(d.sine.re.to_double() - 1.6180) < 1e-4);
  CHECK(d.rel.to_double() < 1e-25);
  CHECK(d.relRigidity.to_double() < 1e-25);
  auto d2 = intrinsic_dimension(rat(2, 5), 256, continued());
  CHECK(std::abs(d2.sine.re.to_double() + 1.6625) < 1e-4);
  for (const Rational& t : {rat(-3, 5), rat(7), rat(-7, 3), rat(3)}) {
    auto a = intrinsic_dimension(t, 256);
    auto b = intrinsic_dimension(1 / t, 256);
    CHECK(relative_difference(a.sine, b.sine).to_double() < 1e-60);
    CHECK(a.rel.to_double() < 1e-25);
    CHECK(a.relRigidity.to_double() < 1e-25);
  }
  CHECK_THROWS_AS(intrinsic_dimension(rat(1), 256), ExcludedParameter);
  CHECK_THROWS_AS(intrinsic_dimension(rat(-2), 256), ExcludedParameter);
  CHECK_THROWS_AS(intrinsic_dimension(rat(0), 256), ExcludedParameter);
}

TEST_CASE("<v, v> = 4") {
  VVReport r = invariant_form_vv();
  RatFunc h = kac_weight(2, 2);
  CHECK(r.gg == RatFunc(GaussRational(Rational(0), Rational(-2))) * h);
  CHECK(r.vv == RatFunc(4));
}

TEST_CASE("correlator exponents match the fusion support of S(2,2) x S(2,2)") {
  RatFunc t = RatFunc::t(), ti = t.inv();
  std::vector<RatFunc> C = {RatFunc(0), t, ti, t + ti};
  WeightSupport ws = fusion_weight_support(2, 2);
  std::vector<SupportEntry> all = ws.evenWeights;
  all.insert(all.end(), ws.oddWeights.begin(), ws.oddWeights.end());
  auto half_integral = [](const RatFunc& f) {
    if (!f.is_constant()) return false;
    GaussRational g = f.constant_value();
    return g.im == 0 && Rational(2 * g.re).get_den() == 1;
  };
  for (auto& c : C) {
    bool hit = false;
    for (auto& e : all) hit = hit || half_integral(e.weight - c);
    CHECK(hit);
  }
  for (auto& e : all) {
    bool hit = false;
    for (auto& c : C) hit = hit || half_integral(e.weight - c);
    CHECK(hit);
  }
}
