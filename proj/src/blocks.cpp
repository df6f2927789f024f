#include "nsv/blocks.hpp"

#include <array>
#include <cmath>
#include <numeric>

#include "nsv/nsmodes.hpp"
#include "nsv/qseries.hpp"
#include "nsv/verma.hpp"

namespace nsv {

// ---- 2F1 -------------------------------------------------------------------

namespace {

bool is_nonpositive_integer(const BigComplex& c) {
  if (!c.im.is_zero()) return false;
  if (c.re.sign() > 0) return false;
  return mpfr_integer_p(c.re.raw()) != 0;
}

BigComplex with_prec(const BigComplex& z, long prec) {
  BigComplex r(prec);
  mpfr_set(r.re.raw(), z.re.raw(), MPFR_RNDN);
  mpfr_set(r.im.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

BigComplex hyp2f1(const BigComplex& a0, const BigComplex& b0, const BigComplex& c0, const BigComplex& w0, long prec) {
  const long guard = 32;
  long wp = prec + guard;
  BigComplex a = with_prec(a0, wp), b = with_prec(b0, wp), c = with_prec(c0, wp), w = with_prec(w0, wp);
  if (is_nonpositive_integer(c)) throw PoleParameter("2F1: lower parameter " + c.re.str(12) + " is a non-positive integer");
  double aw = w.abs().to_double();
  if (!(aw < 1.0)) throw NoConvergence("2F1: series needs |w| < 1, got " + std::to_string(aw));

  BigFloat eps = BigFloat::from_long(1, wp);
  mpfr_div_2si(eps.raw(), eps.raw(), prec + guard / 2, MPFR_RNDN);

  BigComplex sum(wp), term = BigComplex(BigFloat::from_long(1, wp));
  int small = 0;
  const long max_terms = 2000000;
  for (long n = 0; n < max_terms; ++n) {
    sum = sum + term;
    BigComplex nn(BigFloat::from_long(n, wp));
    BigComplex num = (a + nn) * (b + nn);
    BigComplex den = (c + nn) * BigComplex(BigFloat::from_long(n + 1, wp));
    BigComplex ratio = num / den * w;
    term = term * ratio;
    if (term.re.is_zero() && term.im.is_zero()) return sum;  // terminating
    bool tiny = !(eps * sum.abs() < term.abs());
    // only trust the tail once the terms are shrinking geometrically
    if (tiny && ratio.abs().to_double() < 1.0) {
      if (++small >= 3) return sum;
    } else {
      small = 0;
    }
  }
  throw NoConvergence("2F1: no convergence after " + std::to_string(max_terms) + " terms");
}

BigComplex hyp2f1(const BigFloat& a, const BigFloat& b, const BigFloat& c, const BigFloat& w, long prec) {
  return hyp2f1(BigComplex(a), BigComplex(b), BigComplex(c), BigComplex(w), prec);
}

ConnectionCheck connection_check(const BigFloat& T, const BigFloat& x, long prec) {
  long wp = prec + 32;
  auto R = [&](long n, long d = 1) { return BigFloat::from_rational(rat(n, d), wp); };
  BigFloat one = R(1), half = R(1, 2);
  if (mpfr_integer_p(T.raw())) throw PoleParameter("connection formula needs a non-integer exponent");
  BigFloat omx = one - x;
  BigFloat wv = -(omx / x);
  BigComplex F = hyp2f1((one + T) * half, (one - T) * half, R(2) - T, wv, wp);
  BigFloat pre = pow(x, -((one - T) * half)) * pow(omx, one - T);
  ConnectionCheck out{T, x, BigComplex(wp), BigComplex(wp), BigFloat(wp)};
  out.lhs = BigComplex(pre) * F;

  BigFloat c1 = gamma(T) * gamma(R(2) - T) / (gamma((one + T) * half) * gamma((R(3) - T) * half));
  BigFloat c2 = gamma(-T) * gamma(R(2) - T) / (gamma((one - T) * half) * gamma((R(3) - R(3) * T) * half));
  BigComplex F1 = hyp2f1((one - T) * half, -((one - T) * half), one - T, x, wp);
  BigComplex F2 = hyp2f1((one + T) * half, -((one - R(3) * T) * half), one + T, x, wp);
  out.rhs = BigComplex(c1) * F1 + BigComplex(c2 * pow(x, T)) * F2;
  out.rel = relative_difference(out.lhs, out.rhs);
  return out;
}

// ---- parameters --------------------------------------------------------------

bool is_minimal_model_ratio(const Rational& t) {
  if (sgn(t) <= 0) return false;
  BigInt P = t.get_num(), Q = t.get_den();
  // A representation kp/kq with k >= 3 always has gcd > 1, so k = 1 or 2.
  BigInt d = P - Q;
  if (mpz_odd_p(d.get_mpz_t())) return true;  // (2P, 2Q)
  if (P < 2 || Q < 2) return false;
  BigInt half = d / 2, g;
  mpz_gcd(g.get_mpz_t(), half.get_mpz_t(), Q.get_mpz_t());
  return g == 1;
}

int odd_integer_m(const Rational& x) {
  if (x.get_den() != 1) return 0;
  BigInt n = x.get_num();
  if (n < 3 || mpz_even_p(n.get_mpz_t())) return 0;
  return int((n.get_si() - 1) / 2);
}

bool is_even_integer_ge2(const Rational& x) {
  if (x.get_den() != 1) return false;
  BigInt n = x.get_num();
  return n >= 2 && mpz_even_p(n.get_mpz_t());
}

// ---- the ODE in w = (1-z)/z ----------------------------------------------------

RatFunc virasoro_h22(const RatFunc& l) {
  RatFunc lm1 = l - RatFunc(1);
  return RatFunc(rat(3, 4)) * lm1 * lm1 / l;
}

namespace {

using RSeries = FrobeniusSeries<RatFunc>;

RSeries rpoly(std::vector<RatFunc> c, int len) { return RSeries::poly(c, len); }

// 1 - z = w/(1+w)
RSeries one_minus_z(int len) { return RSeries::power(binomial_series<RatFunc>(RatFunc(-1), len)).shifted(1); }

RSeries closed_form(const RatFunc& rho, const RatFunc& kappa, const RatFunc& a, const RatFunc& b, const RatFunc& c,
                    int len) {
  RSeries g = RSeries::power(binomial_series<RatFunc>(kappa, len)) *
              RSeries::power(hyp2f1_coeffs<RatFunc>(a, b, c, len, -1));
  g.exponent = rho;
  return g;
}

}  // namespace

RSeries bpz_psi2(const RatFunc& l, int len) {
  RatFunc h = virasoro_h22(l), lm1 = l - RatFunc(1);
  RatFunc rho = RatFunc(rat(-3, 2)) * lm1;
  RatFunc kappa = RatFunc(rat(1, 2)) * lm1 + RatFunc(2) * h;
  return closed_form(rho, kappa, l, RatFunc(1) - l, RatFunc(3) - RatFunc(2) * l, len);
}

RSeries bpz_psi1(const RatFunc& l, int len) {
  RatFunc h = virasoro_h22(l), lm1 = l - RatFunc(1);
  RatFunc rho = RatFunc(rat(1, 2)) * lm1;
  RatFunc kappa = RatFunc(rat(-3, 2)) * lm1 + RatFunc(2) * h;
  return closed_form(rho, kappa, RatFunc(1) - l, l, RatFunc(2) * l - RatFunc(1), len);
}

RSeries bpz_residual(const RSeries& psi, const RatFunc& l, int order) {
  int len = int(psi.coeffs.size()) + 6;
  RatFunc h = virasoro_h22(l);
  RSeries sq = rpoly({RatFunc(1), RatFunc(2), RatFunc(1)}, len);  // (1+w)^2
  // d/dz = -(1+w)^2 d/dw
  RSeries d1 = (sq * psi.derivative()).scaled(RatFunc(-1));
  RSeries d2 = (sq * d1.derivative()).scaled(RatFunc(-1));
  RSeries omz = one_minus_z(len);
  RSeries zomz = RSeries::power(binomial_series<RatFunc>(RatFunc(-2), len)).shifted(1);  // z(1-z)
  RSeries one = rpoly({RatFunc(1)}, len);
  RSeries q1 = omz.scaled(RatFunc(4) * h + RatFunc(2) - l) - one.scaled(l);
  RSeries inv = sq.shifted(-1);  // 1/(z(1-z)) = (1+w)^2/w
  RatFunc k2 = RatFunc(2) * h * (RatFunc(2) * h + RatFunc(1)) - RatFunc(3) * l * h;
  RSeries q0 = ((omz * omz).scaled(k2) - one.scaled(l * h)) * inv;
  RSeries res = zomz * d2 + q1 * d1 + q0 * psi;
  if (res.hi() < res.lo + order) throw std::invalid_argument("bpz_residual: series too short for the requested order");
  res.coeffs.resize(order);
  return res;
}

namespace {

// rational functions of z over Q(l), compared by cross-multiplication
struct ZFrac {
  HPoly num, den;
  ZFrac(HPoly n = HPoly(), HPoly d = HPoly(RatFunc(1))) : num(std::move(n)), den(std::move(d)) {}
  static ZFrac k(const RatFunc& c) { return ZFrac(HPoly(c)); }
  static ZFrac z() { return ZFrac(HPoly::x()); }
  friend ZFrac operator+(const ZFrac& a, const ZFrac& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend ZFrac operator-(const ZFrac& a, const ZFrac& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend ZFrac operator*(const ZFrac& a, const ZFrac& b) { return {a.num * b.num, a.den * b.den}; }
  friend ZFrac operator/(const ZFrac& a, const ZFrac& b) {
    if (b.num.is_zero()) throw std::domain_error("ZFrac division by zero");
    return {a.num * b.den, a.den * b.num};
  }
  ZFrac derivative() const {
    return {num.derivative() * den - num * den.derivative(), den * den};
  }
  bool equals(const ZFrac& o) const { return num * o.den == o.num * den; }
  // cancel common factors x and 1 +- x, the only ones that occur here
  ZFrac reduced() const {
    ZFrac r = *this;
    for (long c : {0L, 1L, -1L}) {
      HPoly f(std::vector<RatFunc>{RatFunc(c), RatFunc(1)});
      while (r.den.degree() > 0 && !r.num.is_zero()) {
        auto [qd, rd] = HPoly::divmod(r.den, f);
        if (!rd.is_zero()) break;
        auto [qn, rn] = HPoly::divmod(r.num, f);
        if (!rn.is_zero()) break;
        r.den = qd;
        r.num = qn;
      }
    }
    return r;
  }
};

ZFrac zk(long v) { return ZFrac::k(RatFunc(v)); }

// z^{-2h} * sum c[k] psitilde^(k)(u), u = (1-z)/z
struct Jet {
  std::array<ZFrac, 4> c;
};

Jet jet_derivative(const Jet& j, const RatFunc& h) {
  ZFrac z = ZFrac::z();
  ZFrac du = zk(-1) / (z * z);
  ZFrac pre = ZFrac::k(RatFunc(-2) * h) / z;
  Jet out;
  for (int k = 0; k < 4; ++k) {
    out.c[k] = j.c[k].derivative() + pre * j.c[k];
    if (k > 0) out.c[k] = out.c[k] + du * j.c[k - 1];
  }
  return out;
}

}  // namespace

std::vector<RatFunc> bpz_residual_factored(const RatFunc& rho, const RatFunc& kappa, const RatFunc& a,
                                           const RatFunc& b, const RatFunc& c, const RatFunc& l, int order) {
  // psi = P(w) F(-w), P = w^rho (1+w)^kappa; divide the ODE by P
  RatFunc h = virasoro_h22(l);
  ZFrac w = ZFrac::z(), one = zk(1), opw = one + w, S = opw * opw;
  ZFrac lam = (ZFrac::k(rho) / w + ZFrac::k(kappa) / opw).reduced();
  ZFrac dlam = lam.derivative().reduced();
  ZFrac zz = w / S, omz = w / opw;
  ZFrac q1 = ZFrac::k(RatFunc(4) * h + RatFunc(2) - l) * omz - ZFrac::k(l);
  RatFunc k2 = RatFunc(2) * h * (RatFunc(2) * h + RatFunc(1)) - RatFunc(3) * l * h;
  ZFrac q0 = (ZFrac::k(k2) * omz * omz - ZFrac::k(l * h)) * S / w;
  std::array<ZFrac, 3> A;
  A[2] = (zz * S * S).reduced();
  A[1] = (zz * S * (zk(2) * lam * S + zk(2) * opw) - q1 * S).reduced();
  A[0] = (zz * S * (S * (dlam + lam * lam) + zk(2) * opw * lam) - q1 * S * lam + q0).reduced();
  HPoly D = A[0].den;
  for (int k = 1; k < 3; ++k) D = D * A[k].den / HPoly::gcd(D, A[k].den);
  std::array<HPoly, 3> B;
  for (int k = 0; k < 3; ++k) {
    auto [q, r] = HPoly::divmod(D, A[k].den);
    if (!r.is_zero()) throw std::logic_error("bpz_residual_factored: denominator does not divide");
    B[k] = A[k].num * q;
  }
  // f_{n+1}/f_n for 2F1(a,b;c;-w)
  auto ratio = [&](int n) { return -((a + RatFunc(n)) * (b + RatFunc(n)) / ((c + RatFunc(n)) * RatFunc(n + 1))); };
  int jmax = std::max({B[0].degree(), B[1].degree(), B[2].degree()});
  std::vector<RatFunc> out;
  for (int N = 0; N < order; ++N) {
    int top = N + 2;
    // f_n / f_top for n <= top
    std::vector<RatFunc> rel(top + 1);
    rel[top] = RatFunc(1);
    for (int n = top - 1; n >= 0 && n >= top - jmax - 2; --n) rel[n] = rel[n + 1] / ratio(n);
    RatFunc acc;
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j <= B[k].degree(); ++j) {
        int m = N - j;  // coefficient of w^m in F^(k)
        if (m < 0 || B[k].coeff(j).is_zero()) continue;
        long fall = 1;
        for (int i = 1; i <= k; ++i) fall *= (m + i);
        acc += B[k].coeff(j) * rel[m + k] * RatFunc(fall);
      }
    out.push_back(acc);
  }
  return out;
}

BpzReport bpz_check(int order, const RatFunc& l) {
  BpzReport rep;
  rep.order = order;
  RatFunc h = virasoro_h22(l);
  RatFunc lm1 = l - RatFunc(1);

  // h l = 3/4 (l-1)^2 agrees with the Virasoro Kac weight h_{2,2}
  if (virasoro_weight(2, 2, l) != h) throw ResidualNonzero("h_{2,2}(l) differs from 3(l-1)^2/(4l)", -1);

  // (i) psi = (1-z)^A z^B f turns the ODE into the hypergeometric equation
  {
    ZFrac z = ZFrac::z(), one = zk(1);
    ZFrac A = ZFrac::k(RatFunc(rat(1, 2)) * lm1), B = ZFrac::k(RatFunc(-2) * h);
    ZFrac L = B / z - A / (one - z);
    ZFrac zz = z * (one - z);
    ZFrac q1 = ZFrac::k(RatFunc(4) * h + RatFunc(2) - l) * (one - z) - ZFrac::k(l);
    RatFunc k2 = RatFunc(2) * h * (RatFunc(2) * h + RatFunc(1)) - RatFunc(3) * l * h;
    ZFrac q0 = (ZFrac::k(k2) * (one - z) * (one - z) - ZFrac::k(l * h)) / zz;
    ZFrac c1 = zk(2) * zz * L + q1;
    ZFrac c0 = zz * (L.derivative() + L * L) + q1 * L + q0;
    RatFunc alpha = RatFunc(1) - l, beta = lm1, gam = RatFunc(2) - RatFunc(2) * l;
    ZFrac h1 = ZFrac::k(gam) - ZFrac::k(alpha + beta + RatFunc(1)) * z;
    ZFrac h0 = ZFrac::k(-(alpha * beta));
    if (!c1.equals(h1)) throw ResidualNonzero("substitution: first-derivative coefficient is not hypergeometric", 1);
    if (!c0.equals(h0)) throw ResidualNonzero("substitution: zeroth-order coefficient is not hypergeometric", 0);
    rep.checks.push_back("psi = (1-z)^((l-1)/2) z^(-2h) f gives the hypergeometric equation with a = -b = 1-l, c = 2-2l");
  }

  // (iii) the two-variable equation pulled back along Psi(x0,x2) = x2^{-2h} psitilde(x0/x2)
  {
    ZFrac z = ZFrac::z(), one = zk(1);
    ZFrac x0 = one - z, x2 = z;
    ZFrac H = ZFrac::k(h), Lk = ZFrac::k(l);
    Jet Psi, dx0, dx0x0, dx2;
    Psi.c[0] = one;
    dx0.c[1] = one / x2;
    dx0x0.c[2] = one / (x2 * x2);
    dx2.c[0] = zk(-2) * H / x2;
    dx2.c[1] = zk(-1) * x0 / (x2 * x2);
    ZFrac s = x2 + x0;
    Jet E1;
    for (int k = 0; k < 4; ++k)
      E1.c[k] = dx0x0.c[k] - Lk * (one / x0 - one / s) * dx2.c[k] + Lk / x0 * dx0.c[k] -
                Lk * H * (one / (x0 * x0) + one / (s * s)) * Psi.c[k];
    Jet p0 = Psi;
    Jet p1 = jet_derivative(p0, h);
    Jet p2 = jet_derivative(p1, h);
    ZFrac zz = z * (one - z);
    ZFrac q1 = ZFrac::k(RatFunc(4) * h + RatFunc(2) - l) * (one - z) - Lk;
    RatFunc k2 = RatFunc(2) * h * (RatFunc(2) * h + RatFunc(1)) - RatFunc(3) * l * h;
    ZFrac q0 = (ZFrac::k(k2) * (one - z) * (one - z) - ZFrac::k(l * h)) / zz;
    Jet E2;
    for (int k = 0; k < 4; ++k) E2.c[k] = zz * p2.c[k] + q1 * p1.c[k] + q0 * p0.c[k];
    ZFrac lambda = E2.c[2] / E1.c[2];
    for (int k = 0; k < 4; ++k)
      if (!E2.c[k].equals(lambda * E1.c[k]))
        throw ResidualNonzero("change of variables: jet component " + std::to_string(k) + " not proportional", k);
    rep.checks.push_back("two-variable equation at (x0,x2) = (1-z,z) is proportional to the psi equation");
  }

  // (ii) the closed forms satisfy the ODE, as series in w
  auto check_series = [&](const std::vector<RatFunc>& res, const std::string& name) {
    for (int i = 0; i < int(res.size()); ++i)
      if (!res[i].is_zero())
        throw ResidualNonzero(name + ": residual coefficient " + std::to_string(i) + " is nonzero", i);
    rep.checks.push_back(name + ": residual zero for " + std::to_string(res.size()) + " coefficients");
  };
  RSeries psi2 = bpz_psi2(l, 2);
  RSeries psi1 = bpz_psi1(l, 2);
  {
    RatFunc h2 = RatFunc(2) * h;
    check_series(bpz_residual_factored(psi2.exponent, RatFunc(rat(1, 2)) * lm1 + h2, l, RatFunc(1) - l,
                                       RatFunc(3) - RatFunc(2) * l, l, order),
                 "psi_2");
    check_series(bpz_residual_factored(psi1.exponent, RatFunc(rat(-3, 2)) * lm1 + h2, RatFunc(1) - l, l,
                                       RatFunc(2) * l - RatFunc(1), l, order),
                 "psi_1");
  }

  RatFunc lead = virasoro_weight(1, 2, l) - virasoro_weight(2, 1, l) - virasoro_weight(2, 2, l);
  if (lead != psi2.exponent) throw ResidualNonzero("leading exponent of psi_2 is not h_{1,2} - h_{2,1} - h_{2,2}", -1);
  // print in l when l is the bare formal variable
  auto show = [&](const RatFunc& f) {
    if (l != RatFunc::s()) return to_string(f);
    std::string n = to_string(f.num(), "l");
    if (f.den().degree() <= 0) return n;
    return "(" + n + ")/(" + to_string(f.den(), "l") + ")";
  };
  rep.leading_exponent = show(psi2.exponent);
  rep.indicial_difference = show(psi1.exponent - psi2.exponent);
  if (psi1.exponent - psi2.exponent != RatFunc(2) * l - RatFunc(2))
    throw ResidualNonzero("indicial exponents do not differ by 2l - 2", -1);
  return rep;
}

// ---- the NS correlator ------------------------------------------------------------

std::vector<Rational> correlator_factor_degenerate(int m, int len) {
  std::vector<Rational> out(len, Rational(0));
  // sum_{n<=m} C(m,n) (m+1)_n / (-2m+1)_n w^n
  Rational binom = 1, up = 1, low = 1;
  for (int n = 0; n <= m && n < len; ++n) {
    out[n] += binom * up / low;
    binom = binom * (m - n) / (n + 1);
    up *= (m + 1 + n);
    low *= (-2 * m + 1 + n);
  }
  BigInt f3m, fm1, f2m1, f2m;
  mpz_fac_ui(f3m.get_mpz_t(), 3 * m);
  mpz_fac_ui(fm1.get_mpz_t(), m - 1);
  mpz_fac_ui(f2m1.get_mpz_t(), 2 * m - 1);
  mpz_fac_ui(f2m.get_mpz_t(), 2 * m);
  Rational K = Rational(f3m * fm1) / Rational(f2m1 * f2m);
  K.canonicalize();
  Rational pref = (m % 2 ? Rational(1) : Rational(-1)) * K / 2;  // -(-1)^m/2 K
  if (2 * m < len) {
    auto tail = hyp2f1_coeffs<Rational>(Rational(3 * m + 1), Rational(m), Rational(2 * m + 1), len - 2 * m, -1);
    for (int k = 0; k + 2 * m < len; ++k) out[k + 2 * m] += pref * tail[k];
  }
  return out;
}

std::vector<Rational> correlator_factor(const Rational& T, int len) {
  if (int m = odd_integer_m(T)) return correlator_factor_degenerate(m, len);
  if (is_even_integer_ge2(T)) throw ExcludedParameter("t^{+-1} = " + T.get_str() + " is an even integer >= 2");
  Rational a = (1 + T) / 2, b = (1 - T) / 2, c = 2 - T;
  return hyp2f1_coeffs<Rational>(a, b, c, len, -1);
}

namespace {

void check_series_parameter(const Rational& t, const CorrelatorOptions& opt) {
  if (sgn(t) == 0) throw ExcludedParameter("t = 0");
  if (t == 1 || t == -1) throw ExcludedParameter("t = +-1");
  if (!opt.allow_minimal && is_minimal_model_ratio(t))
    throw ExcludedParameter("t = " + t.get_str() + " is a minimal-model ratio p/q (p - q even, gcd((p-q)/2, q) = 1)");
  Rational ti = 1 / t;
  if (is_even_integer_ge2(t) || is_even_integer_ge2(ti))
    throw ExcludedParameter("t^{+-1} is an even integer >= 2");
}

Rational h22_at(const Rational& t) {
  Rational h = 3 * (t - 1) * (t - 1) / (8 * t);
  h.canonicalize();
  return h;
}

}  // namespace

FrobeniusSeries<Rational> ns_correlator_series(const Rational& t, int order, CorrelatorOptions opt) {
  check_series_parameter(t, opt);
  Rational h = h22_at(t);
  using QS = FrobeniusSeries<Rational>;
  Rational k = 8 * h / 3;
  QS out = QS::power(binomial_series<Rational>(k, order)) * QS::power(correlator_factor(t, order)) *
           QS::power(correlator_factor(1 / t, order));
  out.exponent = -2 * h;
  return out;
}

std::vector<RatFunc> correlator_factor_formal(int len) {
  RatFunc T = RatFunc::s(), half(rat(1, 2));
  return hyp2f1_coeffs<RatFunc>((RatFunc(1) + T) * half, (RatFunc(1) - T) * half, RatFunc(2) - T, len, -1);
}

FrobeniusSeries<RatFunc> ns_correlator_series_formal(int order) {
  RatFunc t = RatFunc::t(), ti = t.inv(), half(rat(1, 2));
  RatFunc h = kac_weight(2, 2);
  auto F = [&](const RatFunc& T) {
    return RSeries::power(
        hyp2f1_coeffs<RatFunc>((RatFunc(1) + T) * half, (RatFunc(1) - T) * half, RatFunc(2) - T, order, -1));
  };
  RSeries out = RSeries::power(binomial_series<RatFunc>(RatFunc(8) * h / RatFunc(3), order)) * F(t) * F(ti);
  out.exponent = RatFunc(-2) * h;
  return out;
}

// ---- rigidity --------------------------------------------------------------------

namespace {

BigFloat bf(const Rational& q, long prec) { return BigFloat::from_rational(q, prec); }

// Gamma(T)Gamma(2-T) / (Gamma((1+T)/2) Gamma((3-T)/2))
BigFloat connection_constant(const Rational& T, long prec) {
  return gamma(bf(T, prec)) * gamma(bf(2 - T, prec)) /
         (gamma(bf((1 + T) / 2, prec)) * gamma(bf((3 - T) / 2, prec)));
}

// 4 sin(pi t/2) sin(pi/(2t)) and -(t-1)^2/(t sin sin)
BigFloat sine_product(const Rational& t, long prec) {
  BigFloat pi = BigFloat::pi(prec);
  Rational ti = 1 / t;
  return sin(pi * bf(t / 2, prec)) * sin(pi * bf(ti / 2, prec));
}

// x^{-m} Q(x) is the terminating replacement; returns Q as a polynomial in x
SPoly degenerate_poly(int m) {
  BigInt f3m, fm1, f2m1, f2m;
  mpz_fac_ui(f3m.get_mpz_t(), 3 * m);
  mpz_fac_ui(fm1.get_mpz_t(), m - 1);
  mpz_fac_ui(f2m1.get_mpz_t(), 2 * m - 1);
  mpz_fac_ui(f2m.get_mpz_t(), 2 * m);
  Rational K = Rational(f3m * fm1) / Rational(f2m1 * f2m);
  K.canonicalize();
  Rational sgnm = (m % 2) ? Rational(-1) : Rational(1);
  SPoly omx(std::vector<GaussRational>{GaussRational(1), GaussRational(-1)});
  auto power = [](const SPoly& p, int e) {
    SPoly r(GaussRational(1));
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
  };
  SPoly Q;
  Rational binom = 1, up = 1, lowm = 1, lowp = 1;
  for (int n = 0; n <= m; ++n) {
    Rational a = binom * up;
    SPoly xs = SPoly::monomial(GaussRational(1), m - n);
    SPoly term = power(omx, n).scaled(GaussRational(Rational(1 / lowm))) -
                 power(omx, n + 2 * m).scaled(GaussRational(Rational(sgnm * K / (2 * lowp))));
    Q += (xs * term).scaled(GaussRational(a));
    binom = binom * (m - n) / (n + 1);
    up *= (m + 1 + n);
    lowm *= (-2 * m + 1 + n);
    lowp *= (2 * m + 1 + n);
  }
  return Q;
}

}  // namespace

RigidityResult rigidity_scalar(const Rational& t, long prec, CorrelatorOptions opt) {
  RigidityResult res;
  res.t = t;
  if (sgn(t) == 0 || t == 1) throw ExcludedParameter("t = 0 or 1");
  Rational ti = 1 / t;
  if ((t.get_den() == 1 && sgn(t) < 0) || (ti.get_den() == 1 && sgn(ti) < 0))
    throw ExcludedParameter("t^{+-1} is a non-positive integer");
  if (is_minimal_model_ratio(t)) {
    if (!opt.allow_minimal)
      throw ExcludedParameter("t = " + t.get_str() + " is a minimal-model ratio; pass the continuation option to evaluate the formulas anyway");
    res.theorem_applies = false;
    res.notes.push_back("minimal-model ratio: values are the analytic continuation of the formulas, not a rigidity statement");
  }
  if (is_even_integer_ge2(t) || is_even_integer_ge2(ti))
    throw ExcludedParameter("t^{+-1} is an even integer: route A is not defined");

  long wp = prec + 64;
  Rational h = h22_at(t);
  // (x d/dx - 2h/3) on x^{-2h}(1 + O(x)) has leading coefficient -2h - 2h/3
  Rational e0 = -2 * h;
  Rational lead = e0 - 2 * h / 3;
  BigFloat tol = BigFloat::from_long(1, wp);
  mpfr_div_2si(tol.raw(), tol.raw(), prec / 2, MPFR_RNDN);
  BigFloat x0 = bf(rat(7, 10), wp);

  int m = odd_integer_m(t);
  Rational U = ti;
  if (!m) {
    m = odd_integer_m(ti);
    U = t;
  }
  res.degenerate = m > 0;

  BigFloat valueA(wp);
  if (!m) {
    Rational xexp = -2 * h / 3 + (1 - t) / 2 + (1 - ti) / 2;
    Rational yexp = -2 * h - (1 - t) - (1 - ti);
    if (xexp != e0 || yexp != 2 * h / 3) throw RouteMismatch("route A: exponent bookkeeping failed");
    // the other three terms start at x^{-2h + C}, C = t, 1/t, t + 1/t, none zero
    for (const Rational& T : {t, ti}) {
      auto cc = connection_check(bf(T, wp), x0, wp);
      if (!(cc.rel < tol)) throw RouteMismatch("route A: connection formula fails at T = " + T.get_str());
    }
    valueA = bf(lead, wp) * connection_constant(t, wp) * connection_constant(ti, wp);
  } else {
    Rational xexp = -2 * h / 3 - m + (1 - U) / 2;
    if (xexp != e0) throw RouteMismatch("route A: exponent bookkeeping failed (degenerate branch)");
    auto cc = connection_check(bf(U, wp), x0, wp);
    if (!(cc.rel < tol)) throw RouteMismatch("route A: connection formula fails at T = " + U.get_str());
    SPoly Q = degenerate_poly(m);
    // x^{-m} Q(x) must be the terminating replacement of the bad 2F1
    {
      Rational xq = rat(7, 10), wq = (1 - xq) / xq;
      auto series = correlator_factor_degenerate(m, 2 * m);  // polynomial part only
      BigFloat poly(wp);
      for (int n = 2 * m - 1; n >= 0; --n) poly = poly * bf(wq, wp) + bf(n <= m ? series[n] : Rational(0), wp);
      BigInt f3m, fm1, f2m1, f2m;
      mpz_fac_ui(f3m.get_mpz_t(), 3 * m);
      mpz_fac_ui(fm1.get_mpz_t(), m - 1);
      mpz_fac_ui(f2m1.get_mpz_t(), 2 * m - 1);
      mpz_fac_ui(f2m.get_mpz_t(), 2 * m);
      Rational K = Rational(f3m * fm1) / Rational(f2m1 * f2m);
      K.canonicalize();
      BigComplex tail = hyp2f1(bf(Rational(3 * m + 1), wp), bf(Rational(m), wp), bf(Rational(2 * m + 1), wp),
                               bf(-wq, wp), wp);
      Rational pref = (m % 2 ? Rational(1) : Rational(-1)) * K / 2;
      BigFloat wpow = bf(1, wp);
      for (int i = 0; i < 2 * m; ++i) wpow = wpow * bf(wq, wp);
      BigComplex direct = BigComplex(poly) + BigComplex(bf(pref, wp) * wpow) * tail;
      GaussRational qv = Q.eval(GaussRational(xq));
      Rational xm = 1;
      for (int i = 0; i < m; ++i) xm *= xq;
      BigComplex viaQ = BigComplex(bf(qv.re / xm, wp));
      if (!(relative_difference(direct, viaQ) < tol))
        throw RouteMismatch("route A: polynomial form of the degenerate branch disagrees with the series form");
    }
    Rational Q0 = Q.coeff(0).re;
    res.notes.push_back("degenerate branch m = " + std::to_string(m) + ", lowest coefficient " + Q0.get_str());
    valueA = bf(lead, wp) * connection_constant(U, wp) * bf(Q0, wp);
  }
  res.routeA = BigComplex(valueA);

  BigFloat d = bf(t, wp) * sine_product(t, wp);
  res.routeB = BigComplex(-(bf((t - 1) * (t - 1), wp) / d));
  res.rel = relative_difference(res.routeA, res.routeB);
  if (!(res.rel < tol))
    throw RouteMismatch("rigidity routes disagree at t = " + t.get_str() + ": " + res.routeA.re.str(30) + " vs " +
                        res.routeB.re.str(30));
  return res;
}

// ---- <v, v> ----------------------------------------------------------------------

VVReport invariant_form_vv() {
  RatFunc c = central_charge(), h = kac_weight(2, 2);
  auto V = ModuleSpec<RatFunc>::verma(c, h);
  auto v = StateVector<RatFunc>::highest(V);
  auto gv = act(Mode::Gmode(-1), v);
  auto back = act(Mode::Gmode(1), gv);
  RatFunc pair = back.coeff(PBWMonomial{});  // <v22, G(1/2)G(-1/2)v22>
  VVReport r;
  // <G_{-m} w', w> = -i (-1)^{|w'|} <w', G_m w>, w' = v22 even
  r.gg = RatFunc(GaussRational(Rational(0), Rational(-1))) * pair;
  // (2 e^{pi i/4} sqrt(t)/(t-1))^2 = i (2s/(t-1))^2
  RatFunc q = RatFunc(2) * RatFunc::s() / (RatFunc::t() - RatFunc(1));
  r.kappa2 = RatFunc::i() * q * q;
  // the cross terms pair vectors of different weight
  r.vv = RatFunc(1) + r.kappa2 * r.gg;
  return r;
}

// ---- intrinsic dimension -----------------------------------------------------------

DimensionResult intrinsic_dimension(const Rational& t, long prec, CorrelatorOptions opt) {
  DimensionResult res;
  res.t = t;
  if (t == 1) throw ExcludedParameter("t = 1: the dimension is 1 because S(2,2) = S(1,1)");
  Rational ti = sgn(t) ? Rational(1 / t) : Rational(0);
  if ((t.get_den() == 1 && t < 1) || (sgn(t) && ti.get_den() == 1 && ti < 1))
    throw ExcludedParameter("t^{+-1} is an integer <= 1");
  if (is_minimal_model_ratio(t)) {
    if (!opt.allow_minimal)
      throw ExcludedParameter("t = " + t.get_str() + " is a minimal-model ratio; pass the continuation option to evaluate the formulas anyway");
    res.theorem_applies = false;
    res.notes.push_back("minimal-model ratio: analytic continuation of the formulas");
  }
  long wp = prec + 64;
  BigFloat tol = BigFloat::from_long(1, wp);
  mpfr_div_2si(tol.raw(), tol.raw(), prec / 2, MPFR_RNDN);

  res.sine = BigComplex(bf(4, wp) * sine_product(t, wp));
  // -q - q^{-1} at q = e^{pi i a}, e^{pi i b}
  Rational a = (t + 1) / 2, b = (ti + 1) / 2;
  auto qdim = [&](const Rational& x) {
    BigComplex q = exp_i_pi(bf(x, wp));
    BigComplex qi = exp_i_pi(bf(-x, wp));
    return -(q + qi);
  };
  res.quantum = qdim(a) * qdim(b);
  res.rel = relative_difference(res.sine, res.quantum);
  if (!(res.rel < tol)) throw RouteMismatch("dimension routes disagree at t = " + t.get_str());

  if (is_even_integer_ge2(t) || is_even_integer_ge2(ti)) {
    res.notes.push_back("rigidity route skipped: route A undefined for even t^{+-1}");
    res.viaRigidity = res.sine;
    res.relRigidity = BigFloat(wp);
    return res;
  }
  CorrelatorOptions o2 = opt;
  o2.allow_minimal = true;
  RigidityResult rig = rigidity_scalar(t, prec, o2);
  GaussRational vv = ratfunc_eval_t(invariant_form_vv().vv, t);
  Rational h = h22_at(t);
  BigFloat ev = bf(-8 * h / 3, wp);  // ev o coev from E(v22,x)v22
  res.viaRigidity = BigComplex(bf(vv.re, wp) * ev / rig.routeA.re);
  res.relRigidity = relative_difference(res.sine, res.viaRigidity);
  if (!(res.relRigidity < tol)) throw RouteMismatch("dimension from the rigidity scalar disagrees at t = " + t.get_str());
  return res;
}

}  // namespace nsv
