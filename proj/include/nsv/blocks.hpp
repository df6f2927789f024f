// Analytic layer: 2F1 at arbitrary precision, the second-order ODE for the
// Virasoro four-point function, the NS correlator of v, the rigidity scalar and
// the intrinsic dimension of S(2,2).
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nsv/scalars.hpp"

namespace nsv {

struct PoleParameter : std::domain_error {
  using std::domain_error::domain_error;
};
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResidualNonzero : std::runtime_error {
  int index;
  ResidualNonzero(const std::string& what, int i) : std::runtime_error(what), index(i) {}
};
struct ExcludedParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RouteMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool kzero(const Rational& q) { return sgn(q) == 0; }
inline bool kzero(const RatFunc& f) { return f.is_zero(); }

// w^exponent * sum_{k} coeffs[k] w^(lo + k); coefficients past the end are unknown.
template <class K>
struct FrobeniusSeries {
  K exponent = K(0);
  int lo = 0;
  std::vector<K> coeffs;

  int hi() const { return lo + int(coeffs.size()); }  // first unknown index
  K at(int n) const { return (n >= lo && n < hi()) ? coeffs[n - lo] : K(0); }

  // power series with known coefficients 0..len-1
  static FrobeniusSeries power(std::vector<K> c) {
    FrobeniusSeries f;
    f.coeffs = std::move(c);
    return f;
  }
  // polynomial, known to index len-1
  static FrobeniusSeries poly(const std::vector<K>& c, int len) {
    std::vector<K> v(len, K(0));
    for (size_t i = 0; i < c.size() && int(i) < len; ++i) v[i] = c[i];
    return power(std::move(v));
  }

  FrobeniusSeries shifted(int k) const {
    FrobeniusSeries r = *this;
    r.lo += k;
    return r;
  }
  FrobeniusSeries scaled(const K& k) const {
    FrobeniusSeries r = *this;
    for (auto& c : r.coeffs) c = c * k;
    return r;
  }
  // d/dw
  FrobeniusSeries derivative() const {
    FrobeniusSeries r;
    r.exponent = exponent;
    r.lo = lo - 1;
    r.coeffs.reserve(coeffs.size());
    for (int i = 0; i < int(coeffs.size()); ++i) r.coeffs.push_back(coeffs[i] * (exponent + K(lo + i)));
    return r;
  }
  friend FrobeniusSeries operator+(const FrobeniusSeries& a, const FrobeniusSeries& b) {
    if (!kzero(K(a.exponent - b.exponent))) throw std::invalid_argument("adding series with different exponents");
    FrobeniusSeries r;
    r.exponent = a.exponent;
    r.lo = std::min(a.lo, b.lo);
    int h = std::min(a.hi(), b.hi());
    for (int n = r.lo; n < h; ++n) r.coeffs.push_back(a.at(n) + b.at(n));
    return r;
  }
  friend FrobeniusSeries operator-(const FrobeniusSeries& a, const FrobeniusSeries& b) {
    return a + b.scaled(K(-1));
  }
  friend FrobeniusSeries operator*(const FrobeniusSeries& a, const FrobeniusSeries& b) {
    FrobeniusSeries r;
    r.exponent = a.exponent + b.exponent;
    r.lo = a.lo + b.lo;
    int h = std::min(a.hi() + b.lo, b.hi() + a.lo);
    r.coeffs.assign(std::max(0, h - r.lo), K(0));
    for (int i = 0; i < int(a.coeffs.size()); ++i) {
      if (kzero(a.coeffs[i])) continue;
      for (int j = 0; j < int(b.coeffs.size()); ++j) {
        int k = i + j;
        if (k >= int(r.coeffs.size())) break;
        if (!kzero(b.coeffs[j])) r.coeffs[k] += a.coeffs[i] * b.coeffs[j];
      }
    }
    return r;
  }
};

// coefficients of 2F1(a, b; c; sign * w) up to w^(len-1), exact; throws PoleParameter
template <class K>
std::vector<K> hyp2f1_coeffs(const K& a, const K& b, const K& c, int len, int sign = 1) {
  std::vector<K> out;
  K term(1);
  for (int n = 0; n < len; ++n) {
    out.push_back(term);
    K den = (c + K(n)) * K(n + 1);
    if (kzero(den)) throw PoleParameter("2F1 lower parameter hits a non-positive integer");
    term = term * (a + K(n)) * (b + K(n)) / den;
    if (sign < 0) term = -term;
  }
  return out;
}

// binomial series (1 + w)^k up to w^(len-1)
template <class K>
std::vector<K> binomial_series(const K& k, int len) {
  std::vector<K> out;
  K term(1);
  for (int n = 0; n < len; ++n) {
    out.push_back(term);
    term = term * (k - K(n)) / K(n + 1);
  }
  return out;
}

// ---- numerics ----------------------------------------------------------

// direct series, |w| < 1
BigComplex hyp2f1(const BigComplex& a, const BigComplex& b, const BigComplex& c, const BigComplex& w, long prec);
BigComplex hyp2f1(const BigFloat& a, const BigFloat& b, const BigFloat& c, const BigFloat& w, long prec);

struct ConnectionCheck {
  BigFloat T, x;
  BigComplex lhs, rhs;
  BigFloat rel;
};
// both sides of the x -> 1 - x connection for 2F1((1+T)/2, (1-T)/2; 2-T; -(1-x)/x), T not an integer
ConnectionCheck connection_check(const BigFloat& T, const BigFloat& x, long prec);

// ---- parameters --------------------------------------------------------

// t = p/q with p,q >= 2, p - q even, gcd((p-q)/2, q) = 1 for some such representation
bool is_minimal_model_ratio(const Rational& t);
// odd integer 2m+1 >= 3, returns m (0 if not)
int odd_integer_m(const Rational& x);
bool is_even_integer_ge2(const Rational& x);

// ---- the ODE -----------------------------------------------------------

struct BpzReport {
  int order = 0;
  std::string leading_exponent;  // of psi_2 in w
  std::string indicial_difference;
  std::vector<std::string> checks;
};
// Exact over Q(l) with l = the formal variable of RatFunc (or any l supplied).
// Throws ResidualNonzero.
BpzReport bpz_check(int order, const RatFunc& l = RatFunc::s());
// residual of the ODE applied to psi = w^rho * g(w); coefficients lo..lo+order-1
FrobeniusSeries<RatFunc> bpz_residual(const FrobeniusSeries<RatFunc>& psi, const RatFunc& l, int order);
// residual of psi = w^rho (1+w)^kappa 2F1(a,b;c;-w) in the ODE, divided by
// w^rho (1+w)^kappa and normalized coefficientwise; zero iff the residual is
std::vector<RatFunc> bpz_residual_factored(const RatFunc& rho, const RatFunc& kappa, const RatFunc& a,
                                           const RatFunc& b, const RatFunc& c, const RatFunc& l, int order);
// psi_2 and psi_1 of the closed form, as series in w = (1-z)/z
FrobeniusSeries<RatFunc> bpz_psi2(const RatFunc& l, int len);
FrobeniusSeries<RatFunc> bpz_psi1(const RatFunc& l, int len);
RatFunc virasoro_h22(const RatFunc& l);  // 3(l-1)^2/(4l)

// ---- the NS correlator -------------------------------------------------

// coefficients of 2F1((1+T)/2, (1-T)/2; 2-T; -w), with the odd-integer
// T = 2m+1 branch replaced by the terminating form
std::vector<Rational> correlator_factor(const Rational& T, int len);
std::vector<Rational> correlator_factor_degenerate(int m, int len);

struct CorrelatorOptions {
  bool allow_minimal = false;  // analytic continuation to minimal-model ratios
};
// w^{-2h} (1+w)^{8h/3} F_t(-w) F_{1/t}(-w), leading coefficient 1
FrobeniusSeries<Rational> ns_correlator_series(const Rational& t, int order, CorrelatorOptions opt = {});
// same with t formal (RatFunc in s, t = s^2); generic branch
FrobeniusSeries<RatFunc> ns_correlator_series_formal(int order);
// generic coefficient of F_T as a rational function of T (formal variable), reduced
std::vector<RatFunc> correlator_factor_formal(int len);

// ---- rigidity and dimension --------------------------------------------

struct RigidityResult {
  Rational t;
  BigComplex routeA, routeB;
  BigFloat rel;
  bool degenerate = false;         // odd-integer branch used for route A
  bool theorem_applies = true;     // false for minimal-model ratios (continuation)
  std::vector<std::string> notes;
};
RigidityResult rigidity_scalar(const Rational& t, long prec, CorrelatorOptions opt = {});

struct DimensionResult {
  Rational t;
  BigComplex sine, quantum, viaRigidity;
  BigFloat rel, relRigidity;
  bool theorem_applies = true;
  std::vector<std::string> notes;
};
DimensionResult intrinsic_dimension(const Rational& t, long prec, CorrelatorOptions opt = {});

struct VVReport {
  RatFunc gg;      // <G(-1/2)v22, G(-1/2)v22>
  RatFunc kappa2;  // square of the coefficient of G(-1/2)v22 in v
  RatFunc vv;
};
// <v, v> with the invariant form of the NS module; exact in Q(i)(s)
VVReport invariant_form_vv();

}  // namespace nsv
