// Exact scalar tower: Q, Q(i), Q(i)[s], Q(i)(s), truncated q^(1/2)-series,
// and an MPFR-backed complex type for the analytic layer.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nsv {

using Rational = mpq_class;
using BigInt = mpz_class;

Rational rat(long n, long d = 1);
Rational parse_rational(const std::string& s);  // "p/q", "-3/5", "7"
std::string to_string(const Rational& q);

struct PoleAtPoint : std::domain_error {
  using std::domain_error::domain_error;
};
struct NonInvertibleLeading : std::domain_error {
  using std::domain_error::domain_error;
};

class GaussRational {
 public:
  Rational re, im;

  GaussRational() : re(0), im(0) {}
  GaussRational(long v) : re(v), im(0) {}
  GaussRational(const Rational& r) : re(r), im(0) {}
  GaussRational(const Rational& r, const Rational& i) : re(r), im(i) {}

  static GaussRational I() { return GaussRational(Rational(0), Rational(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  GaussRational inv() const;

  GaussRational operator-() const { return {-re, -im}; }
  GaussRational& operator+=(const GaussRational& o) { re += o.re; im += o.im; return *this; }
  GaussRational& operator-=(const GaussRational& o) { re -= o.re; im -= o.im; return *this; }
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o) { return *this *= o.inv(); }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }
};

std::string to_string(const GaussRational& z);

// Dense univariate polynomial over a field K, coefficients low degree first.
template <class K>
class Poly {
 public:
  std::vector<K> c;

  Poly() = default;
  Poly(const K& k) {
    if (!k.is_zero()) c.push_back(k);
  }
  Poly(long v) : Poly(K(v)) {}
  explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }

  static Poly x() { return monomial(K(1), 1); }
  static Poly monomial(const K& k, int deg) {
    Poly p;
    if (k.is_zero()) return p;
    p.c.assign(deg + 1, K(0));
    p.c[deg] = k;
    return p;
  }

  int degree() const { return int(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  bool is_constant() const { return c.size() <= 1; }
  K coeff(int i) const { return (i >= 0 && i < int(c.size())) ? c[i] : K(0); }
  const K& lead() const { return c.back(); }
  int valuation() const {
    for (int i = 0; i < int(c.size()); ++i)
      if (!c[i].is_zero()) return i;
    return -1;
  }
  bool is_monomial() const { return !c.empty() && valuation() == degree(); }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& k : r.c) k = -k;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), K(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), K(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, K(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i].is_zero()) continue;
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.trim();
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const K& k) const {
    if (k.is_zero()) return Poly();
    Poly r = *this;
    for (auto& x : r.c) x *= k;
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Euclidean division; throws on division by zero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly q, r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.c.assign(a.degree() - b.degree() + 1, K(0));
    K il = K(1) / b.lead();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      int d = r.degree() - b.degree();
      K f = r.lead() * il;
      q.c[d] = f;
      for (int i = 0; i <= b.degree(); ++i) r.c[i + d] -= f * b.c[i];
      r.c.pop_back();  // leading term cancels exactly
      r.trim();
    }
    q.trim();
    return {q, r};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(K(1) / lead());
  }

  static Poly gcd(Poly a, Poly b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    // cheap case: one side is c*x^k
    if (a.is_monomial() || b.is_monomial()) {
      const Poly& m = a.is_monomial() ? a : b;
      const Poly& o = a.is_monomial() ? b : a;
      int k = std::min(m.degree(), o.valuation());
      return monomial(K(1), k);
    }
    if (a.degree() == 0 || b.degree() == 0) return Poly(K(1));
    while (!b.is_zero()) {
      Poly r = a % b;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic();
  }

  template <class V>
  V eval_as(const V& x) const {
    V acc(0);
    for (int i = degree(); i >= 0; --i) acc = acc * x + V(c[i]);
    return acc;
  }
  K eval(const K& x) const { return eval_as<K>(x); }

  Poly derivative() const {
    Poly r;
    if (c.size() <= 1) return r;
    r.c.resize(c.size() - 1, K(0));
    for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * K(long(i));
    r.trim();
    return r;
  }
};

using SPoly = Poly<GaussRational>;
std::string to_string(const SPoly& p, const std::string& var = "s");

// Rational function in s over Q(i); t := s^2.
class RatFunc {
 public:
  RatFunc() : num_(), den_(GaussRational(1)) {}
  RatFunc(long v) : num_(GaussRational(v)), den_(GaussRational(1)) {}
  RatFunc(const Rational& q) : num_(GaussRational(q)), den_(GaussRational(1)) {}
  RatFunc(const GaussRational& q) : num_(q), den_(GaussRational(1)) {}
  RatFunc(const SPoly& p) : num_(p), den_(GaussRational(1)) {}
  RatFunc(SPoly n, SPoly d);

  static RatFunc s();
  static RatFunc t();
  static RatFunc i() { return RatFunc(GaussRational::I()); }

  const SPoly& num() const { return num_; }
  const SPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  GaussRational constant_value() const;  // throws if not constant
  bool is_even() const;                  // only even powers of s appear

  RatFunc operator-() const;
  RatFunc inv() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o) { return *this += -o; }
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o) { return *this *= o.inv(); }
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc conj() const;  // conjugates coefficients, s treated as real
  RatFunc substitute(const RatFunc& x) const;  // f(x)
  RatFunc inv_t() const;                       // f(1/s)

 private:
  SPoly num_, den_;
  void normalize();
};

GaussRational ratfunc_eval(const RatFunc& f, const GaussRational& s0);
// Substitute t = t0 into a function even in s.
GaussRational ratfunc_eval_t(const RatFunc& f, const Rational& t0);
// Pretty form: in t when even in s, else in s.
std::string to_string(const RatFunc& f);

// Truncated series sum_k coeffs[k] q^(offset + k/2), k = 0..order.
class HalfSeries {
 public:
  RatFunc offset;
  std::vector<Rational> coeffs;
  int order = 80;

  HalfSeries() = default;
  explicit HalfSeries(int ord, RatFunc off = RatFunc());

  static HalfSeries one(int ord);
  static HalfSeries monomial(int k, const Rational& c, int ord);  // c q^(k/2)

  Rational at(int k) const { return (k >= 0 && k <= order && k < int(coeffs.size())) ? coeffs[k] : Rational(0); }
  void set(int k, const Rational& v);

  HalfSeries truncated(int ord) const;
  HalfSeries operator-() const;
  friend HalfSeries operator+(const HalfSeries& a, const HalfSeries& b);
  friend HalfSeries operator-(const HalfSeries& a, const HalfSeries& b);
  HalfSeries scaled(const Rational& r) const;
  // First half-step index where the two differ, or -1 (compares up to min order).
  static int first_mismatch(const HalfSeries& a, const HalfSeries& b);
};

HalfSeries series_mul(const HalfSeries& a, const HalfSeries& b);
HalfSeries series_inv(const HalfSeries& a);
// prod_{m>=1} (1 + sign * z q^(step*m + shift))^{power} style helpers live in qseries

// Arbitrary precision real, RAII over mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(long prec = 256);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  static BigFloat from_rational(const Rational& q, long prec);
  static BigFloat from_long(long v, long prec);
  static BigFloat pi(long prec);

  long prec() const { return long(mpfr_get_prec(v_)); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  std::string str(int digits = 0) const;

  BigFloat operator-() const;
  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat gamma(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);  // x > 0
BigFloat sqrt(const BigFloat& x);

class BigComplex {
 public:
  BigFloat re, im;
  explicit BigComplex(long prec = 256) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(const BigFloat& r) : re(r), im(r.prec()) {}

  long prec() const { return re.prec(); }
  BigFloat abs() const;
  BigComplex conj() const { return {re, -im}; }

  BigComplex operator-() const { return {-re, -im}; }
  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  std::string str(int digits = 0) const;
};

BigComplex to_bigcomplex(const GaussRational& z, long prec);
BigComplex to_bigcomplex(const Rational& q, long prec);
BigComplex exp_i_pi(const BigFloat& x);  // e^{i pi x}
// |a-b| / max(|a|,|b|), zero if both vanish
BigFloat relative_difference(const BigComplex& a, const BigComplex& b);

}  // namespace nsv
