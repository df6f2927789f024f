#include "nsv/scalars.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nsv {

Rational rat(long n, long d) {
  if (d == 0) throw std::domain_error("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw std::invalid_argument("empty rational");
  for (size_t k = 0; k < t.size(); ++k) {
    char ch = t[k];
    bool ok = std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || (k == 0 && (ch == '-' || ch == '+'));
    if (!ok) throw std::invalid_argument("bad rational: " + s);
  }
  if (t[0] == '+') t = t.substr(1);
  auto slash = t.find('/');
  Rational q;
  try {
    if (slash == std::string::npos) {
      q = Rational(BigInt(t));
    } else {
      BigInt n(t.substr(0, slash)), d(t.substr(slash + 1));
      if (d == 0) throw std::invalid_argument("zero denominator: " + s);
      q = Rational(n, d);
      q.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational: " + s);
  }
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

GaussRational GaussRational::inv() const {
  Rational n = norm();
  if (sgn(n) == 0) throw std::domain_error("inverse of zero");
  return {re / n, -im / n};
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = r;
  im = i;
  return *this;
}

std::string to_string(const GaussRational& z) {
  if (sgn(z.im) == 0) return z.re.get_str();
  std::string ims;
  if (z.im == 1)
    ims = "i";
  else if (z.im == -1)
    ims = "-i";
  else
    ims = z.im.get_str() + "*i";
  if (sgn(z.re) == 0) return ims;
  std::string out = "(" + z.re.get_str();
  if (ims[0] != '-') out += "+";
  return out + ims + ")";
}

namespace {

// one signed term "coef*var^k" with sign kept separate
void append_term(std::string& out, const GaussRational& c, int k, const std::string& var) {
  bool neg = false;
  std::string body;
  if (c.is_real()) {
    neg = sgn(c.re) < 0;
    Rational a = neg ? Rational(-c.re) : c.re;
    if (k == 0 || a != 1) body = a.get_str();
  } else if (sgn(c.re) == 0) {
    neg = sgn(c.im) < 0;
    Rational a = neg ? Rational(-c.im) : c.im;
    body = (a == 1) ? "i" : a.get_str() + "*i";
  } else {
    body = to_string(c);
  }
  std::string mon;
  if (k == 1) mon = var;
  if (k > 1) mon = var + "^" + std::to_string(k);
  std::string term = body;
  if (!mon.empty()) term = body.empty() ? mon : body + "*" + mon;
  if (out.empty())
    out = (neg ? "-" : "") + term;
  else
    out += (neg ? "-" : "+") + term;
}

std::string poly_str(const SPoly& p, const std::string& var, int step) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    if (p.c[k].is_zero()) continue;
    append_term(out, p.c[k], k / step, var);
  }
  return out;
}

SPoly even_part_in_t(const SPoly& p) {
  SPoly r;
  for (int k = 0; k <= p.degree(); k += 2) {
    if (r.c.size() < size_t(k / 2 + 1)) r.c.resize(k / 2 + 1, GaussRational(0));
    r.c[k / 2] = p.c[k];
  }
  r.trim();
  return r;
}

bool poly_even(const SPoly& p) {
  for (int k = 1; k <= p.degree(); k += 2)
    if (!p.c[k].is_zero()) return false;
  return true;
}

}  // namespace

std::string to_string(const SPoly& p, const std::string& var) { return poly_str(p, var, 1); }

RatFunc::RatFunc(SPoly n, SPoly d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = SPoly(GaussRational(1));
    return;
  }
  if (den_.degree() > 0) {
    SPoly g = SPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  if (!den_.lead().is_one()) {
    GaussRational il = den_.lead().inv();
    num_ = num_.scaled(il);
    den_ = den_.scaled(il);
  }
}

RatFunc RatFunc::s() { return RatFunc(SPoly::x()); }
RatFunc RatFunc::t() { return RatFunc(SPoly::monomial(GaussRational(1), 2)); }

GaussRational RatFunc::constant_value() const {
  if (!is_constant()) throw std::domain_error("rational function is not constant");
  return num_.is_zero() ? GaussRational(0) : num_.c[0];
}

bool RatFunc::is_even() const { return poly_even(num_) && poly_even(den_); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  RatFunc r;
  r.num_ = den_;
  r.den_ = num_;
  GaussRational il = r.den_.lead().inv();
  r.num_ = r.num_.scaled(il);
  r.den_ = r.den_.scaled(il);
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (den_.degree() > 0) normalize();
    else if (num_.is_zero()) den_ = SPoly(GaussRational(1));
    return *this;
  }
  SPoly g = SPoly::gcd(den_, o.den_);
  SPoly a = den_ / g, b = o.den_ / g;
  num_ = num_ * b + o.num_ * a;
  den_ = den_ * b;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.degree() == 0 && o.den_.degree() == 0) {
    num_ = num_ * o.num_;
    return *this;
  }
  SPoly g1 = SPoly::gcd(num_, o.den_);
  SPoly g2 = SPoly::gcd(o.num_, den_);
  SPoly n = (num_ / g1) * (o.num_ / g2);
  SPoly d = (den_ / g2) * (o.den_ / g1);
  num_ = std::move(n);
  den_ = std::move(d);
  if (!den_.lead().is_one()) {
    GaussRational il = den_.lead().inv();
    num_ = num_.scaled(il);
    den_ = den_.scaled(il);
  }
  return *this;
}

RatFunc RatFunc::conj() const {
  SPoly n = num_, d = den_;
  for (auto& k : n.c) k = k.conj();
  for (auto& k : d.c) k = k.conj();
  return RatFunc(n, d);
}

RatFunc RatFunc::substitute(const RatFunc& x) const {
  return num_.eval_as<RatFunc>(x) / den_.eval_as<RatFunc>(x);
}

RatFunc RatFunc::inv_t() const { return substitute(RatFunc::s().inv()); }

GaussRational ratfunc_eval(const RatFunc& f, const GaussRational& s0) {
  GaussRational d = f.den().eval(s0);
  if (d.is_zero()) throw PoleAtPoint("pole at s = " + to_string(s0));
  return f.num().eval(s0) / d;
}

GaussRational ratfunc_eval_t(const RatFunc& f, const Rational& t0) {
  if (!f.is_even()) throw std::domain_error("function is not even in s; choose a square root");
  SPoly n = even_part_in_t(f.num()), d = even_part_in_t(f.den());
  GaussRational x(t0);
  GaussRational dv = d.eval(x);
  if (dv.is_zero()) throw PoleAtPoint("pole at t = " + t0.get_str());
  return n.eval(x) / dv;
}

std::string to_string(const RatFunc& f) {
  bool even = f.is_even();
  SPoly n = even ? even_part_in_t(f.num()) : f.num();
  SPoly d = even ? even_part_in_t(f.den()) : f.den();
  std::string var = even ? "t" : "s";
  std::string ns = poly_str(n, var, 1);
  if (d.degree() == 0) return ns;
  bool nterms = n.degree() > 0 && std::count_if(n.c.begin(), n.c.end(), [](const GaussRational& z) { return !z.is_zero(); }) > 1;
  bool dterms = std::count_if(d.c.begin(), d.c.end(), [](const GaussRational& z) { return !z.is_zero(); }) > 1;
  std::string out = nterms ? "(" + ns + ")" : ns;
  std::string ds = poly_str(d, var, 1);
  return out + "/" + (dterms ? "(" + ds + ")" : ds);
}

HalfSeries::HalfSeries(int ord, RatFunc off) : offset(std::move(off)), coeffs(ord + 1, Rational(0)), order(ord) {}

HalfSeries HalfSeries::one(int ord) {
  HalfSeries r(ord);
  r.coeffs[0] = 1;
  return r;
}

HalfSeries HalfSeries::monomial(int k, const Rational& c, int ord) {
  HalfSeries r(ord);
  if (k >= 0 && k <= ord) r.coeffs[k] = c;
  return r;
}

void HalfSeries::set(int k, const Rational& v) {
  if (k < 0 || k > order) return;
  if (int(coeffs.size()) <= k) coeffs.resize(order + 1, Rational(0));
  coeffs[k] = v;
}

HalfSeries HalfSeries::truncated(int ord) const {
  HalfSeries r(std::min(ord, order), offset);
  for (int k = 0; k <= r.order; ++k) r.coeffs[k] = at(k);
  return r;
}

HalfSeries HalfSeries::operator-() const { return scaled(-1); }

HalfSeries HalfSeries::scaled(const Rational& a) const {
  HalfSeries r = *this;
  for (auto& c : r.coeffs) c *= a;
  return r;
}

HalfSeries operator+(const HalfSeries& a, const HalfSeries& b) {
  if (a.offset != b.offset) throw std::domain_error("adding series with different offsets");
  HalfSeries r(std::min(a.order, b.order), a.offset);
  for (int k = 0; k <= r.order; ++k) r.coeffs[k] = a.at(k) + b.at(k);
  return r;
}

HalfSeries operator-(const HalfSeries& a, const HalfSeries& b) { return a + (-b); }

int HalfSeries::first_mismatch(const HalfSeries& a, const HalfSeries& b) {
  int ord = std::min(a.order, b.order);
  for (int k = 0; k <= ord; ++k)
    if (a.at(k) != b.at(k)) return k;
  return -1;
}

HalfSeries series_mul(const HalfSeries& a, const HalfSeries& b) {
  HalfSeries r(std::min(a.order, b.order), a.offset + b.offset);
  for (int i = 0; i <= r.order; ++i) {
    const Rational ai = a.at(i);
    if (sgn(ai) == 0) continue;
    for (int j = 0; i + j <= r.order; ++j) {
      const Rational& bj = b.coeffs.size() > size_t(j) ? b.coeffs[j] : Rational(0);
      if (sgn(bj) != 0) r.coeffs[i + j] += ai * bj;
    }
  }
  return r;
}

HalfSeries series_inv(const HalfSeries& a) {
  Rational a0 = a.at(0);
  if (sgn(a0) == 0) throw NonInvertibleLeading("series has zero leading coefficient");
  HalfSeries r(a.order, -a.offset);
  Rational ia = 1 / a0;
  r.coeffs[0] = ia;
  for (int k = 1; k <= a.order; ++k) {
    Rational acc = 0;
    for (int j = 1; j <= k; ++j) {
      Rational aj = a.at(j);
      if (sgn(aj) != 0) acc += aj * r.coeffs[k - j];
    }
    r.coeffs[k] = -ia * acc;
  }
  return r;
}

// BigFloat ------------------------------------------------------------------

BigFloat::BigFloat(long prec) {
  mpfr_init2(v_, std::max<long>(prec, MPFR_PREC_MIN));
  mpfr_set_zero(v_, 1);
}
BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}
BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_rational(const Rational& q, long prec) {
  BigFloat r(prec);
  mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
  return r;
}
BigFloat BigFloat::from_long(long v, long prec) {
  BigFloat r(prec);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}
BigFloat BigFloat::pi(long prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

std::string BigFloat::str(int digits) const {
  if (digits <= 0) digits = int(std::ceil(prec() * 0.30103)) + 1;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

namespace {
long pmax(const BigFloat& a, const BigFloat& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

BigFloat BigFloat::operator-() const {
  BigFloat r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}
BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(pmax(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(pmax(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(pmax(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(pmax(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

#define NSV_UNARY(name, fn)                 \
  BigFloat name(const BigFloat& x) {        \
    BigFloat r(x.prec());                   \
    fn(r.raw(), x.raw(), MPFR_RNDN);        \
    return r;                               \
  }
NSV_UNARY(abs, mpfr_abs)
NSV_UNARY(sin, mpfr_sin)
NSV_UNARY(cos, mpfr_cos)
NSV_UNARY(exp, mpfr_exp)
NSV_UNARY(log, mpfr_log)
NSV_UNARY(gamma, mpfr_gamma)
NSV_UNARY(sqrt, mpfr_sqrt)
#undef NSV_UNARY

BigFloat pow(const BigFloat& x, const BigFloat& y) {
  if (x.sign() <= 0) throw std::domain_error("pow: base must be positive");
  BigFloat r(pmax(x, y));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

BigFloat BigComplex::abs() const {
  BigFloat r(prec());
  mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDN);
  return r;
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigFloat d = b.re * b.re + b.im * b.im;
  if (d.is_zero()) throw std::domain_error("complex division by zero");
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

std::string BigComplex::str(int digits) const {
  if (im.is_zero()) return re.str(digits);
  std::string i = im.str(digits);
  return re.str(digits) + (i[0] == '-' ? "" : "+") + i + "*i";
}

BigComplex to_bigcomplex(const GaussRational& z, long prec) {
  return {BigFloat::from_rational(z.re, prec), BigFloat::from_rational(z.im, prec)};
}
BigComplex to_bigcomplex(const Rational& q, long prec) { return to_bigcomplex(GaussRational(q), prec); }

BigComplex exp_i_pi(const BigFloat& x) {
  BigFloat a = BigFloat::pi(x.prec()) * x;
  return {cos(a), sin(a)};
}

BigFloat relative_difference(const BigComplex& a, const BigComplex& b) {
  BigFloat d = (a - b).abs();
  BigFloat m = a.abs();
  BigFloat mb = b.abs();
  if (m < mb) m = mb;
  if (m.is_zero()) return d;
  return d / m;
}

}  // namespace nsv
