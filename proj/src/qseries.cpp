#include "nsv/qseries.hpp"

#include <sstream>

#include "nsv/verma.hpp"

namespace nsv {

namespace {

// multiply a in place by (1 + sign q^(k/2))
void times_binomial(HalfSeries& a, int k, int sign) {
  for (int i = a.order; i >= k; --i) {
    Rational lower = a.at(i - k);
    if (sgn(lower) != 0) a.coeffs[i] += sign > 0 ? lower : Rational(-lower);
  }
}

void require_equal(const HalfSeries& lhs, const HalfSeries& rhs, const std::string& what) {
  int k = HalfSeries::first_mismatch(lhs, rhs);
  if (k < 0) return;
  std::ostringstream os;
  os << what << ": first mismatch at q^" << to_string(rat(k, 2)) << " (" << to_string(lhs.at(k)) << " vs "
     << to_string(rhs.at(k)) << ")";
  throw IdentityFailure(os.str(), k);
}

// sum_{n in Z} q^{n^2/2}
HalfSeries theta(int order) {
  HalfSeries s(order);
  for (int n = 0; n * n <= order; ++n) s.coeffs[n * n] += n == 0 ? 1 : 2;
  return s;
}

}  // namespace

HalfSeries ns_fermion_product(int order) {
  HalfSeries s = HalfSeries::one(order);
  for (int k = 1; k <= order; k += 2) times_binomial(s, k, +1);
  return s;
}

HalfSeries euler_product(int order) {
  HalfSeries s = HalfSeries::one(order);
  for (int k = 2; k <= order; k += 2) times_binomial(s, k, -1);
  return s;
}

HalfSeries verma_character(int order) { return series_mul(ns_fermion_product(order), series_inv(euler_product(order))); }

HalfSeries simple_character_generic(int r, int s, int order) {
  if (r < 1 || s < 1 || (r - s) % 2) throw BadParameter("need r,s >= 1 with r - s even");
  HalfSeries v = verma_character(order);
  times_binomial(v, r * s, -1);
  v.offset = kac_weight(r, s);
  return v;
}

HalfSeries simple_character_c32(int n, int order) {
  if (n < 0) throw BadParameter("need n >= 0");
  // closed form
  HalfSeries num = HalfSeries::one(order);
  times_binomial(num, 2 * (2 * n + 1), -1);
  HalfSeries den = HalfSeries::one(order);
  times_binomial(den, 2 * n + 1, +1);
  HalfSeries v = verma_character(order);
  HalfSeries closed = series_mul(series_mul(num, series_inv(den)), v);
  // chain form (q^{n^2/2} - q^{(n+1)^2/2}) * verma, relative to q^{n^2/2}
  HalfSeries chain = v;
  times_binomial(chain, 2 * n + 1, -1);
  require_equal(closed, chain, "c = 3/2 character n = " + std::to_string(n));
  closed.offset = RatFunc(rat(n * n, 2));
  return closed;
}

HalfSeries virasoro_character_generic(int r, int s, int order) {
  HalfSeries v = series_inv(euler_product(order));
  times_binomial(v, 2 * r * s, -1);
  return v;
}

RatFunc virasoro_weight(int r, int s, const RatFunc& l) {
  return RatFunc(rat(r * r - 1, 4)) * l - RatFunc(rat(r * s - 1, 2)) + RatFunc(rat(s * s - 1, 4)) * l.inv();
}

RatFunc coset_a() { return (RatFunc::t() + RatFunc(1)) / RatFunc(2); }
RatFunc coset_b() { return (RatFunc::t().inv() + RatFunc(1)) / RatFunc(2); }

IdentityReport triple_product_check(int order) {
  IdentityReport rep{"triple product", order, {}};
  HalfSeries f = ns_fermion_product(order);
  HalfSeries lhs = series_mul(series_mul(euler_product(order), f), f);
  HalfSeries th = theta(order);
  require_equal(lhs, th, "prod (1-q^m)(1+q^(m-1/2))^2 = sum q^(n^2/2)");
  // sum_{n>=1} q^{(n-1)^2/2} (1-q^n)^2 / (1-q^(1/2))
  HalfSeries acc(order);
  for (int n = 1; (n - 1) * (n - 1) <= order; ++n) {
    HalfSeries term = HalfSeries::monomial((n - 1) * (n - 1), 1, order);
    times_binomial(term, 2 * n, -1);
    times_binomial(term, 2 * n, -1);
    acc = acc + term;
  }
  HalfSeries d = HalfSeries::one(order);
  times_binomial(d, 1, -1);
  require_equal(series_mul(acc, series_inv(d)), th, "stepwise sum = sum q^(n^2/2)");
  std::ostringstream os;
  os << "coefficients q^(1/2): " << to_string(th.at(1)) << ", q^2: " << to_string(th.at(4));
  rep.notes.push_back(os.str());
  return rep;
}

IdentityReport c32_character_check(int n, int order) {
  IdentityReport rep{"c = 3/2 character n = " + std::to_string(n), order, {}};
  simple_character_c32(n, order);
  return rep;
}

Rational branching_offset(int r, int s, int n) {
  RatFunc off = virasoro_weight(r, n, coset_a()) + virasoro_weight(s, n, coset_b()) - kac_weight(r, s);
  if (!off.is_constant()) throw OffsetNotTIndependent("offset depends on t for n = " + std::to_string(n));
  Rational sym = off.constant_value().re;
  Rational expect = rat(r + s - 2 * n, 2);
  expect = expect * expect / 2;
  if (sym != expect) throw OffsetNotTIndependent("offset is " + to_string(sym) + ", expected " + to_string(expect));
  return sym;
}

IdentityReport branching_check(int r, int s, int order) {
  if (r < 1 || s < 1 || (r - s) % 2) throw BadParameter("need r,s >= 1 with r - s even");
  IdentityReport rep{"branching (" + std::to_string(r) + "," + std::to_string(s) + ")", order, {}};
  // both sides multiplied by prod (1-q^m)^2
  HalfSeries f = ns_fermion_product(order);
  HalfSeries lhs = series_mul(series_mul(f, f), euler_product(order));
  times_binomial(lhs, r * s, -1);
  HalfSeries rhs(order);
  for (int n = 1;; ++n) {
    Rational off = branching_offset(r, s, n);
    mpz_class k2 = Rational(2 * off).get_num();
    if (n > (r + s) / 2 && k2 > order) break;
    if (k2 > order) continue;
    HalfSeries term = HalfSeries::monomial(int(k2.get_si()), 1, order);
    times_binomial(term, 2 * r * n, -1);
    times_binomial(term, 2 * s * n, -1);
    rhs = rhs + term;
    if (n == 1 || 2 * n == r + s) rep.notes.push_back("offset n=" + std::to_string(n) + ": " + to_string(off));
  }
  require_equal(lhs, rhs, rep.name);
  return rep;
}

Char2Var::Char2Var(int ord, int zm) : order(ord), zmax(zm), coeff(ord + 1, std::vector<mpz_class>(2 * zm + 1)) {}

mpz_class Char2Var::at(int k, int j) const {
  if (k < 0 || k > order || j < -zmax || j > zmax) return 0;
  return coeff[k][j + zmax];
}

void Char2Var::add(int k, int j, const mpz_class& v) {
  if (k < 0 || k > order) return;
  if (j < -zmax || j > zmax) throw std::out_of_range("z-degree outside window");
  coeff[k][j + zmax] += v;
}

void Char2Var::times_binomial(int k, int j) {
  for (int i = order; i >= k; --i)
    for (int z = zmax; z >= -zmax; --z) {
      const mpz_class& lower = coeff[i - k][z + zmax];
      if (lower == 0) continue;
      if (z + j < -zmax || z + j > zmax) throw std::out_of_range("z-degree outside window");
      coeff[i][z + j + zmax] += lower;
    }
}

IdentityReport so3_decomposition_check(int order) {
  IdentityReport rep{"SO(3) decomposition", order, {}};
  // a product of n distinct half-integer modes has weight >= n^2/2, so |z-degree| <= sqrt(order)
  int zm = 1;
  while (zm * zm <= order) ++zm;
  Char2Var lhs(order, zm);
  lhs.add(0, 0, 1);
  for (int k = 1; k <= order; k += 2) {
    lhs.times_binomial(k, 1);
    lhs.times_binomial(k, 0);
    lhs.times_binomial(k, -1);
  }
  Char2Var rhs(order, zm);
  for (int n = 0; n * n <= order; ++n) {
    HalfSeries ch = simple_character_c32(n, order);
    for (int k = 0; k + n * n <= order; ++k) {
      Rational c = ch.at(k);
      if (sgn(c) == 0) continue;
      for (int j = -n; j <= n; ++j) rhs.add(k + n * n, j, c.get_num());
    }
  }
  for (int k = 0; k <= order; ++k)
    for (int j = -zm; j <= zm; ++j)
      if (lhs.at(k, j) != rhs.at(k, j)) {
        std::ostringstream os;
        os << "SO(3) decomposition: mismatch at q^" << to_string(rat(k, 2)) << " z^" << 2 * j;
        throw IdentityFailure(os.str(), k);
      }
  std::ostringstream os;
  os << "coefficient z^0 q^0: " << lhs.at(0, 0) << ", z^2 q^(1/2): " << lhs.at(1, 1);
  rep.notes.push_back(os.str());
  return rep;
}

}  // namespace nsv
