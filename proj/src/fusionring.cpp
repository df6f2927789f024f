#include "nsv/fusionring.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace nsv {

namespace {

// doubled Kac weight split as (t coefficient, constant, 1/t coefficient), times 8
struct KacParts {
  Rational a, b, c;
};
KacParts kac_parts(int r, int s) {
  return {rat(r * r - 1, 8), rat(-2 * (r * s - 1), 8), rat(s * s - 1, 8)};
}

Rational mod2(const Rational& x) {
  // representative in [-1, 1)
  Rational shifted = x + 1;
  mpz_class num = shifted.get_num(), den = 2 * shifted.get_den(), fl;
  mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Rational y = x - 2 * Rational(fl);
  y.canonicalize();
  return y;
}

}  // namespace

std::string SimpleLabel::str() const {
  std::string core = "S(" + std::to_string(r) + "," + std::to_string(s) + ")";
  return parity ? "Pi " + core : core;
}

SimpleLabel parse_label(const std::string& text) {
  // any spelling with "pi" for parity and two integers: "Pi S(1,3)", "pi:3,1", "S(2,2)"
  std::string low = text;
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char ch) { return std::tolower(ch); });
  SimpleLabel l;
  l.parity = low.find("pi") != std::string::npos ? 1 : 0;
  std::vector<int> nums;
  for (size_t i = 0; i < low.size();) {
    if (std::isdigit(static_cast<unsigned char>(low[i]))) {
      size_t j = i;
      while (j < low.size() && std::isdigit(static_cast<unsigned char>(low[j]))) ++j;
      nums.push_back(std::stoi(low.substr(i, j - i)));
      i = j;
    } else {
      ++i;
    }
  }
  if (nums.size() != 2) throw std::invalid_argument("cannot parse label '" + text + "'");
  l.r = nums[0];
  l.s = nums[1];
  validate(l);
  return l;
}

void validate(const SimpleLabel& a) {
  if (a.r < 1 || a.s < 1 || (a.r - a.s) % 2 != 0 || a.parity < 0 || a.parity > 1)
    throw std::invalid_argument("invalid label " + a.str() + ": need r,s >= 1 with r - s even");
}

int FusionSum::total() const {
  int n = 0;
  for (auto& [l, k] : terms) n += k;
  return n;
}

std::string FusionSum::str() const {
  std::string out;
  for (auto& [l, k] : terms) {
    out += out.empty() ? "" : " + ";
    if (k != 1) out += std::to_string(k) + " ";
    out += l.str();
  }
  return out.empty() ? "0" : out;
}

FusionSum fuse_generic(const SimpleLabel& a, const SimpleLabel& b) {
  validate(a);
  validate(b);
  FusionSum out;
  out.parity_transported = a.parity || b.parity;
  for (int r2 = std::abs(a.r - b.r) + 1; r2 <= a.r + b.r - 1; r2 += 2)
    for (int s2 = std::abs(a.s - b.s) + 1; s2 <= a.s + b.s - 1; s2 += 2) {
      int rel = ((a.r + b.r - r2 + a.s + b.s - s2 - 2) / 2) % 2;
      out.terms[{r2, s2, (a.parity + b.parity + rel) % 2}] += 1;
    }
  return out;
}

FusionSum fuse_c32(const SimpleLabel& a, const SimpleLabel& b) {
  validate(a);
  validate(b);
  if (a.s != 1 || b.s != 1) throw UnsupportedParameter("at c = 3/2 only the labels S(2n+1,1) occur");
  int n = (a.r - 1) / 2, n1 = (b.r - 1) / 2;
  FusionSum out;
  out.parity_transported = a.parity || b.parity;
  for (int n2 = std::abs(n - n1); n2 <= n + n1; ++n2)
    out.terms[{2 * n2 + 1, 1, (a.parity + b.parity + n + n1 + n2) % 2}] += 1;
  return out;
}

FusionSum fuse_at(const Rational& t, const SimpleLabel& a, const SimpleLabel& b) {
  if (t == 1) return fuse_c32(a, b);
  throw UnsupportedParameter("fusion rules are only available at irrational t and at t = 1");
}

FusionSum fuse_sums(const FusionSum& x, const FusionSum& y, FusionSum (*f)(const SimpleLabel&, const SimpleLabel&)) {
  FusionSum out;
  out.parity_transported = x.parity_transported || y.parity_transported;
  for (auto& [a, ka] : x.terms)
    for (auto& [b, kb] : y.terms) {
      FusionSum p = f(a, b);
      out.parity_transported = out.parity_transported || p.parity_transported;
      for (auto& [l, k] : p.terms) out.terms[l] += ka * kb * k;
    }
  return out;
}

PhaseExponent PhaseExponent::make(const Rational& a, const Rational& b, const Rational& c) {
  PhaseExponent e;
  e.a = a;
  e.b = mod2(b);
  e.c = c;
  return e;
}

RatFunc PhaseExponent::as_ratfunc() const {
  RatFunc t = RatFunc::t();
  return RatFunc(a) * t + RatFunc(b) + RatFunc(c) * t.inv();
}

std::string PhaseExponent::str() const {
  if (trivial()) return "0";
  std::string out;
  auto part = [&](const Rational& k, const std::string& mon) {
    if (sgn(k) == 0) return;
    if (!out.empty()) out += sgn(k) < 0 ? " - " : " + ";
    else if (sgn(k) < 0) out += "-";
    Rational ak = abs(k);
    if (mon.empty())
      out += to_string(ak);
    else
      out += (ak == 1 ? "" : to_string(ak) + "*") + mon;
  };
  part(a, "t");
  part(b, "");
  part(c, "t^-1");
  return out;
}

PhaseExponent summand_exponent(const SimpleLabel& a, const SimpleLabel& b, const SimpleLabel& summand) {
  KacParts x = kac_parts(summand.r, summand.s), y = kac_parts(a.r, a.s), z = kac_parts(b.r, b.s);
  int rel = ((a.r + b.r - summand.r + a.s + b.s - summand.s - 2) / 2) % 2;
  return PhaseExponent::make(2 * (x.a - y.a - z.a), 2 * (x.b - y.b - z.b) + rel, 2 * (x.c - y.c - z.c));
}

std::vector<PhaseEntry> monodromy_phases(const SimpleLabel& a) {
  validate(a);
  std::vector<PhaseEntry> out;
  SimpleLabel b{2, 2, 0};
  for (int delta : {1, -1})
    for (int eps : {1, -1}) {
      int r2 = a.r + delta, s2 = a.s + eps;
      if (r2 < 1 || s2 < 1) continue;
      PhaseEntry e;
      e.delta = delta;
      e.eps = eps;
      e.summand = {r2, s2, (a.parity + (1 - delta * eps) / 2) % 2};
      e.closed = PhaseExponent::make(rat(a.r * delta - 1, 2), rat(-(a.r * eps + a.s * delta - 2), 2), rat(a.s * eps - 1, 2));
      e.weights = summand_exponent(a, b, e.summand);
      if (!(e.closed == e.weights))
        throw ConsistencyFailure("monodromy routes disagree on " + e.summand.str() + ": " + e.closed.str() + " vs " +
                                 e.weights.str());
      out.push_back(e);
    }
  return out;
}

MugerResult muger_center_test(const SimpleLabel& a, int probe_bound) {
  validate(a);
  MugerResult res;
  std::vector<SimpleLabel> probes{{2, 2, 0}};
  for (int r = 1; r <= probe_bound; ++r)
    for (int s = 1; s <= probe_bound; ++s)
      if ((r - s) % 2 == 0 && !(r == 2 && s == 2)) probes.push_back({r, s, 0});
  for (const SimpleLabel& p : probes) {
    if (p.r == 2 && p.s == 2) {
      for (auto& e : monodromy_phases(a))
        if (!e.closed.trivial()) {
          res.central = false;
          res.probe = p;
          res.summand = e.summand;
          res.witness = e.closed;
          return res;
        }
      continue;
    }
    for (auto& [l, k] : fuse_generic(a, p).terms) {
      PhaseExponent e = summand_exponent(a, p, l);
      if (!e.trivial()) {
        res.central = false;
        res.probe = p;
        res.summand = l;
        res.witness = e;
        return res;
      }
    }
  }
  return res;
}

}  // namespace nsv
