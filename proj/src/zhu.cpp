#include "nsv/zhu.hpp"

#include <sstream>

namespace nsv {

XYPoly XYPoly::mono(int i, int j, const RatFunc& k) {
  XYPoly p;
  p.add(i, j, k);
  return p;
}

RatFunc XYPoly::coeff(int i, int j) const {
  auto it = c.find({i, j});
  return it == c.end() ? RatFunc(0) : it->second;
}

void XYPoly::add(int i, int j, const RatFunc& k) {
  if (k.is_zero()) return;
  auto [it, fresh] = c.try_emplace({i, j}, k);
  if (fresh) return;
  it->second += k;
  if (it->second.is_zero()) c.erase(it);
}

XYPoly& XYPoly::operator+=(const XYPoly& o) {
  for (auto& [e, k] : o.c) add(e.first, e.second, k);
  return *this;
}
XYPoly XYPoly::operator+(const XYPoly& o) const {
  XYPoly r = *this;
  return r += o;
}
XYPoly XYPoly::operator-(const XYPoly& o) const { return *this + o.scaled(RatFunc(-1)); }

XYPoly XYPoly::operator*(const XYPoly& o) const {
  XYPoly r;
  for (auto& [a, ka] : c)
    for (auto& [b, kb] : o.c) r.add(a.first + b.first, a.second + b.second, ka * kb);
  return r;
}

XYPoly XYPoly::scaled(const RatFunc& k) const {
  XYPoly r;
  if (k.is_zero()) return r;
  for (auto& [e, v] : c) r.c[e] = v * k;
  return r;
}

HPoly XYPoly::at_y(const RatFunc& value) const {
  HPoly r;
  for (auto& [e, k] : c) {
    RatFunc w = k;
    for (int j = 0; j < e.second; ++j) w = w * value;
    r = r + HPoly::monomial(w, e.first);
  }
  return r;
}

std::string to_string(const XYPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
    auto [i, j] = it->first;
    std::string mon;
    if (i) mon += i == 1 ? "x" : "x^" + std::to_string(i);
    if (j) mon += (mon.empty() ? "" : "*") + (j == 1 ? std::string("y") : "y^" + std::to_string(j));
    std::string coef = to_string(it->second);
    std::string term = mon.empty() ? "(" + coef + ")" : (it->second == RatFunc(1) ? mon : "(" + coef + ")*" + mon);
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

namespace {

using Memo = std::map<PBWMonomial, BimodElement>;

BimodElement reduce_vec(const RVec& v, Memo& memo);

// monomial = X * rest with X its leftmost mode; every rule lowers the degree
BimodElement reduce_mono(const RSpec::Ptr& V, const PBWMonomial& b, Memo& memo) {
  if (auto it = memo.find(b); it != memo.end()) return it->second;
  BimodElement out;
  if (b.empty()) {
    out.evenPoly = XYPoly(RatFunc(1));
  } else if (b.lParts.empty() && b.gParts == std::vector<int>{1}) {
    out.oddPoly = XYPoly(RatFunc(1));
  } else {
    PBWMonomial rest = b;
    RVec restv(V);
    if (!b.lParts.empty()) {
      int n = b.lParts.front();
      rest.lParts.erase(rest.lParts.begin());
      restv.add(rest, RatFunc(1));
      RatFunc wt = V->h + RatFunc(rat(rest.weight2(), 2));
      XYPoly x = XYPoly::x(), y = XYPoly::y();
      if (n == 1) {
        out = reduce_mono(V, rest, memo).times(x - y - XYPoly(wt));
      } else if (n == 2) {
        out = reduce_mono(V, rest, memo).times(y.scaled(RatFunc(2)) - x + XYPoly(wt));
      } else {
        // (L(-n) + 2L(-n+1) + L(-n+2)) v lies in O(M)
        RVec a = act(Mode::Lmode(-(n - 1)), restv);
        RVec c = act(Mode::Lmode(-(n - 2)), restv);
        out = reduce_vec(a.scaled(RatFunc(-2)) - c, memo);
      }
    } else {
      int m2 = b.gParts.front();
      rest.gParts.erase(rest.gParts.begin());
      restv.add(rest, RatFunc(1));
      // [G(-m) v] = (-1)^(m-1/2) [G(-1/2) v]
      RVec g = act(Mode::Gmode(-1), restv);
      if (((m2 - 1) / 2) % 2) g = g.scaled(RatFunc(-1));
      out = reduce_vec(g, memo);
    }
  }
  memo.emplace(b, out);
  return out;
}

BimodElement reduce_vec(const RVec& v, Memo& memo) {
  BimodElement out;
  for (auto& [b, k] : v.terms) {
    BimodElement e = reduce_mono(v.module, b, memo);
    out.evenPoly += e.evenPoly.scaled(k);
    out.oddPoly += e.oddPoly.scaled(k);
  }
  return out;
}

}  // namespace

BimodElement zhu_reduce(const RVec& v) {
  if (v.module->kind != ModuleKind::NSVerma) throw std::invalid_argument("zhu_reduce needs an NS Verma module");
  Memo memo;
  return reduce_vec(v, memo);
}

Zhu22 zhu_polynomials_22() {
  RVec w = singular_vector_generic(2, 2);
  Zhu22 z;
  z.f = zhu_reduce(w).evenPoly;
  z.g = zhu_reduce(act(Mode::Gmode(-1), w)).oddPoly;
  return z;
}

FactorReport zhu_factor_check(int r, int s) {
  if (r < 1 || s < 1 || (r - s) % 2) throw BadParameter("need r,s >= 1 with r - s even");
  static const Zhu22 z = zhu_polynomials_22();
  FactorReport rep;
  rep.r = r;
  rep.s = s;
  // f and g were computed at h = h_{2,2}; they do not involve h otherwise
  RatFunc hrs = kac_weight(r, s);
  rep.f = z.f.at_y(hrs);
  rep.g = z.g.at_y(hrs);
  rep.fRoots = {kac_weight(r + 1, s + 1), kac_weight(r - 1, s - 1)};
  rep.gRoots = {kac_weight(r + 1, s - 1), kac_weight(r - 1, s + 1)};
  auto lin = [](const RatFunc& a) { return HPoly::x() - HPoly(a); };
  if (rep.f != lin(rep.fRoots.first) * lin(rep.fRoots.second)) {
    std::ostringstream os;
    os << "f(x, h_{" << r << "," << s << "}) = " << to_string(rep.f, "x") << " does not factor as expected";
    throw FactorizationFailure(os.str());
  }
  if (rep.g != lin(rep.gRoots.first) * lin(rep.gRoots.second)) {
    std::ostringstream os;
    os << "g(x, h_{" << r << "," << s << "}) = " << to_string(rep.g, "x") << " does not factor as expected";
    throw FactorizationFailure(os.str());
  }
  return rep;
}

WeightSupport fusion_weight_support(int r, int s) {
  if (r < 1 || s < 1 || (r - s) % 2) throw BadParameter("need r,s >= 1 with r - s even");
  WeightSupport ws;
  auto push = [](std::vector<SupportEntry>& v, int a, int b) {
    if (a >= 1 && b >= 1) v.push_back({a, b, kac_weight(a, b), false});
  };
  push(ws.evenWeights, r + 1, s + 1);
  push(ws.evenWeights, r - 1, s - 1);
  push(ws.oddWeights, r + 1, s - 1);
  push(ws.oddWeights, r - 1, s + 1);
  return ws;
}

std::vector<SupportEntry> WeightSupport::ladders(int parity) const {
  std::vector<SupportEntry> out;
  for (auto e : evenWeights) {
    e.halfShift = parity == 1;
    out.push_back(e);
  }
  for (auto e : oddWeights) {
    e.halfShift = parity == 0;
    out.push_back(e);
  }
  return out;
}

}  // namespace nsv
