// Zhu algebra A(S(c,0)) = C[x] and the bimodule A(M(c,h)) = C[x,y]v0 + C[x,y]v1.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nsv/verma.hpp"

namespace nsv {

// polynomial in x (left action of [omega]) and y (right action)
struct XYPoly {
  std::map<std::pair<int, int>, RatFunc> c;  // (deg x, deg y) -> coefficient

  XYPoly() = default;
  explicit XYPoly(const RatFunc& k) {
    if (!k.is_zero()) c[{0, 0}] = k;
  }
  static XYPoly x() { return mono(1, 0); }
  static XYPoly y() { return mono(0, 1); }
  static XYPoly mono(int i, int j, const RatFunc& k = RatFunc(1));

  bool is_zero() const { return c.empty(); }
  RatFunc coeff(int i, int j) const;
  void add(int i, int j, const RatFunc& k);
  XYPoly& operator+=(const XYPoly& o);
  XYPoly operator+(const XYPoly& o) const;
  XYPoly operator-(const XYPoly& o) const;
  XYPoly operator*(const XYPoly& o) const;
  XYPoly scaled(const RatFunc& k) const;
  bool operator==(const XYPoly& o) const { return c == o.c; }
  // y -> value, giving a polynomial in x
  HPoly at_y(const RatFunc& value) const;
};

std::string to_string(const XYPoly& p);

struct BimodElement {
  XYPoly evenPoly;  // along v0 = [1]
  XYPoly oddPoly;   // along v1 = [G(-1/2)1]
  bool operator==(const BimodElement& o) const { return evenPoly == o.evenPoly && oddPoly == o.oddPoly; }
  BimodElement operator+(const BimodElement& o) const { return {evenPoly + o.evenPoly, oddPoly + o.oddPoly}; }
  BimodElement times(const XYPoly& p) const { return {p * evenPoly, p * oddPoly}; }
};

// class of v in A(M(c,h)); v must lie in an NS Verma module
BimodElement zhu_reduce(const RVec& v);

// computed from the (2,2) singular vector at generic t
struct Zhu22 {
  XYPoly f, g;
};
Zhu22 zhu_polynomials_22();

struct FactorizationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FactorReport {
  int r = 0, s = 0;
  HPoly f, g;                                  // f(x, h_{r,s}), g(x, h_{r,s})
  std::pair<RatFunc, RatFunc> fRoots, gRoots;  // (h_{r+1,s+1}, h_{r-1,s-1}), (h_{r+1,s-1}, h_{r-1,s+1})
};
FactorReport zhu_factor_check(int r, int s);

struct SupportEntry {
  int r = 0, s = 0;
  RatFunc weight;
  bool halfShift = false;  // ladder h + 1/2 + Z>=0 rather than h + Z>=0
};
struct WeightSupport {
  std::vector<SupportEntry> evenWeights;  // from f: h_{r+1,s+1}, h_{r-1,s-1}
  std::vector<SupportEntry> oddWeights;   // from g: h_{r+1,s-1}, h_{r-1,s+1}
  // ladders for the even and odd parts of a fusion product with S_{2,2}
  std::vector<SupportEntry> ladders(int parity) const;
};
WeightSupport fusion_weight_support(int r, int s);

}  // namespace nsv
