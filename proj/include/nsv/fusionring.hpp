// Fusion rules at generic t and at t = 1 (c = 3/2), monodromy phases, Muger center.
#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsv/scalars.hpp"

namespace nsv {

struct SimpleLabel {
  int r = 1, s = 1;
  int parity = 0;  // number of parity reversals, mod 2
  auto operator<=>(const SimpleLabel&) const = default;
  std::string str() const;
  SimpleLabel flipped(int n = 1) const { return {r, s, (parity + n) % 2}; }
};

SimpleLabel parse_label(const std::string& text);

struct FusionSum {
  std::map<SimpleLabel, int> terms;
  bool parity_transported = false;  // an input had odd parity; rule obtained by parity transport
  bool operator==(const FusionSum& o) const { return terms == o.terms; }
  int total() const;
  std::string str() const;
};

struct UnsupportedParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConsistencyFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate(const SimpleLabel& a);
FusionSum fuse_generic(const SimpleLabel& a, const SimpleLabel& b);
// labels S_{2n+1,1} only
FusionSum fuse_c32(const SimpleLabel& a, const SimpleLabel& b);
// t = 1 goes to fuse_c32; every other rational t is rejected
FusionSum fuse_at(const Rational& t, const SimpleLabel& a, const SimpleLabel& b);

// products of sums, extended bilinearly
FusionSum fuse_sums(const FusionSum& x, const FusionSum& y, FusionSum (*f)(const SimpleLabel&, const SimpleLabel&));

// exponent e of the phase exp(pi i e), e = a t + b + c/t with b reduced mod 2 into [-1, 1)
struct PhaseExponent {
  Rational a = 0, b = 0, c = 0;
  static PhaseExponent make(const Rational& a, const Rational& b, const Rational& c);
  bool trivial() const { return sgn(a) == 0 && sgn(b) == 0 && sgn(c) == 0; }
  bool operator==(const PhaseExponent& o) const { return a == o.a && b == o.b && c == o.c; }
  RatFunc as_ratfunc() const;
  std::string str() const;
};

struct PhaseEntry {
  SimpleLabel summand;
  int delta = 0, eps = 0;  // summand is S_{r+delta, s+eps}
  PhaseExponent closed;    // ((r delta - 1)t - (r eps + s delta - 2) + (s eps - 1)/t)/2
  PhaseExponent weights;   // 2(h'' + parity''/2 - h - h_{2,2})
};
// monodromy of a with S_{2,2} on each summand; both routes must agree mod 2
std::vector<PhaseEntry> monodromy_phases(const SimpleLabel& a);

// 2(h'' + p''/2 - h - h') for a summand of a (x) b, where p'' is the relative parity
PhaseExponent summand_exponent(const SimpleLabel& a, const SimpleLabel& b, const SimpleLabel& summand);

struct MugerResult {
  bool central = true;
  std::optional<SimpleLabel> probe, summand;
  PhaseExponent witness;
};
MugerResult muger_center_test(const SimpleLabel& a, int probe_bound);

}  // namespace nsv
