// Characters as truncated series in q^(1/2) and the identities they satisfy.
// All orders are counted in half-steps: order 2N reaches q^N.
#pragma once

#include <string>
#include <vector>

#include "nsv/scalars.hpp"

namespace nsv {

struct IdentityFailure : std::runtime_error {
  IdentityFailure(const std::string& what, int half_step) : std::runtime_error(what), mismatch(half_step) {}
  int mismatch;  // first differing exponent, in half-steps
};
struct OffsetNotTIndependent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// prod_{m>=1} (1 + q^(m-1/2))
HalfSeries ns_fermion_product(int order);
// prod_{m>=1} (1 - q^m)
HalfSeries euler_product(int order);

// prod (1+q^(m-1/2))/(1-q^m); the q^h prefactor is not included
HalfSeries verma_character(int order);
// q^{h_{r,s}} (1 - q^{rs/2}) * verma; offset carries h_{r,s}(t)
HalfSeries simple_character_generic(int r, int s, int order);
// q^{n^2/2} (1 - q^{2n+1})/(1 + q^{n+1/2}) * prod; checked against the chain form
HalfSeries simple_character_c32(int n, int order);
// Virasoro at generic l: q^{h_{r,s}(l)} (1 - q^{rs}) / prod (1 - q^m); offset is left at 0
HalfSeries virasoro_character_generic(int r, int s, int order);

// h_{r,s}(l) for the Virasoro algebra with l = (t+1)/2 or (1/t+1)/2
RatFunc virasoro_weight(int r, int s, const RatFunc& l);
RatFunc coset_a();  // (t+1)/2
RatFunc coset_b();  // (1/t+1)/2

struct IdentityReport {
  std::string name;
  int order = 0;  // half-steps compared
  std::vector<std::string> notes;
};

IdentityReport triple_product_check(int order);
IdentityReport c32_character_check(int n, int order);
// h_{r,n}(a) + h_{s,n}(b) - h_{r,s}(t) for the n-th summand, which must be t-independent
Rational branching_offset(int r, int s, int n);
IdentityReport branching_check(int r, int s, int order);

// series in q^(1/2) with Laurent polynomial coefficients in z^2
struct Char2Var {
  int order = 0;
  int zmax = 0;                                // z^(2j) for |j| <= zmax
  std::vector<std::vector<mpz_class>> coeff;  // coeff[k][j + zmax]: q^(k/2) z^(2j)

  Char2Var(int ord, int zm);
  mpz_class at(int k, int j) const;
  void add(int k, int j, const mpz_class& v);
  // multiply by (1 + z^(2j) q^(k/2))
  void times_binomial(int k, int j);
};

IdentityReport so3_decomposition_check(int order);

}  // namespace nsv
