// Two commuting Virasoro algebras inside S(c(t),0) (x) F(1), and their highest-weight vectors.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nsv/verma.hpp"

namespace nsv {

struct CutoffExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AxiomFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MatrixMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EigenFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// x L^ns + y :psi G: + z L^psi with
//   L^ns = L(-2)1 (x) 1,  :psi G: = -G(-3/2)1 (x) Psi(-1/2)1,  L^psi = 1 (x) (1/2)Psi(-3/2)Psi(-1/2)1
struct QuadField {
  RatFunc ns, psiG, psi;
  QuadField operator+(const QuadField& o) const { return {ns + o.ns, psiG + o.psiG, psi + o.psi}; }
  // the weight 2 state in S(c,0) (x) F(1)
  RVec state(const RSpec::Ptr& vac_fock) const;
};

struct CosetData {
  RatFunc a1, a2, a3, b1, b2, b3;
  QuadField La, Lb;
  RatFunc ca, cb;  // 13 - 6(l + 1/l) at l = a, b
};
// a2 = s/(i(1+s^2)) = -b2 with s = sqrt(t)
CosetData build_LaLb();

// S(c(t),0) (x) F(1) and M(c(t), h_{2,2}) (x) F(1)
RSpec::Ptr vacuum_fock();
RSpec::Ptr verma22_fock();

// weight of a homogeneous vector relative to the top (in half-steps)
int degree2(const RVec& v);

// n-th mode of the field; result must have degree <= cutoff (in half-steps)
RVec mode_action(const QuadField& F, int n, const RVec& v, int cutoff2);

struct CosetReport {
  std::string name;
  long checks = 0;
  std::vector<std::string> notes;
};

// Virasoro relations for La, Lb, their commutation, and La + Lb = L^ns + L^psi,
// on all states up to cutoff2 (half-steps), for modes |m|,|n| <= mode_bound
CosetReport verify_commuting_pair(int cutoff2, int mode_bound = 2);

struct L0Matrices {
  Matrix<RatFunc> a, b;  // column j is the image of v_j, basis v1 = G(-1/2)v (x) 1, v2 = v (x) Psi(-1/2)1
};
L0Matrices l0_matrices();

struct HwVector {
  RVec vec;
  RatFunc ratio;      // coefficient of v1 over coefficient of v2
  RatFunc ea, eb;     // L0 eigenvalues
  std::string phase;  // the e^{+-pi i/4} normalisation, not representable in Q(i)(s)
};
// eigenvector with eigenvalues (h_{2,1}(a), h_{2,1}(b))
HwVector hw_vector_2122();
// eigenvector for h_{2,3}(a)
HwVector hw_vector_23();

struct HwCandidate {
  RVec vec;
  RatFunc ea, eb;  // eigenvalues of La_0, Lb_0
};
// joint kernel of La_1, La_2, Lb_1, Lb_2 at weight (n-1)^2/2 in S(c,0) (x) F(1)
std::vector<HwCandidate> hw_search(int n, int cutoff2);

}  // namespace nsv
