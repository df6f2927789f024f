// Verma modules over the NS algebra: Kac weights, Gram matrices, singular
// vectors, C1 codimension and embedding diagrams.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsv/linalg.hpp"
#include "nsv/nsmodes.hpp"

namespace nsv {

using HPoly = Poly<RatFunc>;  // polynomials in a formal weight h
using RSpec = ModuleSpec<RatFunc>;
using RVec = StateVector<RatFunc>;

std::string to_string(const HPoly& p, const std::string& var = "h");

RatFunc central_charge();                         // 15/2 - 3(t + 1/t)
RatFunc kac_weight(int r, int s);                 // h_{r,s}(t)
Rational central_charge_at(const Rational& t);
Rational kac_weight_at(int r, int s, const Rational& t);

struct DivisibilityFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoSingularVector : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonUnique : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CodimMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <class K>
struct GramMatrix {
  int deg2 = 0;
  int parity = 0;
  std::vector<PBWMonomial> basis;
  Matrix<K> entries;
};

// Shapovalov form <u,v> with L(n)^+ = L(-n), G(m)^+ = G(-m), <1,1> = 1
template <class K>
K shapovalov(const typename ModuleSpec<K>::Ptr& V, const PBWMonomial& u, const PBWMonomial& v) {
  StateVector<K> w = StateVector<K>::basis(V, v);
  // u = A1 ... Ak 1  ->  apply A1^+ first
  std::vector<Mode> word;
  for (int n : u.lParts) word.push_back(Mode::Lmode(-n));
  for (int g : u.gParts) word.push_back(Mode::Gmode(-g));
  for (const Mode& a : word) {
    w = act(Mode{a.kind, -a.twice}, w);
    if (w.is_zero()) return K(0);
  }
  return w.coeff(PBWMonomial{});
}

template <class K>
GramMatrix<K> gram_matrix(const typename ModuleSpec<K>::Ptr& V, int deg2, int parity) {
  GramMatrix<K> g;
  g.deg2 = deg2;
  g.parity = parity;
  g.basis = weight_basis(*V, deg2, parity);
  size_t n = g.basis.size();
  g.entries.assign(n, std::vector<K>(n, K(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) g.entries[i][j] = shapovalov<K>(V, g.basis[i], g.basis[j]);
  return g;
}

// h kept formal: entries in Q(t)[h]
GramMatrix<HPoly> gram_matrix_formal(int deg2, int parity);
GramMatrix<RatFunc> gram_matrix_at(int deg2, int parity, const RatFunc& h);

struct ReducibilityEntry {
  int r = 0, s = 0;
  int deg2 = 0;
  int multiplicity = 0;  // power of (h - h_{r,s}) in the determinant, reported only
};

struct ReducibilityReport {
  std::vector<ReducibilityEntry> found;
  std::vector<std::pair<int, HPoly>> determinants;  // (deg2, det)
};

// every (r,s), r-s even, rs <= bound2: (h - h_{r,s}) | det at degree rs/2
ReducibilityReport reducibility_check(int bound2);
// multiplicity of (h - a) in p
int root_multiplicity(const HPoly& p, const RatFunc& a);
// all (r,s) with 1 <= r,s <= rmax whose weight is a root of det at doubled degree deg2
std::vector<std::pair<int, int>> kac_roots_of_det(int deg2, int rmax);

// joint kernel of G(1/2), G(3/2) at doubled degree deg2
std::vector<RVec> singular_space(const RSpec::Ptr& V, int deg2);
RVec singular_vector(const RSpec::Ptr& V, int deg2);  // normalized, unique
RVec singular_vector_generic(int r, int s);
RVec singular_vector_at(const Rational& t, int r, int s);
// the monomial equal to (G(-1/2))^{deg2}
PBWMonomial g_half_power(int deg2);

struct CodimRow {
  int deg2;
  int dim;
  int codim;
};
// codimension of C1 in each degree 0..max_deg2 for the Verma module
std::vector<CodimRow> c1_codim_verma(const RSpec::Ptr& V, int max_deg2);
// same for the quotient of V by the submodule generated by `sing`
std::vector<CodimRow> c1_codim_quotient(const RSpec::Ptr& V, const RVec& sing, int sing_deg2, int max_deg2);
// vacuum module S(c,0)
std::vector<CodimRow> c1_codim_vacuum(const RSpec::Ptr& S, int max_deg2);

struct TSpec {
  bool generic = true;
  Rational t = 0;
  static TSpec gen() { return {}; }
  static TSpec at(const Rational& q) { return {false, q}; }
};

enum class DiagramShape { SingleArrow, Chain, BraidedDouble, FiniteChain, FiniteBraided };
std::string shape_name(DiagramShape s);

struct DiagramNode {
  bool labelled = true;
  int r = 0, s = 0;
  RatFunc weight;
  Rational degree = 0;  // weight minus weight of the head
};

struct EmbeddingDiagram {
  DiagramShape shape = DiagramShape::SingleArrow;
  std::vector<DiagramNode> nodes;          // nodes[0] is the head
  std::vector<std::pair<int, int>> edges;  // (source, target): target embeds into source
  int p = 0, q = 0;                        // normalized t = +-p/q, when rational
};

// t = p/q rescaled so that p - q is even
std::pair<long, long> normalize_pq(const Rational& abs_t);

// Nodes are produced up to degree max_deg (rational t) and the infinite
// shapes are truncated there.
EmbeddingDiagram embedding_diagram(const TSpec& ts, int r, int s, const Rational& max_deg = 6);

}  // namespace nsv
