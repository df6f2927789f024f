#include "nsv/verma.hpp"

#include <map>
#include <numeric>

namespace nsv {

std::string to_string(const HPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    if (p.c[k].is_zero()) continue;
    std::string coef = to_string(p.c[k]);
    std::string mon = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    std::string term;
    if (mon.empty())
      term = "(" + coef + ")";
    else if (p.c[k] == RatFunc(1))
      term = mon;
    else
      term = "(" + coef + ")*" + mon;
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

RatFunc central_charge() {
  RatFunc t = RatFunc::t();
  return RatFunc(rat(15, 2)) - RatFunc(3) * (t + t.inv());
}

RatFunc kac_weight(int r, int s) {
  RatFunc t = RatFunc::t();
  return RatFunc(rat(r * r - 1, 8)) * t - RatFunc(rat(r * s - 1, 4)) + RatFunc(rat(s * s - 1, 8)) * t.inv();
}

Rational central_charge_at(const Rational& t) {
  if (sgn(t) == 0) throw BadParameter("t = 0");
  return rat(15, 2) - 3 * (t + 1 / t);
}

Rational kac_weight_at(int r, int s, const Rational& t) {
  if (sgn(t) == 0) throw BadParameter("t = 0");
  return rat(r * r - 1, 8) * t - rat(r * s - 1, 4) + rat(s * s - 1, 8) / t;
}

GramMatrix<HPoly> gram_matrix_formal(int deg2, int parity) {
  auto V = ModuleSpec<HPoly>::verma(HPoly(central_charge()), HPoly::x());
  return gram_matrix<HPoly>(V, deg2, parity);
}

GramMatrix<RatFunc> gram_matrix_at(int deg2, int parity, const RatFunc& h) {
  auto V = RSpec::verma(central_charge(), h);
  return gram_matrix<RatFunc>(V, deg2, parity);
}

int root_multiplicity(const HPoly& p, const RatFunc& a) {
  if (p.is_zero()) return -1;
  HPoly lin = HPoly::x() - HPoly(a);
  HPoly cur = p;
  int m = 0;
  while (cur.degree() > 0) {
    auto [q, r] = HPoly::divmod(cur, lin);
    if (!r.is_zero()) break;
    cur = q;
    ++m;
  }
  return m;
}

namespace {

HPoly det_at_degree(int deg2, std::map<int, HPoly>& cache) {
  auto it = cache.find(deg2);
  if (it != cache.end()) return it->second;
  auto g = gram_matrix_formal(deg2, deg2 % 2);
  HPoly d = bareiss_det(g.entries);
  cache.emplace(deg2, d);
  return d;
}

}  // namespace

ReducibilityReport reducibility_check(int bound2) {
  ReducibilityReport rep;
  std::map<int, HPoly> cache;
  for (int r = 1; r <= bound2; ++r)
    for (int s = 1; r * s <= bound2; ++s) {
      if ((r - s) % 2) continue;
      int deg2 = r * s;
      HPoly d = det_at_degree(deg2, cache);
      int m = root_multiplicity(d, kac_weight(r, s));
      if (m < 1)
        throw DivisibilityFailure("(h - h_{" + std::to_string(r) + "," + std::to_string(s) +
                                  "}) does not divide the Gram determinant at degree " + std::to_string(deg2) + "/2");
      rep.found.push_back({r, s, deg2, m});
    }
  for (auto& [d, p] : cache) rep.determinants.push_back({d, p});
  return rep;
}

std::vector<std::pair<int, int>> kac_roots_of_det(int deg2, int rmax) {
  auto g = gram_matrix_formal(deg2, deg2 % 2);
  HPoly d = bareiss_det(g.entries);
  std::vector<std::pair<int, int>> out;
  for (int r = 1; r <= rmax; ++r)
    for (int s = 1; s <= rmax; ++s)
      if (d.eval(kac_weight(r, s)).is_zero()) out.push_back({r, s});
  return out;
}

PBWMonomial g_half_power(int deg2) {
  PBWMonomial m;
  m.lParts.assign(deg2 / 2, 1);
  if (deg2 % 2) m.gParts.push_back(1);
  return m;
}

std::vector<RVec> singular_space(const RSpec::Ptr& V, int deg2) {
  auto basis = weight_basis(*V, deg2, deg2 % 2);
  std::map<std::pair<int, PBWMonomial>, size_t> rowidx;
  std::vector<std::vector<std::pair<size_t, RatFunc>>> cols(basis.size());
  for (size_t j = 0; j < basis.size(); ++j) {
    RVec b = RVec::basis(V, basis[j]);
    int which = 0;
    for (Mode m : {Mode::Gmode(1), Mode::Gmode(3)}) {
      RVec r = act(m, b);
      for (auto& [mono, k] : r.terms) {
        auto key = std::make_pair(which, mono);
        auto it = rowidx.find(key);
        size_t ri = it == rowidx.end() ? rowidx.emplace(key, rowidx.size()).first->second : it->second;
        cols[j].push_back({ri, k});
      }
      ++which;
    }
  }
  Matrix<RatFunc> a(rowidx.size(), std::vector<RatFunc>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    for (auto& [ri, k] : cols[j]) a[ri][j] = k;
  auto ker = kernel(a, basis.size());
  std::vector<RVec> out;
  for (auto& v : ker) {
    RVec w(V);
    for (size_t j = 0; j < basis.size(); ++j) w.add(basis[j], v[j]);
    out.push_back(w);
  }
  return out;
}

RVec singular_vector(const RSpec::Ptr& V, int deg2) {
  auto sp = singular_space(V, deg2);
  if (sp.empty()) throw NoSingularVector("no singular vector at degree " + std::to_string(deg2) + "/2");
  if (sp.size() > 1) throw NonUnique("singular space of dimension " + std::to_string(sp.size()));
  RatFunc lead = sp[0].coeff(g_half_power(deg2));
  if (lead.is_zero()) throw std::logic_error("singular vector has no (G(-1/2))^n component");
  return sp[0].scaled(lead.inv());
}

RVec singular_vector_generic(int r, int s) {
  if (r < 1 || s < 1 || (r - s) % 2) throw BadParameter("need r,s >= 1 with r - s even");
  return singular_vector(RSpec::verma(central_charge(), kac_weight(r, s)), r * s);
}

RVec singular_vector_at(const Rational& t, int r, int s) {
  if (r < 1 || s < 1 || (r - s) % 2) throw BadParameter("need r,s >= 1 with r - s even");
  auto V = RSpec::verma(RatFunc(central_charge_at(t)), RatFunc(kac_weight_at(r, s, t)));
  return singular_vector(V, r * s);
}

namespace {

// columns are coefficient vectors over `basis`
int span_rank(const std::vector<RVec>& vecs, const std::vector<PBWMonomial>& basis) {
  if (vecs.empty()) return 0;
  std::map<PBWMonomial, size_t> idx;
  for (size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = i;
  Matrix<RatFunc> a(vecs.size(), std::vector<RatFunc>(basis.size()));
  for (size_t i = 0; i < vecs.size(); ++i)
    for (auto& [m, k] : vecs[i].terms) a[i][idx.at(m)] = k;
  return int(rank(a, basis.size()));
}

std::vector<RVec> c1_generators(const RSpec::Ptr& V, int deg2) {
  std::vector<RVec> out;
  for (int n = 2; 2 * n <= deg2; ++n)
    for (auto& b : weight_basis(*V, deg2 - 2 * n, deg2 % 2)) out.push_back(act(Mode::Lmode(-n), RVec::basis(V, b)));
  for (int g = 3; g <= deg2; g += 2)
    for (auto& b : weight_basis(*V, deg2 - g, 1 - deg2 % 2)) out.push_back(act(Mode::Gmode(-g), RVec::basis(V, b)));
  return out;
}

std::vector<CodimRow> c1_rows(const RSpec::Ptr& V, int max_deg2, const RVec* sing, int sing_deg2) {
  std::vector<CodimRow> rows;
  for (int d = 0; d <= max_deg2; ++d) {
    auto basis = weight_basis(*V, d, d % 2);
    auto gens = c1_generators(V, d);
    if (sing && d >= sing_deg2) {
      int par = (d - sing_deg2) % 2;
      for (auto& b : weight_basis(*V, d - sing_deg2, par)) {
        std::vector<Mode> word;
        for (int n : b.lParts) word.push_back(Mode::Lmode(-n));
        for (int g : b.gParts) word.push_back(Mode::Gmode(-g));
        gens.push_back(act_word(word, *sing));
      }
    }
    int dim = int(basis.size());
    rows.push_back({d, dim, dim - span_rank(gens, basis)});
  }
  return rows;
}

}  // namespace

std::vector<CodimRow> c1_codim_verma(const RSpec::Ptr& V, int max_deg2) { return c1_rows(V, max_deg2, nullptr, 0); }

std::vector<CodimRow> c1_codim_quotient(const RSpec::Ptr& V, const RVec& sing, int sing_deg2, int max_deg2) {
  return c1_rows(V, max_deg2, &sing, sing_deg2);
}

std::vector<CodimRow> c1_codim_vacuum(const RSpec::Ptr& S, int max_deg2) { return c1_rows(S, max_deg2, nullptr, 0); }

// --- embedding diagrams ----------------------------------------------------

std::string shape_name(DiagramShape s) {
  switch (s) {
    case DiagramShape::SingleArrow: return "single-arrow";
    case DiagramShape::Chain: return "chain";
    case DiagramShape::BraidedDouble: return "braided-double";
    case DiagramShape::FiniteChain: return "finite-chain";
    case DiagramShape::FiniteBraided: return "finite-braided";
  }
  return "?";
}

std::pair<long, long> normalize_pq(const Rational& abs_t) {
  long P = abs_t.get_num().get_si(), Q = abs_t.get_den().get_si();
  if ((P - Q) % 2) return {2 * P, 2 * Q};
  return {P, Q};
}

namespace {

using RS = std::pair<int, int>;

struct Family {
  bool braided = false;
  std::vector<std::vector<RS>> layers;  // layer 0 is the top
};

// layer k of each family from the positive rational case
RS braided_node(int p, int q, int r, int s, int k, bool lower) {
  bool odd = k % 2;
  if (lower) return {(k + 1) * q - r, odd ? s : p - s};
  return {k * q + r, odd ? p - s : s};
}

std::vector<Family> positive_families(int p, int q, int layers) {
  std::vector<Family> fams;
  for (int r = 1; r < q; ++r)
    for (int s = 1; s < p; ++s) {
      Family f;
      f.braided = true;
      f.layers.push_back({{r, s}});
      for (int k = 1; k < layers; ++k)
        f.layers.push_back({braided_node(p, q, r, s, k, true), braided_node(p, q, r, s, k, false)});
      fams.push_back(f);
    }
  for (int s = 1; s < p; ++s) {
    Family f;
    for (int k = 0; k < layers; ++k) f.layers.push_back({{(k + 1) * q, k % 2 ? p - s : s}});
    fams.push_back(f);
  }
  for (int r = 1; r < q; ++r) {
    Family f;
    f.layers.push_back({{r, p}});
    for (int i = 1; i < layers; ++i) f.layers.push_back({{i % 2 ? (i + 1) * q + r : (i + 2) * q - r, p}});
    fams.push_back(f);
  }
  for (int i = 1; i <= 2; ++i) {
    if (i == 2 && std::gcd(p, q) != 2) continue;
    Family f;
    for (int k = 0; k < layers; ++k) f.layers.push_back({{(i + 2 * k) * q, p}});
    fams.push_back(f);
  }
  return fams;
}

}  // namespace

EmbeddingDiagram embedding_diagram(const TSpec& ts, int r, int s, const Rational& max_deg) {
  if (r < 1 || s < 1 || (r - s) % 2) throw BadParameter("need r,s >= 1 with r - s even");
  EmbeddingDiagram dg;
  if (ts.generic) {
    dg.shape = DiagramShape::SingleArrow;
    dg.nodes.push_back({true, r, s, kac_weight(r, s), 0});
    dg.nodes.push_back({true, -r, s, kac_weight(-r, s), rat(r * s, 2)});
    dg.edges.push_back({0, 1});
    return dg;
  }
  if (sgn(ts.t) == 0) throw BadParameter("t = 0");
  Rational at = ts.t;
  if (sgn(at) < 0) at = -at;
  auto [p, q] = normalize_pq(at);
  dg.p = int(p);
  dg.q = int(q);
  if (sgn(ts.t) < 0) {
    // node labels are not given for negative t; only the shape
    dg.shape = (r % q != 0 && s % p != 0) ? DiagramShape::FiniteBraided : DiagramShape::FiniteChain;
    dg.nodes.push_back({true, r, s, RatFunc(kac_weight_at(r, s, ts.t)), 0});
    return dg;
  }
  Rational h0 = kac_weight_at(r, s, ts.t);
  Rational bound = h0 + max_deg;
  // enough layers to pass the bound: weights grow quadratically in the layer index
  int layers = 4;
  while (layers < 400) {
    Rational w = kac_weight_at(layers * int(q), 1, ts.t);
    if (w > bound + 1) break;
    layers *= 2;
  }
  for (auto& fam : positive_families(int(p), int(q), layers)) {
    for (size_t L = 0; L < fam.layers.size(); ++L)
      for (size_t i = 0; i < fam.layers[L].size(); ++i) {
        auto [fr, fs] = fam.layers[L][i];
        // families keep r - s mod 2 fixed; odd ones are not NS labels
        if ((fr - fs) % 2 != 0 || kac_weight_at(fr, fs, ts.t) != h0) continue;
        // found: the sub-diagram below this node
        bool braided = fam.braided && fam.layers.size() > L + 1 && fam.layers[L + 1].size() == 2;
        dg.shape = braided ? DiagramShape::BraidedDouble : DiagramShape::Chain;
        dg.nodes.push_back({true, r, s, RatFunc(h0), 0});
        std::vector<int> prev{0};
        for (size_t M = L + 1; M < fam.layers.size(); ++M) {
          std::vector<int> cur;
          for (auto [nr, ns] : fam.layers[M]) {
            Rational w = kac_weight_at(nr, ns, ts.t);
            if (w > bound) continue;
            if (!(w > h0)) throw std::logic_error("embedding diagram weights not increasing");
            dg.nodes.push_back({true, nr, ns, RatFunc(w), w - h0});
            cur.push_back(int(dg.nodes.size()) - 1);
          }
          if (cur.empty()) break;
          for (int a : prev)
            for (int b : cur) dg.edges.push_back({a, b});
          prev = cur;
        }
        return dg;
      }
  }
  throw std::logic_error("no embedding diagram contains the requested weight");
}

}  // namespace nsv
