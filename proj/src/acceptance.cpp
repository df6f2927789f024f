#include "nsv/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include "nsv/blocks.hpp"
#include "nsv/coset.hpp"
#include "nsv/fusionring.hpp"
#include "nsv/qseries.hpp"
#include "nsv/verma.hpp"
#include "nsv/zhu.hpp"

namespace nsv {

namespace {

RatFunc R(long n, long d = 1) { return RatFunc(rat(n, d)); }

struct Ctx {
  CriterionResult& res;
  const AcceptanceOptions& opt;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      res.details.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& s) { res.details.push_back(s); }
};

std::vector<SimpleLabel> grid(int n) {
  std::vector<SimpleLabel> out;
  for (int r = 1; r <= n; ++r)
    for (int s = 1; s <= n; ++s)
      if ((r - s) % 2 == 0) out.push_back({r, s, 0});
  return out;
}

FusionSum single(const SimpleLabel& l) {
  FusionSum f;
  f.terms[l] = 1;
  return f;
}

void singular_vector_22(Ctx& c) {
  RVec w = singular_vector_generic(2, 2);
  RatFunc h = kac_weight(2, 2);
  RVec expect(w.module);
  expect.add({{1, 1}, {}, {}}, R(1));
  expect.add({{2}, {}, {}}, -R(4, 3) * h);
  expect.add({{}, {3, 1}, {}}, R(-1));
  c.expect(w == expect, "w_{2,2} = L(-1)^2 - 4/3 h L(-2) - G(-3/2)G(-1/2)");
  c.expect(w.coeff({{1, 1}, {}, {}}) == R(1), "leading coefficient 1");
  for (Mode m : {Mode::Gmode(1), Mode::Gmode(3)}) c.expect(act(m, w).is_zero(), "annihilated by " + m.str());
  c.note(state_str<RatFunc>(w, to_string));
}

void reducibility(Ctx& c) {
  int bound = c.opt.quick ? 6 : 8;
  auto rep = reducibility_check(bound);
  std::vector<std::pair<int, int>> want, got;
  for (int r = 1; r <= bound; ++r)
    for (int s = 1; r * s <= bound; ++s)
      if ((r - s) % 2 == 0) want.push_back({r, s});
  for (auto& e : rep.found) {
    got.push_back({e.r, e.s});
    c.expect(e.multiplicity >= 1, "(h - h_{" + std::to_string(e.r) + "," + std::to_string(e.s) + "}) divides det");
  }
  std::sort(got.begin(), got.end());
  c.expect(got == want, "every (r,s) with rs <= " + std::to_string(bound) + ", r - s even, checked");
  c.note(std::to_string(got.size()) + " labels, determinants to degree " + std::to_string(bound) + "/2");
}

void zhu(Ctx& c) {
  RatFunc h = kac_weight(2, 2);
  auto z = zhu_polynomials_22();
  XYPoly X = XYPoly::x(), Y = XYPoly::y(), d = X - Y;
  XYPoly f = d * d - (X + Y + XYPoly(h / R(2))).scaled(R(2, 3) * h);
  XYPoly g = d * d - (X + Y + XYPoly(h / R(2) - R(1, 4))).scaled(R(2, 3) * h + R(1));
  c.expect(z.f == f, "f_{2,2} closed form");
  c.expect(z.g == g, "g_{2,2} closed form");
  int n = 0;
  for (int r = 1; r <= 6; ++r)
    for (int s = 1; s <= 6; ++s) {
      if ((r - s) % 2) continue;
      auto rep = zhu_factor_check(r, s);  // throws FactorizationFailure
      c.expect(rep.fRoots.first == kac_weight(r + 1, s + 1), "f root h_{r+1,s+1}");
      ++n;
    }
  c.note("f = " + to_string(z.f));
  c.note("g = " + to_string(z.g));
  c.note(std::to_string(n) + " specializations factor");
}

void fusion(Ctx& c) {
  auto g = grid(5);
  long comm = 0, assoc = 0;
  for (auto& a : g)
    for (auto& b : g) {
      c.expect(fuse_generic(a, b) == fuse_generic(b, a), "commutative " + a.str() + " " + b.str());
      ++comm;
    }
  for (auto& a : g)
    for (auto& b : g)
      for (auto& x : g) {
        auto left = fuse_sums(fuse_generic(a, b), single(x), fuse_generic);
        auto right = fuse_sums(single(a), fuse_generic(b, x), fuse_generic);
        if (!(left == right)) c.expect(false, "associative " + a.str() + " " + b.str() + " " + x.str());
        ++assoc;
      }
  FusionSum want;
  for (SimpleLabel l : {SimpleLabel{1, 1, 0}, {1, 3, 1}, {3, 1, 1}, {3, 3, 0}}) want.terms[l] = 1;
  auto s22 = fuse_generic({2, 2, 0}, {2, 2, 0});
  c.expect(s22 == want, "S(2,2) x S(2,2)");
  c.expect(muger_center_test({1, 1, 0}, 5).central, "S(1,1) central");
  c.expect(muger_center_test({1, 1, 1}, 5).central, "Pi S(1,1) central");
  c.note("S(2,2) x S(2,2) = " + s22.str());
  c.note(std::to_string(comm) + " commutativity and " + std::to_string(assoc) + " associativity checks");
}

void characters(Ctx& c) {
  int k = c.opt.quick ? 1 : 2;
  auto tp = triple_product_check(100 * k);
  c.note("triple product to q^" + std::to_string(tp.order / 2));
  for (int n = 0; n <= 4; ++n) c32_character_check(n, 60 * k);
  c.note("c = 3/2 characters n <= 4 to q^" + std::to_string(30 * k));
  for (auto [r, s] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 1}}) branching_check(r, s, 40 * k);
  c.note("branching (1,1), (2,2), (3,1) to q^" + std::to_string(20 * k));
  so3_decomposition_check(40 * k);
  c.note("SO(3) decomposition to q^" + std::to_string(20 * k));
}

void coset(Ctx& c) {
  int cutoff2 = c.opt.quick ? 8 : 10;
  auto rep = verify_commuting_pair(cutoff2, 2);
  c.expect(rep.checks > 0, "commuting pair checks ran");
  c.note(std::to_string(rep.checks) + " relations checked to weight " + std::to_string(cutoff2 / 2));
  auto m = l0_matrices();  // throws MatrixMismatch
  RatFunc h = kac_weight(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c.expect(m.a[i][j] + m.b[i][j] == (i == j ? h + R(1, 2) : R(0)), "L0^a + L0^b = L0 on the weight h + 1/2 space");
  RatFunc e1 = virasoro_weight(2, 1, coset_a()), e3 = virasoro_weight(2, 3, coset_a());
  c.expect(m.a[0][0] + m.a[1][1] == e1 + e3, "trace of L0^a");
  c.expect(m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0] == e1 * e3, "det of L0^a");
  auto hv = hw_vector_2122();
  c.expect(hv.ratio == R(2) * RatFunc::i() * RatFunc::s() / (RatFunc::t() - R(1)), "eigenvector ratio 2i s/(t-1)");
  c.expect(hv.ea == e1 && hv.eb == virasoro_weight(2, 1, coset_b()), "eigenvalues h_{2,1}(a), h_{2,1}(b)");
  c.expect(hw_vector_23().ea == e3, "eigenvalue h_{2,3}(a)");
  const char* weights[] = {"0", "1/2", "2"};
  for (int n = 1; n <= 3; ++n) {
    auto cand = hw_search(n, cutoff2);
    c.expect(cand.size() == 1, std::string("one-dimensional at weight ") + weights[n - 1]);
    if (cand.size() == 1) {
      c.expect(cand[0].ea == virasoro_weight(1, n, coset_a()), "La_0 eigenvalue");
      c.expect(cand[0].eb == virasoro_weight(1, n, coset_b()), "Lb_0 eigenvalue");
    }
  }
}

void blocks(Ctx& c) {
  int order = c.opt.quick ? 40 : 60;
  auto rep = bpz_check(order);
  c.note("ODE residual zero to " + std::to_string(order) + " coefficients; leading exponent " + rep.leading_exponent);
  CorrelatorOptions cont;
  cont.allow_minimal = true;
  long prec = std::max(256L, c.opt.prec);
  for (const Rational& t : {rat(-3, 5), rat(2, 5), rat(7), rat(1, 7), rat(-7, 3)}) {
    auto r = rigidity_scalar(t, prec, cont);
    c.expect(r.rel.to_double() < 1e-25, "rigidity routes at t = " + t.get_str());
    auto d = intrinsic_dimension(t, prec, cont);
    c.expect(d.rel.to_double() < 1e-25 && d.relRigidity.to_double() < 1e-25, "dimension routes at t = " + t.get_str());
    auto di = intrinsic_dimension(1 / t, prec, cont);
    c.expect(relative_difference(d.viaRigidity, di.viaRigidity).to_double() < 1e-25 &&
                 relative_difference(d.quantum, di.quantum).to_double() < 1e-25,
             "t <-> 1/t at t = " + t.get_str());
    std::ostringstream os;
    os << "t = " << t.get_str() << ": rigidity " << r.routeA.re.str(20) << " (rel " << r.rel.to_double()
       << "), dimension " << d.sine.re.str(20) << (r.theorem_applies ? "" : " [continuation]");
    c.note(os.str());
  }
  auto vv = invariant_form_vv();
  c.expect(vv.vv == RatFunc(4), "<v,v> = 4");
  int len = 30;
  auto formal = correlator_factor_formal(len);
  for (int m : {1, 3}) {
    auto deg = correlator_factor_degenerate(m, len);
    bool same = true;
    for (int n = 0; n < len; ++n) {
      GaussRational lim = ratfunc_eval(formal[n], GaussRational(Rational(2 * m + 1)));
      same = same && lim.im == 0 && lim.re == deg[n];
    }
    c.expect(same, "degenerate branch at T = " + std::to_string(2 * m + 1) + " equals the generic limit");
  }
}

void cross(Ctx& c) {
  for (auto& a : grid(4)) {
    auto ws = fusion_weight_support(a.r, a.s);
    std::map<SimpleLabel, int> from_zhu;
    for (auto& e : ws.evenWeights) from_zhu[{e.r, e.s, 0}] += 1;
    for (auto& e : ws.oddWeights) from_zhu[{e.r, e.s, 1}] += 1;
    c.expect(from_zhu == fuse_generic({2, 2, 0}, a).terms, "support of S(2,2) x " + a.str());
  }
  auto V = RSpec::verma(central_charge(), kac_weight(2, 2));
  auto ch = verma_character(16);
  for (int d2 = 0; d2 <= 16; ++d2) {
    long n = long(weight_basis(*V, d2, 0).size() + weight_basis(*V, d2, 1).size());
    c.expect(ch.at(d2) == n, "character coefficient at half-step " + std::to_string(d2));
  }
  c.note("support labels for r,s <= 4; character counts to weight 8");
}

struct Spec {
  const char* name;
  double limit;
  void (*fn)(Ctx&);
};

const Spec kCriteria[] = {
    {"singular vector (2,2)", 1, singular_vector_22},
    {"reducibility locus", 60, reducibility},
    {"Zhu polynomials", 10, zhu},
    {"fusion ring", 30, fusion},
    {"characters", 120, characters},
    {"coset", 180, coset},
    {"blocks", 120, blocks},
    {"cross-module", 60, cross},
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  if (id < 1 || id > 8) throw std::invalid_argument("criterion id must be 1..8");
  const Spec& sp = kCriteria[id - 1];
  CriterionResult res;
  res.id = id;
  res.name = sp.name;
  res.limit = sp.limit;
  Ctx c{res, opt};
  auto t0 = std::chrono::steady_clock::now();
  try {
    sp.fn(c);
  } catch (const std::exception& e) {
    c.ok = false;
    res.error = e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  // the time limits apply to the required sizes only
  bool in_time = !opt.quick || res.seconds < res.limit;
  if (!in_time) res.details.push_back("FAILED: over the time limit");
  res.pass = c.ok && in_time;
  return res;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_done) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 8; ++id) {
    out.push_back(run_criterion(id, opt));
    if (on_done) on_done(out.back());
  }
  return out;
}

}  // namespace nsv
