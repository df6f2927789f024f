#include "nsv/coset.hpp"

#include <sstream>

#include "nsv/qseries.hpp"

namespace nsv {

namespace {

RatFunc R(long n, long d = 1) { return RatFunc(rat(n, d)); }

int odd_at_least(int x) { return (x & 1) ? x : x + 1; }

int psi_degree2(const PBWMonomial& b) {
  int d = 0;
  for (int p : b.psiParts) d += p;
  return d;
}

RVec single(const RVec& v, const PBWMonomial& b, const RatFunc& k) {
  RVec out(v.module);
  out.add(b, k);
  return out;
}

// (L^psi)_n = 1/2 sum_{m+k=n} (-m-1/2) :psi_m psi_k:
RVec lpsi_mode(int n, const RVec& v) {
  RVec out(v.module);
  for (auto& [b, k] : v.terms) {
    RVec w = single(v, b, k);
    int f2 = psi_degree2(b);
    int n2 = 2 * n;
    // m < 0: psi_m psi_k with k = n - m <= fock degree
    for (int m2 = odd_at_least(n2 - f2); m2 <= -1; m2 += 2) {
      RatFunc coef = R(-m2 - 1, 4);
      if (coef.is_zero()) continue;
      RVec x = act(Mode::Psimode(m2), act(Mode::Psimode(n2 - m2), w));
      out = out + x.scaled(coef);
    }
    // m > 0: -psi_k psi_m
    for (int m2 = 1; m2 <= f2; m2 += 2) {
      RatFunc coef = R(-m2 - 1, 4);
      RVec x = act(Mode::Psimode(n2 - m2), act(Mode::Psimode(m2), w));
      out = out - x.scaled(coef);
    }
  }
  return out;
}

// (:psi G:)_n = - sum_{r+k=n} (G_r (x) psi_k)
RVec psig_mode(int n, const RVec& v) {
  RVec out(v.module);
  for (auto& [b, k] : v.terms) {
    RVec w = single(v, b, k);
    int f2 = psi_degree2(b);
    int g2 = b.weight2() - f2;
    int n2 = 2 * n;
    // psi_k needs k <= f, G_r needs r <= g (on the state psi_k has produced, of degree g)
    for (int k2 = odd_at_least(n2 - g2); k2 <= f2; k2 += 2) {
      int r2 = n2 - k2;
      out = out - act(Mode::Gmode(r2), act(Mode::Psimode(k2), w));
    }
  }
  return out;
}

}  // namespace

RSpec::Ptr vacuum_fock() {
  static const RSpec::Ptr m = RSpec::tensor(RSpec::vacuum(central_charge()), RSpec::fock());
  return m;
}

RSpec::Ptr verma22_fock() {
  static const RSpec::Ptr m = RSpec::tensor(RSpec::verma(central_charge(), kac_weight(2, 2)), RSpec::fock());
  return m;
}

RVec QuadField::state(const RSpec::Ptr& vf) const {
  RVec out(vf);
  out.add({{2}, {}, {}}, this->ns);
  out.add({{}, {3}, {1}}, -this->psiG);
  out.add({{}, {}, {3, 1}}, this->psi / R(2));
  return out;
}

CosetData build_LaLb() {
  RatFunc t = RatFunc::t(), s = RatFunc::s(), i = RatFunc::i(), one = R(1);
  CosetData d;
  d.a1 = t / (one + t);
  d.a2 = s / (i * (one + t));
  d.a3 = (R(2) - t) / (one + t);
  d.b1 = one / (one + t);
  d.b2 = -d.a2;
  d.b3 = (R(2) * t - one) / (one + t);
  d.La = {d.a1, d.a2, d.a3};
  d.Lb = {d.b1, d.b2, d.b3};
  auto cl = [](const RatFunc& l) { return R(13) - R(6) * (l + l.inv()); };
  d.ca = cl(coset_a());
  d.cb = cl(coset_b());
  return d;
}

int degree2(const RVec& v) {
  if (v.is_zero()) return 0;
  return v.terms.begin()->first.weight2();
}

RVec mode_action(const QuadField& F, int n, const RVec& v, int cutoff2) {
  if (v.is_zero()) return v;
  if (degree2(v) - 2 * n > cutoff2) {
    std::ostringstream os;
    os << "mode " << n << " would leave the cutoff " << to_string(rat(cutoff2, 2));
    throw CutoffExceeded(os.str());
  }
  RVec out(v.module);
  if (!F.ns.is_zero()) out = out + act(Mode::Lmode(n), v).scaled(F.ns);
  if (!F.psiG.is_zero()) out = out + psig_mode(n, v).scaled(F.psiG);
  if (!F.psi.is_zero()) out = out + lpsi_mode(n, v).scaled(F.psi);
  return out;
}

CosetReport verify_commuting_pair(int cutoff2, int mode_bound) {
  CosetData d = build_LaLb();
  auto V = vacuum_fock();
  CosetReport rep{"commuting pair", 0, {}};
  QuadField total{R(1), R(0), R(1)};
  int big = cutoff2 + 4 * mode_bound;
  auto fail = [&](const std::string& what, int m, int n, const PBWMonomial& b) {
    std::ostringstream os;
    os << what << " fails for (m,n) = (" << m << "," << n << ") on " << b.str();
    throw AxiomFailure(os.str());
  };
  for (int deg2 = 0; deg2 <= cutoff2; ++deg2)
    for (int par = 0; par <= 1; ++par)
      for (auto& b : weight_basis(*V, deg2, par)) {
        RVec v = RVec::basis(V, b);
        for (int m = -mode_bound; m <= mode_bound; ++m) {
          RVec sum = mode_action(d.La, m, v, big) + mode_action(d.Lb, m, v, big);
          if (!(sum == mode_action(total, m, v, big))) fail("La + Lb = L^ns + L^psi", m, m, b);
          ++rep.checks;
          for (int n = -mode_bound; n <= mode_bound; ++n) {
            for (int which = 0; which < 2; ++which) {
              const QuadField& L = which ? d.Lb : d.La;
              const RatFunc& c = which ? d.cb : d.ca;
              RVec lhs = mode_action(L, m, mode_action(L, n, v, big), big) -
                         mode_action(L, n, mode_action(L, m, v, big), big);
              RVec rhs = mode_action(L, m + n, v, big).scaled(R(m - n));
              if (m + n == 0) rhs = rhs + v.scaled(c * R(m * m * m - m, 12));
              if (!(lhs == rhs)) fail(which ? "Virasoro relation for Lb" : "Virasoro relation for La", m, n, b);
              ++rep.checks;
            }
            RVec ab = mode_action(d.La, m, mode_action(d.Lb, n, v, big), big) -
                      mode_action(d.Lb, n, mode_action(d.La, m, v, big), big);
            if (!ab.is_zero()) fail("[La_m, Lb_n] = 0", m, n, b);
            ++rep.checks;
          }
        }
      }
  if (!(d.ca + d.cb == central_charge() + R(1, 2))) throw AxiomFailure("c_a + c_b != c + 1/2");
  rep.notes.push_back("c_a = " + to_string(d.ca));
  rep.notes.push_back("c_b = " + to_string(d.cb));
  return rep;
}

L0Matrices l0_matrices() {
  CosetData d = build_LaLb();
  auto V = verma22_fock();
  PBWMonomial v1{{}, {1}, {}}, v2{{}, {}, {1}};
  std::vector<PBWMonomial> basis{v1, v2};
  L0Matrices out;
  for (int which = 0; which < 2; ++which) {
    Matrix<RatFunc> m(2, std::vector<RatFunc>(2, R(0)));
    for (int j = 0; j < 2; ++j) {
      RVec img = mode_action(which ? d.Lb : d.La, 0, RVec::basis(V, basis[j]), 1);
      for (int i = 0; i < 2; ++i) m[i][j] = img.coeff(basis[i]);
      if (img.terms.size() > 2) throw MatrixMismatch("L0 leaves the weight space");
    }
    (which ? out.b : out.a) = m;
  }
  RatFunc h = kac_weight(2, 2);
  auto closed = [&](const RatFunc& x1, const RatFunc& x2, const RatFunc& x3) {
    return Matrix<RatFunc>{{x1 * (h + R(1, 2)), -x2}, {R(2) * x2 * h, x1 * h + x3 / R(2)}};
  };
  if (out.a != closed(d.a1, d.a2, d.a3)) throw MatrixMismatch("[L0^a] differs from the closed form");
  if (out.b != closed(d.b1, d.b2, d.b3)) throw MatrixMismatch("[L0^b] differs from the closed form");
  return out;
}

namespace {

HwVector eigen_check(const RatFunc& ratio, const RatFunc& ea, const RatFunc& eb, const std::string& phase) {
  CosetData d = build_LaLb();
  auto V = verma22_fock();
  HwVector hv{RVec(V), ratio, ea, eb, phase};
  hv.vec.add({{}, {1}, {}}, ratio);
  hv.vec.add({{}, {}, {1}}, R(1));
  if (!(mode_action(d.La, 0, hv.vec, 1) == hv.vec.scaled(ea))) throw EigenFailure("not an La_0 eigenvector");
  if (!(mode_action(d.Lb, 0, hv.vec, 1) == hv.vec.scaled(eb))) throw EigenFailure("not an Lb_0 eigenvector");
  for (int n = 1; n <= 2; ++n)
    if (!mode_action(d.La, n, hv.vec, 1).is_zero() || !mode_action(d.Lb, n, hv.vec, 1).is_zero())
      throw EigenFailure("not annihilated by positive modes");
  return hv;
}

}  // namespace

HwVector hw_vector_2122() {
  RatFunc t = RatFunc::t(), s = RatFunc::s(), i = RatFunc::i();
  return eigen_check(R(2) * i * s / (t - R(1)), virasoro_weight(2, 1, coset_a()), virasoro_weight(2, 1, coset_b()),
                     "2 e^{pi i/4} sqrt(t)/(t-1) v1 + e^{-pi i/4} v2");
}

HwVector hw_vector_23() {
  RatFunc t = RatFunc::t(), s = RatFunc::s(), i = RatFunc::i();
  RatFunc ea = virasoro_weight(2, 3, coset_a());
  RatFunc eb = kac_weight(2, 2) + R(1, 2) - ea;
  return eigen_check(R(-2) * i * s / (R(3) * (t - R(1))), ea, eb, "");
}

std::vector<HwCandidate> hw_search(int n, int cutoff2) {
  if (n < 1) throw BadParameter("need n >= 1");
  int w2 = (n - 1) * (n - 1);
  if (w2 > cutoff2) throw CutoffExceeded("weight (n-1)^2/2 is above the cutoff");
  CosetData d = build_LaLb();
  auto V = vacuum_fock();
  std::vector<HwCandidate> out;
  for (int par = 0; par <= 1; ++par) {
    auto basis = weight_basis(*V, w2, par);
    if (basis.empty()) continue;
    // rows: coefficients of the images, one block per lowering operator
    Matrix<RatFunc> rows;
    for (const QuadField* L : {&d.La, &d.Lb})
      for (int m = 1; m <= 2; ++m) {
        std::vector<RVec> imgs;
        std::map<PBWMonomial, size_t> idx;
        for (auto& b : basis) {
          imgs.push_back(mode_action(*L, m, RVec::basis(V, b), cutoff2));
          for (auto& [mb, k] : imgs.back().terms) idx.emplace(mb, idx.size());
        }
        Matrix<RatFunc> block(idx.size(), std::vector<RatFunc>(basis.size(), R(0)));
        for (size_t j = 0; j < basis.size(); ++j)
          for (auto& [mb, k] : imgs[j].terms) block[idx[mb]][j] = k;
        rows.insert(rows.end(), block.begin(), block.end());
      }
    for (auto& kv : kernel(rows, basis.size())) {
      HwCandidate c{RVec(V), R(0), R(0)};
      for (size_t j = 0; j < basis.size(); ++j) c.vec.add(basis[j], kv[j]);
      // read off the L0 eigenvalues from a nonzero coefficient
      RVec a0 = mode_action(d.La, 0, c.vec, cutoff2), b0 = mode_action(d.Lb, 0, c.vec, cutoff2);
      auto& [lead, k] = *c.vec.terms.begin();
      c.ea = a0.coeff(lead) / k;
      c.eb = b0.coeff(lead) / k;
      if (!(a0 == c.vec.scaled(c.ea)) || !(b0 == c.vec.scaled(c.eb)))
        throw EigenFailure("joint kernel vector is not an L0 eigenvector");
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace nsv
