#include "doctest.h"
#include "nsv/verma.hpp"

using namespace nsv;

namespace {

RatFunc T() { return RatFunc::t(); }
RatFunc R(long n, long d = 1) { return RatFunc(rat(n, d)); }
PBWMonomial mono(std::vector<int> l, std::vector<int> g) { return {l, g, {}}; }

}  // namespace

TEST_CASE("kac weights") {
  CHECK(kac_weight(2, 2) == R(3) * (T() - R(1)) * (T() - R(1)) / (R(8) * T()));
  CHECK(kac_weight(1, 1).is_zero());
  CHECK(kac_weight(3, 1) == T() - R(1, 2));
  CHECK(kac_weight(1, 3) == T().inv() - R(1, 2));
  CHECK(kac_weight(3, 3) == T() - R(2) + T().inv());
  for (int r = -4; r <= 4; ++r)
    for (int s = -4; s <= 4; ++s) CHECK(kac_weight(r, s) == kac_weight(-r, -s));
  CHECK(kac_weight_at(2, 2, rat(-3, 5)) == ratfunc_eval_t(kac_weight(2, 2), rat(-3, 5)).re);
  CHECK(ratfunc_eval_t(central_charge(), Rational(1)) == GaussRational(rat(3, 2)));
}

TEST_CASE("gram matrices against hand computations") {
  auto g1 = gram_matrix_formal(1, 1);
  REQUIRE(g1.entries.size() == 1);
  CHECK(g1.entries[0][0] == HPoly::monomial(R(2), 1));
  auto g2 = gram_matrix_formal(2, 0);
  REQUIRE(g2.entries.size() == 1);
  CHECK(g2.basis[0] == mono({1}, {}));
  CHECK(g2.entries[0][0] == HPoly::monomial(R(2), 1));

  // basis {G(-3/2), L(-1)G(-1/2)}:
  // [[2h + 2c/3, 4h], [4h, 2h(2h+1)]]
  auto g3 = gram_matrix_formal(3, 1);
  REQUIRE(g3.basis.size() == 2);
  CHECK(g3.basis[0] == mono({}, {3}));
  HPoly h = HPoly::x();
  HPoly c(central_charge());
  CHECK(g3.entries[0][0] == HPoly(R(2)) * h + c * HPoly(R(2, 3)));
  CHECK(g3.entries[0][1] == HPoly(R(4)) * h);
  CHECK(g3.entries[1][0] == HPoly(R(4)) * h);
  CHECK(g3.entries[1][1] == HPoly(R(2)) * h * (HPoly(R(2)) * h + HPoly(R(1))));
  HPoly d = bareiss_det(g3.entries);
  CHECK(root_multiplicity(d, T() - R(1, 2)) >= 1);
  CHECK(root_multiplicity(d, T().inv() - R(1, 2)) >= 1);
}

TEST_CASE("gram matrices are symmetric") {
  for (int d = 0; d <= 7; ++d) {
    auto g = gram_matrix_formal(d, d % 2);
    for (size_t i = 0; i < g.entries.size(); ++i)
      for (size_t j = 0; j < i; ++j) CHECK(g.entries[i][j] == g.entries[j][i]);
  }
}

TEST_CASE("reducibility locus") {
  auto rep = reducibility_check(4);
  std::vector<std::pair<int, int>> got;
  for (auto& e : rep.found) got.push_back({e.r, e.s});
  std::vector<std::pair<int, int>> expect{{1, 1}, {1, 3}, {2, 2}, {3, 1}};
  std::sort(got.begin(), got.end());
  CHECK(got == expect);
  // the generic degree-1/2 determinant is 2h
  CHECK(rep.determinants.front().second == HPoly::monomial(R(2), 1));
}

TEST_CASE("Kac roots at generic t are exactly the predicted set") {
  for (int deg2 = 1; deg2 <= 6; ++deg2) {
    auto roots = kac_roots_of_det(deg2, 7);
    std::vector<std::pair<int, int>> predicted;
    for (int r = 1; r <= 7; ++r)
      for (int s = 1; s <= 7; ++s)
        if ((r - s) % 2 == 0 && r * s <= deg2) predicted.push_back({r, s});
    CHECK(roots == predicted);
  }
}

TEST_CASE("singular vectors") {
  RVec w11 = singular_vector_generic(1, 1);
  CHECK(w11.terms.size() == 1);
  CHECK(w11.coeff(mono({}, {1})) == R(1));

  RVec w = singular_vector_generic(2, 2);
  RatFunc h = kac_weight(2, 2);
  RVec expect(w.module);
  expect.add(mono({1, 1}, {}), R(1));
  expect.add(mono({2}, {}), -R(4, 3) * h);
  expect.add(mono({}, {3, 1}), R(-1));
  CHECK(w == expect);

  for (auto rs : std::vector<std::pair<int, int>>{{3, 1}, {1, 3}, {1, 5}, {4, 2}}) {
    RVec v = singular_vector_generic(rs.first, rs.second);
    CHECK(v.coeff(g_half_power(rs.first * rs.second)) == R(1));
    for (Mode m : {Mode::Gmode(1), Mode::Gmode(3), Mode::Lmode(1), Mode::Lmode(2)}) CHECK(act(m, v).is_zero());
  }
  // away from the Kac locus there is nothing
  auto V = RSpec::verma(central_charge(), T() / R(5) + R(1, 7));
  CHECK_THROWS_AS(singular_vector(V, 4), NoSingularVector);
}

TEST_CASE("C1 codimension") {
  auto V = RSpec::verma(central_charge(), T() / R(5) + R(1, 7));
  for (auto& row : c1_codim_verma(V, 8)) CHECK(row.codim == 1);

  auto S = RSpec::vacuum(central_charge());
  auto rows = c1_codim_vacuum(S, 8);
  CHECK(rows[0].codim == 1);
  for (size_t d = 1; d < rows.size(); ++d) CHECK(rows[d].codim == 0);
  CHECK(rows[3].dim == 1);  // G(-3/2)1

  auto V22 = RSpec::verma(central_charge(), kac_weight(2, 2));
  RVec w = singular_vector(V22, 4);
  for (auto& row : c1_codim_quotient(V22, w, 4, 7)) CHECK(row.codim == (row.deg2 < 4 ? 1 : 0));
}

TEST_CASE("embedding diagrams") {
  auto g = embedding_diagram(TSpec::gen(), 2, 2);
  CHECK(g.shape == DiagramShape::SingleArrow);
  REQUIRE(g.nodes.size() == 2);
  CHECK(g.nodes[1].degree == 2);
  CHECK(g.nodes[1].weight - g.nodes[0].weight == R(2));

  auto one = embedding_diagram(TSpec::at(1), 1, 1, 13);
  CHECK(one.shape == DiagramShape::Chain);
  std::vector<std::pair<int, int>> labels;
  for (auto& n : one.nodes) labels.push_back({n.r, n.s});
  // S_{2n+1,1} = M_{2n+1,1}/M_{2n+3,1}
  std::vector<std::pair<int, int>> expect{{1, 1}, {3, 1}, {5, 1}, {7, 1}, {9, 1}, {11, 1}};
  CHECK(labels == expect);

  CHECK_THROWS_AS(embedding_diagram(TSpec::at(0), 1, 1), BadParameter);
  auto neg = embedding_diagram(TSpec::at(rat(-3, 5)), 1, 1);
  CHECK(neg.shape == DiagramShape::FiniteBraided);
  auto negc = embedding_diagram(TSpec::at(rat(-3, 5)), 5, 3);
  CHECK(negc.shape == DiagramShape::FiniteChain);
}

TEST_CASE("diagram degrees agree with the singular vector solver") {
  for (Rational t : {Rational(1), Rational(3), rat(1, 3), rat(2, 5), rat(3, 5), Rational(2)}) {
    for (int r = 1; r <= 4; ++r)
      for (int s = 1; s <= 4; ++s) {
        if ((r - s) % 2) continue;
        auto dg = embedding_diagram(TSpec::at(t), r, s, 3);
        std::vector<int> from_diagram;
        for (size_t i = 1; i < dg.nodes.size(); ++i) {
          Rational d2 = dg.nodes[i].degree * 2;
          from_diagram.push_back(int(d2.get_num().get_si()));
        }
        std::sort(from_diagram.begin(), from_diagram.end());
        from_diagram.erase(std::unique(from_diagram.begin(), from_diagram.end()), from_diagram.end());
        auto V = RSpec::verma(RatFunc(central_charge_at(t)), RatFunc(kac_weight_at(r, s, t)));
        std::vector<int> from_solver;
        for (int d2 = 1; d2 <= 6; ++d2)
          if (!singular_space(V, d2).empty()) from_solver.push_back(d2);
        INFO("t=" << t.get_str() << " r=" << r << " s=" << s);
        CHECK(from_diagram == from_solver);
      }
  }
}

TEST_CASE("t = 3 gives chains whose degrees the solver confirms") {
  auto d = embedding_diagram(TSpec::at(3), 1, 1, 4);
  CHECK(d.shape == DiagramShape::Chain);
  REQUIRE(d.nodes.size() >= 3);
  CHECK(d.nodes[1].r == 2);
  CHECK(d.nodes[1].degree == rat(1, 2));
  CHECK(d.nodes[2].degree == rat(5, 2));
}

TEST_CASE("negative t: shapes only, head singular vector present") {
  for (Rational t : {rat(-3, 5), rat(-1, 3), rat(-7, 3)}) {
    for (auto [r, s] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {1, 3}, {3, 1}, {1, 5}}) {
      auto d = embedding_diagram(TSpec::at(t), r, s);
      CHECK(d.nodes.size() == 1);
      CHECK((d.shape == DiagramShape::FiniteChain || d.shape == DiagramShape::FiniteBraided));
      auto V = RSpec::verma(RatFunc(central_charge_at(t)), RatFunc(kac_weight_at(r, s, t)));
      CHECK(!singular_space(V, r * s).empty());
    }
  }
}
