// nsvtool: command-line front end for the library.
// Exit codes: 0 pass/computed, 1 verification failure, 2 invalid input or excluded parameter.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nsv/acceptance.hpp"
#include "nsv/blocks.hpp"
#include "nsv/coset.hpp"
#include "nsv/fusionring.hpp"
#include "nsv/qseries.hpp"
#include "nsv/verma.hpp"
#include "nsv/zhu.hpp"

using json = nlohmann::ordered_json;
using namespace nsv;

namespace {

constexpr const char* kSchema = "nsv-report/1";

struct Invalid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Outcome {
  std::string status = "computed";  // pass | fail | computed
  json payload = json::object();
  std::vector<std::string> text;
  void line(const std::string& s) { text.push_back(s); }
  void fail_if(bool bad, const std::string& why) {
    if (bad) {
      status = "fail";
      text.push_back("FAILED: " + why);
    }
  }
};

// ---- parameter parsing -----------------------------------------------

Rational parse_rational(const std::string& s, const std::string& what) {
  static const std::regex re(R"(\s*([+-]?\d+)(\s*/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw Invalid(what + ": expected p/q, got '" + s + "'");
  BigInt num(m[1].str()), den(m[3].matched ? m[3].str() : "1");
  if (den == 0) throw Invalid(what + ": zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

int half_integer_to_deg2(const std::string& s, const std::string& what) {
  Rational q = parse_rational(s, what) * 2;
  if (q.get_den() != 1 || sgn(q) < 0) throw Invalid(what + " must be a non-negative multiple of 1/2");
  if (!q.get_num().fits_sint_p()) throw Invalid(what + " too large");
  return int(q.get_num().get_si());
}

void require_ns(int r, int s) {
  if (r < 1 || s < 1) throw Invalid("need r, s >= 1");
  if ((r - s) % 2 != 0) throw Invalid("need r - s even (NS sector)");
}

void require_positive(int v, const std::string& what) {
  if (v < 1) throw Invalid(what + " must be positive");
}

long default_precision() {
  if (const char* e = std::getenv("NSV_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end == e || *end != '\0' || v < 64) throw Invalid("NSV_PRECISION must be an integer >= 64");
    return v;
  }
  return 256;
}

std::string hpoly_str(const HPoly& p) { return to_string(p, "h"); }

// HPoly with coefficients in Q(t), specialised at t = t0
HPoly specialize(const HPoly& p, const Rational& t0) {
  std::vector<RatFunc> c;
  for (int i = 0; i <= p.degree(); ++i) c.push_back(RatFunc(ratfunc_eval_t(p.coeff(i), t0)));
  return HPoly(c);
}

// s = branch * sqrt(t0): exact when |t0| is a rational square
struct SValue {
  bool exact = false;
  GaussRational s;
  BigComplex approx;
};

bool rational_sqrt(const Rational& q, Rational& out) {
  if (sgn(q) < 0) return false;
  BigInt n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  out = Rational(sqrt(n), sqrt(d));
  return true;
}

SValue branch_value(const Rational& t0, int branch, long prec) {
  SValue v;
  v.approx = BigComplex(prec);
  Rational a = abs(t0), r;
  bool neg = sgn(t0) < 0;
  if (rational_sqrt(a, r)) {
    v.exact = true;
    v.s = neg ? GaussRational(Rational(0), branch * r) : GaussRational(branch * r);
    v.approx = to_bigcomplex(v.s, prec);
    return v;
  }
  BigFloat m = sqrt(BigFloat::from_rational(a, prec));
  if (branch < 0) m = -m;
  v.approx = neg ? BigComplex(BigFloat(prec), m) : BigComplex(m);
  return v;
}

BigComplex eval_poly(const SPoly& p, const BigComplex& x, long prec) {
  BigComplex acc(prec);
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + to_bigcomplex(p.coeff(i), prec);
  return acc;
}

json eval_at_branch(const RatFunc& f, const SValue& v, long prec) {
  if (v.exact) return to_string(ratfunc_eval(f, v.s));
  BigComplex d = eval_poly(f.den(), v.approx, prec);
  if (d.abs().is_zero()) throw Invalid("pole at the chosen s");
  BigComplex z = eval_poly(f.num(), v.approx, prec) / d;
  return json{{"re", z.re.str()}, {"im", z.im.str()}};
}

std::string brief(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

json series_json(const HalfSeries& h) {
  json c = json::array();
  for (int k = 0; k <= h.order; ++k) c.push_back(h.at(k).get_str());
  return json{{"offset", to_string(h.offset)}, {"variable", "q^(1/2)"}, {"coefficients", c}};
}

std::string head(const HalfSeries& h, int n = 12) {
  std::string s;
  for (int k = 0; k <= std::min(h.order, n); ++k) s += (k ? " " : "") + h.at(k).get_str();
  return s;
}

// ---- subcommands ------------------------------------------------------

struct Args {
  int r = 0, s = 0, n = 0;
  std::string t, degree, parity = "0", label, a, b, ctx, which, check, branch = "+";
  int bound = 0, order = 0, cutoff = 0, max_degree = 0;
  long prec = 0;
  bool allow_minimal = false, quick = false;
};

Outcome cmd_kac(const Args& a) {
  require_ns(a.r, a.s);
  Outcome o;
  RatFunc h = kac_weight(a.r, a.s);
  o.payload["h"] = to_string(h);
  o.payload["c"] = to_string(central_charge());
  o.line("h_{" + std::to_string(a.r) + "," + std::to_string(a.s) + "}(t) = " + to_string(h));
  o.line("c(t) = " + to_string(central_charge()));
  if (!a.t.empty()) {
    Rational t = parse_rational(a.t, "--t");
    if (sgn(t) == 0) throw Invalid("t = 0 is excluded");
    o.payload["h_at_t"] = kac_weight_at(a.r, a.s, t).get_str();
    o.payload["c_at_t"] = central_charge_at(t).get_str();
    o.line("at t = " + t.get_str() + ": h = " + kac_weight_at(a.r, a.s, t).get_str() +
           ", c = " + central_charge_at(t).get_str());
  }
  return o;
}

Outcome cmd_gram(const Args& a) {
  int deg2 = half_integer_to_deg2(a.degree, "--degree");
  int parity = std::stoi(a.parity);
  if (parity != 0 && parity != 1) throw Invalid("--parity must be 0 or 1");
  if (deg2 > 12) throw Invalid("--degree above 6 is not supported");
  Outcome o;
  auto g = gram_matrix_formal(deg2, parity);
  std::optional<Rational> t0;
  if (!a.t.empty()) {
    t0 = parse_rational(a.t, "--t");
    if (sgn(*t0) == 0) throw Invalid("t = 0 is excluded");
  }
  auto show = [&](const HPoly& p) { return hpoly_str(t0 ? specialize(p, *t0) : p); };
  json basis = json::array(), rows = json::array();
  for (auto& m : g.basis) basis.push_back(m.str());
  for (auto& row : g.entries) {
    json r = json::array();
    for (auto& e : row) r.push_back(show(e));
    rows.push_back(r);
  }
  HPoly det = g.basis.empty() ? HPoly(RatFunc(1)) : bareiss_det(g.entries);
  o.payload["basis"] = basis;
  o.payload["matrix"] = rows;
  o.payload["determinant"] = show(det);
  o.line("basis (" + std::to_string(g.basis.size()) + "): " + basis.dump());
  for (auto& r : rows) o.line("  " + r.dump());
  o.line("det = " + show(det));
  if (!t0) {
    json roots = json::array();
    for (auto [r, s] : kac_roots_of_det(deg2, 2 * deg2 + 1))
      roots.push_back({{"r", r}, {"s", s}, {"multiplicity", root_multiplicity(det, kac_weight(r, s))}});
    o.payload["kac_roots"] = roots;
    o.line("Kac roots: " + roots.dump());
  }
  return o;
}

Outcome cmd_reducibility(const Args& a) {
  require_positive(a.bound, "--bound");
  if (a.bound > 10) throw Invalid("--bound above 10 is not supported");
  Outcome o;
  auto rep = reducibility_check(a.bound);
  json found = json::array();
  for (auto& e : rep.found) {
    found.push_back({{"r", e.r}, {"s", e.s}, {"degree", rat(e.deg2, 2).get_str()}, {"multiplicity", e.multiplicity}});
    o.line("(h - h_{" + std::to_string(e.r) + "," + std::to_string(e.s) + "}) divides det at degree " +
           rat(e.deg2, 2).get_str() + " (multiplicity " + std::to_string(e.multiplicity) + ")");
    o.fail_if(e.multiplicity < 1, "no factor for (" + std::to_string(e.r) + "," + std::to_string(e.s) + ")");
  }
  json dets = json::object();
  for (auto& [d2, p] : rep.determinants) dets[rat(d2, 2).get_str()] = hpoly_str(p);
  o.payload["divisors"] = found;
  o.payload["determinants"] = dets;
  if (o.status == "computed") o.status = "pass";
  return o;
}

Outcome cmd_singvec(const Args& a) {
  require_ns(a.r, a.s);
  if (a.r * a.s > 12) throw Invalid("rs above 12 is not supported");
  Outcome o;
  RVec w;
  if (a.t.empty()) {
    w = singular_vector_generic(a.r, a.s);
  } else {
    Rational t = parse_rational(a.t, "--t");
    if (sgn(t) == 0) throw Invalid("t = 0 is excluded");
    w = singular_vector_at(t, a.r, a.s);
  }
  json terms = json::array();
  for (auto& [m, k] : w.terms) terms.push_back({{"monomial", m.str()}, {"coefficient", to_string(k)}});
  o.payload["degree"] = rat(a.r * a.s, 2).get_str();
  o.payload["terms"] = terms;
  o.line("w_{" + std::to_string(a.r) + "," + std::to_string(a.s) + "} = " + state_str<RatFunc>(w, to_string));
  o.fail_if(w.coeff(g_half_power(a.r * a.s)) != RatFunc(1), "leading coefficient is not 1");
  for (Mode m : {Mode::Gmode(1), Mode::Gmode(3)}) o.fail_if(!act(m, w).is_zero(), "not annihilated by " + m.str());
  if (o.status == "computed") o.status = "pass";
  return o;
}

Outcome cmd_c1check(const Args& a) {
  require_positive(a.max_degree, "--max-degree");
  if (a.max_degree > 6) throw Invalid("--max-degree above 6 is not supported");
  int m2 = 2 * a.max_degree;
  Outcome o;
  auto rows_json = [](const std::vector<CodimRow>& rows) {
    json j = json::array();
    for (auto& r : rows) j.push_back({{"degree", rat(r.deg2, 2).get_str()}, {"dim", r.dim}, {"codim", r.codim}});
    return j;
  };
  auto S = RSpec::vacuum(central_charge());
  auto vac = c1_codim_vacuum(S, m2);
  for (auto& r : vac) o.fail_if(r.codim != (r.deg2 == 0 ? 1 : 0), "vacuum module codimension at " + rat(r.deg2, 2).get_str());
  auto V = RSpec::verma(central_charge(), RatFunc::t() / RatFunc(5) + RatFunc(rat(1, 7)));
  auto ver = c1_codim_verma(V, m2);
  for (auto& r : ver) o.fail_if(r.codim != 1, "Verma codimension at " + rat(r.deg2, 2).get_str());
  auto V22 = RSpec::verma(central_charge(), kac_weight(2, 2));
  auto quo = c1_codim_quotient(V22, singular_vector(V22, 4), 4, m2);
  for (auto& r : quo) o.fail_if(r.codim != (r.deg2 < 4 ? 1 : 0), "S(2,2) codimension at " + rat(r.deg2, 2).get_str());
  o.payload["vacuum"] = rows_json(vac);
  o.payload["verma_generic_h"] = rows_json(ver);
  o.payload["simple_2_2"] = rows_json(quo);
  int tv = 0, tq = 0;
  for (auto& r : vac) tv += r.codim;
  for (auto& r : quo) tq += r.codim;
  o.line("vacuum module: total codimension " + std::to_string(tv) + " to degree " + std::to_string(a.max_degree));
  o.line("S(2,2): total codimension " + std::to_string(tq) + "; Verma at generic h: codimension 1 in every degree");
  if (o.status == "computed") o.status = "pass";
  return o;
}

Outcome cmd_diagram(const Args& a) {
  require_ns(a.r, a.s);
  TSpec ts = TSpec::gen();
  if (a.t != "generic") ts = TSpec::at(parse_rational(a.t, "--t"));
  Rational maxd = a.max_degree > 0 ? Rational(a.max_degree) : Rational(6);
  auto d = embedding_diagram(ts, a.r, a.s, maxd);
  Outcome o;
  json nodes = json::array(), edges = json::array();
  for (auto& n : d.nodes) {
    json j{{"degree", n.degree.get_str()}, {"weight", to_string(n.weight)}};
    if (n.labelled) {
      j["r"] = n.r;
      j["s"] = n.s;
    }
    nodes.push_back(j);
  }
  for (auto [x, y] : d.edges) edges.push_back({x, y});
  o.payload["shape"] = shape_name(d.shape);
  if (!ts.generic) o.payload["pq"] = {d.p, d.q};
  o.payload["nodes"] = nodes;
  o.payload["edges"] = edges;
  o.line("shape: " + shape_name(d.shape));
  for (size_t i = 0; i < d.nodes.size(); ++i) {
    auto& n = d.nodes[i];
    o.line("  [" + std::to_string(i) + "] " + (n.labelled ? "(" + std::to_string(n.r) + "," + std::to_string(n.s) + ")" : "(unlabelled)") +
           " degree " + n.degree.get_str());
  }
  o.line("edges: " + edges.dump());
  return o;
}

Outcome cmd_zhu(const Args& a) {
  require_ns(a.r, a.s);
  Outcome o;
  auto z = zhu_polynomials_22();
  auto rep = zhu_factor_check(a.r, a.s);
  o.payload["f22"] = to_string(z.f);
  o.payload["g22"] = to_string(z.g);
  o.payload["f_at_h"] = to_string(rep.f, "x");
  o.payload["g_at_h"] = to_string(rep.g, "x");
  o.payload["f_roots"] = {to_string(rep.fRoots.first), to_string(rep.fRoots.second)};
  o.payload["g_roots"] = {to_string(rep.gRoots.first), to_string(rep.gRoots.second)};
  o.line("f(x,y) = " + to_string(z.f));
  o.line("g(x,y) = " + to_string(z.g));
  o.line("f(x, h_rs) = " + to_string(rep.f, "x") + "  roots " + o.payload["f_roots"].dump());
  o.line("g(x, h_rs) = " + to_string(rep.g, "x") + "  roots " + o.payload["g_roots"].dump());
  o.status = "pass";
  return o;
}

Outcome cmd_support(const Args& a) {
  require_ns(a.r, a.s);
  Outcome o;
  auto ws = fusion_weight_support(a.r, a.s);
  auto entries = [](const std::vector<SupportEntry>& v) {
    json j = json::array();
    for (auto& e : v) j.push_back({{"r", e.r}, {"s", e.s}, {"weight", to_string(e.weight)}, {"half_shift", e.halfShift}});
    return j;
  };
  o.payload["even"] = entries(ws.evenWeights);
  o.payload["odd"] = entries(ws.oddWeights);
  o.line("even part: " + o.payload["even"].dump());
  o.line("odd part:  " + o.payload["odd"].dump());
  return o;
}

Outcome cmd_fuse(const Args& a) {
  SimpleLabel x, y;
  try {
    x = parse_label(a.a);
    y = parse_label(a.b);
  } catch (const std::exception& e) {
    throw Invalid(e.what());
  }
  FusionSum f = a.ctx == "c32" ? fuse_c32(x, y) : fuse_generic(x, y);
  Outcome o;
  json terms = json::array();
  for (auto& [l, k] : f.terms) terms.push_back({{"r", l.r}, {"s", l.s}, {"parity", l.parity}, {"multiplicity", k}});
  o.payload["summands"] = terms;
  o.payload["parity_transported"] = f.parity_transported;
  o.line(x.str() + " x " + y.str() + " = " + f.str());
  if (f.parity_transported) o.line("note: an input has odd parity; rule obtained by parity transport");
  return o;
}

Outcome cmd_muger(const Args& a) {
  SimpleLabel x;
  try {
    x = parse_label(a.label);
  } catch (const std::exception& e) {
    throw Invalid(e.what());
  }
  int bound = a.bound > 0 ? a.bound : 5;
  auto m = muger_center_test(x, bound);
  Outcome o;
  o.payload["central"] = m.central;
  o.payload["probe_bound"] = bound;
  if (!m.central) {
    o.payload["probe"] = m.probe->str();
    o.payload["summand"] = m.summand->str();
    o.payload["witness_exponent"] = m.witness.str();
  }
  json phases = json::array();
  for (auto& p : monodromy_phases(x)) phases.push_back({{"summand", p.summand.str()}, {"exponent", p.closed.str()}});
  o.payload["phases_with_S22"] = phases;
  o.line(x.str() + (m.central ? " is in the Muger center" : " is not in the Muger center"));
  if (!m.central)
    o.line("witness: probe " + m.probe->str() + ", summand " + m.summand->str() + ", phase exp(pi i (" + m.witness.str() + "))");
  return o;
}

Outcome cmd_char(const Args& a) {
  require_positive(a.order, "--order");
  if (a.order > 200) throw Invalid("--order above 200 is not supported");
  int ord = 2 * a.order;
  Outcome o;
  o.status = "pass";
  const std::string& w = a.which;
  if (w == "verma") {
    auto v = verma_character(ord);
    o.payload["series"] = series_json(v);
    o.line("verma: " + head(v) + " ...");
    o.status = "computed";
  } else if (w == "generic") {
    int r = a.r ? a.r : 1, s = a.s ? a.s : 1;
    require_ns(r, s);
    auto v = simple_character_generic(r, s, ord);
    o.payload["series"] = series_json(v);
    o.line("q^(" + to_string(v.offset) + ") * (" + head(v) + " ...)");
    o.status = "computed";
  } else if (w == "c32") {
    if (a.n < 0) throw Invalid("--n must be >= 0");
    auto rep = c32_character_check(a.n, ord);
    o.payload["series"] = series_json(simple_character_c32(a.n, ord));
    o.line(rep.name + ": equal to q^" + std::to_string(a.order));
  } else if (w == "triple") {
    auto rep = triple_product_check(ord);
    o.line(rep.name + ": equal to q^" + std::to_string(a.order));
  } else if (w == "branching") {
    int r = a.r ? a.r : 1, s = a.s ? a.s : 1;
    require_ns(r, s);
    auto rep = branching_check(r, s, ord);
    json offs = json::array();
    for (int n = 1; n <= r + s; ++n) offs.push_back(branching_offset(r, s, n).get_str());
    o.payload["offsets"] = offs;
    o.line(rep.name + ": equal to q^" + std::to_string(a.order));
    for (auto& n : rep.notes) o.line("  " + n);
  } else if (w == "so3") {
    auto rep = so3_decomposition_check(ord);
    o.line(rep.name + ": equal to q^" + std::to_string(a.order));
  }
  o.payload["order"] = a.order;
  return o;
}

Outcome cmd_coset(const Args& a) {
  require_positive(a.cutoff, "--cutoff");
  if (a.cutoff > 6) throw Invalid("--cutoff above 6 is not supported");
  int c2 = 2 * a.cutoff;
  Outcome o;
  std::optional<SValue> sv;
  long prec = a.prec;
  if (!a.t.empty()) {
    Rational t = parse_rational(a.t, "--t");
    if (sgn(t) == 0 || t == -1) throw Invalid("t = 0 and t = -1 are excluded");
    sv = branch_value(t, a.branch == "-" ? -1 : 1, prec);
    o.payload["s"] = sv->exact ? json(to_string(sv->s)) : json{{"re", sv->approx.re.str()}, {"im", sv->approx.im.str()}};
  }
  auto val = [&](const RatFunc& f) -> json {
    json j{{"exact", to_string(f)}};
    if (sv) j["at_t"] = eval_at_branch(f, *sv, prec);
    return j;
  };
  if (a.check == "pair") {
    auto rep = verify_commuting_pair(c2, 2);
    auto d = build_LaLb();
    o.payload["checks"] = rep.checks;
    o.payload["c_a"] = val(d.ca);
    o.payload["c_b"] = val(d.cb);
    o.payload["coefficients"] = {{"a1", val(d.a1)}, {"a2", val(d.a2)}, {"a3", val(d.a3)},
                                 {"b1", val(d.b1)}, {"b2", val(d.b2)}, {"b3", val(d.b3)}};
    o.line("Virasoro relations, mutual commutation and La + Lb = L: " + std::to_string(rep.checks) +
           " checks to weight " + std::to_string(a.cutoff));
    o.line("c_a = " + to_string(d.ca) + ", c_b = " + to_string(d.cb));
    o.status = "pass";
  } else if (a.check == "l0") {
    auto m = l0_matrices();
    auto mat = [&](const Matrix<RatFunc>& x) {
      json j = json::array();
      for (auto& r : x) {
        json row = json::array();
        for (auto& e : r) row.push_back(val(e));
        j.push_back(row);
      }
      return j;
    };
    o.payload["La0"] = mat(m.a);
    o.payload["Lb0"] = mat(m.b);
    RatFunc e1 = virasoro_weight(2, 1, coset_a()), e3 = virasoro_weight(2, 3, coset_a());
    o.payload["eigenvalues_a"] = {val(e1), val(e3)};
    o.fail_if(m.a[0][0] + m.a[1][1] != e1 + e3, "trace of L0^a");
    o.fail_if(m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0] != e1 * e3, "det of L0^a");
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) o.line("La0[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + to_string(m.a[i][j]));
    o.line("eigenvalues h_{2,1}(a) = " + to_string(e1) + ", h_{2,3}(a) = " + to_string(e3));
    if (sv) o.line("at s = " + brief(o.payload["s"]) + ": La0 = " + o.payload["La0"].dump());
    if (o.status == "computed") o.status = "pass";
  } else if (a.check == "hw") {
    json vecs = json::array();
    for (auto hv : {hw_vector_2122(), hw_vector_23()}) {
      vecs.push_back({{"vector", state_str<RatFunc>(hv.vec, to_string)}, {"ratio", val(hv.ratio)},
                      {"La0", val(hv.ea)}, {"Lb0", val(hv.eb)}, {"phase", hv.phase}});
      o.line("v = " + state_str<RatFunc>(hv.vec, to_string) + "  (La0, Lb0) = (" + to_string(hv.ea) + ", " + to_string(hv.eb) + ")");
    }
    o.payload["vectors"] = vecs;
    o.status = "pass";
  } else {  // search
    std::vector<int> ns;
    if (a.n > 0) ns = {a.n};
    else ns = {1, 2, 3};
    json found = json::array();
    for (int n : ns) {
      Rational wt = rat((n - 1) * (n - 1), 2);
      if (int(2 * wt.get_d()) > c2) throw Invalid("--cutoff below the search weight " + wt.get_str());
      auto cand = hw_search(n, c2);
      json cs = json::array();
      for (auto& c : cand)
        cs.push_back({{"vector", state_str<RatFunc>(c.vec, to_string)}, {"La0", val(c.ea)}, {"Lb0", val(c.eb)}});
      found.push_back({{"n", n}, {"weight", wt.get_str()}, {"dimension", cand.size()}, {"candidates", cs}});
      o.line("weight " + wt.get_str() + ": joint highest-weight space of dimension " + std::to_string(cand.size()));
      o.fail_if(cand.size() != 1, "expected a one-dimensional space at weight " + wt.get_str());
    }
    o.payload["search"] = found;
    if (o.status == "computed") o.status = "pass";
  }
  return o;
}

Outcome cmd_blocks(const Args& a) {
  Outcome o;
  CorrelatorOptions opt;
  opt.allow_minimal = a.allow_minimal;
  auto need_t = [&]() {
    if (a.t.empty()) throw Invalid("--t is required for this check");
    return parse_rational(a.t, "--t");
  };
  if (a.check == "bpz") {
    int order = a.order > 0 ? a.order : 40;
    if (order > 200) throw Invalid("--order above 200 is not supported");
    auto rep = bpz_check(order);
    o.payload["order"] = rep.order;
    o.payload["leading_exponent"] = rep.leading_exponent;
    o.payload["indicial_difference"] = rep.indicial_difference;
    o.payload["checks"] = rep.checks;
    o.line("ODE residual vanishes to " + std::to_string(rep.order) + " coefficients over Q(l)");
    o.line("leading exponent " + rep.leading_exponent + ", indicial difference " + rep.indicial_difference);
    for (auto& c : rep.checks) o.line("  " + c);
    o.status = "pass";
  } else if (a.check == "correlator") {
    Rational t = need_t();
    int order = a.order > 0 ? a.order : 10;
    if (order > 200) throw Invalid("--order above 200 is not supported");
    auto f = ns_correlator_series(t, order, opt);
    json c = json::array();
    for (int n = f.lo; n < f.hi(); ++n) c.push_back(f.at(n).get_str());
    o.payload["exponent"] = f.exponent.get_str();
    o.payload["variable"] = "w = (1-x)/x";
    o.payload["coefficients"] = c;
    o.line("w^(" + f.exponent.get_str() + ") * (" + c.dump() + " ...)");
    if (is_minimal_model_ratio(t)) o.line("note: minimal-model ratio, analytic continuation");
  } else if (a.check == "rigidity") {
    auto r = rigidity_scalar(need_t(), a.prec, opt);
    o.payload["routeA"] = {{"re", r.routeA.re.str()}, {"im", r.routeA.im.str()}};
    o.payload["routeB"] = {{"re", r.routeB.re.str()}, {"im", r.routeB.im.str()}};
    o.payload["relative_difference"] = r.rel.str(6);
    o.payload["degenerate_branch"] = r.degenerate;
    o.payload["theorem_applies"] = r.theorem_applies;
    o.payload["notes"] = r.notes;
    o.line("route A (correlator) = " + r.routeA.str(30));
    o.line("route B (closed form) = " + r.routeB.str(30));
    o.line("relative difference " + r.rel.str(6));
    for (auto& n : r.notes) o.line("note: " + n);
    o.status = "pass";
  } else if (a.check == "dimension") {
    auto d = intrinsic_dimension(need_t(), a.prec, opt);
    o.payload["sine_product"] = {{"re", d.sine.re.str()}, {"im", d.sine.im.str()}};
    o.payload["quantum_dimension"] = {{"re", d.quantum.re.str()}, {"im", d.quantum.im.str()}};
    o.payload["via_rigidity"] = {{"re", d.viaRigidity.re.str()}, {"im", d.viaRigidity.im.str()}};
    o.payload["relative_difference"] = d.rel.str(6);
    o.payload["relative_difference_rigidity"] = d.relRigidity.str(6);
    o.payload["theorem_applies"] = d.theorem_applies;
    o.payload["notes"] = d.notes;
    o.line("4 sin(pi t/2) sin(pi/(2t)) = " + d.sine.str(30));
    o.line("quantum dimension        = " + d.quantum.str(30));
    o.line("from the rigidity scalar = " + d.viaRigidity.str(30));
    o.line("relative differences " + d.rel.str(6) + ", " + d.relRigidity.str(6));
    for (auto& n : d.notes) o.line("note: " + n);
    o.status = "pass";
  } else {  // vv
    auto v = invariant_form_vv();
    o.payload["gg"] = to_string(v.gg);
    o.payload["kappa2"] = to_string(v.kappa2);
    o.payload["vv"] = to_string(v.vv);
    o.line("<G(-1/2)v, G(-1/2)v> = " + to_string(v.gg));
    o.line("kappa^2 = " + to_string(v.kappa2));
    o.line("<v, v> = " + to_string(v.vv));
    o.status = v.vv == RatFunc(4) ? "pass" : "fail";
  }
  return o;
}

Outcome cmd_all(const Args& a) {
  Outcome o;
  AcceptanceOptions opt;
  opt.quick = a.quick;
  opt.prec = a.prec;
  json crit = json::array();
  bool ok = true;
  run_acceptance(opt, [&](const CriterionResult& r) {
    std::ostringstream line;
    line << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name;
    std::cerr << line.str() << std::endl;  // progress
    o.line(line.str());
    for (auto& d : r.details)
      if (!r.pass || d.rfind("FAILED", 0) != 0) o.line("    " + d);
    if (!r.error.empty()) o.line("    error: " + r.error);
    json j{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}};
    if (!r.error.empty()) j["error"] = r.error;
    crit.push_back(j);
    ok = ok && r.pass;
  });
  o.payload["criteria"] = crit;
  o.status = ok ? "pass" : "fail";
  return o;
}

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nsvtool: exact and high-precision checks for NS algebra modules at generic central charge"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string json_path;
  bool no_run_info = false;
  long prec_flag = 0;
  app.add_option("--json", json_path, "write the machine-readable report to this file ('-' for stdout)");
  app.add_flag("--no-run-info", no_run_info, "omit the timestamp and timings block");
  app.add_option("--prec", prec_flag, "working precision in bits (default: $NSV_PRECISION or 256)");

  Args a;
  std::map<std::string, std::string> params;
  auto* kac = app.add_subcommand("kac", "Kac weight h_{r,s}(t) and central charge");
  kac->add_option("--r", a.r)->required();
  kac->add_option("--s", a.s)->required();
  kac->add_option("--t", a.t, "rational p/q");

  auto* gram = app.add_subcommand("gram", "Gram matrix of the Verma module at a given degree, h formal");
  gram->add_option("--degree", a.degree, "multiple of 1/2")->required();
  gram->add_option("--parity", a.parity, "0 or 1");
  gram->add_option("--t", a.t, "specialise t");

  auto* red = app.add_subcommand("reducibility", "(h - h_{r,s}) divides the Gram determinant for rs <= bound");
  red->add_option("--bound", a.bound)->required();

  auto* sing = app.add_subcommand("singvec", "singular vector of M(c, h_{r,s})");
  sing->add_option("--r", a.r)->required();
  sing->add_option("--s", a.s)->required();
  sing->add_option("--t", a.t, "specialise t");

  auto* c1 = app.add_subcommand("c1check", "C1 codimension of the vacuum module, a generic Verma module and S(2,2)");
  c1->add_option("--max-degree", a.max_degree)->required();

  auto* dia = app.add_subcommand("diagram", "embedding diagram of M(c(t), h_{r,s})");
  dia->add_option("--t", a.t, "rational p/q or 'generic'")->required();
  dia->add_option("--r", a.r)->required();
  dia->add_option("--s", a.s)->required();
  dia->add_option("--max-degree", a.max_degree, "truncation degree (default 6)");

  auto* zhu = app.add_subcommand("zhu", "Zhu bimodule polynomials f, g of the (2,2) singular vector at h_{r,s}");
  zhu->add_option("--r", a.r)->required();
  zhu->add_option("--s", a.s)->required();

  auto* sup = app.add_subcommand("support", "weights allowed in S(2,2) x S(r,s)");
  sup->add_option("--r", a.r)->required();
  sup->add_option("--s", a.s)->required();

  auto* fuse = app.add_subcommand("fuse", "fusion product of two simple modules");
  fuse->add_option("--ctx", a.ctx)->required()->check(CLI::IsMember({"generic", "c32"}));
  fuse->add_option("--a", a.a, "label like S(2,2) or 'Pi S(1,3)'")->required();
  fuse->add_option("--b", a.b)->required();

  auto* mug = app.add_subcommand("muger", "Muger center test");
  mug->add_option("--label", a.label)->required();
  mug->add_option("--bound", a.bound, "probe index bound (default 5)");

  auto* ch = app.add_subcommand("char", "characters and their identities");
  ch->add_option("--which", a.which)->required()->check(
      CLI::IsMember({"verma", "generic", "c32", "triple", "branching", "so3"}));
  ch->add_option("--order", a.order, "power of q")->required();
  ch->add_option("--r", a.r);
  ch->add_option("--s", a.s);
  ch->add_option("--n", a.n, "index for c32");

  auto* cos = app.add_subcommand("coset", "commuting Virasoro pair in S(c,0) x F(1)");
  cos->add_option("--check", a.check)->required()->check(CLI::IsMember({"pair", "l0", "hw", "search"}));
  cos->add_option("--cutoff", a.cutoff, "weight cutoff (default 4)");
  cos->add_option("--n", a.n, "search at weight (n-1)^2/2 only");
  cos->add_option("--t", a.t, "also evaluate at this t");
  cos->add_option("--sqrt-branch", a.branch, "s = +sqrt(t) or -sqrt(t)")->check(CLI::IsMember({"+", "-"}));

  auto* blk = app.add_subcommand("blocks", "ODE, NS correlator, rigidity scalar, intrinsic dimension, <v,v>");
  blk->add_option("--check", a.check)->required()->check(
      CLI::IsMember({"bpz", "correlator", "rigidity", "dimension", "vv"}));
  blk->add_option("--t", a.t);
  blk->add_option("--order", a.order);
  blk->add_flag("--allow-minimal", a.allow_minimal, "continue analytically to minimal-model ratios");

  auto* all = app.add_subcommand("all", "run the acceptance suite");
  all->add_flag("--quick", a.quick, "required sizes only (the default sizes are larger)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (a.cutoff == 0) a.cutoff = 4;

  CLI::App* sub = app.get_subcommands().front();
  std::string command = sub->get_name();
  for (CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    params[opt->get_name()] = opt->as<std::string>();
  }

  json report;
  report["schema"] = kSchema;
  report["command"] = command;
  Outcome out;
  std::string message;
  int code = 0;
  auto t0 = std::chrono::steady_clock::now();
  try {
    a.prec = prec_flag > 0 ? prec_flag : default_precision();
    if (a.prec < 64 || a.prec > 100000) throw Invalid("--prec must be in [64, 100000]");
    if (command == "blocks" || command == "coset" || command == "all" || params.count("--prec"))
      params["--prec"] = std::to_string(a.prec);
    if (command == "kac") out = cmd_kac(a);
    else if (command == "gram") out = cmd_gram(a);
    else if (command == "reducibility") out = cmd_reducibility(a);
    else if (command == "singvec") out = cmd_singvec(a);
    else if (command == "c1check") out = cmd_c1check(a);
    else if (command == "diagram") out = cmd_diagram(a);
    else if (command == "zhu") out = cmd_zhu(a);
    else if (command == "support") out = cmd_support(a);
    else if (command == "fuse") out = cmd_fuse(a);
    else if (command == "muger") out = cmd_muger(a);
    else if (command == "char") out = cmd_char(a);
    else if (command == "coset") out = cmd_coset(a);
    else if (command == "blocks") out = cmd_blocks(a);
    else out = cmd_all(a);
    code = out.status == "fail" ? 1 : 0;
  } catch (const std::invalid_argument& e) {  // Invalid, ExcludedParameter, BadParameter, UnsupportedParameter
    out = Outcome{};
    out.status = "invalid";
    message = e.what();
    code = 2;
  } catch (const std::domain_error& e) {  // PoleParameter and friends
    out = Outcome{};
    out.status = "invalid";
    message = e.what();
    code = 2;
  } catch (const CutoffExceeded& e) {
    out = Outcome{};
    out.status = "invalid";
    message = e.what();
    code = 2;
  } catch (const std::exception& e) {  // a verification threw
    out.status = "fail";
    message = e.what();
    code = 1;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  report["parameters"] = params;
  report["status"] = out.status;
  if (!message.empty()) report["message"] = message;
  report["payload"] = out.payload;
  if (!no_run_info) {
    std::ostringstream ts;
    ts.precision(3);
    ts << std::fixed << secs;
    report["run"] = {{"timestamp", utc_now()}, {"timings", {{"total_seconds", ts.str()}}}};
  }

  if (json_path == "-") {
    std::cout << report.dump(2) << "\n";
  } else {
    for (auto& l : out.text) std::cout << l << "\n";
    if (!message.empty()) std::cout << (code == 2 ? "invalid input: " : "verification failed: ") << message << "\n";
    std::cout << "status: " << out.status << "\n";
    if (!json_path.empty()) {
      std::ofstream f(json_path);
      if (!f) {
        std::cerr << "cannot write " << json_path << "\n";
        return 2;
      }
      f << report.dump(2) << "\n";
    }
  }
  return code;
}
