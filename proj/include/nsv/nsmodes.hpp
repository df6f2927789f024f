// Neveu-Schwarz and free fermion modes, PBW monomials, and the module action.
//
// Indices of G and Psi are half-integers; they are stored doubled ("twice")
// so that everything stays in int.  L(n) stores twice = 2n as well.
#pragma once

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nsv/scalars.hpp"

namespace nsv {

struct Mode {
  enum Kind : int { L = 0, G = 1, Psi = 2, C = 3 };
  Kind kind = L;
  int twice = 0;

  static Mode Lmode(int n) { return {L, 2 * n}; }
  static Mode Gmode(int twice_index);  // must be odd
  static Mode Psimode(int twice_index);
  static Mode central() { return {C, 0}; }
  static Mode parse(const std::string& s);  // "L(-2)", "G(3/2)", "Psi(-1/2)", "C"

  int parity() const { return (kind == G || kind == Psi) ? 1 : 0; }
  int weight2() const { return -twice; }  // doubled weight
  bool is_ns() const { return kind == L || kind == G || kind == C; }
  std::string str() const;

  auto operator<=>(const Mode&) const = default;
};

struct PBWMonomial {
  std::vector<int> lParts;    // n of L(-n), weakly decreasing
  std::vector<int> gParts;    // 2m of G(-m), strictly decreasing, odd
  std::vector<int> psiParts;  // 2m of Psi(-m), strictly decreasing, odd

  int weight2() const;
  int parity() const { return int((gParts.size() + psiParts.size()) % 2); }
  bool empty() const { return lParts.empty() && gParts.empty() && psiParts.empty(); }
  PBWMonomial ns_part() const { return {lParts, gParts, {}}; }
  bool valid() const;
  std::string str() const;  // "L(-1)^2 G(-3/2)" style; "1" when empty

  auto operator<=>(const PBWMonomial&) const = default;
};

struct ModeTerm {
  Mode mode;
  Rational coef;
};

struct BracketResult {
  std::vector<ModeTerm> terms;
  Rational central = 0;  // coefficient of the central element c
  Rational scalar = 0;   // multiple of the identity ({psi_m, psi_-m} = 1)
  bool mixed = false;    // NS mode against a fermion mode; they supercommute
};

// [a,b] (anticommutator when both odd)
BracketResult super_bracket(const Mode& a, const Mode& b);

enum class ModuleKind { NSVerma, NSVacuum, FermionFock, Tensor };

// Scalars K must be a commutative ring constructible from RatFunc.
template <class K>
K kconst(const Rational& q) {
  return K(RatFunc(q));
}

template <class K>
struct NSCache;

template <class K>
struct ModuleSpec {
  ModuleKind kind;
  K c, h;
  std::shared_ptr<const ModuleSpec> left, right;
  std::shared_ptr<NSCache<K>> cache;

  using Ptr = std::shared_ptr<const ModuleSpec>;

  static Ptr verma(const K& c, const K& h) {
    auto m = std::make_shared<ModuleSpec>();
    m->kind = ModuleKind::NSVerma;
    m->c = c;
    m->h = h;
    m->cache = std::make_shared<NSCache<K>>();
    return m;
  }
  static Ptr vacuum(const K& c) {
    auto m = std::make_shared<ModuleSpec>();
    m->kind = ModuleKind::NSVacuum;
    m->c = c;
    m->h = K(0);
    m->cache = std::make_shared<NSCache<K>>();
    return m;
  }
  static Ptr fock() {
    auto m = std::make_shared<ModuleSpec>();
    m->kind = ModuleKind::FermionFock;
    m->c = kconst<K>(rat(1, 2));
    m->h = K(0);
    return m;
  }
  // One NS factor and one Fock factor, in either order.
  static Ptr tensor(Ptr l, Ptr r) {
    bool lns = l->is_ns(), rns = r->is_ns();
    bool ok = (lns && r->kind == ModuleKind::FermionFock) || (rns && l->kind == ModuleKind::FermionFock);
    if (!ok) throw std::invalid_argument("tensor products are supported for one NS factor with one Fock factor");
    auto m = std::make_shared<ModuleSpec>();
    m->kind = ModuleKind::Tensor;
    m->c = l->c + r->c;
    m->h = l->h + r->h;
    m->left = std::move(l);
    m->right = std::move(r);
    return m;
  }

  bool is_ns() const { return kind == ModuleKind::NSVerma || kind == ModuleKind::NSVacuum; }
  const ModuleSpec* ns_factor() const {
    if (is_ns()) return this;
    if (kind == ModuleKind::Tensor) return left->is_ns() ? left.get() : right.get();
    return nullptr;
  }
  bool has_fock() const {
    return kind == ModuleKind::FermionFock || kind == ModuleKind::Tensor;
  }
  bool ns_on_right() const { return kind == ModuleKind::Tensor && right->is_ns(); }
  bool fock_on_right() const { return kind == ModuleKind::Tensor && right->kind == ModuleKind::FermionFock; }
  // lowering modes that create states (everything else is moved right)
  bool creates(const Mode& m) const {
    if (m.twice >= 0) return false;
    if (kind == ModuleKind::NSVacuum) return m.kind == Mode::L ? m.twice <= -4 : m.twice <= -3;
    return true;
  }
};

template <class K>
using Terms = std::map<PBWMonomial, K>;

template <class K>
struct NSCache {
  std::mutex mu;
  std::map<std::pair<Mode, PBWMonomial>, Terms<K>> memo;
};

template <class K>
class StateVector {
 public:
  typename ModuleSpec<K>::Ptr module;
  Terms<K> terms;

  StateVector() = default;
  explicit StateVector(typename ModuleSpec<K>::Ptr m) : module(std::move(m)) {}

  static StateVector highest(typename ModuleSpec<K>::Ptr m) {
    StateVector v(std::move(m));
    v.terms[PBWMonomial{}] = K(1);
    return v;
  }
  static StateVector basis(typename ModuleSpec<K>::Ptr m, const PBWMonomial& b) {
    StateVector v(std::move(m));
    v.terms[b] = K(1);
    return v;
  }

  bool is_zero() const { return terms.empty(); }
  K coeff(const PBWMonomial& b) const {
    auto it = terms.find(b);
    return it == terms.end() ? K(0) : it->second;
  }
  void add(const PBWMonomial& b, const K& k) {
    if (k.is_zero()) return;
    auto it = terms.find(b);
    if (it == terms.end()) {
      terms.emplace(b, k);
      return;
    }
    it->second += k;
    if (it->second.is_zero()) terms.erase(it);
  }
  StateVector& operator+=(const StateVector& o) {
    if (!module) module = o.module;
    for (auto& [b, k] : o.terms) add(b, k);
    return *this;
  }
  StateVector& operator-=(const StateVector& o) {
    if (!module) module = o.module;
    for (auto& [b, k] : o.terms) add(b, -k);
    return *this;
  }
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  StateVector scaled(const K& k) const {
    StateVector r(module);
    if (k.is_zero()) return r;
    for (auto& [b, x] : terms) r.add(b, x * k);
    return r;
  }
  friend bool operator==(const StateVector& a, const StateVector& b) { return a.terms == b.terms; }
};

// --- non-template helpers -------------------------------------------------

// all PBW monomials at doubled weight deg2 and given parity
std::vector<PBWMonomial> pbw_basis(ModuleKind kind, bool vacuum_ns, int deg2, int parity);

// Fock action: returns sign and new psi list, or nullopt when the result is 0.
std::optional<std::pair<int, std::vector<int>>> fock_act(int twice, const std::vector<int>& psi);

template <class K>
std::vector<PBWMonomial> weight_basis(const ModuleSpec<K>& m, int deg2, int parity) {
  switch (m.kind) {
    case ModuleKind::NSVerma:
      return pbw_basis(ModuleKind::NSVerma, false, deg2, parity);
    case ModuleKind::NSVacuum:
      return pbw_basis(ModuleKind::NSVerma, true, deg2, parity);
    case ModuleKind::FermionFock:
      return pbw_basis(ModuleKind::FermionFock, false, deg2, parity);
    case ModuleKind::Tensor: {
      const ModuleSpec<K>* ns = m.ns_factor();
      return pbw_basis(ModuleKind::Tensor, ns->kind == ModuleKind::NSVacuum, deg2, parity);
    }
  }
  return {};
}

namespace detail {

template <class K>
void add_scaled(Terms<K>& out, const Terms<K>& in, const K& k) {
  if (k.is_zero()) return;
  for (auto& [b, x] : in) {
    K v = x * k;
    auto it = out.find(b);
    if (it == out.end()) {
      if (!v.is_zero()) out.emplace(b, std::move(v));
    } else {
      it->second += v;
      if (it->second.is_zero()) out.erase(it);
    }
  }
}

inline Mode first_mode(const PBWMonomial& b) {
  if (!b.lParts.empty()) return Mode::Lmode(-b.lParts.front());
  return Mode::Gmode(-b.gParts.front());
}

inline PBWMonomial rest_of(const PBWMonomial& b) {
  PBWMonomial r = b;
  if (!r.lParts.empty())
    r.lParts.erase(r.lParts.begin());
  else
    r.gParts.erase(r.gParts.begin());
  return r;
}

// can creation mode x be written directly to the left of monomial b?
inline int prepend_state(const Mode& x, const PBWMonomial& b) {
  // 1: prepend, 0: must commute past, 2: equal odd mode (square)
  if (b.lParts.empty() && b.gParts.empty()) return 1;
  Mode a = first_mode(b);
  if (x.kind == Mode::L) {
    if (a.kind == Mode::G) return 1;
    return x.twice <= a.twice ? 1 : 0;
  }
  if (a.kind == Mode::L) return 0;
  if (x.twice < a.twice) return 1;
  if (x.twice == a.twice) return 2;
  return 0;
}

inline PBWMonomial prepended(const Mode& x, const PBWMonomial& b) {
  PBWMonomial r = b;
  if (x.kind == Mode::L)
    r.lParts.insert(r.lParts.begin(), -x.twice / 2);
  else
    r.gParts.insert(r.gParts.begin(), -x.twice);
  return r;
}

// action of an NS mode on an NS-only monomial of the NS module `m`
template <class K>
Terms<K> act_ns(const ModuleSpec<K>& m, const Mode& x, const PBWMonomial& b) {
  Terms<K> out;
  if (x.kind == Mode::C) {
    out.emplace(b, m.c);
    return out;
  }
  if (x.kind == Mode::L && x.twice == 0) {
    K v = m.h + kconst<K>(rat(b.weight2(), 2));
    if (!v.is_zero()) out.emplace(b, v);
    return out;
  }
  bool creates = m.creates(x);
  bool emptyb = b.lParts.empty() && b.gParts.empty();
  if (!creates && emptyb) return out;  // annihilates the highest weight vector
  if (creates) {
    int st = prepend_state(x, b);
    if (st == 1) {
      out.emplace(prepended(x, b), K(1));
      return out;
    }
    if (st == 2) return act_ns(m, Mode::Lmode(x.twice), rest_of(b));
  }

  auto key = std::make_pair(x, b);
  {
    std::lock_guard<std::mutex> lk(m.cache->mu);
    auto it = m.cache->memo.find(key);
    if (it != m.cache->memo.end()) return it->second;
  }

  Mode a = first_mode(b);
  PBWMonomial rest = rest_of(b);
  int sign = (x.parity() && a.parity()) ? -1 : 1;
  // x a rest = sign * a (x rest) + [x,a] rest
  Terms<K> xr = act_ns(m, x, rest);
  K ks = kconst<K>(Rational(sign));
  for (auto& [bb, k] : xr) add_scaled(out, act_ns(m, a, bb), k * ks);
  BracketResult br = super_bracket(x, a);
  for (auto& t : br.terms) add_scaled(out, act_ns(m, t.mode, rest), kconst<K>(t.coef));
  if (sgn(br.central) != 0) {
    Terms<K> one;
    one.emplace(rest, K(1));
    add_scaled(out, one, m.c * kconst<K>(br.central));
  }

  std::lock_guard<std::mutex> lk(m.cache->mu);
  m.cache->memo.emplace(key, out);
  return out;
}

}  // namespace detail

// Apply one mode to a state vector; result in PBW normal order.
template <class K>
StateVector<K> act(const Mode& x, const StateVector<K>& v) {
  const ModuleSpec<K>& m = *v.module;
  StateVector<K> out(v.module);
  if (x.is_ns()) {
    const ModuleSpec<K>* ns = m.ns_factor();
    if (!ns) throw std::invalid_argument("NS mode acting on a module without NS factor");
    bool koszul = m.ns_on_right() && x.parity() == 1;
    for (auto& [b, k] : v.terms) {
      PBWMonomial nsb = b.ns_part();
      Terms<K> r = detail::act_ns(*ns, x, nsb);
      K kk = (koszul && b.psiParts.size() % 2) ? -k : k;
      for (auto& [rb, rk] : r) {
        PBWMonomial full = rb;
        full.psiParts = b.psiParts;
        out.add(full, rk * kk);
      }
    }
    return out;
  }
  if (!m.has_fock()) throw std::invalid_argument("fermion mode acting on a module without Fock factor");
  bool koszul = m.fock_on_right();
  for (auto& [b, k] : v.terms) {
    auto r = fock_act(x.twice, b.psiParts);
    if (!r) continue;
    int sg = r->first;
    if (koszul && b.gParts.size() % 2) sg = -sg;
    PBWMonomial full = b;
    full.psiParts = r->second;
    out.add(full, sg < 0 ? -k : k);
  }
  return out;
}

// word[0] is applied last (leftmost), as in written products
template <class K>
StateVector<K> act_word(const std::vector<Mode>& word, StateVector<K> v) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = act(*it, v);
  return v;
}

template <class K>
StateVector<K> act_bracket(const BracketResult& br, const StateVector<K>& v) {
  StateVector<K> out(v.module);
  for (auto& t : br.terms) out += act(t.mode, v).scaled(kconst<K>(t.coef));
  if (sgn(br.central) != 0) out += act(Mode::central(), v).scaled(kconst<K>(br.central));
  if (sgn(br.scalar) != 0) out += v.scaled(kconst<K>(br.scalar));
  return out;
}

template <class K>
std::string state_str(const StateVector<K>& v, std::string (*fmt)(const K&)) {
  if (v.terms.empty()) return "0";
  std::string out;
  for (auto& [b, k] : v.terms) {
    if (!out.empty()) out += " + ";
    out += "(" + fmt(k) + ")*" + b.str();
  }
  return out;
}

}  // namespace nsv
