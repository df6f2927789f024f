#include "nsv/nsmodes.hpp"

#include <algorithm>
#include <functional>
#include <regex>

namespace nsv {

Mode Mode::Gmode(int twice_index) {
  if (twice_index % 2 == 0) throw std::invalid_argument("G index must be a strict half-integer");
  return {G, twice_index};
}

Mode Mode::Psimode(int twice_index) {
  if (twice_index % 2 == 0) throw std::invalid_argument("Psi index must be a strict half-integer");
  return {Psi, twice_index};
}

Mode Mode::parse(const std::string& s) {
  if (s == "C" || s == "c") return central();
  static const std::regex re(R"(^\s*(L|G|Psi)\(\s*([+-]?\d+)(?:/(\d+))?\s*\)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw std::invalid_argument("bad mode: " + s);
  int num = std::stoi(m[2]);
  int den = m[3].matched ? std::stoi(m[3]) : 1;
  std::string k = m[1];
  if (k == "L") {
    if (den != 1) throw std::invalid_argument("L index must be an integer: " + s);
    return Lmode(num);
  }
  if (den != 2) throw std::invalid_argument("odd mode index must be a half-integer: " + s);
  return k == "G" ? Gmode(num) : Psimode(num);
}

namespace {
std::string half_str(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}
}  // namespace

std::string Mode::str() const {
  switch (kind) {
    case L: return "L(" + half_str(twice) + ")";
    case G: return "G(" + half_str(twice) + ")";
    case Psi: return "Psi(" + half_str(twice) + ")";
    case C: return "C";
  }
  return "?";
}

int PBWMonomial::weight2() const {
  int w = 0;
  for (int n : lParts) w += 2 * n;
  for (int g : gParts) w += g;
  for (int p : psiParts) w += p;
  return w;
}

bool PBWMonomial::valid() const {
  for (size_t i = 0; i < lParts.size(); ++i)
    if (lParts[i] <= 0 || (i && lParts[i] > lParts[i - 1])) return false;
  auto odd_desc = [](const std::vector<int>& v) {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] <= 0 || v[i] % 2 == 0 || (i && v[i] >= v[i - 1])) return false;
    return true;
  };
  return odd_desc(gParts) && odd_desc(psiParts);
}

std::string PBWMonomial::str() const {
  if (empty()) return "1";
  std::string out;
  auto put = [&](const std::string& x, int times) {
    if (!out.empty()) out += " ";
    out += x;
    if (times > 1) out += "^" + std::to_string(times);
  };
  for (size_t i = 0; i < lParts.size();) {
    size_t j = i;
    while (j < lParts.size() && lParts[j] == lParts[i]) ++j;
    put(Mode::Lmode(-lParts[i]).str(), int(j - i));
    i = j;
  }
  for (int g : gParts) put(Mode::Gmode(-g).str(), 1);
  for (int p : psiParts) put(Mode::Psimode(-p).str(), 1);
  return out;
}

BracketResult super_bracket(const Mode& a, const Mode& b) {
  BracketResult r;
  if (a.kind == Mode::C || b.kind == Mode::C) return r;
  if (a.is_ns() != b.is_ns()) {
    r.mixed = true;
    return r;
  }
  Rational m(a.twice, 2), n(b.twice, 2);
  m.canonicalize();
  n.canonicalize();
  int sum2 = a.twice + b.twice;
  auto push = [&](Mode md, const Rational& k) {
    if (sgn(k) != 0) r.terms.push_back({md, k});
  };
  if (a.kind == Mode::Psi) {
    if (sum2 == 0) r.scalar = 1;
    return r;
  }
  if (a.kind == Mode::L && b.kind == Mode::L) {
    push(Mode::Lmode(sum2 / 2), m - n);
    if (sum2 == 0) r.central = (m * m * m - m) / 12;
  } else if (a.kind == Mode::L && b.kind == Mode::G) {
    push(Mode::Gmode(sum2), m / 2 - n);
  } else if (a.kind == Mode::G && b.kind == Mode::L) {
    push(Mode::Gmode(sum2), m - n / 2);
  } else {
    push(Mode::Lmode(sum2 / 2), Rational(2));
    if (sum2 == 0) r.central = (m * m - Rational(1, 4)) / 3;
  }
  return r;
}

namespace {

void partitions(int n, int maxpart, int minpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, maxpart); p >= minpart; --p) {
    cur.push_back(p);
    partitions(n - p, p, minpart, cur, out);
    cur.pop_back();
  }
}

// strictly decreasing odd parts (doubled indices) summing to n2
void odd_strict(int n2, int maxpart, int minpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n2 == 0) {
    out.push_back(cur);
    return;
  }
  int top = std::min(n2, maxpart);
  if (top % 2 == 0) --top;
  for (int p = top; p >= minpart; p -= 2) {
    cur.push_back(p);
    odd_strict(n2 - p, p - 2, minpart, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> all_partitions(int n, int minpart) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (n >= 0) partitions(n, n, minpart, cur, out);
  return out;
}

std::vector<std::vector<int>> all_odd_strict(int n2, int minpart) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (n2 >= 0) odd_strict(n2, n2, minpart, cur, out);
  return out;
}

void ns_monomials(int deg2, bool vac, std::vector<PBWMonomial>& out) {
  int lmin = vac ? 2 : 1, gmin = vac ? 3 : 1;
  for (int g2 = 0; g2 <= deg2; ++g2) {
    if ((deg2 - g2) % 2) continue;
    auto gs = all_odd_strict(g2, gmin);
    if (gs.empty()) continue;
    auto ls = all_partitions((deg2 - g2) / 2, lmin);
    for (auto& l : ls)
      for (auto& g : gs) out.push_back({l, g, {}});
  }
}

}  // namespace

std::vector<PBWMonomial> pbw_basis(ModuleKind kind, bool vacuum_ns, int deg2, int parity) {
  std::vector<PBWMonomial> out;
  if (deg2 < 0) return out;
  if (kind == ModuleKind::NSVerma) {
    ns_monomials(deg2, vacuum_ns, out);
  } else if (kind == ModuleKind::FermionFock) {
    for (auto& p : all_odd_strict(deg2, 1)) out.push_back({{}, {}, p});
  } else {
    for (int f2 = 0; f2 <= deg2; ++f2) {
      auto ps = all_odd_strict(f2, 1);
      if (ps.empty()) continue;
      std::vector<PBWMonomial> ns;
      ns_monomials(deg2 - f2, vacuum_ns, ns);
      for (auto& b : ns)
        for (auto& p : ps) {
          PBWMonomial m = b;
          m.psiParts = p;
          out.push_back(m);
        }
    }
  }
  std::vector<PBWMonomial> filtered;
  for (auto& m : out)
    if (m.parity() == parity) filtered.push_back(m);
  std::sort(filtered.begin(), filtered.end());
  return filtered;
}

std::optional<std::pair<int, std::vector<int>>> fock_act(int twice, const std::vector<int>& psi) {
  if (twice < 0) {
    int p = -twice;
    size_t pos = 0;
    while (pos < psi.size() && psi[pos] > p) ++pos;
    if (pos < psi.size() && psi[pos] == p) return std::nullopt;
    std::vector<int> r = psi;
    r.insert(r.begin() + pos, p);
    return std::make_pair(pos % 2 ? -1 : 1, r);
  }
  for (size_t pos = 0; pos < psi.size(); ++pos) {
    if (psi[pos] == twice) {
      std::vector<int> r = psi;
      r.erase(r.begin() + pos);
      return std::make_pair(pos % 2 ? -1 : 1, r);
    }
  }
  return std::nullopt;
}

}  // namespace nsv
