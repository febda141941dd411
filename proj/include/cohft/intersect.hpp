#ifndef COHFT_INTERSECT_HPP
#define COHFT_INTERSECT_HPP

#include <algorithm>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "givental.hpp"

namespace cohft {

// (g, psi exponents sorted descending, kappa indices sorted descending)
struct CorrelatorKey {
  int g = 0;
  std::vector<int> psi;
  std::vector<int> kappa;

  void normalize() {
    std::sort(psi.rbegin(), psi.rend());
    std::sort(kappa.rbegin(), kappa.rend());
  }
  int degree() const {
    int d = 0;
    for (int a : psi) d += a;
    for (int k : kappa) d += k;
    return d;
  }
  int n() const { return static_cast<int>(psi.size()); }
  friend bool operator<(const CorrelatorKey& a, const CorrelatorKey& b) {
    return std::tie(a.g, a.psi, a.kappa) < std::tie(b.g, b.psi, b.kappa);
  }
  std::string to_string() const {
    std::string out = std::to_string(g) + " " + render_ints(psi);
    if (!kappa.empty()) out += " " + render_ints(kappa);
    return out;
  }
};

inline Rational double_factorial(int n) {  // n!! with (-1)!! = 1
  Rational r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

class IntersectionTable {
 public:
  // <tau_{a_1} ... tau_{a_n}>_g
  Rational psi(int g, std::vector<int> a) {
    if (g < 0 || 2 * g - 2 + static_cast<int>(a.size()) <= 0) throw UnstablePair("unstable correlator");
    std::sort(a.rbegin(), a.rend());
    return psi_sorted(g, a);
  }

  // integral of prod kappa_{k_j} prod psi_i^{a_i}, kappa indices >= 1
  Rational kappa_psi(CorrelatorKey key) {
    if (key.g < 0 || 2 * key.g - 2 + key.n() <= 0) throw UnstablePair("unstable correlator");
    for (int k : key.kappa)
      if (k < 1) throw UnsupportedLowPower("kappa indices must be >= 1");
    key.normalize();
    return kappa_sorted(key);
  }

  // every memoized psi key as "g [a..] value", sorted
  std::string export_text() const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::string out;
    for (const auto& [k, v] : psi_memo_) out += k.to_string() + " " + render(v) + "\n";
    return out;
  }

  // reads lines written by export_text; malformed lines are skipped
  void import_text(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      CorrelatorKey k;
      std::string list, value;
      if (!(ls >> k.g >> list >> value) || list.size() < 2 || list.front() != '[' || list.back() != ']') continue;
      std::istringstream items(list.substr(1, list.size() - 2));
      std::string item;
      bool ok = true;
      while (std::getline(items, item, ',')) {
        try {
          k.psi.push_back(std::stoi(item));
        } catch (...) {
          ok = false;
        }
      }
      auto v = parse_rational(value);
      if (!ok || !v) continue;
      k.normalize();
      std::lock_guard<std::mutex> lock(mutex_);
      psi_memo_.emplace(k, *v);
    }
  }

  std::vector<std::pair<CorrelatorKey, Rational>> psi_entries() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return {psi_memo_.begin(), psi_memo_.end()};
  }

 private:
  bool lookup(const std::map<CorrelatorKey, Rational>& memo, const CorrelatorKey& k, Rational& out) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo.find(k);
    if (it == memo.end()) return false;
    out = it->second;
    return true;
  }
  Rational store(std::map<CorrelatorKey, Rational>& memo, const CorrelatorKey& k, const Rational& v) {
    std::lock_guard<std::mutex> lock(mutex_);
    memo.emplace(k, v);
    return v;
  }

  // zero for unstable or negative entries, used inside the recursion
  Rational psi_or_zero(int g, std::vector<int> a) {
    if (g < 0 || 2 * g - 2 + static_cast<int>(a.size()) <= 0) return 0;
    for (int x : a)
      if (x < 0) return 0;
    std::sort(a.rbegin(), a.rend());
    return psi_sorted(g, a);
  }

  Rational psi_sorted(int g, const std::vector<int>& a) {
    int n = static_cast<int>(a.size());
    CorrelatorKey key{g, a, {}};
    int sum = 0;
    for (int x : a) sum += x;
    if (sum != 3 * g - 3 + n) return 0;
    Rational out;
    if (lookup(psi_memo_, key, out)) return out;
    if (g == 0 && n == 3) return store(psi_memo_, key, 1);
    if (g == 1 && n == 1) return store(psi_memo_, key, frac(1, 24));
    if (a.back() == 0) {
      // string equation on the last tau_0
      std::vector<int> rest(a.begin(), a.end() - 1);
      out = 0;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        if (rest[j] == 0) continue;
        std::vector<int> b = rest;
        --b[j];
        out += psi_or_zero(g, b);
      }
      return store(psi_memo_, key, out);
    }
    // DVV on the first (largest) entry, tau_{k+1}
    int k = a[0] - 1;
    std::vector<int> s(a.begin() + 1, a.end());
    out = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      std::vector<int> b = s;
      b[j] = k + s[j];
      out += double_factorial(2 * k + 2 * s[j] + 1) / double_factorial(2 * s[j] - 1) * psi_or_zero(g, b);
    }
    Rational half = frac(1, 2);
    int m = static_cast<int>(s.size());
    for (int r = 0; r <= k - 1; ++r) {
      int t = k - 1 - r;
      Rational w = double_factorial(2 * r + 1) * double_factorial(2 * t + 1);
      std::vector<int> b = s;
      b.push_back(r);
      b.push_back(t);
      out += half * w * psi_or_zero(g - 1, b);
      for (int g1 = 0; g1 <= g; ++g1)
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
          std::vector<int> left{r}, right{t};
          for (int i = 0; i < m; ++i) (mask >> i & 1 ? left : right).push_back(s[i]);
          Rational l = psi_or_zero(g1, left);
          if (l == 0) continue;
          out += half * w * l * psi_or_zero(g - g1, right);
        }
    }
    out /= double_factorial(2 * k + 3);
    return store(psi_memo_, key, out);
  }

  // kappa_b P = p_*(psi_{n+1}^{b+1} p^*P) with p^*kappa_c = kappa_c - psi_{n+1}^c
  Rational kappa_sorted(const CorrelatorKey& key) {
    if (key.degree() != 3 * key.g - 3 + key.n()) return 0;
    if (key.kappa.empty()) return psi_sorted(key.g, key.psi);
    Rational out;
    if (lookup(kappa_memo_, key, out)) return out;
    int b = key.kappa[0];
    std::vector<int> rest(key.kappa.begin() + 1, key.kappa.end());
    int r = static_cast<int>(rest.size());
    out = 0;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      CorrelatorKey sub{key.g, key.psi, {}};
      int extra = b + 1;
      int sign = 1;
      for (int i = 0; i < r; ++i) {
        if (mask >> i & 1) {
          extra += rest[i];
          sign = -sign;
        } else {
          sub.kappa.push_back(rest[i]);
        }
      }
      sub.psi.push_back(extra);
      sub.normalize();
      out += sign * kappa_sorted(sub);
    }
    return store(kappa_memo_, key, out);
  }

  mutable std::mutex mutex_;
  std::map<CorrelatorKey, Rational> psi_memo_, kappa_memo_;
};

// Process-wide table shared by the free functions below.
inline IntersectionTable& intersection_table() {
  static IntersectionTable table;
  return table;
}

inline Rational psi_correlator(int g, const std::vector<int>& a) { return intersection_table().psi(g, a); }

inline Rational kappa_psi_correlator(const CorrelatorKey& key) { return intersection_table().kappa_psi(key); }

// Integral over M_{g,n}-bar of a kappa polynomial times prod psi_i^{a_i}.
inline Rational integrate(int g, const std::vector<int>& psi, const KappaPoly& p) {
  Rational out = 0;
  for (const auto& [m, c] : p.terms()) out += c * kappa_psi_correlator({g, psi, m.indices()});
  return out;
}

// Integral of a decorated-graph sum against prod psi_i^{a_i} on the legs.
inline Rational integrate(const TautExpr& e, const std::vector<int>& leg_psi) {
  if (static_cast<int>(leg_psi.size()) != e.n) throw DimensionMismatch("one psi exponent per leg");
  Rational out = 0;
  for (const auto& [d, c] : e.terms) {
    const StableGraph& gr = d.graph;
    Rational prod = c;
    for (int v = 0; v < gr.num_vertices() && prod != 0; ++v) {
      CorrelatorKey key{gr.genus[v], {}, d.vertex_kappa[v].indices()};
      for (int h : gr.half_edges_at(v)) key.psi.push_back(d.halfedge_psi[h] + (h < e.n ? leg_psi[h] : 0));
      prod *= kappa_psi_correlator(key);
    }
    out += prod;
  }
  return out;
}

// <prod tau_{a_i}(v_i)>_g of the nodal theory R.omega.
inline Rational correlator_of_theory(const CohFTSpec& spec, int g, const std::vector<Vec>& vs,
                                     const std::vector<int>& psi_exps, unsigned threads = 1) {
  int n = static_cast<int>(vs.size());
  require_stable(g, n);
  if (static_cast<int>(psi_exps.size()) != n) throw DimensionMismatch("one psi exponent per slot");
  int need = stable_dimension(g, n);
  for (int a : psi_exps) need -= a;
  if (need < 0) return 0;
  if (need > spec.degree()) throw OrderMismatch("class degree exceeds the truncation degree");
  ActionOptions opt;
  opt.threads = threads;
  opt.max_degree = need;
  return integrate(r_action(spec, g, vs, opt), psi_exps);
}

}  // namespace cohft

#endif
