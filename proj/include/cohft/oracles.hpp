#ifndef COHFT_ORACLES_HPP
#define COHFT_ORACLES_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "intersect.hpp"
#include "taut.hpp"

// Brute-force counterparts of the main code paths. None of them calls the
// routine it checks.
namespace cohft::oracle {

struct OracleReport {
  std::string name;
  bool ok = true;
  int checked = 0;
  std::vector<std::string> failures;

  void fail(std::string s) {
    ok = false;
    if (failures.size() < 20) failures.push_back(std::move(s));
  }
  std::string to_string() const {
    std::string out = (ok ? "pass " : "FAIL ") + name + " (" + std::to_string(checked) + " checks)\n";
    for (const auto& f : failures) out += "  " + f + "\n";
    return out;
  }
};

// ---- graphs ---------------------------------------------------------------

namespace detail {

using Edges = std::vector<std::pair<int, int>>;

inline std::string skeleton_code(const std::vector<int>& genus, const Edges& edges, const std::vector<int>& perm) {
  std::vector<int> gs(genus.size());
  for (std::size_t v = 0; v < genus.size(); ++v) gs[perm[v]] = genus[v];
  Edges es;
  for (auto [a, b] : edges) es.push_back(std::minmax(perm[a], perm[b]));
  std::sort(es.begin(), es.end());
  std::string out = render_ints(gs);
  for (auto [a, b] : es) out += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return out;
}

inline bool connected(int V, const Edges& edges) {
  std::vector<int> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [a, b] : edges) parent[find(a)] = find(b);
  for (int v = 0; v < V; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

}  // namespace detail

// Unfiltered generation: every genus vector, edge multiset and leg map, then
// isomorphism rejection by brute force over vertex permutations.
inline std::vector<StableGraph> brute_force_graphs(int g, int n) {
  require_stable(g, n);
  std::vector<StableGraph> out;
  int max_v = 2 * g - 2 + n;
  for (int V = 1; V <= max_v; ++V) {
    std::vector<int> perm(V);
    std::vector<std::vector<int>> perms;
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < V; ++a)
      for (int b = a; b < V; ++b) pairs.push_back({a, b});

    // genus vectors, nonincreasing (every graph has such a labelling)
    std::vector<int> genus(V);
    std::function<void(int, int, int)> genus_rec = [&](int v, int left, int cap) {
      if (v == V) {
        int E = left + V - 1;  // first Betti number E - V + 1 equals g - sum g_v
        if (E < 0) return;
        // edge multisets of size E, skeletons deduplicated
        std::set<std::string> seen;
        detail::Edges edges;
        std::function<void(std::size_t)> edge_rec = [&](std::size_t start) {
          if (static_cast<int>(edges.size()) == E) {
            if (!detail::connected(V, edges)) return;
            std::string best;
            std::vector<std::vector<int>> autos;
            for (const auto& p : perms) {
              std::string c = detail::skeleton_code(genus, edges, p);
              if (best.empty() || c < best) best = c;
            }
            if (!seen.insert(best).second) return;
            std::string self = detail::skeleton_code(genus, edges, perms[0]);
            for (const auto& p : perms)
              if (detail::skeleton_code(genus, edges, p) == self) autos.push_back(p);
            std::vector<int> valence(V, 0);
            for (auto [a, b] : edges) {
              ++valence[a];
              ++valence[b];
            }
            // leg maps up to skeleton automorphisms
            std::set<std::vector<int>> legs_seen;
            std::vector<int> legs(n, 0);
            for (;;) {
              std::vector<int> val = valence;
              for (int l : legs) ++val[l];
              bool stable = true;
              for (int v2 = 0; v2 < V; ++v2)
                if (2 * genus[v2] - 2 + val[v2] <= 0) stable = false;
              if (stable) {
                std::vector<int> canon = legs;
                for (const auto& p : autos) {
                  std::vector<int> img(n);
                  for (int l = 0; l < n; ++l) img[l] = p[legs[l]];
                  canon = std::min(canon, img);
                }
                if (legs_seen.insert(canon).second) out.push_back(StableGraph{genus, legs, edges});
              }
              int i = 0;
              while (i < n && ++legs[i] == V) legs[i++] = 0;
              if (i == n) break;
            }
          } else {
            for (std::size_t k = start; k < pairs.size(); ++k) {
              edges.push_back(pairs[k]);
              edge_rec(k);
              edges.pop_back();
            }
          }
        };
        edge_rec(0);
        return;
      }
      for (int x = std::min(left, cap); x >= 0; --x) {
        genus[v] = x;
        genus_rec(v + 1, left - x, x);
      }
    };
    genus_rec(0, g, g);
  }
  return out;
}

inline OracleReport check_graphs(int g, int n) {
  OracleReport r{"graphs (" + std::to_string(g) + "," + std::to_string(n) + ")", true, 0, {}};
  std::vector<StableGraph> brute = brute_force_graphs(g, n);
  const GraphCatalog& cat = graph_catalog(g, n);
  std::set<std::string> a, b;
  for (const StableGraph& gr : brute) a.insert(canonical_form(gr).encode());
  for (const StableGraph& gr : cat.graphs) b.insert(gr.encode());
  ++r.checked;
  if (a.size() != brute.size()) r.fail("brute force produced isomorphic duplicates");
  if (brute.size() != cat.graphs.size())
    r.fail("count " + std::to_string(brute.size()) + " vs catalog " + std::to_string(cat.graphs.size()));
  for (const auto& s : a)
    if (!b.count(s)) r.fail("missing from catalog: " + s);
  r.checked += static_cast<int>(a.size());
  return r;
}

// ---- intersection numbers -------------------------------------------------

// String and dilaton equations on every memoized psi key.
inline OracleReport check_dvv(IntersectionTable& table) {
  OracleReport r{"dvv string/dilaton", true, 0, {}};
  for (const auto& [key, value] : table.psi_entries()) {
    int g = key.g, n = key.n();
    auto rest_without = [&](int x) {
      std::vector<int> rest = key.psi;
      rest.erase(std::find(rest.begin(), rest.end(), x));
      return rest;
    };
    if (std::count(key.psi.begin(), key.psi.end(), 0) && 2 * g - 2 + (n - 1) > 0) {
      std::vector<int> rest = rest_without(0);
      Rational rhs = 0;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        if (rest[j] == 0) continue;
        std::vector<int> b = rest;
        --b[j];
        rhs += table.psi(g, b);
      }
      ++r.checked;
      if (rhs != value) r.fail("string fails at " + key.to_string());
    }
    if (std::count(key.psi.begin(), key.psi.end(), 1) && 2 * g - 2 + (n - 1) > 0) {
      std::vector<int> rest = rest_without(1);
      ++r.checked;
      if (Rational(2 * g - 2 + n - 1) * table.psi(g, rest) != value) r.fail("dilaton fails at " + key.to_string());
    }
  }
  return r;
}

// ---- kappa multi-index and vertex sums ------------------------------------

// Sum over all of S_m of prod over cycles kappa_{sum of k in the cycle}.
inline KappaPoly multikappa_by_permutations(const std::vector<int>& k) {
  int m = static_cast<int>(k.size());
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  KappaPoly out;
  do {
    std::vector<bool> seen(m, false);
    std::vector<int> idx;
    for (int i = 0; i < m; ++i) {
      if (seen[i]) continue;
      int s = 0;
      for (int j = i; !seen[j]; j = sigma[j]) {
        seen[j] = true;
        s += k[j];
      }
      idx.push_back(s);
    }
    out.add(KappaMono::from_indices(idx), 1);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

inline OracleReport check_multikappa(int max_m, int max_entry) {
  OracleReport r{"multikappa", true, 0, {}};
  std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& k) {
    if (!k.empty()) {
      ++r.checked;
      std::string diff = first_difference(kappa_multi_index(k), multikappa_by_permutations(k));
      if (!diff.empty()) r.fail(render_ints(k) + ": " + diff);
    }
    if (static_cast<int>(k.size()) == max_m) return;
    for (int x = k.empty() ? 1 : k.back(); x <= max_entry; ++x) {
      k.push_back(x);
      rec(k);
      k.pop_back();
    }
  };
  std::vector<int> k;
  rec(k);
  return r;
}

// sum_m 1/m! (p_m)_*(T(psi_1)...T(psi_m)) with T(z) = z(1 - exp(-sum a_j z^j)),
// expanded over ordered tuples of psi powers, pushforwards by permutation sums.
inline KappaPoly vertex_sum(const std::vector<Rational>& a, int D) {
  // T coefficients from the exponential series, computed term by term
  std::vector<Rational> A(D + 2, Rational(0));
  for (std::size_t j = 0; j < a.size() && static_cast<int>(j) + 1 <= D + 1; ++j) A[j + 1] = a[j];
  std::vector<Rational> e(D + 2, Rational(0)), term(D + 2, Rational(0));
  e[0] = term[0] = 1;
  for (int t = 1; t <= D + 1; ++t) {
    std::vector<Rational> next(D + 2, Rational(0));
    for (int i = 0; i <= D + 1; ++i)
      for (int j = 1; i + j <= D + 1; ++j) next[i + j] -= term[i] * A[j] / t;
    term = next;
    for (int i = 0; i <= D + 1; ++i) e[i] += term[i];
  }
  std::vector<Rational> T(D + 2, Rational(0));
  for (int k = 2; k <= D + 1; ++k) T[k] = -e[k - 1];

  KappaPoly out(Rational(1));
  std::vector<int> powers;
  std::function<void(int, Rational)> rec = [&](int budget, Rational coef) {
    if (!powers.empty()) {
      std::vector<int> k;
      for (int p : powers) k.push_back(p - 1);
      out += coef / factorial(static_cast<int>(powers.size())) * multikappa_by_permutations(k);
    }
    for (int p = 2; p - 1 <= budget; ++p) {
      if (T[p] == 0) continue;
      powers.push_back(p);
      rec(budget - (p - 1), coef * T[p]);
      powers.pop_back();
    }
  };
  rec(D, Rational(1));
  return out.truncated(D);
}

inline OracleReport check_vertex_sum(const std::vector<std::vector<Rational>>& samples, int D) {
  OracleReport r{"vertex-sum", true, 0, {}};
  for (const auto& a : samples) {
    KappaPoly exponent;
    for (std::size_t j = 0; j < a.size(); ++j) exponent.add(KappaMono::kappa(static_cast<int>(j + 1)), a[j]);
    ++r.checked;
    std::string diff = first_difference(poly_exp(exponent, D), vertex_sum(a, D));
    if (!diff.empty()) r.fail(diff);
  }
  return r;
}

}  // namespace cohft::oracle

#endif
