#ifndef COHFT_TAUT_HPP
#define COHFT_TAUT_HPP

#include <string>
#include <tuple>
#include <vector>

#include "graphs.hpp"
#include "poly.hpp"

namespace cohft {

// Stable graph with a kappa monomial per vertex and a psi power per half-edge.
struct DecoratedGraph {
  StableGraph graph;
  std::vector<KappaMono> vertex_kappa;
  std::vector<int> halfedge_psi;

  int degree() const {
    int d = graph.num_edges();
    for (const KappaMono& k : vertex_kappa) d += k.degree();
    for (int p : halfedge_psi) d += p;
    return d;
  }

  friend bool operator<(const DecoratedGraph& a, const DecoratedGraph& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    if (!(a.graph == b.graph)) return a.graph < b.graph;
    if (a.halfedge_psi != b.halfedge_psi) return a.halfedge_psi < b.halfedge_psi;
    for (std::size_t v = 0; v < a.vertex_kappa.size(); ++v)
      if (a.vertex_kappa[v] != b.vertex_kappa[v]) return a.vertex_kappa[v].e < b.vertex_kappa[v].e;
    return false;
  }
  friend bool operator==(const DecoratedGraph& a, const DecoratedGraph& b) {
    return a.graph == b.graph && a.vertex_kappa == b.vertex_kappa && a.halfedge_psi == b.halfedge_psi;
  }

  std::string to_string() const {
    std::string out = graph.encode() + " K:[";
    for (std::size_t v = 0; v < vertex_kappa.size(); ++v) out += (v ? "," : "") + render_ints(vertex_kappa[v].e);
    return out + "] P:" + render_ints(halfedge_psi);
  }
};

// Smallest image of the decoration under the automorphisms of its graph.
inline DecoratedGraph canonical_decoration(const DecoratedGraph& d, const std::vector<GraphAutomorphism>& autos) {
  DecoratedGraph best = d;
  for (const GraphAutomorphism& a : autos) {
    DecoratedGraph img = d;
    for (std::size_t v = 0; v < d.vertex_kappa.size(); ++v) img.vertex_kappa[a.vertex_map[v]] = d.vertex_kappa[v];
    for (std::size_t h = 0; h < d.halfedge_psi.size(); ++h) img.halfedge_psi[a.half_edge_map[h]] = d.halfedge_psi[h];
    if (img < best) best = std::move(img);
  }
  return best;
}

// Formal sum of decorated graphs on M_{g,n}-bar, truncated at max_degree.
struct TautExpr {
  int g = 0, n = 0, max_degree = 0;
  std::map<DecoratedGraph, Rational> terms;

  void add(const DecoratedGraph& d, const Rational& c) {
    if (c == 0 || d.degree() > max_degree) return;
    auto it = terms.find(d);
    if (it == terms.end()) {
      terms.emplace(d, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  TautExpr& operator+=(const TautExpr& o) {
    for (const auto& [d, c] : o.terms) add(d, c);
    return *this;
  }

  friend bool operator==(const TautExpr& a, const TautExpr& b) {
    return a.g == b.g && a.n == b.n && a.terms == b.terms;
  }
  friend bool operator!=(const TautExpr& a, const TautExpr& b) { return !(a == b); }

  // One line per term: certificate, decorations, coefficient.
  std::string to_string() const {
    std::string out;
    for (const auto& [d, c] : terms) out += d.to_string() + " : " + render(c) + "\n";
    return out;
  }
};

inline TautExpr smooth_expr(int g, int n, int max_degree, const SmoothClass& p) {
  TautExpr out{g, n, max_degree, {}};
  for (const auto& [m, c] : p.terms()) {
    DecoratedGraph d{smooth_graph(g, n), {m.kappa}, std::vector<int>(n, 0)};
    for (int i = 0; i < n; ++i) d.halfedge_psi[i] = m.psi_exponent(i + 1);
    out.add(d, c);
  }
  return out;
}

// Keeps the edgeless term.
inline SmoothClass restrict_to_smooth(const TautExpr& e) {
  SmoothClass out;
  for (const auto& [d, c] : e.terms) {
    if (d.graph.num_edges() != 0) continue;
    out.add(KappaPsiMono(d.vertex_kappa[0], d.halfedge_psi), c);
  }
  return out;
}

inline TautExpr expr_multiply(const TautExpr& x, const TautExpr& y) {
  if (x.g != y.g || x.n != y.n) throw DistinctSupports("expressions live on different moduli spaces");
  const StableGraph* support = nullptr;
  for (const auto* e : {&x, &y})
    for (const auto& [d, c] : e->terms) {
      if (support && !(d.graph == *support)) throw DistinctSupports("expressions are supported on different graphs");
      support = &d.graph;
    }
  TautExpr out{x.g, x.n, std::min(x.max_degree, y.max_degree), {}};
  if (!support) return out;
  auto autos = automorphisms(*support);
  for (const auto& [a, ca] : x.terms)
    for (const auto& [b, cb] : y.terms) {
      DecoratedGraph d = a;
      for (std::size_t v = 0; v < d.vertex_kappa.size(); ++v) d.vertex_kappa[v] = a.vertex_kappa[v] * b.vertex_kappa[v];
      for (std::size_t h = 0; h < d.halfedge_psi.size(); ++h) d.halfedge_psi[h] += b.halfedge_psi[h];
      out.add(canonical_decoration(d, autos), ca * cb);
    }
  return out;
}

namespace detail {

// Calls f(blocks) for every set partition of {0..m-1}.
template <class F>
void for_each_set_partition(int m, F&& f) {
  std::vector<int> block(m, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == m) {
      std::vector<std::vector<int>> blocks(used);
      for (int k = 0; k < m; ++k) blocks[block[k]].push_back(k);
      f(blocks);
      return;
    }
    for (int b = 0; b <= used; ++b) {
      block[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
}

}  // namespace detail

// kappa_{k_1..k_m} = sum over permutations of prod over cycles of kappa_{sum k}.
// Grouped by set partitions: a block of size s carries (s-1)! cyclic orders.
inline KappaPoly kappa_multi_index(const std::vector<int>& k) {
  for (int x : k)
    if (x < 1) throw UnsupportedLowPower("multi-index entries must be >= 1");
  KappaPoly out;
  detail::for_each_set_partition(static_cast<int>(k.size()), [&](const std::vector<std::vector<int>>& blocks) {
    Rational weight = 1;
    std::vector<int> idx;
    for (const auto& b : blocks) {
      weight *= factorial(static_cast<int>(b.size()) - 1);
      int s = 0;
      for (int i : b) s += k[i];
      idx.push_back(s);
    }
    out.add(KappaMono::from_indices(idx), weight);
  });
  return out;
}

// Pushforward forgetting m points that carry psi^{a_i}, a_i >= 2.
inline KappaPoly forgetful_pushforward_monomial(const std::vector<int>& a) {
  std::vector<int> k;
  for (int x : a) {
    if (x < 2) throw UnsupportedLowPower("forgotten points must carry psi^2 or higher");
    k.push_back(x - 1);
  }
  return kappa_multi_index(k);
}

// kappa_j -> kappa_j - psi_{n+1}^j on a smooth-locus class over (g,n).
inline SmoothClass forgetful_pullback(const SmoothClass& p, int n) {
  SmoothClass out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> base_psi(n, 0);
    for (int i = 0; i < n; ++i) base_psi[i] = m.psi_exponent(i + 1);
    SmoothClass acc = SmoothClass::monomial(KappaPsiMono(KappaMono{}, base_psi));
    for (int j : m.kappa.indices()) {
      SmoothClass factor;
      factor.add(KappaPsiMono(KappaMono::kappa(j), {}), 1);
      std::vector<int> extra(n + 1, 0);
      extra[n] = j;
      factor.add(KappaPsiMono(KappaMono{}, extra), -1);
      acc = acc * factor;
    }
    out += c * acc;
  }
  return out;
}

inline TautExpr forgetful_pullback(const TautExpr& e) {
  for (const auto& [d, c] : e.terms)
    if (d.graph.num_edges() != 0) throw NodalTermPresent("pullback is defined on the smooth model only");
  return smooth_expr(e.g, e.n + 1, e.max_degree + 1, forgetful_pullback(restrict_to_smooth(e), e.n));
}

struct IdentityCheck {
  bool ok = true;
  std::string first_mismatch;
};

// exp(sum a_j kappa_j) against sum_m 1/m! (p_m)_*(M(psi)...M(psi)) with
// M(z) = z(1 - exp(-sum a_j z^j)), through degree D.
inline IdentityCheck exp_pushforward_check(const std::vector<Rational>& a, int D) {
  KappaPoly exponent;
  for (std::size_t j = 0; j < a.size(); ++j) exponent.add(KappaMono::kappa(static_cast<int>(j + 1)), a[j]);
  KappaPoly lhs = poly_exp(exponent, D);

  // M(z) coefficients c_k, k >= 2, from the univariate series exp(-A(z)).
  std::vector<Rational> e_neg(D + 2, Rational(0)), power(D + 2, Rational(0));
  e_neg[0] = 1;
  power[0] = 1;
  for (int t = 1; t <= D + 1; ++t) {
    std::vector<Rational> next(D + 2, Rational(0));
    for (int i = 0; i <= D + 1; ++i)
      for (std::size_t j = 0; j < a.size() && i + static_cast<int>(j) + 1 <= D + 1; ++j)
        next[i + j + 1] -= power[i] * a[j];
    power = next;
    for (int i = 0; i <= D + 1; ++i) e_neg[i] += power[i] / factorial(t);
  }
  std::vector<Rational> c(D + 2, Rational(0));  // M(z) = sum c_k z^k
  for (int k = 2; k <= D + 1; ++k) c[k] = -e_neg[k - 1];

  KappaPoly rhs(Rational(1));
  // m forgotten points each contribute degree k_i - 1 >= 1, so m <= D
  std::function<void(std::vector<int>&, int, Rational)> rec = [&](std::vector<int>& ks, int budget, Rational coef) {
    if (!ks.empty()) rhs += coef / factorial(static_cast<int>(ks.size())) * forgetful_pushforward_monomial(ks);
    for (int k = 2; k - 1 <= budget; ++k) {
      if (c[k] == 0) continue;
      ks.push_back(k);
      rec(ks, budget - (k - 1), coef * c[k]);
      ks.pop_back();
    }
  };
  std::vector<int> ks;
  rec(ks, D, Rational(1));
  rhs = rhs.truncated(D);
  IdentityCheck out;
  out.first_mismatch = first_difference(lhs, rhs);
  out.ok = out.first_mismatch.empty();
  return out;
}

}  // namespace cohft

#endif
