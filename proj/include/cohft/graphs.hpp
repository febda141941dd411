#ifndef COHFT_GRAPHS_HPP
#define COHFT_GRAPHS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"

namespace cohft {

inline void require_stable(int g, int n) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0)
    throw UnstablePair("(g,n) = (" + std::to_string(g) + "," + std::to_string(n) + ") is not stable");
}

// Stable graph with legs 1..n. Half-edges are numbered legs first
// (h = i for leg i+1), then edge e owns half-edges n+2e (at edges[e].first)
// and n+2e+1 (at edges[e].second). Edges are kept sorted with first <= second.
struct StableGraph {
  std::vector<int> genus;
  std::vector<int> leg_vertex;
  std::vector<std::pair<int, int>> edges;

  int num_vertices() const { return static_cast<int>(genus.size()); }
  int num_legs() const { return static_cast<int>(leg_vertex.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_half_edges() const { return num_legs() + 2 * num_edges(); }

  void normalize() {
    for (auto& e : edges)
      if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
  }

  int vertex_of(int h) const {
    int n = num_legs();
    if (h < n) return leg_vertex[h];
    const auto& e = edges[(h - n) / 2];
    return (h - n) % 2 == 0 ? e.first : e.second;
  }

  // Other half of an edge half-edge; -1 for legs.
  int partner(int h) const {
    int n = num_legs();
    if (h < n) return -1;
    return ((h - n) % 2 == 0) ? h + 1 : h - 1;
  }

  std::vector<int> half_edges_at(int v) const {
    std::vector<int> out;
    for (int h = 0; h < num_half_edges(); ++h)
      if (vertex_of(h) == v) out.push_back(h);
    return out;
  }

  int valence(int v) const { return static_cast<int>(half_edges_at(v).size()); }

  int loops_at(int v) const {
    int c = 0;
    for (const auto& e : edges)
      if (e.first == v && e.second == v) ++c;
    return c;
  }

  int total_genus() const {
    int s = std::accumulate(genus.begin(), genus.end(), 0);
    return s + num_edges() - num_vertices() + 1;
  }

  bool is_connected() const {
    std::vector<int> parent(num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : edges) parent[find(e.first)] = find(e.second);
    for (int v = 0; v < num_vertices(); ++v)
      if (find(v) != find(0)) return false;
    return true;
  }

  bool is_stable() const {
    for (int v = 0; v < num_vertices(); ++v)
      if (2 * genus[v] - 2 + valence(v) <= 0) return false;
    return is_connected();
  }

  std::string encode() const {
    std::string out = "V:[";
    for (int v = 0; v < num_vertices(); ++v) out += (v ? "," : "") + std::to_string(genus[v]);
    out += "] L:[";
    for (int i = 0; i < num_legs(); ++i)
      out += (i ? ",(" : "(") + std::to_string(i + 1) + "," + std::to_string(leg_vertex[i]) + ")";
    out += "] E:[";
    for (int e = 0; e < num_edges(); ++e)
      out += (e ? ",(" : "(") + std::to_string(edges[e].first) + "," + std::to_string(edges[e].second) + ")";
    return out + "]";
  }

  friend bool operator==(const StableGraph& a, const StableGraph& b) {
    return a.genus == b.genus && a.leg_vertex == b.leg_vertex && a.edges == b.edges;
  }
  friend bool operator<(const StableGraph& a, const StableGraph& b) {
    return std::tie(a.genus, a.leg_vertex, a.edges) < std::tie(b.genus, b.leg_vertex, b.edges);
  }
};

inline StableGraph smooth_graph(int g, int n) {
  StableGraph s;
  s.genus = {g};
  s.leg_vertex.assign(n, 0);
  return s;
}

// Image of the graph under the vertex relabeling v -> perm[v].
inline StableGraph relabel(const StableGraph& gr, const std::vector<int>& perm) {
  StableGraph out;
  out.genus.assign(gr.num_vertices(), 0);
  for (int v = 0; v < gr.num_vertices(); ++v) out.genus[perm[v]] = gr.genus[v];
  for (int l : gr.leg_vertex) out.leg_vertex.push_back(perm[l]);
  for (const auto& e : gr.edges) out.edges.push_back({perm[e.first], perm[e.second]});
  out.normalize();
  return out;
}

namespace detail {

// Vertex classes by an isomorphism invariant, refined once by neighbour classes.
// Returns vertices grouped by class, classes in increasing invariant order.
inline std::vector<std::vector<int>> vertex_classes(const StableGraph& gr) {
  using Key = std::tuple<int, std::vector<int>, int, int>;
  int V = gr.num_vertices();
  std::vector<Key> base(V);
  for (int v = 0; v < V; ++v) {
    std::vector<int> legs;
    for (int i = 0; i < gr.num_legs(); ++i)
      if (gr.leg_vertex[i] == v) legs.push_back(i);
    base[v] = Key{gr.genus[v], legs, gr.loops_at(v), gr.valence(v)};
  }
  std::vector<Key> sorted = base;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> cls(V);
  for (int v = 0; v < V; ++v) cls[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), base[v]) - sorted.begin());

  using Refined = std::pair<int, std::vector<int>>;
  std::vector<Refined> refined(V);
  for (int v = 0; v < V; ++v) {
    std::vector<int> nb;
    for (const auto& e : gr.edges) {
      if (e.first == e.second) continue;
      if (e.first == v) nb.push_back(cls[e.second]);
      if (e.second == v) nb.push_back(cls[e.first]);
    }
    std::sort(nb.begin(), nb.end());
    refined[v] = {cls[v], nb};
  }
  std::map<Refined, std::vector<int>> groups;
  for (int v = 0; v < V; ++v) groups[refined[v]].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [k, vs] : groups) out.push_back(vs);
  return out;
}

// Calls f(perm) for every relabeling that sends each class onto its block of
// consecutive new indices.
template <class F>
void for_each_class_permutation(const std::vector<std::vector<int>>& classes, int V, F&& f) {
  std::vector<std::vector<int>> orders = classes;
  std::vector<int> start;
  int s = 0;
  for (const auto& c : classes) {
    start.push_back(s);
    s += static_cast<int>(c.size());
  }
  std::vector<int> perm(V);
  for (;;) {
    for (std::size_t c = 0; c < orders.size(); ++c)
      for (std::size_t k = 0; k < orders[c].size(); ++k) perm[orders[c][k]] = start[c] + static_cast<int>(k);
    f(perm);
    std::size_t c = 0;
    while (c < orders.size() && !std::next_permutation(orders[c].begin(), orders[c].end())) ++c;
    if (c == orders.size()) break;
  }
}

}  // namespace detail

inline StableGraph canonical_form(const StableGraph& gr) {
  StableGraph best;
  bool have = false;
  detail::for_each_class_permutation(detail::vertex_classes(gr), gr.num_vertices(), [&](const std::vector<int>& perm) {
    StableGraph img = relabel(gr, perm);
    if (!have || img < best) {
      best = std::move(img);
      have = true;
    }
  });
  return best;
}

// Vertex permutations perm with relabel(gr, perm) == gr.
inline std::vector<std::vector<int>> vertex_automorphisms(const StableGraph& gr) {
  StableGraph norm = gr;
  norm.normalize();
  std::vector<std::vector<int>> out;
  // classes are isomorphism invariant, so automorphisms permute within them
  auto classes = detail::vertex_classes(norm);
  std::vector<int> perm(norm.num_vertices(), -1);
  std::function<void(std::size_t)> go = [&](std::size_t c) {
    if (c == classes.size()) {
      if (relabel(norm, perm) == norm) out.push_back(perm);
      return;
    }
    std::vector<int> t = classes[c];
    do {
      for (std::size_t k = 0; k < t.size(); ++k) perm[classes[c][k]] = t[k];
      go(c + 1);
    } while (std::next_permutation(t.begin(), t.end()));
  };
  go(0);
  std::sort(out.begin(), out.end());
  return out;
}

struct GraphAutomorphism {
  std::vector<int> vertex_map;
  std::vector<int> half_edge_map;
};

// Full automorphisms (vertex map plus half-edge map fixing every leg).
inline std::vector<GraphAutomorphism> automorphisms(const StableGraph& input) {
  StableGraph gr = input;
  gr.normalize();
  int n = gr.num_legs();
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (int e = 0; e < gr.num_edges(); ++e) groups[gr.edges[e]].push_back(e);

  std::vector<GraphAutomorphism> out;
  for (const auto& vperm : vertex_automorphisms(gr)) {
    // choices per group: a bijection onto the target group and, for loops, flips
    std::vector<std::vector<std::vector<std::pair<int, int>>>> options;  // per group: list of (src->dst half maps)
    for (const auto& [ends, src] : groups) {
      std::pair<int, int> img{vperm[ends.first], vperm[ends.second]};
      bool flipped = img.first > img.second;
      if (flipped) std::swap(img.first, img.second);
      const std::vector<int>& dst = groups.at(img);
      bool loop = ends.first == ends.second;
      std::vector<std::vector<std::pair<int, int>>> group_options;
      std::vector<int> order = dst;
      do {
        int flips = loop ? (1 << src.size()) : 1;
        for (int mask = 0; mask < flips; ++mask) {
          std::vector<std::pair<int, int>> maps;
          for (std::size_t k = 0; k < src.size(); ++k) {
            int a = n + 2 * src[k], b = a + 1;
            int c = n + 2 * order[k], d = c + 1;
            bool swap = loop ? ((mask >> k) & 1) : flipped;
            maps.push_back({a, swap ? d : c});
            maps.push_back({b, swap ? c : d});
          }
          group_options.push_back(maps);
        }
      } while (std::next_permutation(order.begin(), order.end()));
      options.push_back(group_options);
    }
    std::vector<std::size_t> idx(options.size(), 0);
    for (;;) {
      GraphAutomorphism a;
      a.vertex_map = vperm;
      a.half_edge_map.resize(gr.num_half_edges());
      for (int i = 0; i < n; ++i) a.half_edge_map[i] = i;
      for (std::size_t g = 0; g < options.size(); ++g)
        for (const auto& [s, t] : options[g][idx[g]]) a.half_edge_map[s] = t;
      out.push_back(std::move(a));
      std::size_t g = 0;
      while (g < options.size() && ++idx[g] == options[g].size()) idx[g++] = 0;
      if (g == options.size()) break;
    }
  }
  return out;
}

// |Aut| = (#vertex automorphisms) * prod m_ab! * prod (m_vv! 2^{m_vv}).
inline long automorphism_order(const StableGraph& input) {
  StableGraph gr = input;
  gr.normalize();
  std::map<std::pair<int, int>, int> mult;
  for (const auto& e : gr.edges) mult[e]++;
  long factor = 1;
  for (const auto& [ends, m] : mult)
    for (int k = 1; k <= m; ++k) factor *= ends.first == ends.second ? 2 * k : k;
  return static_cast<long>(vertex_automorphisms(gr).size()) * factor;
}

inline StableGraph contract_edge(const StableGraph& gr, int e) {
  StableGraph out = gr;
  auto [a, b] = gr.edges[e];
  out.edges.erase(out.edges.begin() + e);
  if (a == b) {
    out.genus[a] += 1;
    return out;
  }
  out.genus[a] += gr.genus[b];
  out.genus.erase(out.genus.begin() + b);
  auto shift = [&](int v) { return v == b ? a : (v > b ? v - 1 : v); };
  for (int& l : out.leg_vertex) l = shift(l);
  for (auto& ed : out.edges) ed = {shift(ed.first), shift(ed.second)};
  out.normalize();
  return out;
}

namespace detail {

struct HalfEdgeForm {
  std::vector<int> genus;
  std::vector<int> vertex_of;
  std::vector<int> partner;  // -1 for legs
  std::vector<int> leg;      // leg index or -1
};

inline HalfEdgeForm to_half_edges(const StableGraph& gr) {
  HalfEdgeForm f;
  f.genus = gr.genus;
  for (int h = 0; h < gr.num_half_edges(); ++h) {
    f.vertex_of.push_back(gr.vertex_of(h));
    f.partner.push_back(gr.partner(h));
    f.leg.push_back(h < gr.num_legs() ? h : -1);
  }
  return f;
}

inline StableGraph from_half_edges(const HalfEdgeForm& f, int n) {
  StableGraph gr;
  gr.genus = f.genus;
  gr.leg_vertex.assign(n, 0);
  for (std::size_t h = 0; h < f.vertex_of.size(); ++h) {
    if (f.leg[h] >= 0)
      gr.leg_vertex[f.leg[h]] = f.vertex_of[h];
    else if (static_cast<int>(h) < f.partner[h])
      gr.edges.push_back({f.vertex_of[h], f.vertex_of[f.partner[h]]});
  }
  gr.normalize();
  return gr;
}

inline void add_edge(HalfEdgeForm& f, int a, int b) {
  int h = static_cast<int>(f.vertex_of.size());
  f.vertex_of.push_back(a);
  f.vertex_of.push_back(b);
  f.partner.push_back(h + 1);
  f.partner.push_back(h);
  f.leg.push_back(-1);
  f.leg.push_back(-1);
}

}  // namespace detail

// Canonical graphs obtained by adding one edge (the inverse of contracting one edge).
inline std::vector<StableGraph> degenerations(const StableGraph& gr) {
  std::set<StableGraph> out;
  int n = gr.num_legs();
  detail::HalfEdgeForm base = detail::to_half_edges(gr);
  for (int v = 0; v < gr.num_vertices(); ++v) {
    int g = gr.genus[v];
    if (g >= 1) {
      detail::HalfEdgeForm f = base;
      f.genus[v] -= 1;
      detail::add_edge(f, v, v);
      out.insert(canonical_form(detail::from_half_edges(f, n)));
    }
    std::vector<int> hs = gr.half_edges_at(v);
    int k = static_cast<int>(hs.size());
    int new_v = gr.num_vertices();
    for (int mask = 0; mask < (1 << k); ++mask) {
      if (k > 0 && !(mask & 1)) continue;  // the complementary split gives the same graph
      int size_a = __builtin_popcount(mask);
      for (int g1 = 0; g1 <= g; ++g1) {
        int g2 = g - g1;
        if (2 * g1 - 2 + size_a + 1 <= 0 || 2 * g2 - 2 + (k - size_a) + 1 <= 0) continue;
        detail::HalfEdgeForm f = base;
        f.genus[v] = g1;
        f.genus.push_back(g2);
        for (int i = 0; i < k; ++i)
          if (!((mask >> i) & 1)) f.vertex_of[hs[i]] = new_v;
        detail::add_edge(f, v, new_v);
        out.insert(canonical_form(detail::from_half_edges(f, n)));
      }
    }
  }
  return {out.begin(), out.end()};
}

// All stable graphs of type (g,n), ordered by edge count then canonical
// encoding, with the one-step degeneration relation between them.
struct GraphCatalog {
  int g = 0, n = 0;
  std::vector<StableGraph> graphs;
  std::vector<std::vector<int>> children;  // indices of one-step degenerations
  std::vector<long> aut_order;
};

inline std::unique_ptr<GraphCatalog> build_catalog(int g, int n) {
  require_stable(g, n);
  auto cat = std::make_unique<GraphCatalog>();
  cat->g = g;
  cat->n = n;
  std::vector<std::vector<StableGraph>> levels{{canonical_form(smooth_graph(g, n))}};
  for (;;) {
    std::set<StableGraph> next;
    for (const StableGraph& gr : levels.back())
      for (StableGraph& d : degenerations(gr)) next.insert(std::move(d));
    if (next.empty()) break;
    levels.emplace_back(next.begin(), next.end());
  }
  std::map<StableGraph, int> index;
  for (auto& level : levels) {
    std::sort(level.begin(), level.end(), [](const StableGraph& a, const StableGraph& b) { return a.encode() < b.encode(); });
    for (const StableGraph& gr : level) {
      index[gr] = static_cast<int>(cat->graphs.size());
      cat->graphs.push_back(gr);
    }
  }
  for (const StableGraph& gr : cat->graphs) {
    std::vector<int> ch;
    for (const StableGraph& d : degenerations(gr)) ch.push_back(index.at(d));
    std::sort(ch.begin(), ch.end());
    cat->children.push_back(ch);
    cat->aut_order.push_back(automorphism_order(gr));
  }
  return cat;
}

// Thread-safe memoized catalog.
inline const GraphCatalog& graph_catalog(int g, int n) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<GraphCatalog>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({g, n});
    if (it != cache.end()) return *it->second;
  }
  auto built = build_catalog(g, n);
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{g, n}];
  if (!slot) slot = std::move(built);
  return *slot;
}

inline std::vector<StableGraph> enumerate_stable_graphs(int g, int n) { return graph_catalog(g, n).graphs; }

// (h', h'') for every edge; the normal bundle of the stratum has Chern roots -psi_h' - psi_h''.
inline std::vector<std::pair<int, int>> stratum_normal_chern(const StableGraph& gr) {
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < gr.num_edges(); ++e) out.push_back({gr.num_legs() + 2 * e, gr.num_legs() + 2 * e + 1});
  return out;
}

}  // namespace cohft

#endif
