#ifndef COHFT_STRATA_HPP
#define COHFT_STRATA_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "graphs.hpp"

namespace cohft {

// Dual-graph data of the component carrying the last leg.
struct SpecialType {
  int gamma_prime = 0;  // genus of the special component, loops included
  int nu_prime = 0;     // legs on the special vertex
  int k = 0;            // edges to other vertices
  int mu = 0;           // loops at the special vertex

  int codimension() const { return mu + k; }

  friend bool operator<(const SpecialType& a, const SpecialType& b) {
    return std::tie(a.gamma_prime, a.nu_prime, a.k, a.mu) < std::tie(b.gamma_prime, b.nu_prime, b.k, b.mu);
  }
  friend bool operator==(const SpecialType& a, const SpecialType& b) {
    return std::tie(a.gamma_prime, a.nu_prime, a.k, a.mu) == std::tie(b.gamma_prime, b.nu_prime, b.k, b.mu);
  }

  std::string to_string() const {
    return "(" + std::to_string(gamma_prime) + "," + std::to_string(nu_prime) + "," + std::to_string(k) + "," +
           std::to_string(mu) + ")";
  }
};

inline SpecialType special_type(const StableGraph& gr) {
  if (gr.num_legs() < 1) throw UnstablePair("special type needs at least one leg");
  int v = gr.leg_vertex.back();
  SpecialType t;
  for (int l : gr.leg_vertex)
    if (l == v) ++t.nu_prime;
  for (const auto& e : gr.edges) {
    if (e.first == v && e.second == v)
      ++t.mu;
    else if (e.first == v || e.second == v)
      ++t.k;
  }
  t.gamma_prime = gr.genus[v] + t.mu;
  return t;
}

inline std::vector<SpecialType> enumerate_special_types(int g, int n) {
  require_stable(g, n);
  if (n < 1) throw UnstablePair("special types need n >= 1");
  std::set<SpecialType> types;
  for (const StableGraph& gr : graph_catalog(g, n).graphs) types.insert(special_type(gr));
  return {types.begin(), types.end()};
}

struct SpecialOrder {
  std::vector<SpecialType> types;
  std::vector<std::vector<bool>> greater;  // greater[i][j]: types[i] > types[j]
  std::vector<std::pair<int, int>> hasse;  // covering relations (upper, lower)
  int maximum = -1;                        // index of the unique maximal type, -1 if none
};

// tau > tau' when a graph of type tau' arises from a graph of type tau by a
// nonempty sequence of degenerations.
inline SpecialOrder special_order(int g, int n) {
  const GraphCatalog& cat = graph_catalog(g, n);
  SpecialOrder out;
  out.types = enumerate_special_types(g, n);
  std::size_t T = out.types.size(), G = cat.graphs.size();
  std::vector<int> type_of(G);
  for (std::size_t i = 0; i < G; ++i)
    type_of[i] = static_cast<int>(std::lower_bound(out.types.begin(), out.types.end(), special_type(cat.graphs[i])) -
                                  out.types.begin());
  // graphs are stored by increasing edge count, so a reverse sweep closes reachability
  std::vector<std::vector<bool>> reach(G, std::vector<bool>(G, false));
  for (std::size_t i = G; i-- > 0;)
    for (int c : cat.children[i]) {
      reach[i][c] = true;
      for (std::size_t j = 0; j < G; ++j)
        if (reach[c][j]) reach[i][j] = true;
    }
  out.greater.assign(T, std::vector<bool>(T, false));
  for (std::size_t i = 0; i < G; ++i)
    for (std::size_t j = 0; j < G; ++j)
      if (reach[i][j] && type_of[i] != type_of[j]) out.greater[type_of[i]][type_of[j]] = true;
  for (std::size_t a = 0; a < T; ++a)
    for (std::size_t b = 0; b < T; ++b) {
      if (!out.greater[a][b]) continue;
      bool covered = true;
      for (std::size_t c = 0; c < T && covered; ++c)
        if (out.greater[a][c] && out.greater[c][b]) covered = false;
      if (covered) out.hasse.push_back({static_cast<int>(a), static_cast<int>(b)});
    }
  for (std::size_t a = 0; a < T; ++a) {
    bool top = true;
    for (std::size_t b = 0; b < T; ++b)
      if (b != a && !out.greater[a][b]) top = false;
    if (top) out.maximum = static_cast<int>(a);
  }
  return out;
}

}  // namespace cohft

#endif
