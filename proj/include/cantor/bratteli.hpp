#pragma once

#include "cantor/towers.hpp"

namespace cantor {

/// Graded graph: V_0 is a singleton root; E_n connects V_{n-1} to V_n.
/// Edges into each vertex carry a total order (the pass order of towers).
struct BratteliDiagram {
  struct Edge {
    int source = 0;  // vertex index in V_{n-1}
    int range = 0;   // vertex index in V_n
    int order = 0;   // position among edges into `range`
  };

  std::vector<int> level_sizes;          // |V_0|, |V_1|, ...
  std::vector<std::vector<Edge>> edges;  // edges[n] = E_{n+1}
  bool from_nested = false;              // wrap-around of the Vershik map allowed

  int depth() const { return static_cast<int>(edges.size()); }
  std::vector<int> edges_into(int level, int vertex) const;  // edge ids sorted by order
  void validate() const;
};

struct PathPrefix {
  std::vector<int> edges;  // edge ids, edges[n] indexes d.edges[n]
};

BratteliDiagram bratteli_from_nested(const NestedKRSequence& seq);

/// Keeps the levels m_0 = 0 < m_1 < ...; new edges are paths, ordered
/// lexicographically with the deepest original edge most significant.
BratteliDiagram telescope(const BratteliDiagram& d, const std::vector<int>& levels);

struct VershikResult {
  enum class Kind { step, needs_more_levels, wrap_to_minimal } kind;
  PathPrefix path;  // successor (step) or the minimal prefix (wrap)
};

VershikResult vershik_step(const BratteliDiagram& d, const PathPrefix& p);

/// Matrix M_n of edge multiplicities (rows: V_{n+1}, cols: V_n).
std::vector<std::vector<std::vector<long long>>> incidence_matrices(const BratteliDiagram& d);

std::vector<long long> pushforward(const BratteliDiagram& d, std::vector<long long> v, int from,
                                   int to);

}  // namespace cantor
