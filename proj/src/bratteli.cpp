#include "cantor/bratteli.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace cantor {

std::vector<int> BratteliDiagram::edges_into(int level, int vertex) const {
  std::vector<int> ids;
  auto& layer = edges[static_cast<size_t>(level - 1)];
  for (size_t e = 0; e < layer.size(); ++e)
    if (layer[e].range == vertex) ids.push_back(static_cast<int>(e));
  std::sort(ids.begin(), ids.end(),
            [&](int a, int b) { return layer[static_cast<size_t>(a)].order < layer[static_cast<size_t>(b)].order; });
  return ids;
}

void BratteliDiagram::validate() const {
  if (level_sizes.empty() || level_sizes[0] != 1) fail(errc::validation_error, "root level must be a singleton");
  if (edges.size() + 1 != level_sizes.size()) fail(errc::validation_error, "level/edge layer mismatch");
  for (int n = 0; n < depth(); ++n) {
    std::vector<bool> has_out(static_cast<size_t>(level_sizes[n]), false);
    for (auto& e : edges[static_cast<size_t>(n)]) {
      if (e.source < 0 || e.source >= level_sizes[n] || e.range < 0 || e.range >= level_sizes[n + 1])
        fail(errc::validation_error, "edge endpoint out of range");
      has_out[static_cast<size_t>(e.source)] = true;
    }
    for (bool b : has_out)
      if (!b) fail(errc::validation_error, "vertex without outgoing edges");
    for (int v = 0; v < level_sizes[n + 1]; ++v) {
      auto ids = edges_into(n + 1, v);
      if (ids.empty()) fail(errc::validation_error, "vertex without incoming edges");
      for (size_t i = 0; i < ids.size(); ++i)
        if (edges[static_cast<size_t>(n)][static_cast<size_t>(ids[i])].order != static_cast<int>(i))
          fail(errc::validation_error, "incoming edge orders are not 0..m-1");
    }
  }
}

BratteliDiagram bratteli_from_nested(const NestedKRSequence& seq) {
  if (seq.levels.empty()) fail(errc::trace_failure, "empty nested sequence");
  BratteliDiagram d;
  d.from_nested = true;
  d.level_sizes.push_back(1);
  for (auto& kr : seq.levels) d.level_sizes.push_back(static_cast<int>(kr.towers.size()));
  d.edges.resize(seq.levels.size());

  // root layer: the level-1 towers pass the trivial height-1 tower once per level
  for (size_t j = 0; j < seq.levels[0].towers.size(); ++j)
    for (long long k = 0; k < seq.levels[0].towers[j].height; ++k)
      d.edges[0].push_back({0, static_cast<int>(j), static_cast<int>(k)});

  for (size_t n = 1; n < seq.levels.size(); ++n) {
    const KRPartition& prev = seq.levels[n - 1];
    const KRPartition& cur = seq.levels[n];
    for (size_t j = 0; j < cur.towers.size(); ++j) {
      long long k = 0, h = cur.towers[j].height;
      int pass = 0;
      while (k < h) {
        ClopenSet slab = cur.towers[j].base.shifted(k);
        int hit = -1;
        for (size_t i = 0; i < prev.towers.size(); ++i)
          if (slab.subset_of(prev.towers[i].base)) {
            hit = static_cast<int>(i);
            break;
          }
        if (hit < 0) fail(errc::trace_failure, "tower pass does not start on a previous base");
        d.edges[n].push_back({hit, static_cast<int>(j), pass++});
        k += prev.towers[static_cast<size_t>(hit)].height;
      }
      if (k != h) fail(errc::trace_failure, "tower passes do not sum to the height");
    }
  }
  d.validate();
  return d;
}

BratteliDiagram telescope(const BratteliDiagram& d, const std::vector<int>& levels) {
  if (levels.empty() || levels[0] != 0) fail(errc::bad_subsequence, "subsequence must start at the root level");
  for (size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1] || levels[i] > d.depth())
      fail(errc::bad_subsequence, "levels must be strictly increasing within the diagram");

  BratteliDiagram out;
  out.from_nested = d.from_nested;
  for (int m : levels) out.level_sizes.push_back(d.level_sizes[static_cast<size_t>(m)]);
  out.edges.resize(levels.size() - 1);

  for (size_t t = 0; t + 1 < levels.size(); ++t) {
    int lo = levels[t], hi = levels[t + 1];
    // all paths lo -> hi as (source, range, order digits deepest-first)
    struct Path {
      int source, range;
      std::vector<int> digits;
    };
    std::vector<Path> paths;
    struct Frame {
      int vertex;
      std::vector<int> digits;
    };
    for (int v = 0; v < d.level_sizes[static_cast<size_t>(lo)]; ++v) {
      std::vector<Frame> frontier{{v, {}}};
      for (int n = lo; n < hi; ++n) {
        std::vector<Frame> next;
        for (auto& fr : frontier)
          for (auto& e : d.edges[static_cast<size_t>(n)])
            if (e.source == fr.vertex) {
              Frame g{e.range, fr.digits};
              g.digits.insert(g.digits.begin(), e.order);  // deepest edge first
              next.push_back(std::move(g));
            }
        frontier = std::move(next);
      }
      for (auto& fr : frontier) paths.push_back({v, fr.vertex, fr.digits});
    }
    // order within each range fiber: lexicographic, deepest edge most significant
    std::stable_sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) {
      if (a.range != b.range) return a.range < b.range;
      return a.digits < b.digits;
    });
    std::map<int, int> next_order;
    for (auto& p : paths) out.edges[t].push_back({p.source, p.range, next_order[p.range]++});
  }
  out.validate();
  return out;
}

namespace {

// vertex on every deep-enough extremal path at `level`, when unambiguous
std::optional<int> extremal_vertex(const BratteliDiagram& d, int level, bool maximal) {
  std::set<int> candidates;
  for (int v = 0; v < d.level_sizes.back(); ++v) {
    int cur = v;
    for (int n = d.depth(); n > level; --n) {
      auto ids = d.edges_into(n, cur);
      cur = d.edges[static_cast<size_t>(n - 1)][static_cast<size_t>(maximal ? ids.back() : ids.front())].source;
    }
    candidates.insert(cur);
  }
  if (candidates.size() != 1) return std::nullopt;
  return *candidates.begin();
}

// the all-minimal / all-maximal prefix of the given length ending at `vertex`
PathPrefix extremal_prefix(const BratteliDiagram& d, int length, int vertex, bool maximal) {
  PathPrefix p;
  p.edges.assign(static_cast<size_t>(length), 0);
  int cur = vertex;
  for (int n = length; n >= 1; --n) {
    auto ids = d.edges_into(n, cur);
    int e = maximal ? ids.back() : ids.front();
    p.edges[static_cast<size_t>(n - 1)] = e;
    cur = d.edges[static_cast<size_t>(n - 1)][static_cast<size_t>(e)].source;
  }
  return p;
}

}  // namespace

VershikResult vershik_step(const BratteliDiagram& d, const PathPrefix& p) {
  if (p.edges.empty() || static_cast<int>(p.edges.size()) > d.depth())
    fail(errc::incomposable_prefix, "prefix length out of range");
  int L = static_cast<int>(p.edges.size());
  for (int n = 0; n < L; ++n) {
    auto& layer = d.edges[static_cast<size_t>(n)];
    if (p.edges[static_cast<size_t>(n)] < 0 || p.edges[static_cast<size_t>(n)] >= static_cast<int>(layer.size()))
      fail(errc::incomposable_prefix, "edge id out of range");
    if (n > 0) {
      auto& prev = d.edges[static_cast<size_t>(n - 1)][static_cast<size_t>(p.edges[static_cast<size_t>(n - 1)])];
      if (layer[static_cast<size_t>(p.edges[static_cast<size_t>(n)])].source != prev.range)
        fail(errc::incomposable_prefix, "consecutive edges do not compose");
    }
  }

  for (int n = 0; n < L; ++n) {
    auto& e = d.edges[static_cast<size_t>(n)][static_cast<size_t>(p.edges[static_cast<size_t>(n)])];
    auto fiber = d.edges_into(n + 1, e.range);
    auto pos = std::find(fiber.begin(), fiber.end(), p.edges[static_cast<size_t>(n)]) - fiber.begin();
    if (pos + 1 < static_cast<long>(fiber.size())) {
      int succ = fiber[static_cast<size_t>(pos + 1)];
      int src = d.edges[static_cast<size_t>(n)][static_cast<size_t>(succ)].source;
      VershikResult res{VershikResult::Kind::step, extremal_prefix(d, n, src, false)};
      res.path.edges.push_back(succ);
      for (int m = n + 1; m < L; ++m) res.path.edges.push_back(p.edges[static_cast<size_t>(m)]);
      return res;
    }
  }

  // all edges maximal: wrap only when the extremal truncations are forced
  if (d.from_nested) {
    auto vmax = extremal_vertex(d, L, true);
    auto vmin = extremal_vertex(d, L, false);
    int terminal = d.edges[static_cast<size_t>(L - 1)][static_cast<size_t>(p.edges.back())].range;
    if (vmax && vmin && *vmax == terminal)
      return {VershikResult::Kind::wrap_to_minimal, extremal_prefix(d, L, *vmin, false)};
  }
  return {VershikResult::Kind::needs_more_levels, {}};
}

std::vector<std::vector<std::vector<long long>>> incidence_matrices(const BratteliDiagram& d) {
  std::vector<std::vector<std::vector<long long>>> ms;
  for (int n = 0; n < d.depth(); ++n) {
    std::vector<std::vector<long long>> m(static_cast<size_t>(d.level_sizes[n + 1]),
                                          std::vector<long long>(static_cast<size_t>(d.level_sizes[n]), 0));
    for (auto& e : d.edges[static_cast<size_t>(n)]) ++m[static_cast<size_t>(e.range)][static_cast<size_t>(e.source)];
    ms.push_back(std::move(m));
  }
  return ms;
}

std::vector<long long> pushforward(const BratteliDiagram& d, std::vector<long long> v, int from,
                                   int to) {
  if (from < 0 || to < from || to > d.depth()) fail(errc::bad_subsequence, "bad level range");
  if (static_cast<int>(v.size()) != d.level_sizes[static_cast<size_t>(from)])
    fail(errc::validation_error, "vector length does not match the level");
  auto ms = incidence_matrices(d);
  for (int n = from; n < to; ++n) {
    std::vector<long long> w(static_cast<size_t>(d.level_sizes[n + 1]), 0);
    for (size_t i = 0; i < w.size(); ++i)
      for (size_t j = 0; j < v.size(); ++j) w[i] += ms[static_cast<size_t>(n)][i][j] * v[j];
    v = std::move(w);
  }
  return v;
}

}  // namespace cantor
