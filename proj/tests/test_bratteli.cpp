#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "helpers.hpp"
#include "cantor/bratteli.hpp"

using namespace cantor;
using namespace cantor::testing;

namespace {

BratteliDiagram dyadic_diagram(int depth) {
  auto sp = dyadic(depth);
  return bratteli_from_nested(nested_sequence(sp, sp->designated_point(), depth));
}

// digit expansion value of a single-vertex-per-level path prefix
long long decode(const BratteliDiagram& d, const PathPrefix& p) {
  long long value = 0, weight = 1;
  for (size_t n = 0; n < p.edges.size(); ++n) {
    value += weight * d.edges[n][static_cast<size_t>(p.edges[n])].order;
    weight *= static_cast<long long>(d.edges[n].size());
  }
  return value;
}

PathPrefix backward_extremal(const BratteliDiagram& d, int length, int vertex, bool maximal) {
  PathPrefix p;
  p.edges.assign(static_cast<size_t>(length), 0);
  for (int n = length; n >= 1; --n) {
    auto ids = d.edges_into(n, vertex);
    p.edges[static_cast<size_t>(n - 1)] = maximal ? ids.back() : ids.front();
    vertex = d.edges[static_cast<size_t>(n - 1)][static_cast<size_t>(p.edges[n - 1])].source;
  }
  return p;
}

}  // namespace

TEST_CASE("odometer diagrams have one vertex per level with ratio multiplicities") {
  auto d = dyadic_diagram(3);
  CHECK(d.level_sizes == std::vector<int>{1, 1, 1, 1});
  for (auto& layer : d.edges) {
    CHECK(layer.size() == 2);
    std::set<int> orders;
    for (auto& e : layer) {
      CHECK(e.source == 0);
      orders.insert(e.order);
    }
    CHECK(orders == std::set<int>{0, 1});
  }

  SpaceSpec s;
  s.kind = SpaceKind::odometer;
  s.ratios = {3, 2};
  auto sp = make_space(s);
  auto d32 = bratteli_from_nested(nested_sequence(sp, sp->designated_point(), 2));
  CHECK(d32.edges[0].size() == 3);
  CHECK(d32.edges[1].size() == 2);
}

TEST_CASE("edge order follows the pass order through lower towers") {
  auto sp = dyadic(3);
  auto seq = nested_sequence(sp, sp->designated_point(), 3);
  auto d = bratteli_from_nested(seq);
  // the level-2 tower (height 4) passes the level-1 tower (height 2) at k = 0 and k = 2
  auto& base2 = seq.levels[1].towers[0].base;
  auto& base1 = seq.levels[0].towers[0].base;
  CHECK(base2.subset_of(base1));
  CHECK(base2.shifted(2).subset_of(base1));
  REQUIRE(d.edges[1].size() == 2);
  CHECK(d.edges[1][0].order == 0);
  CHECK(d.edges[1][1].order == 1);
}

TEST_CASE("substitution diagrams validate and count paths by heights") {
  auto sp = fibonacci();
  auto seq = nested_sequence(sp, sp->designated_point(), 3);
  auto d = bratteli_from_nested(seq);
  d.validate();
  REQUIRE(d.depth() == 3);
  for (int n = 1; n <= d.depth(); ++n) {
    auto counts = pushforward(d, {1}, 0, n);
    REQUIRE(counts.size() == seq.levels[static_cast<size_t>(n - 1)].towers.size());
    for (size_t v = 0; v < counts.size(); ++v)
      CHECK(counts[v] == seq.levels[static_cast<size_t>(n - 1)].towers[v].height);
  }
}

TEST_CASE("diagram validation rejects broken order data") {
  auto d = dyadic_diagram(2);
  auto broken = d;
  broken.edges[0][1].order = 0;
  CHECK_THROWS_WITH_AS(broken.validate(), doctest::Contains("ValidationError"), error);
  auto gap = d;
  gap.edges[1].pop_back();
  gap.edges[1].pop_back();
  CHECK_THROWS_WITH_AS(gap.validate(), doctest::Contains("ValidationError"), error);
}

TEST_CASE("telescoping merges layers and multiplies incidence matrices") {
  auto d = dyadic_diagram(3);
  auto t = telescope(d, {0, 2});
  CHECK(t.level_sizes == std::vector<int>{1, 1});
  CHECK(t.edges[0].size() == 4);
  auto ms = incidence_matrices(t);
  CHECK(ms[0] == std::vector<std::vector<long long>>{{4}});

  auto full = telescope(d, {0, 1, 2, 3});
  CHECK(incidence_matrices(full) == incidence_matrices(d));

  auto twice = telescope(telescope(d, {0, 2, 3}), {0, 2});
  CHECK(incidence_matrices(twice)[0] == std::vector<std::vector<long long>>{{8}});
  CHECK(incidence_matrices(telescope(d, {0, 3}))[0] == std::vector<std::vector<long long>>{{8}});

  CHECK_THROWS_WITH_AS(telescope(d, {1, 3}), doctest::Contains("BadSubsequence"), error);
  CHECK_THROWS_WITH_AS(telescope(d, {0, 2, 2}), doctest::Contains("BadSubsequence"), error);
  CHECK_THROWS_WITH_AS(telescope(d, {0, 5}), doctest::Contains("BadSubsequence"), error);
}

TEST_CASE("telescoping preserves path counts on substitution diagrams") {
  auto sp = fibonacci();
  auto d = bratteli_from_nested(nested_sequence(sp, sp->designated_point(), 4));
  auto t = telescope(d, {0, 2, 4});
  t.validate();
  CHECK(pushforward(t, {1}, 0, 2) == pushforward(d, {1}, 0, 4));
}

TEST_CASE("successor is the little-endian adding machine") {
  auto d = dyadic_diagram(3);
  PathPrefix p = backward_extremal(d, 3, 0, false);
  for (long long v = 0; v < 7; ++v) {
    CHECK(decode(d, p) == v);
    auto res = vershik_step(d, p);
    REQUIRE(res.kind == VershikResult::Kind::step);
    p = res.path;
  }
  CHECK(decode(d, p) == 7);
  auto wrap = vershik_step(d, p);
  REQUIRE(wrap.kind == VershikResult::Kind::wrap_to_minimal);
  CHECK(decode(d, wrap.path) == 0);

  auto cut = d;
  cut.from_nested = false;
  CHECK(vershik_step(cut, p).kind == VershikResult::Kind::needs_more_levels);
}

TEST_CASE("successor exhaustively at depth 6 and on random deeper prefixes") {
  auto d = dyadic_diagram(6);
  PathPrefix p = backward_extremal(d, 6, 0, false);
  for (long long v = 0; v < 63; ++v) {
    CHECK(decode(d, p) == v);
    auto res = vershik_step(d, p);
    REQUIRE(res.kind == VershikResult::Kind::step);
    p = res.path;
  }
  CHECK(vershik_step(d, p).kind == VershikResult::Kind::wrap_to_minimal);

  auto sp = odo23();
  auto od = bratteli_from_nested(nested_sequence(sp, sp->designated_point(), 6));
  long long total = 1;
  for (auto& layer : od.edges) total *= static_cast<long long>(layer.size());
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    int L = 1 + static_cast<int>(rng() % 6);
    PathPrefix q;
    long long weight = 1, value = 0;
    for (int n = 0; n < L; ++n) {
      int e = static_cast<int>(rng() % od.edges[static_cast<size_t>(n)].size());
      q.edges.push_back(e);
      value += weight * od.edges[static_cast<size_t>(n)][static_cast<size_t>(e)].order;
      weight *= static_cast<long long>(od.edges[static_cast<size_t>(n)].size());
    }
    auto res = vershik_step(od, q);
    if (value + 1 < weight) {
      REQUIRE(res.kind == VershikResult::Kind::step);
      CHECK(decode(od, res.path) == value + 1);
      CHECK(res.path.edges.size() == q.edges.size());
    } else {
      CHECK(res.kind == VershikResult::Kind::wrap_to_minimal);
      CHECK(decode(od, res.path) == 0);
    }
  }
}

TEST_CASE("successor fixes the terminal vertex and enumerates a tower") {
  auto sp = fibonacci();
  auto seq = nested_sequence(sp, sp->designated_point(), 2);
  auto d = bratteli_from_nested(seq);
  for (size_t v = 0; v < seq.levels[1].towers.size(); ++v) {
    PathPrefix p = backward_extremal(d, 2, static_cast<int>(v), false);
    long long steps = 0;
    while (true) {
      auto res = vershik_step(d, p);
      if (res.kind != VershikResult::Kind::step) break;
      CHECK(d.edges[1][static_cast<size_t>(res.path.edges[1])].range == static_cast<int>(v));
      p = res.path;
      ++steps;
    }
    CHECK(steps == seq.levels[1].towers[v].height - 1);
  }
}

TEST_CASE("incomposable prefixes are rejected") {
  auto sp = fibonacci();
  auto d = bratteli_from_nested(nested_sequence(sp, sp->designated_point(), 3));
  CHECK_THROWS_WITH_AS(vershik_step(d, {{}}), doctest::Contains("IncomposablePrefix"), error);
  CHECK_THROWS_WITH_AS(vershik_step(d, {{0, 0, 0, 0}}), doctest::Contains("IncomposablePrefix"),
                       error);
  CHECK_THROWS_WITH_AS(vershik_step(d, {{99}}), doctest::Contains("IncomposablePrefix"), error);
  // find a genuinely mismatched consecutive pair if one exists
  for (size_t e0 = 0; e0 < d.edges[0].size(); ++e0)
    for (size_t e1 = 0; e1 < d.edges[1].size(); ++e1)
      if (d.edges[1][e1].source != d.edges[0][e0].range) {
        CHECK_THROWS_WITH_AS(vershik_step(d, {{static_cast<int>(e0), static_cast<int>(e1)}}),
                             doctest::Contains("IncomposablePrefix"), error);
        return;
      }
}

TEST_CASE("pushforward length and range checks") {
  auto d = dyadic_diagram(3);
  CHECK(pushforward(d, {3}, 0, 3) == std::vector<long long>{24});
  CHECK(pushforward(d, {5}, 1, 1) == std::vector<long long>{5});
  CHECK_THROWS_WITH_AS(pushforward(d, {1, 2}, 0, 2), doctest::Contains("ValidationError"), error);
  CHECK_THROWS_WITH_AS(pushforward(d, {1}, 0, 9), doctest::Contains("BadSubsequence"), error);
}
