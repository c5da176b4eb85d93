// Copyright 2026 The minlin Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <array>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace minlin;
using minlin::testing::error_of;

namespace {

VertexSet all_of(const GroupLabelledGraph& g) {
  VertexSet x(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) x.set(v);
  return x;
}

GroupLabelledGraph cycle(int n, Int label, Int q) {
  GroupLabelledGraph g(n, q);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, label);
  return g;
}

std::vector<Step> walk(int n) {
  std::vector<Step> w;
  for (int i = 0; i < n; ++i) w.push_back({i, i});
  return w;
}

// Lambda is consistent on every kept edge inside X.
bool certificate_ok(const GroupLabelledGraph& g, const VertexSet& x, const EdgeSet& removed,
                    const BalanceResult& r) {
  const auto mask = edge_mask(g, removed);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (mask[e] || !inside(g, x, e)) continue;
    const auto& ed = g.edge(e);
    if (mod_reduce(ed.label * r.lambda[ed.u], g.modulus()) != r.lambda[ed.v]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cycle balance") {
  const auto c4 = cycle(4, 3, 4);
  CHECK(cycle_balanced(c4, walk(4)));
  const auto c3 = cycle(3, 3, 4);
  CHECK_FALSE(cycle_balanced(c3, walk(3)));

  GroupLabelledGraph two(2, 9);
  two.add_edge(0, 1, 2);
  two.add_edge(0, 1, 2);
  // Out along edge 0, back along edge 1: 2 * 2^{-1} = 1.
  CHECK(cycle_balanced(two, {{0, 0}, {1, 1}}));

  CHECK(error_of([&] { cycle_balanced(c3, {}); }) == ErrorKind::kNotACycle);
  CHECK(error_of([&] { cycle_balanced(c3, {{0, 0}, {2, 2}}); }) == ErrorKind::kNotACycle);
}

TEST_CASE("check_balanced") {
  SECTION("five-cycle with a chord") {
    auto g = cycle(5, 3, 4);
    g.add_edge(0, 2, 3);
    const auto x = all_of(g);
    CHECK_FALSE(check_balanced(g, x, EdgeSet{}).balanced);
    // Dropping 0-1 leaves the even cycle 0-2-3-4 and the path 1-2.
    const auto r = check_balanced(g, x, EdgeSet{0});
    REQUIRE(r.balanced);
    CHECK(certificate_ok(g, x, {0}, r));
  }
  SECTION("single vertex") {
    GroupLabelledGraph g(1, 8);
    const auto r = check_balanced(g, all_of(g), EdgeSet{});
    REQUIRE(r.balanced);
    CHECK(r.lambda == std::vector<Int>{1});
  }
  SECTION("six-clique") {
    GroupLabelledGraph g(6, 4);
    for (int u = 0; u < 6; ++u) {
      for (int v = u + 1; v < 6; ++v) g.add_edge(u, v, 3);
    }
    const auto r = check_balanced(g, all_of(g), EdgeSet{});
    REQUIRE_FALSE(r.balanced);
    CHECK(r.witness.size() == 3);
    CHECK_FALSE(cycle_balanced(g, r.witness));
  }
  SECTION("random graphs") {
    Rng rng(4);
    for (int t = 0; t < 300; ++t) {
      const Int q = std::array<Int, 4>{4, 8, 9, 27}[t % 4];
      const auto g = minlin::testing::random_graph(rng, 6, 7, q);
      VertexSet x(6);
      for (int v = 0; v < 6; ++v) {
        if (rng.coin()) x.set(v);
      }
      const auto r = check_balanced(g, x, EdgeSet{});
      if (r.balanced) {
        CHECK(certificate_ok(g, x, {}, r));
      } else {
        CHECK_FALSE(cycle_balanced(g, r.witness));
        for (const auto& s : r.witness) CHECK(inside(g, x, s.edge));
      }
    }
  }
}

TEST_CASE("subgraph cost") {
  auto g = cycle(5, 3, 4);
  g.add_edge(0, 2, 3);
  const int a = g.add_vertex(), b = g.add_vertex();
  g.add_edge(1, a, 1);
  g.add_edge(3, b, 1);
  VertexSet x(g.num_vertices());
  for (int v = 0; v < 5; ++v) x.set(v);
  CHECK(subgraph_cost(g, x, {1, 2, 3, 4, 5}) == 3);
  CHECK(subgraph_cost(g, all_of(g), {0, 1, 2, 3, 4, 5, 6, 7}) == 0);
  CHECK(boundary(g, x).size() == 2);

  GroupLabelledGraph star(4, 4);
  for (int v = 1; v < 4; ++v) star.add_edge(0, v, 1);
  VertexSet centre(4);
  centre.set(0);
  CHECK(subgraph_cost(star, centre, {}) == 3);
}

TEST_CASE("minimum cleaning sets") {
  GroupLabelledGraph bal(3, 4);
  bal.add_edge(0, 1, 3);
  bal.add_edge(1, 2, 3);
  auto r = min_cleaning_set(bal, all_of(bal), 2);
  REQUIRE(r);
  CHECK(r->empty());

  const auto c5 = cycle(5, 3, 4);
  r = min_cleaning_set(c5, all_of(c5), 2);
  REQUIRE(r);
  CHECK(r->size() == 1);
  CHECK_FALSE(min_cleaning_set(c5, all_of(c5), 0));

  GroupLabelledGraph bow(5, 4);
  bow.add_edge(0, 1, 3);
  bow.add_edge(1, 2, 3);
  bow.add_edge(2, 0, 3);
  bow.add_edge(0, 3, 3);
  bow.add_edge(3, 4, 3);
  bow.add_edge(4, 0, 3);
  r = min_cleaning_set(bow, all_of(bow), 3);
  REQUIRE(r);
  CHECK(r->size() == 2);
  CHECK(check_balanced(bow, all_of(bow), *r).balanced);
  CHECK_FALSE(min_cleaning_set(bow, all_of(bow), 1));
}

TEST_CASE("important subsets") {
  SECTION("isolated vertex") {
    GroupLabelledGraph g(1, 4);
    const auto s = enumerate_important_subsets(g, 0, 0);
    REQUIRE(s.size() == 1);
    CHECK(s[0].cost == 0);
    CHECK(s[0].x.count() == 1);
    CHECK(s[0].cleaning.empty());
  }
  SECTION("balanced path") {
    GroupLabelledGraph g(3, 4);
    g.add_edge(0, 1, 3);
    g.add_edge(1, 2, 1);
    const auto s = enumerate_important_subsets(g, 0, 1);
    REQUIRE(s.size() == 1);
    CHECK(s[0].x.count() == 3);
    CHECK(s[0].cost == 0);
  }
  SECTION("odd cycle") {
    const auto g = cycle(5, 3, 4);
    for (int v = 0; v < 5; ++v) {
      const auto s = enumerate_important_subsets(g, v, 1);
      REQUIRE(s.size() == 1);
      CHECK(s[0].x.count() == 5);
      CHECK(s[0].cost == 1);
      CHECK(s[0].cleaning.size() == 1);
    }
  }
  SECTION("no member is dominated") {
    Rng rng(8);
    for (int t = 0; t < 40; ++t) {
      const auto g = minlin::testing::random_graph(rng, 6, 7, 4);
      const int k = static_cast<int>(rng.below(3));
      const auto fam = important_family(g, k);
      for (const auto& a : fam) {
        CHECK(a.cost <= k);
        CHECK(subgraph_cost(g, a.x, [&] {
                EdgeSet kept;
                const auto drop = edge_mask(g, a.cleaning);
                for (int e : internal_edges(g, a.x)) {
                  if (!drop[e]) kept.push_back(e);
                }
                return kept;
              }()) == a.cost);
        CHECK(check_balanced(g, a.x, a.cleaning).balanced);
        for (const auto& b : fam) {
          if (&a == &b) continue;
          CHECK_FALSE((a.x.subset_of(b.x) && !(a.x == b.x) && b.cost <= a.cost));
        }
      }
    }
  }
}
