#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sgr/closure.hpp"
#include "sgr/core.hpp"
#include "sgr/graph.hpp"
#include "support/testutil.hpp"

using namespace sgr;
using sgrtest::random_dag;
using sgrtest::tri;
using sgrtest::uni;
using sgrtest::vs;

namespace {

Dag dag(const Universe& u, const std::vector<Dag::Arc>& arcs) {
  return Dag::validate_acyclic(u, arcs);
}

}  // namespace

TEST_CASE("dag construction and adjacency") {
  const Universe u = uni("abc");
  const Dag chain = dag(u, {{0, 1}, {1, 2}});
  CHECK(chain.parents(2) == vs(u, "b"));
  CHECK(chain.children(0) == vs(u, "b"));
  CHECK(chain.has_arc(0, 1));
  CHECK(!chain.has_arc(1, 0));
  CHECK(chain.descendants_or_self(0) == vs(u, "abc"));
  CHECK(chain.descendants_or_self(2) == vs(u, "c"));
  const auto topo = chain.topological_order();
  CHECK(std::vector<std::size_t>(topo.begin(), topo.end()) ==
        std::vector<std::size_t>{0, 1, 2});
  CHECK_NOTHROW(dag(uni("a"), {}));
}

TEST_CASE("dag validation rejects bad arc lists") {
  const Universe u = uni("abc");
  CHECK_THROWS_WITH_AS(dag(u, {{0, 1}, {1, 0}}),
                       "cycle detected: a -> b -> a", std::invalid_argument);
  CHECK_THROWS_AS(dag(u, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(dag(u, {{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(dag(u, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("separation verdicts on the textbook graphs") {
  const Universe u = uni("abc");
  const Dag chain = dag(u, {{0, 1}, {1, 2}});
  CHECK(separation_query(chain, vs(u, "a"), vs(u, "c"), vs(u, "b")) ==
        SeparationVerdict::Strong);
  CHECK(separation_query(chain, vs(u, "a"), vs(u, "c"), {}) ==
        SeparationVerdict::Connected);

  const Dag collider = dag(u, {{0, 1}, {2, 1}});
  CHECK(separation_query(collider, vs(u, "a"), vs(u, "c"), {}) ==
        SeparationVerdict::Weak);
  CHECK(separation_query(collider, vs(u, "a"), vs(u, "c"), vs(u, "b")) ==
        SeparationVerdict::Connected);

  const Universe u4 = uni("abcd");
  const Dag with_descendant = dag(u4, {{0, 1}, {2, 1}, {1, 3}});
  CHECK(separation_query(with_descendant, vs(u4, "a"), vs(u4, "c"),
                         vs(u4, "d")) == SeparationVerdict::Connected);

  const Dag fork = dag(u, {{1, 0}, {1, 2}});
  CHECK(separation_query(fork, vs(u, "a"), vs(u, "c"), vs(u, "b")) ==
        SeparationVerdict::Strong);
}

TEST_CASE("separation query validates its sides") {
  const Universe u = uni("abc");
  const Dag chain = dag(u, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(separation_query(chain, vs(u, "a"), vs(u, "ab"), {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(separation_query(chain, {}, vs(u, "b"), {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(separation_query(chain, vs(u, "a"), vs(u, "b"), vs(u, "b")),
                  std::invalid_argument);
}

TEST_CASE("chain oracle degenerate cases") {
  const Universe u = uni("abc");
  const Dag arc = dag(u, {{0, 1}});
  // A length-one chain has no internal vertex, so nothing can block it.
  CHECK(chain_oracle(arc, vs(u, "a"), vs(u, "b"), vs(u, "c")) ==
        SeparationVerdict::Connected);
  const Dag arcless = dag(u, {});
  CHECK(chain_oracle(arcless, vs(u, "a"), vs(u, "b"), {}) ==
        SeparationVerdict::Strong);
}

TEST_CASE("reachability agrees with the chain oracle") {
  std::mt19937 rng(37);
  for (int round = 0; round < 25; ++round) {
    const Dag g = random_dag(rng, 3 + round % 3, 0.45);
    for (const Triplet& t : enumerate_canonical_triplets(g.universe())) {
      const auto fast = separation_query(g, t.x(), t.y(), t.z());
      CHECK(fast == chain_oracle(g, t.x(), t.y(), t.z()));
      // Symmetry in the first two arguments.
      CHECK(fast == separation_query(g, t.y(), t.x(), t.z()));
    }
  }
}

TEST_CASE("strong separation survives conditioning-set growth") {
  std::mt19937 rng(41);
  for (int round = 0; round < 20; ++round) {
    const Dag g = random_dag(rng, 5, 0.4);
    const Universe& u = g.universe();
    for (const Triplet& t : enumerate_canonical_triplets(u)) {
      if (separation_query(g, t.x(), t.y(), t.z()) !=
          SeparationVerdict::Strong) {
        continue;
      }
      const VarSet rest = u.all() - t.span();
      for_each_subset(rest, [&](VarSet w) {
        CHECK(separation_query(g, t.x(), t.y(), t.z() | w) ==
              SeparationVerdict::Strong);
      });
    }
  }
}

TEST_CASE("strong separation composes over shared first sides") {
  std::mt19937 rng(43);
  for (int round = 0; round < 12; ++round) {
    const Dag g = random_dag(rng, 5, 0.4);
    const Universe& u = g.universe();
    const auto all = enumerate_canonical_triplets(u);
    for (const Triplet& a : all) {
      if (separation_query(g, a.x(), a.y(), a.z()) !=
          SeparationVerdict::Strong) {
        continue;
      }
      // Same x and z, disjoint other side: the union stays strong.
      for (const Triplet& b : all) {
        if (!(b.x() == a.x()) || !(b.z() == a.z()) || b.y().intersects(a.y())) {
          continue;
        }
        if (separation_query(g, b.x(), b.y(), b.z()) !=
            SeparationVerdict::Strong) {
          continue;
        }
        CHECK(separation_query(g, a.x(), a.y() | b.y(), a.z()) ==
              SeparationVerdict::Strong);
      }
    }
  }
}

TEST_CASE("strong separation is transitive over external singletons") {
  std::mt19937 rng(47);
  for (int round = 0; round < 20; ++round) {
    const Dag g = random_dag(rng, 5, 0.4);
    const Universe& u = g.universe();
    for (const Triplet& t : enumerate_canonical_triplets(u)) {
      if (separation_query(g, t.x(), t.y(), t.z()) !=
          SeparationVerdict::Strong) {
        continue;
      }
      for_each_member(u.all() - t.span(), [&](std::size_t v) {
        const VarSet g1 = VarSet::single(v);
        const bool left = separation_query(g, g1, t.y(), t.z()) ==
                          SeparationVerdict::Strong;
        const bool right = separation_query(g, t.x(), g1, t.z()) ==
                           SeparationVerdict::Strong;
        CHECK((left || right));
      });
    }
  }
}

TEST_CASE("strong separation satisfies intersection") {
  std::mt19937 rng(53);
  for (int round = 0; round < 12; ++round) {
    const Dag g = random_dag(rng, 5, 0.4);
    const Universe& u = g.universe();
    const auto all = enumerate_canonical_triplets(u);
    for (const Triplet& a : all) {
      // Read a as <x, y | z w> and search for a partner <x, w | z y>.
      for (const Triplet& b : all) {
        if (!(b.x() == a.x())) continue;
        const VarSet w = b.y();
        if (!w.subset_of(a.z())) continue;
        const VarSet z = a.z() - w;
        if (!(b.z() == (z | a.y()))) continue;
        if (separation_query(g, a.x(), a.y(), a.z()) !=
                SeparationVerdict::Strong ||
            separation_query(g, b.x(), b.y(), b.z()) !=
                SeparationVerdict::Strong) {
          continue;
        }
        CHECK(separation_query(g, a.x(), a.y() | w, z) ==
              SeparationVerdict::Strong);
      }
    }
  }
}

TEST_CASE("strongly separated sides are cut by the conditioning set") {
  // With z removed from the skeleton, no path may join the two sides.
  std::mt19937 rng(59);
  for (int round = 0; round < 20; ++round) {
    const Dag g = random_dag(rng, 5, 0.4);
    const Universe& u = g.universe();
    for (const Triplet& t : enumerate_canonical_triplets(u)) {
      if (separation_query(g, t.x(), t.y(), t.z()) !=
          SeparationVerdict::Strong) {
        continue;
      }
      VarSet frontier = t.x();
      VarSet seen = t.x();
      while (!frontier.is_empty()) {
        VarSet next{};
        for_each_member(frontier, [&](std::size_t v) {
          next = next | g.parents(v) | g.children(v);
        });
        next = (next - seen) - t.z();
        seen = seen | next;
        frontier = next;
      }
      CHECK(!seen.intersects(t.y()));
    }
  }
}

TEST_CASE("model extraction on the textbook graphs") {
  const Universe u = uni("abc");
  const auto [chain_m, chain_s] = extract_models(dag(u, {{0, 1}, {1, 2}}));
  CHECK(chain_m.triplets == std::set<Triplet>{tri(u, "a", "c", "b")});
  CHECK(chain_s.triplets == std::set<Triplet>{tri(u, "a", "c", "b")});

  const auto [coll_m, coll_s] = extract_models(dag(u, {{0, 1}, {2, 1}}));
  CHECK(coll_m.triplets == std::set<Triplet>{tri(u, "a", "c", "")});
  CHECK(coll_s.triplets.empty());

  const Universe u2 = uni("ab");
  const auto [arcless_m, arcless_s] = extract_models(dag(u2, {}));
  CHECK(arcless_m.triplets == std::set<Triplet>{tri(u2, "a", "b", "")});
  CHECK(arcless_s.triplets == arcless_m.triplets);
}

TEST_CASE("extracted models are closed and stability-coherent") {
  std::mt19937 rng(61);
  for (int round = 0; round < 15; ++round) {
    const Dag g = random_dag(rng, 4 + round % 2, 0.4);
    const auto [model, strong] = extract_models(g);
    for (const Triplet& t : strong.triplets) CHECK(model.contains(t));
    CHECK(is_sem_closed(model));
    const Relation classified = classify_stability(model);
    std::set<Triplet> stable_part;
    for (const Triplet& t : classified.triplets) {
      if (classified.is_stable(t)) stable_part.insert(t);
    }
    CHECK(stable_part == strong.triplets);
  }
}

TEST_CASE("terminal saturated statement extraction") {
  const Universe u = uni("abc");
  CHECK(terminal_saturated(dag(u, {{0, 1}, {1, 2}})) == tri(u, "a", "c", "b"));
  CHECK(!terminal_saturated(dag(u, {{0, 1}, {0, 2}, {1, 2}})).has_value());
  // Two sinks; the smaller index wins.
  CHECK(terminal_saturated(dag(u, {{0, 1}, {0, 2}})) == tri(u, "b", "c", "a"));
}

TEST_CASE("terminal statements are saturated members of the model") {
  std::mt19937 rng(67);
  for (int round = 0; round < 20; ++round) {
    const Dag g = random_dag(rng, 5, 0.5);
    const auto t = terminal_saturated(g);
    if (!t) continue;
    CHECK(t->saturated(g.universe().all()));
    CHECK(separation_query(g, t->x(), t->y(), t->z()) !=
          SeparationVerdict::Connected);
  }
}

TEST_CASE("external classification on the fork-with-parent graph") {
  const Universe u = uni("fxyz");
  // x -> z, z -> y, f -> z.
  const Dag g = dag(u, {{1, 3}, {3, 2}, {0, 3}});
  const Triplet t = tri(u, "x", "y", "z");
  REQUIRE(separation_query(g, t.x(), t.y(), t.z()) ==
          SeparationVerdict::Strong);
  const auto sides = classify_external(g, t);
  REQUIRE(sides.size() == 1);
  CHECK(sides.at(0) == Side::XSide);
}

TEST_CASE("isolated variables can join either side") {
  const Universe u = uni("wxyz");
  const Dag g = Dag::validate_acyclic(u, {{1, 3}, {3, 2}});
  const auto sides = classify_external(g, tri(u, "x", "y", "z"));
  CHECK(sides.at(0) == Side::Both);
}

TEST_CASE("classification requires strong separation") {
  const Universe u = uni("abc");
  const Dag collider = dag(u, {{0, 1}, {2, 1}});
  CHECK_THROWS_AS(classify_external(collider, tri(u, "a", "c", "b")),
                  std::invalid_argument);
}

TEST_CASE("every external variable joins at least one side") {
  std::mt19937 rng(71);
  for (int round = 0; round < 15; ++round) {
    const Dag g = random_dag(rng, 5, 0.4);
    for (const Triplet& t : enumerate_canonical_triplets(g.universe())) {
      if (separation_query(g, t.x(), t.y(), t.z()) !=
          SeparationVerdict::Strong) {
        continue;
      }
      // classify_external itself asserts a side exists for each variable;
      // reaching the end without a throw is the property.
      CHECK_NOTHROW(classify_external(g, t));
    }
  }
}
