#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sgr/core.hpp"
#include "support/testutil.hpp"

using namespace sgr;
using sgrtest::tri;
using sgrtest::uni;
using sgrtest::vs;

TEST_CASE("varset basics") {
  const Universe u = uni("abcd");
  const VarSet ac = vs(u, "ac");
  CHECK(ac.count() == 2);
  CHECK(ac.contains(0));
  CHECK(!ac.contains(1));
  CHECK(ac.subset_of(vs(u, "abc")));
  CHECK(!vs(u, "abc").subset_of(ac));
  CHECK(ac.intersects(vs(u, "cd")));
  CHECK(!ac.intersects(vs(u, "bd")));
  CHECK((ac | vs(u, "b")) == vs(u, "abc"));
  CHECK((ac & vs(u, "cd")) == vs(u, "c"));
  CHECK((vs(u, "abc") - ac) == vs(u, "b"));
  CHECK(VarSet{}.is_empty());
  CHECK(ac.members() == std::vector<std::size_t>{0, 2});
}

TEST_CASE("subset enumeration is ascending and complete") {
  const Universe u = uni("abc");
  std::vector<VarSet> seen;
  for_each_subset(vs(u, "ac"), [&](VarSet s) { seen.push_back(s); });
  REQUIRE(seen.size() == 4);
  CHECK(seen[0] == VarSet{});
  CHECK(seen[1] == vs(u, "a"));
  CHECK(seen[2] == vs(u, "c"));
  CHECK(seen[3] == vs(u, "ac"));
}

TEST_CASE("universe naming") {
  const Universe u = uni("abc");
  CHECK(u.size() == 3);
  CHECK(u.name(1) == "b");
  CHECK(u.index_of("c") == 2);
  CHECK(!u.index_of("x").has_value());
  CHECK(u.all() == vs(u, "abc"));
  CHECK(u.render(vs(u, "ac")) == "a,c");
  CHECK(u.render(VarSet{}) == "");
}

TEST_CASE("universe rejects bad names") {
  CHECK_THROWS_AS(Universe({"a", "a"}), std::invalid_argument);
  CHECK_THROWS_AS(Universe({"a", ""}), std::invalid_argument);
  CHECK_THROWS_AS(Universe({}), std::invalid_argument);
}

TEST_CASE("canonical orientation puts the smaller side first") {
  const Universe u = uni("abcd");
  // Symmetry normalization: <b,a|c> and <a,b|c> are the same statement.
  CHECK(Triplet::canonical(vs(u, "b"), vs(u, "a"), vs(u, "c")) ==
        tri(u, "a", "b", "c"));
  // Idempotence.
  CHECK(Triplet::canonical(vs(u, "a"), vs(u, "b"), vs(u, "c")) ==
        tri(u, "a", "b", "c"));
  // Ordered-pair normalization on set-valued sides.
  const Triplet t = Triplet::canonical(vs(u, "cd"), vs(u, "ab"), VarSet{});
  CHECK(t.x() == vs(u, "ab"));
  CHECK(t.y() == vs(u, "cd"));
}

TEST_CASE("canonical rejects malformed statements") {
  const Universe u = uni("abc");
  CHECK_THROWS_AS(Triplet::canonical(VarSet{}, vs(u, "b"), VarSet{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Triplet::canonical(vs(u, "a"), VarSet{}, VarSet{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Triplet::canonical(vs(u, "ab"), vs(u, "b"), VarSet{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Triplet::canonical(vs(u, "a"), vs(u, "b"), vs(u, "b")),
                  std::invalid_argument);
}

TEST_CASE("triplet span and saturation") {
  const Universe u = uni("abcd");
  const Triplet t = tri(u, "a", "bc", "");
  CHECK(t.span() == vs(u, "abc"));
  CHECK(!t.saturated(u.all()));
  CHECK(tri(u, "a", "bc", "d").saturated(u.all()));
}

TEST_CASE("o-dominance examples") {
  const Universe u = uni("abcd");
  CHECK(o_dominates(tri(u, "a", "bc", ""), tri(u, "a", "b", "c")));
  // W={d} is not inside XYZ={a,b,c}.
  CHECK(!o_dominates(tri(u, "a", "bc", ""), tri(u, "a", "b", "d")));
  CHECK(o_dominates(tri(u, "a", "b", "c"), tri(u, "a", "b", "c")));
}

TEST_CASE("s-dominance examples") {
  const Universe u = uni("abcd");
  CHECK(s_dominates(tri(u, "a", "b", ""), tri(u, "a", "b", "cd")));
  CHECK(!s_dominates(tri(u, "a", "b", "c"), tri(u, "a", "b", "")));
  CHECK(s_dominates(tri(u, "ab", "c", ""), tri(u, "a", "c", "b")));
}

TEST_CASE("dominance respects both orientations") {
  // The derived statement can land with its sides swapped by
  // canonicalization; dominance must still see it.
  const Universe u = uni("abc");
  const Triplet w = tri(u, "a", "bc", "");
  const Triplet under = Triplet::canonical(vs(u, "c"), vs(u, "a"), vs(u, "b"));
  CHECK(o_dominates(w, under));
}

TEST_CASE("maximal elements") {
  const Universe u = uni("abcd");
  const std::set<Triplet> pair = {tri(u, "a", "b", "c"), tri(u, "a", "bc", "")};
  CHECK(maximal_elements(pair, DominanceOrder::o_dominance) ==
        std::set<Triplet>{tri(u, "a", "bc", "")});
  CHECK(maximal_elements({}, DominanceOrder::o_dominance).empty());
  const std::set<Triplet> incomparable = {tri(u, "a", "b", "cd"),
                                          tri(u, "c", "d", "ab")};
  CHECK(maximal_elements(incomparable, DominanceOrder::s_dominance) ==
        incomparable);
}

TEST_CASE("dominance is a partial order on canonical triplets") {
  const Universe u = uni("abcd");
  const std::vector<Triplet> all = enumerate_canonical_triplets(u);
  for (const auto order :
       {DominanceOrder::o_dominance, DominanceOrder::s_dominance}) {
    for (const Triplet& a : all) {
      CHECK(dominates(order, a, a));
      for (const Triplet& b : all) {
        if (dominates(order, a, b) && dominates(order, b, a)) {
          CHECK(a == b);
        }
        for (const Triplet& c : all) {
          if (dominates(order, a, b) && dominates(order, b, c)) {
            CHECK(dominates(order, a, c));
          }
        }
      }
    }
  }
}

TEST_CASE("o-dominance implies s-dominance") {
  const Universe u = uni("abcd");
  const std::vector<Triplet> all = enumerate_canonical_triplets(u);
  for (const Triplet& a : all) {
    for (const Triplet& b : all) {
      if (o_dominates(a, b)) CHECK(s_dominates(a, b));
    }
  }
}

TEST_CASE("maximal output is an antichain covering the input") {
  std::mt19937 rng(7);
  for (int round = 0; round < 40; ++round) {
    const Relation r = sgrtest::random_relation(rng, 4, 6);
    const std::set<Triplet> max =
        maximal_elements(r.triplets, DominanceOrder::o_dominance);
    for (const Triplet& m : max) {
      for (const Triplet& other : max) {
        if (!(m == other)) CHECK(!o_dominates(other, m));
      }
    }
    for (const Triplet& t : r.triplets) {
      CHECK(std::any_of(max.begin(), max.end(), [&](const Triplet& m) {
        return o_dominates(m, t);
      }));
    }
  }
}

TEST_CASE("canonical triplet enumeration is sorted and exact") {
  const Universe u3 = uni("abc");
  const std::vector<Triplet> all = enumerate_canonical_triplets(u3);
  // Three singleton pairs with a free third variable (2 choices of z each)
  // plus three singleton-versus-pair splits: 9 statements.
  CHECK(all.size() == 9);
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(std::set<Triplet>(all.begin(), all.end()).size() == all.size());
  CHECK(enumerate_canonical_triplets(uni("ab")).size() == 1);
}

TEST_CASE("relation insert keeps the strongest mark") {
  const Universe u = uni("abc");
  Relation r{u};
  r.insert(tri(u, "a", "b", ""), false);
  CHECK(!r.is_stable(tri(u, "a", "b", "")));
  r.insert(tri(u, "a", "b", ""), true);
  CHECK(r.is_stable(tri(u, "a", "b", "")));
  r.insert(tri(u, "a", "b", ""), false);
  CHECK(r.is_stable(tri(u, "a", "b", "")));
  CHECK(r.triplets.size() == 1);
  CHECK(r.unstable_part().empty());
}

TEST_CASE("render_triplet output") {
  const Universe u = uni("abcd");
  CHECK(render_triplet(u, tri(u, "ab", "c", "d")) == "a,b ; c | d");
  CHECK(render_triplet(u, tri(u, "a", "b", "")) == "a ; b |");
}
