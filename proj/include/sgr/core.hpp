#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sgr {

// Thrown when a desk-scale algorithm is invoked above its configured
// universe-size bound.  Callers can raise the bound explicitly; nothing is
// ever truncated silently.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A subset of variable indices, stored as a 64-bit mask.  All set algebra
// the library needs is a handful of bit operations.
struct VarSet {
  std::uint64_t bits = 0;

  static constexpr VarSet single(std::size_t index) {
    return VarSet{std::uint64_t{1} << index};
  }
  static VarSet of(std::initializer_list<std::size_t> indices);
  // The set {0, 1, ..., n-1}.
  static constexpr VarSet first_n(std::size_t n) {
    return n >= 64 ? VarSet{~std::uint64_t{0}}
                   : VarSet{(std::uint64_t{1} << n) - 1};
  }

  constexpr bool is_empty() const { return bits == 0; }
  constexpr std::size_t count() const {
    return static_cast<std::size_t>(std::popcount(bits));
  }
  constexpr bool contains(std::size_t index) const {
    return (bits >> index) & 1u;
  }
  constexpr bool subset_of(VarSet other) const {
    return (bits & ~other.bits) == 0;
  }
  constexpr bool intersects(VarSet other) const {
    return (bits & other.bits) != 0;
  }
  std::vector<std::size_t> members() const;

  friend constexpr VarSet operator|(VarSet a, VarSet b) {
    return VarSet{a.bits | b.bits};
  }
  friend constexpr VarSet operator&(VarSet a, VarSet b) {
    return VarSet{a.bits & b.bits};
  }
  friend constexpr VarSet operator-(VarSet a, VarSet b) {
    return VarSet{a.bits & ~b.bits};
  }
  auto operator<=>(const VarSet&) const = default;
};

// Calls f(s) for every subset s of mask, in increasing bit-pattern order,
// starting with the empty set and ending with mask itself.
template <typename F>
void for_each_subset(VarSet mask, F&& f) {
  std::uint64_t sub = 0;
  while (true) {
    f(VarSet{sub});
    if (sub == mask.bits) break;
    sub = (sub - mask.bits) & mask.bits;
  }
}

template <typename F>
void for_each_member(VarSet s, F&& f) {
  std::uint64_t b = s.bits;
  while (b != 0) {
    f(static_cast<std::size_t>(std::countr_zero(b)));
    b &= b - 1;
  }
}

// An ordered collection of distinct variable names; index i refers to the
// i-th name.  At most 64 variables so index sets fit in a VarSet.
class Universe {
 public:
  static constexpr std::size_t kMaxVars = 64;

  explicit Universe(std::vector<std::string> names,
                    std::size_t max_vars = kMaxVars);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  VarSet all() const { return VarSet::first_n(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  // Comma-separated member names in index order; empty set renders as "".
  std::string render(VarSet s) const;

  bool operator==(const Universe&) const = default;

 private:
  std::vector<std::string> names_;
};

// An independence statement <x,y|z> in canonical orientation: x and y are
// nonempty and pairwise disjoint from each other and from z, and x precedes
// y when their bitmasks are compared as integers.  The symmetry axiom is
// thereby structural: a statement and its mirror are the same value.
class Triplet {
 public:
  static Triplet canonical(VarSet x, VarSet y, VarSet z);

  VarSet x() const { return x_; }
  VarSet y() const { return y_; }
  VarSet z() const { return z_; }
  VarSet span() const { return x_ | y_ | z_; }
  bool saturated(VarSet universe_all) const { return span() == universe_all; }

  auto operator<=>(const Triplet&) const = default;

 private:
  Triplet(VarSet x, VarSet y, VarSet z) : x_(x), y_(y), z_(z) {}
  VarSet x_, y_, z_;
};

// "x ; y | z" with comma-joined sides; an empty z leaves nothing after
// the bar.
std::string render_triplet(const Universe& u, const Triplet& t);

enum class DominanceOrder { o_dominance, s_dominance };

// True iff u lies in w's cone under the respective order, i.e. u is
// derivable from w by decomposition plus weak union (o) or decomposition
// plus strong union (s).  Both checks are reflexive and test both
// orientations of the pair, so canonicalization never hides a dominance.
bool o_dominates(const Triplet& w, const Triplet& u);
bool s_dominates(const Triplet& w, const Triplet& u);
bool dominates(DominanceOrder order, const Triplet& w, const Triplet& u);

// The elements of ts not strictly dominated by another element of ts.
// The result is an antichain and every input element is dominated by some
// retained element.
std::set<Triplet> maximal_elements(const std::set<Triplet>& ts,
                                   DominanceOrder order);

// Every canonical triplet over the universe, sorted.  Grows as 4^|V|; the
// desk-scale callers guard their universe sizes before using it.
std::vector<Triplet> enumerate_canonical_triplets(const Universe& u);

// A finite set of independence statements over one universe, together with
// the subset currently flagged stable.  An empty stable set means no
// statement has been declared or classified stable.
struct Relation {
  Universe universe;
  std::set<Triplet> triplets;
  std::set<Triplet> stable;

  explicit Relation(Universe u) : universe(std::move(u)) {}

  // Inserts t, optionally flagging it stable.  A statement inserted both
  // ways keeps the stable flag: declaring stability asserts strictly more.
  void insert(const Triplet& t, bool mark_stable = false);
  bool contains(const Triplet& t) const { return triplets.count(t) > 0; }
  bool is_stable(const Triplet& t) const { return stable.count(t) > 0; }
  std::set<Triplet> unstable_part() const;

  bool operator==(const Relation&) const = default;
};

}  // namespace sgr
