#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sgr/core.hpp"

namespace sgr {

// Universe-size bound for whole-model extraction (one query per canonical
// triplet, 4^|V| growth).
inline constexpr std::size_t kModelGuard = 7;
// Universe-size bound for the literal chain-enumeration oracle.
inline constexpr std::size_t kChainOracleGuard = 8;

// A directed acyclic graph over a universe.  Construction rejects self
// arcs, duplicate arcs, out-of-range endpoints and cycles (reporting one
// offending cycle), and precomputes a topological order plus per-vertex
// descendant closures.
class Dag {
 public:
  using Arc = std::pair<std::size_t, std::size_t>;

  static Dag validate_acyclic(Universe u, std::vector<Arc> arcs);

  const Universe& universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }
  VarSet parents(std::size_t v) const { return parents_.at(v); }
  VarSet children(std::size_t v) const { return children_.at(v); }
  bool has_arc(std::size_t tail, std::size_t head) const {
    return children_.at(tail).contains(head);
  }
  // The vertex itself plus everything reachable from it.
  VarSet descendants_or_self(std::size_t v) const { return desc_.at(v); }
  std::span<const std::size_t> topological_order() const { return topo_; }
  std::span<const Arc> arcs() const { return arcs_; }

  bool operator==(const Dag&) const = default;

 private:
  Dag(Universe u, std::vector<Arc> arcs);

  Universe universe_;
  std::vector<Arc> arcs_;
  std::vector<VarSet> parents_;
  std::vector<VarSet> children_;
  std::vector<VarSet> desc_;
  std::vector<std::size_t> topo_;
};

// Three-way separation verdict.  A chain is blocked by presence of
// information when some internal non-collider lies in the conditioning
// set; it can also be blocked by a collider whose descendant closure
// misses the conditioning set (absence of information).  Strong means
// every chain is blocked by presence, Weak means separated but only with
// the help of some absence-blocked chain, Connected means some chain is
// active.
enum class SeparationVerdict { Strong, Weak, Connected };

// Decides the verdict with two reachability passes over (vertex, arrival
// direction) states: a standard active-trail pass for separation, and a
// second pass in which colliders are always traversable, which fails
// exactly when some chain avoids presence-blocking.
SeparationVerdict separation_query(const Dag& g, VarSet x, VarSet y, VarSet z);

// Ground-truth verdict by enumerating every simple chain between the two
// sides and scoring its blocking pattern directly.  Exponential; guarded.
SeparationVerdict chain_oracle(const Dag& g, VarSet x, VarSet y, VarSet z,
                               std::size_t max_vars = kChainOracleGuard);

// All separated canonical triplets (first) and the strongly separated
// subset (second).
std::pair<Relation, Relation> extract_models(const Dag& g,
                                             std::size_t max_vars = kModelGuard);

// The saturated statement <x, V-x-parents(x) | parents(x)> for the
// smallest-index sink x whose remainder is nonempty, if any sink qualifies.
std::optional<Triplet> terminal_saturated(const Dag& g);

// For a strongly separated <X,Y|Z>, reports for every external variable g
// which side it can join with strong separation preserved.
enum class Side { XSide, YSide, Both };
std::map<std::size_t, Side> classify_external(const Dag& g, const Triplet& t);

}  // namespace sgr
