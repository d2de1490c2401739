#pragma once

#include <cstddef>
#include <set>

#include "sgr/core.hpp"

namespace sgr {

// Universe-size bound for the brute-force closures and for exhaustive
// quantifier enumeration.  Closure sets grow roughly as 4^|V|.
inline constexpr std::size_t kOracleGuard = 6;

// Least superset of r closed under symmetry, decomposition, weak union and
// contraction.  Stable flags on input statements are carried through;
// derived statements are left unflagged.
Relation sem_close(const Relation& r, std::size_t max_vars = kOracleGuard);

// Least superset of r additionally closed under composition and strong
// union (the stable reading of the statements).
Relation stab_close(const Relation& r, std::size_t max_vars = kOracleGuard);

// One full sweep of the semi-graphoid rules; true iff no new statement is
// derivable, i.e. r is its own closure.
bool is_sem_closed(const Relation& r);

// The relation a partitioned input denotes: the semi-graphoid closure of
// (unstable part) together with the stable closure of (stable part).
// Statements derived inside the stable closure come back flagged stable.
Relation close_model(const Relation& r, std::size_t max_vars = kOracleGuard);

// Re-derives the stable flag of every statement of a closed relation from
// first principles: a statement is stable iff it remains present under
// every enlargement of its conditioning set.  Saturated statements are
// stable vacuously.  Closedness of the input is the caller's obligation;
// it is verified when the universe is within verify_guard.
Relation classify_stability(const Relation& closed, bool verify_closed = true,
                            std::size_t verify_guard = kOracleGuard);

// Maximally dominant statements of the respective closure of r, computed by
// a worklist fixpoint over contraction instantiations between cones (no
// universe-size guard; cost is governed by the dominant sets, not by 4^|V|).
// Within the oracle guard these agree exactly with maximal_elements() of
// the brute-force closure.
std::set<Triplet> sem_dominants(const Relation& r);
std::set<Triplet> stab_dominants(const Relation& r);

// Two-part cover of a partitioned relation: d_s are the stable dominants of
// the stable part, d_u the remaining o-dominants.  A statement is in the
// represented relation iff it is o-dominated by some d_u element or
// s-dominated by some d_s element.
struct Representation {
  Universe universe;
  std::set<Triplet> d_u;
  std::set<Triplet> d_s;

  bool operator==(const Representation&) const = default;
};

// Builds the representation of r.  Saturated statements in the unstable
// part are first promoted to the stable part (their conditioning set cannot
// grow, so the promotion never changes the represented relation).  d_u
// elements whose entire cone is covered by a stable cone are pruned.
Representation combined_representation(const Relation& r);

// Membership in the represented relation: one linear scan of d_u and d_s.
bool contains(const Representation& rep, const Triplet& t);

}  // namespace sgr
