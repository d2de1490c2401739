#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sgr/closure.hpp"
#include "sgr/core.hpp"
#include "sgr/graph.hpp"

namespace sgr {

// Universe-size bound for exhaustive quantifier enumeration in the
// condition checks.
inline constexpr std::size_t kConditionGuard = 6;
// Universe-size bound for the labeled-DAG search (29281 DAGs at five
// variables; the count explodes beyond that).
inline constexpr std::size_t kSearchGuard = 5;

// The testable necessary conditions for the existence of a directed
// perfect map: the seven classical closure conditions, transitivity on the
// stable part, and the two saturation scans over a dominant representation.
enum class ConditionId {
  C1,
  C2,
  C3,
  C4,
  C5,
  C6,
  C7,
  StableTransitivity,
  SaturatedODominant,
  AllSDominantsSaturated,
};

std::string_view condition_name(ConditionId id);

enum class CheckStatus { Pass, Fail, NotRun };

// A failing instantiation of a condition's quantifiers: the named variable
// sets bound at the point of failure, plus a rendered explanation.
// Replaying the bindings against the checked relation or representation
// reproduces the violation (see witness_reproduces).
struct Witness {
  std::vector<std::pair<std::string, VarSet>> sets;
  std::string detail;

  bool operator==(const Witness&) const = default;
};

struct ConditionEntry {
  ConditionId id;
  CheckStatus status = CheckStatus::NotRun;
  std::optional<Witness> witness;

  bool operator==(const ConditionEntry&) const = default;
};

struct ConditionReport {
  Universe universe;
  std::vector<ConditionEntry> entries;

  const ConditionEntry* find(ConditionId id) const;
  bool any_failed() const;

  bool operator==(const ConditionReport&) const = default;
};

// Checks C1 through C7 on a semi-graphoid-closed relation, enumerating the
// quantifiers exhaustively (set-valued for C1 to C5, singletons for C6 and
// C7).  Each failed condition carries the first witness in scan order.
ConditionReport check_conditions(const Relation& closed,
                                 std::size_t max_vars = kConditionGuard);

// Checks both transitivity forms on the stable part: for every stable
// <x,y|z> and external g, some statement of {<g,y|z>, <x,g|z>} must be
// stable, and likewise for {<xg,y|z>, <x,yg|z>}.  The input must carry the
// marks classify_stability would assign; declared-but-unclassified marks
// are rejected, since the check is only meaningful on the true stable part.
ConditionReport check_stable_transitivity(const Relation& classified,
                                          std::size_t max_vars = kConditionGuard);

struct SaturationOutcome {
  ConditionReport report;
  // Exactly |d_u| + |d_s|: both tests are single full scans with no early
  // exit, so the cost is linear in the representation size by count, not
  // merely bounded by it.
  std::size_t elements_scanned = 0;
};

// The two linear scans over a combined representation: some saturated
// statement must exist in the relation (a nonempty d_s supplies one), and
// every d_s element must be saturated.
SaturationOutcome saturation_tests(const Representation& rep);

// Re-evaluates a failed entry's witness bindings from scratch; true iff
// the violation is still present.  The Relation overload covers C1 to C7
// and StableTransitivity, the Representation overload the saturation
// tests.
bool witness_reproduces(const Relation& relation, const ConditionEntry& entry);
bool witness_reproduces(const Representation& rep, const ConditionEntry& entry);

// True iff the d-separations of g coincide exactly with closed.  The scan
// compares verdicts triplet by triplet and stops at the first mismatch.
bool is_pmap(const Dag& g, const Relation& closed,
             std::size_t max_vars = kModelGuard);

// Streams every labeled DAG over u in a fixed order: arc subsets of the
// complete digraph by ascending bitmask over arcs sorted (tail, head),
// filtered by acyclicity.  The callback returns false to stop early.
void for_each_labeled_dag(const Universe& u,
                          const std::function<bool(const Dag&)>& fn);

enum class PmapOutcome { NotIsomorphic, Inconclusive, IsomorphicWithWitness };

struct PMapVerdict {
  PmapOutcome outcome;
  // The first perfect map in enumeration order, when the search found one.
  std::optional<Dag> witness;
  ConditionReport report;
  // Number of DAGs the search examined (all of them when the outcome is
  // NotIsomorphic from an exhausted search).
  std::size_t dags_examined = 0;
};

// Exhaustive decision procedure: runs the full condition battery, then
// tries every labeled DAG.  The report is attached on both outcomes; when
// the search succeeds despite a failed condition, the report preserves
// that tension rather than hiding it.
PMapVerdict find_pmap(const Relation& closed,
                      std::size_t max_vars = kSearchGuard);

struct PmapGuards {
  std::size_t closure = kOracleGuard;
  std::size_t conditions = kConditionGuard;
  std::size_t search = kSearchGuard;
};

// End-to-end assessment of a partitioned input relation: close it, derive
// the true stability marks, build the combined representation from the
// declared partition, run every condition, and optionally run the
// exhaustive search.  Without the search, a failed necessary condition
// yields NotIsomorphic and a clean battery yields Inconclusive (no set of
// sufficient conditions is known).
struct PmapAssessment {
  Relation closed;
  Relation classified;
  Representation rep;
  PMapVerdict verdict;
  std::size_t representation_scans = 0;
};

PmapAssessment assess_pmap(const Relation& input, bool exhaustive,
                           PmapGuards guards = {});

}  // namespace sgr
