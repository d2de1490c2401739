#include "sgr/pmap.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <tuple>

namespace sgr {

std::string_view condition_name(ConditionId id) {
  switch (id) {
    case ConditionId::C1: return "C1";
    case ConditionId::C2: return "C2";
    case ConditionId::C3: return "C3";
    case ConditionId::C4: return "C4";
    case ConditionId::C5: return "C5";
    case ConditionId::C6: return "C6";
    case ConditionId::C7: return "C7";
    case ConditionId::StableTransitivity: return "stable_transitivity";
    case ConditionId::SaturatedODominant: return "saturated_o_dominant";
    case ConditionId::AllSDominantsSaturated:
      return "all_s_dominants_saturated";
  }
  throw std::logic_error("unknown condition id");
}

const ConditionEntry* ConditionReport::find(ConditionId id) const {
  for (const ConditionEntry& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

bool ConditionReport::any_failed() const {
  return std::any_of(entries.begin(), entries.end(), [](const auto& e) {
    return e.status == CheckStatus::Fail;
  });
}

namespace {

void check_guard(std::string_view what, std::size_t vars, std::size_t bound) {
  if (vars > bound) {
    throw GuardExceeded(std::string(what) + ": universe of " +
                        std::to_string(vars) +
                        " variables exceeds the bound of " +
                        std::to_string(bound));
  }
}

// A statement read in one of its two orientations; the scans below match
// quantifier patterns against these, so canonicalization never hides an
// instance.
struct Oriented {
  VarSet x, y, z;
};

std::vector<Oriented> oriented_statements(const Relation& r) {
  std::vector<Oriented> out;
  out.reserve(r.triplets.size() * 2);
  for (const Triplet& t : r.triplets) {
    out.push_back({t.x(), t.y(), t.z()});
    out.push_back({t.y(), t.x(), t.z()});
  }
  std::sort(out.begin(), out.end(), [](const Oriented& a, const Oriented& b) {
    return std::tie(a.x.bits, a.y.bits, a.z.bits) <
           std::tie(b.x.bits, b.y.bits, b.z.bits);
  });
  return out;
}

using Bindings = std::vector<std::pair<std::string, VarSet>>;

std::optional<Witness> scan_c1(const Relation& r) {
  for (const Triplet& t : r.triplets) {
    const bool canonical = !t.x().is_empty() && !t.y().is_empty() &&
                           !t.x().intersects(t.y()) &&
                           !t.x().intersects(t.z()) &&
                           !t.y().intersects(t.z()) && t.x().bits < t.y().bits;
    if (!canonical) {
      return Witness{Bindings{{"x", t.x()}, {"y", t.y()}, {"z", t.z()}},
                     "statement is not in canonical form"};
    }
  }
  return std::nullopt;
}

std::optional<Witness> scan_c2(const Relation& r,
                               const std::vector<Oriented>& os) {
  const Universe& u = r.universe;
  // Splitting off any part of the second side must stay in the relation.
  for (const Oriented& o : os) {
    std::optional<Witness> found;
    for_each_subset(o.y, [&](VarSet part) {
      if (found || part.is_empty() || part == o.y) return;
      const Triplet missing = Triplet::canonical(o.x, part, o.z);
      if (!r.contains(missing)) {
        found = Witness{
            Bindings{{"x", o.x}, {"y", part}, {"w", o.y - part}, {"z", o.z}},
            render_triplet(u, Triplet::canonical(o.x, o.y, o.z)) +
                " is present but " + render_triplet(u, missing) + " is not"};
      }
    });
    if (found) return found;
  }
  // Two statements sharing a side and a conditioning set must compose.
  for (const Oriented& a : os) {
    for (const Oriented& b : os) {
      if (a.x != b.x || a.z != b.z) continue;
      const Triplet joint = Triplet::canonical(a.x, a.y | b.y, a.z);
      if (!r.contains(joint)) {
        return Witness{
            Bindings{{"x", a.x}, {"y", a.y}, {"w", b.y}, {"z", a.z}},
            render_triplet(u, Triplet::canonical(a.x, a.y, a.z)) + " and " +
                render_triplet(u, Triplet::canonical(b.x, b.y, b.z)) +
                " are present but " + render_triplet(u, joint) + " is not"};
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> scan_c3(const Relation& r,
                               const std::vector<Oriented>& os) {
  // <x,y|zw> and <x,w|zy> must intersect to <x,yw|z>.
  for (const Oriented& a : os) {
    for (const Oriented& b : os) {
      if (a.x != b.x) continue;
      const VarSet w = b.y;
      if (!w.subset_of(a.z)) continue;
      const VarSet z = a.z - w;
      if (b.z != (z | a.y)) continue;
      const Triplet joint = Triplet::canonical(a.x, a.y | w, z);
      if (!r.contains(joint)) {
        return Witness{
            Bindings{{"x", a.x}, {"y", a.y}, {"w", w}, {"z", z}},
            render_triplet(r.universe, Triplet::canonical(a.x, a.y, a.z)) +
                " and " +
                render_triplet(r.universe, Triplet::canonical(b.x, b.y, b.z)) +
                " are present but " + render_triplet(r.universe, joint) +
                " is not"};
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> scan_c4(const Relation& r,
                               const std::vector<Oriented>& os) {
  // Any part of the second side may move into the conditioning set.
  for (const Oriented& o : os) {
    std::optional<Witness> found;
    for_each_subset(o.y, [&](VarSet moved) {
      if (found || moved.is_empty() || moved == o.y) return;
      const Triplet missing =
          Triplet::canonical(o.x, o.y - moved, o.z | moved);
      if (!r.contains(missing)) {
        found = Witness{Bindings{{"x", o.x},
                                 {"y", o.y - moved},
                                 {"w", moved},
                                 {"z", o.z}},
                        render_triplet(r.universe,
                                       Triplet::canonical(o.x, o.y, o.z)) +
                            " is present but " +
                            render_triplet(r.universe, missing) + " is not"};
      }
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<Witness> scan_c5(const Relation& r,
                               const std::vector<Oriented>& os) {
  // <x,y|z> and <x,w|yz> must contract to <x,yw|z>.
  for (const Oriented& a : os) {
    for (const Oriented& b : os) {
      if (a.x != b.x || b.z != (a.y | a.z)) continue;
      const Triplet joint = Triplet::canonical(a.x, a.y | b.y, a.z);
      if (!r.contains(joint)) {
        return Witness{
            Bindings{{"x", a.x}, {"y", a.y}, {"w", b.y}, {"z", a.z}},
            render_triplet(r.universe, Triplet::canonical(a.x, a.y, a.z)) +
                " and " +
                render_triplet(r.universe, Triplet::canonical(b.x, b.y, b.z)) +
                " are present but " + render_triplet(r.universe, joint) +
                " is not"};
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> scan_c6(const Relation& r) {
  const VarSet all = r.universe.all();
  for (const Triplet& t : r.triplets) {
    std::optional<Witness> found;
    for_each_member(all - t.span(), [&](std::size_t g) {
      if (found) return;
      const VarSet gamma = VarSet::single(g);
      if (!r.contains(Triplet::canonical(t.x(), t.y(), t.z() | gamma))) {
        return;
      }
      if (r.contains(Triplet::canonical(t.x(), gamma, t.z())) ||
          r.contains(Triplet::canonical(gamma, t.y(), t.z()))) {
        return;
      }
      found = Witness{
          Bindings{{"x", t.x()}, {"y", t.y()}, {"z", t.z()}, {"gamma", gamma}},
          render_triplet(r.universe, t) + " holds with and without " +
              r.universe.name(g) +
              " observed, yet neither side is independent of it"};
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<Witness> scan_c7(const Relation& r) {
  const std::size_t n = r.universe.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        for (std::size_t d = c + 1; d < n; ++d) {
          if (d == a || d == b) continue;
          const VarSet alpha = VarSet::single(a), beta = VarSet::single(b);
          const VarSet gamma = VarSet::single(c), delta = VarSet::single(d);
          if (!r.contains(Triplet::canonical(alpha, beta, gamma | delta)) ||
              !r.contains(Triplet::canonical(gamma, delta, alpha | beta))) {
            continue;
          }
          if (r.contains(Triplet::canonical(alpha, beta, gamma)) ||
              r.contains(Triplet::canonical(alpha, beta, delta))) {
            continue;
          }
          return Witness{Bindings{{"alpha", alpha},
                                  {"beta", beta},
                                  {"gamma", gamma},
                                  {"delta", delta}},
                         "neither " +
                             render_triplet(r.universe, Triplet::canonical(
                                                            alpha, beta, gamma)) +
                             " nor " +
                             render_triplet(r.universe, Triplet::canonical(
                                                            alpha, beta, delta)) +
                             " is present"};
        }
      }
    }
  }
  return std::nullopt;
}

ConditionEntry entry_of(ConditionId id, std::optional<Witness> w) {
  return ConditionEntry{
      id, w ? CheckStatus::Fail : CheckStatus::Pass, std::move(w)};
}

}  // namespace

ConditionReport check_conditions(const Relation& closed,
                                 std::size_t max_vars) {
  check_guard("check_conditions", closed.universe.size(), max_vars);
  if (!is_sem_closed(closed)) {
    throw std::invalid_argument(
        "check_conditions: relation is not semi-graphoid closed");
  }
  const std::vector<Oriented> os = oriented_statements(closed);
  ConditionReport report{closed.universe, {}};
  report.entries.push_back(entry_of(ConditionId::C1, scan_c1(closed)));
  report.entries.push_back(entry_of(ConditionId::C2, scan_c2(closed, os)));
  report.entries.push_back(entry_of(ConditionId::C3, scan_c3(closed, os)));
  report.entries.push_back(entry_of(ConditionId::C4, scan_c4(closed, os)));
  report.entries.push_back(entry_of(ConditionId::C5, scan_c5(closed, os)));
  report.entries.push_back(entry_of(ConditionId::C6, scan_c6(closed)));
  report.entries.push_back(entry_of(ConditionId::C7, scan_c7(closed)));
  return report;
}

ConditionReport check_stable_transitivity(const Relation& classified,
                                          std::size_t max_vars) {
  check_guard("check_stable_transitivity", classified.universe.size(),
              max_vars);
  if (!is_sem_closed(classified)) {
    throw std::invalid_argument(
        "check_stable_transitivity: relation is not semi-graphoid closed");
  }
  const Relation reference =
      classify_stability(classified, /*verify_closed=*/false);
  if (reference.stable != classified.stable) {
    throw std::invalid_argument(
        "check_stable_transitivity: stability marks do not match "
        "classification");
  }

  const Universe& u = classified.universe;
  const VarSet all = u.all();
  std::optional<Witness> found;
  for (const Triplet& t : classified.stable) {
    if (found) break;
    for_each_member(all - t.span(), [&](std::size_t g) {
      if (found) return;
      const VarSet gamma = VarSet::single(g);
      const bool single_form =
          classified.is_stable(Triplet::canonical(gamma, t.y(), t.z())) ||
          classified.is_stable(Triplet::canonical(t.x(), gamma, t.z()));
      if (!single_form) {
        found = Witness{
            Bindings{{"x", t.x()}, {"y", t.y()}, {"z", t.z()}, {"gamma", gamma}},
            "neither " +
                render_triplet(u, Triplet::canonical(gamma, t.y(), t.z())) +
                " nor " +
                render_triplet(u, Triplet::canonical(t.x(), gamma, t.z())) +
                " is stable"};
        return;
      }
      const bool extension_form =
          classified.is_stable(
              Triplet::canonical(t.x() | gamma, t.y(), t.z())) ||
          classified.is_stable(
              Triplet::canonical(t.x(), t.y() | gamma, t.z()));
      if (!extension_form) {
        found = Witness{
            Bindings{{"x", t.x()}, {"y", t.y()}, {"z", t.z()}, {"gamma", gamma}},
            "neither " +
                render_triplet(u,
                               Triplet::canonical(t.x() | gamma, t.y(), t.z())) +
                " nor " +
                render_triplet(u,
                               Triplet::canonical(t.x(), t.y() | gamma, t.z())) +
                " is stable"};
      }
    });
  }
  ConditionReport report{u, {}};
  report.entries.push_back(
      entry_of(ConditionId::StableTransitivity, std::move(found)));
  return report;
}

SaturationOutcome saturation_tests(const Representation& rep) {
  const VarSet all = rep.universe.all();
  std::size_t scanned = 0;

  // Both loops run to completion deliberately; the acceptance contract
  // counts one visit per element, no more and no fewer.
  bool unstable_saturated = false;
  for (const Triplet& t : rep.d_u) {
    ++scanned;
    if (t.saturated(all)) unstable_saturated = true;
  }
  std::optional<Triplet> offender;
  for (const Triplet& t : rep.d_s) {
    ++scanned;
    if (!t.saturated(all) && !offender) offender = t;
  }

  ConditionReport report{rep.universe, {}};
  if (!rep.d_s.empty() || unstable_saturated) {
    report.entries.push_back(
        ConditionEntry{ConditionId::SaturatedODominant, CheckStatus::Pass,
                       std::nullopt});
  } else {
    report.entries.push_back(ConditionEntry{
        ConditionId::SaturatedODominant, CheckStatus::Fail,
        Witness{{},
                "d_s is empty and no element of d_u is saturated, so the "
                "relation has no saturated statement"}});
  }
  if (offender) {
    report.entries.push_back(ConditionEntry{
        ConditionId::AllSDominantsSaturated, CheckStatus::Fail,
        Witness{Bindings{{"x", offender->x()},
                         {"y", offender->y()},
                         {"z", offender->z()}},
                render_triplet(rep.universe, *offender) +
                    " is maximally s-dominant but not saturated"}});
  } else {
    report.entries.push_back(
        ConditionEntry{ConditionId::AllSDominantsSaturated, CheckStatus::Pass,
                       std::nullopt});
  }
  return SaturationOutcome{std::move(report), scanned};
}

namespace {

VarSet bound(const Witness& w, std::string_view name) {
  for (const auto& [n, s] : w.sets) {
    if (n == name) return s;
  }
  throw std::logic_error("witness has no binding named '" +
                         std::string(name) + "'");
}

}  // namespace

bool witness_reproduces(const Relation& relation, const ConditionEntry& entry) {
  if (entry.status != CheckStatus::Fail || !entry.witness) return false;
  const Witness& w = *entry.witness;
  auto has = [&](VarSet x, VarSet y, VarSet z) {
    return relation.contains(Triplet::canonical(x, y, z));
  };
  switch (entry.id) {
    case ConditionId::C1:
      // Canonical form is enforced structurally, so a violating statement
      // cannot be materialized for replay.
      return false;
    case ConditionId::C2: {
      const VarSet x = bound(w, "x"), y = bound(w, "y"), v = bound(w, "w"),
                   z = bound(w, "z");
      const bool forward =
          has(x, y | v, z) && (!has(x, y, z) || !has(x, v, z));
      const bool backward =
          has(x, y, z) && has(x, v, z) && !has(x, y | v, z);
      return forward || backward;
    }
    case ConditionId::C3: {
      const VarSet x = bound(w, "x"), y = bound(w, "y"), v = bound(w, "w"),
                   z = bound(w, "z");
      return has(x, y, z | v) && has(x, v, z | y) && !has(x, y | v, z);
    }
    case ConditionId::C4: {
      const VarSet x = bound(w, "x"), y = bound(w, "y"), v = bound(w, "w"),
                   z = bound(w, "z");
      return has(x, y | v, z) && !has(x, y, z | v);
    }
    case ConditionId::C5: {
      const VarSet x = bound(w, "x"), y = bound(w, "y"), v = bound(w, "w"),
                   z = bound(w, "z");
      return has(x, y, z) && has(x, v, y | z) && !has(x, y | v, z);
    }
    case ConditionId::C6: {
      const VarSet x = bound(w, "x"), y = bound(w, "y"), z = bound(w, "z"),
                   gamma = bound(w, "gamma");
      return has(x, y, z) && has(x, y, z | gamma) && !has(x, gamma, z) &&
             !has(gamma, y, z);
    }
    case ConditionId::C7: {
      const VarSet alpha = bound(w, "alpha"), beta = bound(w, "beta"),
                   gamma = bound(w, "gamma"), delta = bound(w, "delta");
      return has(alpha, beta, gamma | delta) &&
             has(gamma, delta, alpha | beta) && !has(alpha, beta, gamma) &&
             !has(alpha, beta, delta);
    }
    case ConditionId::StableTransitivity: {
      const VarSet x = bound(w, "x"), y = bound(w, "y"), z = bound(w, "z"),
                   gamma = bound(w, "gamma");
      auto stable = [&](VarSet sx, VarSet sy, VarSet sz) {
        return relation.is_stable(Triplet::canonical(sx, sy, sz));
      };
      if (!stable(x, y, z)) return false;
      const bool single_form =
          stable(gamma, y, z) || stable(x, gamma, z);
      const bool extension_form =
          stable(x | gamma, y, z) || stable(x, y | gamma, z);
      return !single_form || !extension_form;
    }
    default:
      throw std::logic_error(
          "witness for a representation-level condition replayed against a "
          "relation");
  }
}

bool witness_reproduces(const Representation& rep,
                        const ConditionEntry& entry) {
  if (entry.status != CheckStatus::Fail || !entry.witness) return false;
  const VarSet all = rep.universe.all();
  switch (entry.id) {
    case ConditionId::SaturatedODominant: {
      if (!rep.d_s.empty()) return false;
      return std::none_of(rep.d_u.begin(), rep.d_u.end(), [&](const Triplet& t) {
        return t.saturated(all);
      });
    }
    case ConditionId::AllSDominantsSaturated: {
      const Witness& w = *entry.witness;
      const Triplet t = Triplet::canonical(bound(w, "x"), bound(w, "y"),
                                           bound(w, "z"));
      return rep.d_s.count(t) > 0 && !t.saturated(all);
    }
    default:
      throw std::logic_error(
          "witness for a relation-level condition replayed against a "
          "representation");
  }
}

bool is_pmap(const Dag& g, const Relation& closed, std::size_t max_vars) {
  if (g.universe() != closed.universe) {
    throw std::invalid_argument("is_pmap: graph and relation universes differ");
  }
  check_guard("is_pmap", g.size(), max_vars);
  for (const Triplet& t : enumerate_canonical_triplets(g.universe())) {
    const bool separated = separation_query(g, t.x(), t.y(), t.z()) !=
                           SeparationVerdict::Connected;
    if (separated != closed.contains(t)) return false;
  }
  return true;
}

void for_each_labeled_dag(const Universe& u,
                          const std::function<bool(const Dag&)>& fn) {
  const std::size_t n = u.size();
  check_guard("for_each_labeled_dag", n, 8);
  std::vector<Dag::Arc> slots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) slots.emplace_back(i, j);
    }
  }
  const std::size_t m = slots.size();

  std::vector<std::size_t> indeg(n);
  std::vector<bool> removed(n);
  const std::uint64_t limit = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    // Cheap acyclicity sieve before constructing anything.
    std::fill(indeg.begin(), indeg.end(), 0);
    for (std::size_t a = 0; a < m; ++a) {
      if ((mask >> a) & 1u) ++indeg[slots[a].second];
    }
    std::fill(removed.begin(), removed.end(), false);
    std::size_t placed = 0;
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (removed[v] || indeg[v] != 0) continue;
        removed[v] = true;
        ++placed;
        progress = true;
        for (std::size_t a = 0; a < m; ++a) {
          if (((mask >> a) & 1u) && slots[a].first == v) --indeg[slots[a].second];
        }
      }
    }
    if (placed != n) continue;

    std::vector<Dag::Arc> arcs;
    for (std::size_t a = 0; a < m; ++a) {
      if ((mask >> a) & 1u) arcs.push_back(slots[a]);
    }
    if (!fn(Dag::validate_acyclic(u, std::move(arcs)))) return;
  }
}

namespace {

ConditionReport run_battery(const Relation& closed, const Relation& classified,
                            const Representation& rep,
                            std::size_t condition_guard, std::size_t* scans) {
  ConditionReport report = check_conditions(closed, condition_guard);
  ConditionReport transitivity =
      check_stable_transitivity(classified, condition_guard);
  SaturationOutcome saturation = saturation_tests(rep);
  for (ConditionEntry& e : transitivity.entries) {
    report.entries.push_back(std::move(e));
  }
  for (ConditionEntry& e : saturation.report.entries) {
    report.entries.push_back(std::move(e));
  }
  if (scans != nullptr) *scans = saturation.elements_scanned;
  return report;
}

std::optional<Dag> search_dags(const Relation& closed, std::size_t* examined) {
  std::optional<Dag> hit;
  *examined = 0;
  for_each_labeled_dag(closed.universe, [&](const Dag& g) {
    ++*examined;
    if (is_pmap(g, closed)) {
      hit = g;
      return false;
    }
    return true;
  });
  return hit;
}

}  // namespace

PMapVerdict find_pmap(const Relation& closed, std::size_t max_vars) {
  check_guard("find_pmap", closed.universe.size(), max_vars);
  const Relation classified = classify_stability(closed);
  // The representation is rebuilt from the derived marks, not the declared
  // partition: the saturation scans are only meaningful against the true
  // stable part, and a caller's incomplete marks must not manufacture a
  // failure.
  const Representation rep = combined_representation(classified);
  ConditionReport report =
      run_battery(closed, classified, rep, kConditionGuard, nullptr);

  std::size_t examined = 0;
  std::optional<Dag> hit = search_dags(closed, &examined);
  if (hit) {
    return PMapVerdict{PmapOutcome::IsomorphicWithWitness, std::move(hit),
                       std::move(report), examined};
  }
  return PMapVerdict{PmapOutcome::NotIsomorphic, std::nullopt,
                     std::move(report), examined};
}

PmapAssessment assess_pmap(const Relation& input, bool exhaustive,
                           PmapGuards guards) {
  Relation closed = close_model(input, guards.closure);
  Relation classified = classify_stability(closed, true, guards.closure);
  Representation rep = combined_representation(input);
  std::size_t scans = 0;
  ConditionReport report =
      run_battery(closed, classified, rep, guards.conditions, &scans);

  PmapOutcome outcome = report.any_failed() ? PmapOutcome::NotIsomorphic
                                            : PmapOutcome::Inconclusive;
  std::optional<Dag> witness;
  std::size_t examined = 0;
  if (exhaustive) {
    check_guard("find_pmap", closed.universe.size(), guards.search);
    witness = search_dags(closed, &examined);
    // The search is ground truth, so its answer overrides the conditions
    // either way.
    outcome = witness ? PmapOutcome::IsomorphicWithWitness
                      : PmapOutcome::NotIsomorphic;
  }
  PMapVerdict verdict{outcome, std::move(witness), std::move(report),
                      examined};
  return PmapAssessment{std::move(closed), std::move(classified),
                        std::move(rep), std::move(verdict), scans};
}

}  // namespace sgr
