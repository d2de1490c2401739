#include "sgr/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sgr {

namespace {

std::string arc_text(const Universe& u, Dag::Arc a) {
  return u.name(a.first) + " -> " + u.name(a.second);
}

}  // namespace

Dag Dag::validate_acyclic(Universe u, std::vector<Arc> arcs) {
  const std::size_t n = u.size();
  for (const Arc& a : arcs) {
    if (a.first >= n || a.second >= n) {
      throw std::invalid_argument(
          "arc endpoint index " +
          std::to_string(std::max(a.first, a.second)) +
          " out of range for a universe of " + std::to_string(n) +
          " variables");
    }
    if (a.first == a.second) {
      throw std::invalid_argument("self arc on vertex '" + u.name(a.first) +
                                  "'");
    }
  }
  std::sort(arcs.begin(), arcs.end());
  const auto dup = std::adjacent_find(arcs.begin(), arcs.end());
  if (dup != arcs.end()) {
    throw std::invalid_argument("duplicate arc " + arc_text(u, *dup));
  }

  std::vector<std::size_t> indeg(n, 0);
  for (const Arc& a : arcs) ++indeg[a.second];

  // Kahn's algorithm, always taking the smallest-index ready vertex so the
  // topological order is deterministic.
  std::vector<bool> placed(n, false);
  std::vector<std::size_t> topo;
  topo.reserve(n);
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!placed[v] && indeg[v] == 0) {
        pick = v;
        break;
      }
    }
    if (pick == n) break;
    placed[pick] = true;
    topo.push_back(pick);
    for (const Arc& a : arcs) {
      if (a.first == pick) --indeg[a.second];
    }
  }

  if (topo.size() != n) {
    // Every unplaced vertex keeps an unplaced parent, so walking parents
    // from any of them must revisit a vertex; that walk is the reported
    // cycle.
    std::size_t start = 0;
    while (placed[start]) ++start;
    std::vector<std::size_t> walk{start};
    std::vector<std::size_t> seen_at(n, n);
    seen_at[start] = 0;
    for (;;) {
      std::size_t v = walk.back();
      std::size_t parent = n;
      for (const Arc& a : arcs) {
        if (a.second == v && !placed[a.first]) {
          parent = a.first;
          break;
        }
      }
      if (seen_at[parent] != n) {
        std::vector<std::size_t> cycle(walk.begin() + seen_at[parent],
                                       walk.end());
        // The walk followed arcs backwards; flip it, then start the cycle
        // at its smallest vertex so the message is deterministic.
        std::reverse(cycle.begin(), cycle.end());
        const auto low = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), low, cycle.end());
        std::string text = "cycle detected: ";
        for (std::size_t v2 : cycle) text += u.name(v2) + " -> ";
        text += u.name(cycle.front());
        throw std::invalid_argument(text);
      }
      seen_at[parent] = walk.size();
      walk.push_back(parent);
    }
  }

  return Dag(std::move(u), std::move(arcs));
}

Dag::Dag(Universe u, std::vector<Arc> arcs)
    : universe_(std::move(u)), arcs_(std::move(arcs)) {
  const std::size_t n = universe_.size();
  parents_.assign(n, VarSet{});
  children_.assign(n, VarSet{});
  for (const Arc& a : arcs_) {
    parents_[a.second] = parents_[a.second] | VarSet::single(a.first);
    children_[a.first] = children_[a.first] | VarSet::single(a.second);
  }

  std::vector<std::size_t> indeg(n, 0);
  for (const Arc& a : arcs_) ++indeg[a.second];
  std::vector<bool> placed(n, false);
  topo_.reserve(n);
  for (std::size_t round = 0; round < n; ++round) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!placed[v] && indeg[v] == 0) {
        placed[v] = true;
        topo_.push_back(v);
        for_each_member(children_[v], [&](std::size_t w) { --indeg[w]; });
        break;
      }
    }
  }

  desc_.assign(n, VarSet{});
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    VarSet d = VarSet::single(*it);
    for_each_member(children_[*it],
                    [&](std::size_t w) { d = d | desc_[w]; });
    desc_[*it] = d;
  }
}

namespace {

void validate_query(const Dag& g, VarSet x, VarSet y, VarSet z) {
  const VarSet all = g.universe().all();
  if (!x.subset_of(all) || !y.subset_of(all) || !z.subset_of(all)) {
    throw std::invalid_argument(
        "separation query uses variables outside the universe");
  }
  if (x.is_empty() || y.is_empty()) {
    throw std::invalid_argument(
        "separation query requires nonempty x and y sides");
  }
  if (x.intersects(y) || x.intersects(z) || y.intersects(z)) {
    throw std::invalid_argument(
        "separation query sets must be pairwise disjoint");
  }
}

// One reachability pass over (vertex, arrival direction) states.  Arriving
// "in" means the last arc pointed into the vertex (we came from a parent);
// arriving "out" means it pointed away (we came from a child).  A chain
// continues through a non-collider only when the vertex is outside z; a
// collider step (in-arrival, parent departure) is traversable when the
// vertex's descendant closure meets z, or unconditionally in the strong
// pass, where only blocking by presence of information counts.
bool reaches(const Dag& g, VarSet x, VarSet y, VarSet z, bool strong_pass) {
  VarSet seen_in{}, seen_out{};
  std::vector<std::pair<std::size_t, bool>> stack;

  auto visit = [&](std::size_t v, bool arrived_in) {
    VarSet& seen = arrived_in ? seen_in : seen_out;
    if (seen.contains(v)) return;
    seen = seen | VarSet::single(v);
    stack.emplace_back(v, arrived_in);
  };

  // Chain endpoints are never internal vertices, so the first step away
  // from x is unconstrained.
  for_each_member(x, [&](std::size_t v) {
    for_each_member(g.children(v), [&](std::size_t w) { visit(w, true); });
    for_each_member(g.parents(v), [&](std::size_t w) { visit(w, false); });
  });

  while (!stack.empty()) {
    const auto [v, arrived_in] = stack.back();
    stack.pop_back();
    if (y.contains(v)) return true;
    const bool through_ok = !z.contains(v);
    if (arrived_in) {
      if (through_ok) {
        for_each_member(g.children(v),
                        [&](std::size_t w) { visit(w, true); });
      }
      if (strong_pass || g.descendants_or_self(v).intersects(z)) {
        for_each_member(g.parents(v),
                        [&](std::size_t w) { visit(w, false); });
      }
    } else if (through_ok) {
      for_each_member(g.children(v), [&](std::size_t w) { visit(w, true); });
      for_each_member(g.parents(v), [&](std::size_t w) { visit(w, false); });
    }
  }
  return false;
}

}  // namespace

SeparationVerdict separation_query(const Dag& g, VarSet x, VarSet y,
                                   VarSet z) {
  validate_query(g, x, y, z);
  if (reaches(g, x, y, z, /*strong_pass=*/false)) {
    return SeparationVerdict::Connected;
  }
  if (reaches(g, x, y, z, /*strong_pass=*/true)) {
    return SeparationVerdict::Weak;
  }
  return SeparationVerdict::Strong;
}

namespace {

// Shared state of the chain enumeration: the current path, the direction
// of each arc along it, and the two verdicts-in-progress.
struct ChainSearch {
  const Dag& g;
  VarSet y, z;
  std::vector<std::size_t> path;
  // step_into[i]: the arc between path[i] and path[i+1] points into
  // path[i+1] (it was walked tail to head).
  std::vector<bool> step_into;
  VarSet on_path{};
  bool any_active = false;
  bool any_absence_only = false;

  // Scores path as one complete chain whose endpoint just reached y.
  void score() {
    bool presence = false;
    bool absence = false;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      const bool collider = step_into[i - 1] && !step_into[i];
      if (collider) {
        if (!g.descendants_or_self(path[i]).intersects(z)) absence = true;
      } else if (z.contains(path[i])) {
        presence = true;
      }
    }
    if (presence) return;
    if (absence) {
      any_absence_only = true;
    } else {
      any_active = true;
    }
  }

  void extend() {
    if (any_active) return;
    const std::size_t v = path.back();
    auto step = [&](std::size_t w, bool into) {
      if (any_active || on_path.contains(w)) return;
      path.push_back(w);
      step_into.push_back(into);
      on_path = on_path | VarSet::single(w);
      if (y.contains(w)) score();
      // Chains may run on through y members, so recurse regardless.
      extend();
      on_path = on_path - VarSet::single(w);
      step_into.pop_back();
      path.pop_back();
    };
    for_each_member(g.children(v), [&](std::size_t w) { step(w, true); });
    for_each_member(g.parents(v), [&](std::size_t w) { step(w, false); });
  }
};

}  // namespace

SeparationVerdict chain_oracle(const Dag& g, VarSet x, VarSet y, VarSet z,
                               std::size_t max_vars) {
  validate_query(g, x, y, z);
  if (g.size() > max_vars) {
    throw GuardExceeded("chain_oracle: universe of " +
                        std::to_string(g.size()) +
                        " variables exceeds the bound of " +
                        std::to_string(max_vars));
  }
  ChainSearch search{g, y, z, {}, {}, VarSet{}, false, false};
  for_each_member(x, [&](std::size_t v) {
    if (search.any_active) return;
    search.path.assign(1, v);
    search.step_into.clear();
    search.on_path = VarSet::single(v);
    search.extend();
  });
  if (search.any_active) return SeparationVerdict::Connected;
  if (search.any_absence_only) return SeparationVerdict::Weak;
  return SeparationVerdict::Strong;
}

std::pair<Relation, Relation> extract_models(const Dag& g,
                                             std::size_t max_vars) {
  if (g.size() > max_vars) {
    throw GuardExceeded("extract_models: universe of " +
                        std::to_string(g.size()) +
                        " variables exceeds the bound of " +
                        std::to_string(max_vars));
  }
  Relation model(g.universe());
  Relation strong(g.universe());
  for (const Triplet& t : enumerate_canonical_triplets(g.universe())) {
    switch (separation_query(g, t.x(), t.y(), t.z())) {
      case SeparationVerdict::Strong:
        model.insert(t);
        strong.insert(t);
        break;
      case SeparationVerdict::Weak:
        model.insert(t);
        break;
      case SeparationVerdict::Connected:
        break;
    }
  }
  return {std::move(model), std::move(strong)};
}

std::optional<Triplet> terminal_saturated(const Dag& g) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!g.children(v).is_empty()) continue;
    const VarSet self = VarSet::single(v);
    const VarSet rest = g.universe().all() - self - g.parents(v);
    if (rest.is_empty()) continue;
    return Triplet::canonical(self, rest, g.parents(v));
  }
  return std::nullopt;
}

std::map<std::size_t, Side> classify_external(const Dag& g, const Triplet& t) {
  if (separation_query(g, t.x(), t.y(), t.z()) != SeparationVerdict::Strong) {
    throw std::invalid_argument(
        "classify_external requires a strongly separated triplet");
  }
  std::map<std::size_t, Side> sides;
  const VarSet outside = g.universe().all() - t.span();
  for_each_member(outside, [&](std::size_t v) {
    const VarSet gamma = VarSet::single(v);
    const bool x_side = separation_query(g, t.x() | gamma, t.y(), t.z()) ==
                        SeparationVerdict::Strong;
    const bool y_side = separation_query(g, t.x(), t.y() | gamma, t.z()) ==
                        SeparationVerdict::Strong;
    if (x_side && y_side) {
      sides.emplace(v, Side::Both);
    } else if (x_side) {
      sides.emplace(v, Side::XSide);
    } else if (y_side) {
      sides.emplace(v, Side::YSide);
    } else {
      // A strongly separated pair admits every external variable on at
      // least one side; reaching here means the query engine is broken.
      throw std::logic_error(
          "external variable fits neither side of a strong separation");
    }
  });
  return sides;
}

}  // namespace sgr
