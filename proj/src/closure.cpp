#include "sgr/closure.hpp"

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

namespace sgr {

namespace {

void check_guard(const Universe& u, std::size_t max_vars, const char* what) {
  if (u.size() > max_vars) {
    throw GuardExceeded(std::string(what) + ": universe of " +
                        std::to_string(u.size()) +
                        " variables exceeds the bound of " +
                        std::to_string(max_vars));
  }
}

using Sides = std::array<std::pair<VarSet, VarSet>, 2>;

Sides orientations(const Triplet& t) {
  return {{{t.x(), t.y()}, {t.y(), t.x()}}};
}

// Decomposition and weak union: from <a,b|z> emit <a,u|z> and <a,u|(b-u)z>
// for every nonempty proper subset u of b, in both orientations.
template <typename Sink>
void unary_sem_steps(const Triplet& t, Sink&& out) {
  for (const auto& [a, b] : orientations(t)) {
    if (b.count() < 2) continue;
    for_each_subset(b, [&](VarSet u) {
      if (u.is_empty() || u == b) return;
      out(Triplet::canonical(a, u, t.z()));
      out(Triplet::canonical(a, u, t.z() | (b - u)));
    });
  }
}

// Strong union, one variable at a time; iteration reaches every superset.
template <typename Sink>
void unary_strong_steps(const Triplet& t, VarSet all, Sink&& out) {
  for_each_member(all - t.span(), [&](std::size_t g) {
    out(Triplet::canonical(t.x(), t.y(), t.z() | VarSet::single(g)));
  });
}

// Contraction on the ordered pair: t1 read as <x,y|z> and t2 as <x,w|yz>
// combine into <x,yw|z>.
template <typename Sink>
void contraction_steps(const Triplet& t1, const Triplet& t2, Sink&& out) {
  for (const auto& [x1, y1] : orientations(t1)) {
    for (const auto& [x2, w2] : orientations(t2)) {
      if (x1 != x2) continue;
      if (t2.z() != (y1 | t1.z())) continue;
      out(Triplet::canonical(x1, y1 | w2, t1.z()));
    }
  }
}

// Composition on the ordered pair: <x,y|z> and <x,w|z> combine into <x,yw|z>.
template <typename Sink>
void composition_steps(const Triplet& t1, const Triplet& t2, Sink&& out) {
  for (const auto& [x1, y1] : orientations(t1)) {
    for (const auto& [x2, w2] : orientations(t2)) {
      if (x1 != x2 || t1.z() != t2.z()) continue;
      if (y1.intersects(w2)) continue;
      out(Triplet::canonical(x1, y1 | w2, t1.z()));
    }
  }
}

std::set<Triplet> close_set(const std::set<Triplet>& seed, const Universe& u,
                            bool stable_axioms) {
  std::set<Triplet> out = seed;
  std::vector<Triplet> work(seed.begin(), seed.end());
  auto push = [&](const Triplet& t) {
    if (out.insert(t).second) work.push_back(t);
  };
  while (!work.empty()) {
    const Triplet t = work.back();
    work.pop_back();
    unary_sem_steps(t, push);
    if (stable_axioms) unary_strong_steps(t, u.all(), push);
    // Pair t against everything derived so far, in both orders.  Whatever
    // is inserted later gets its own turn on the worklist, so every ordered
    // pair of closure members is eventually considered.
    for (const Triplet& s : out) {
      contraction_steps(t, s, push);
      contraction_steps(s, t, push);
      if (stable_axioms) {
        composition_steps(t, s, push);
        composition_steps(s, t, push);
      }
    }
  }
  return out;
}

}  // namespace

Relation sem_close(const Relation& r, std::size_t max_vars) {
  check_guard(r.universe, max_vars, "sem_close");
  Relation out(r.universe);
  out.triplets = close_set(r.triplets, r.universe, false);
  out.stable = r.stable;
  return out;
}

Relation stab_close(const Relation& r, std::size_t max_vars) {
  check_guard(r.universe, max_vars, "stab_close");
  Relation out(r.universe);
  out.triplets = close_set(r.triplets, r.universe, true);
  out.stable = r.stable;
  return out;
}

bool is_sem_closed(const Relation& r) {
  bool closed = true;
  auto probe = [&](const Triplet& t) {
    if (!r.contains(t)) closed = false;
  };
  for (const Triplet& t : r.triplets) {
    if (!closed) break;
    unary_sem_steps(t, probe);
    for (const Triplet& s : r.triplets) {
      contraction_steps(t, s, probe);
      contraction_steps(s, t, probe);
    }
  }
  return closed;
}

Relation close_model(const Relation& r, std::size_t max_vars) {
  check_guard(r.universe, max_vars, "close_model");
  // Statements derived from stable premises under the stable rules are
  // themselves stable, so the whole stable closure keeps the flag.
  const std::set<Triplet> stable_closed =
      close_set(r.stable, r.universe, true);
  std::set<Triplet> seed = stable_closed;
  for (const Triplet& t : r.unstable_part()) seed.insert(t);
  Relation out(r.universe);
  out.triplets = close_set(seed, r.universe, false);
  out.stable = stable_closed;
  return out;
}

Relation classify_stability(const Relation& closed, bool verify_closed,
                            std::size_t verify_guard) {
  if (verify_closed && closed.universe.size() <= verify_guard &&
      !is_sem_closed(closed)) {
    throw std::invalid_argument(
        "classify_stability: relation is not semi-graphoid closed");
  }
  Relation out = closed;
  out.stable.clear();
  const VarSet all = closed.universe.all();
  for (const Triplet& t : closed.triplets) {
    const VarSet room = all - t.span();
    bool stable = true;
    // Every strict enlargement of the conditioning set must stay present.
    std::uint64_t extra = 0;
    while (stable) {
      extra = (extra - room.bits) & room.bits;
      if (extra == 0) break;
      if (!closed.contains(
              Triplet::canonical(t.x(), t.y(), t.z() | VarSet{extra}))) {
        stable = false;
      }
    }
    if (stable) out.stable.insert(t);
  }
  return out;
}

namespace {

enum class ConeKind { o, s };

// Enumerates every contraction instantiation for the ordered node pair:
// u1 = <X,Y|Z> drawn from n1's cone and u2 = <X,W|YZ> drawn from n2's cone
// emit <X,YW|Z>.  The cones bound the admissible sets: an o-cone keeps the
// conditioning set inside the node's own span, an s-cone allows arbitrary
// enlargement.  For results pruned under s-dominance the smallest
// conditioning set dominates every other choice, so minimal_z_only skips
// the rest of the interval.
template <typename Sink>
void contract_cones(const Triplet& n1, ConeKind k1, const Triplet& n2,
                    ConeKind k2, VarSet all, bool minimal_z_only,
                    Sink&& emit) {
  const VarSet c1 = n1.z();
  const VarSet c2 = n2.z();
  for (const auto& [a1, b1] : orientations(n1)) {
    for (const auto& [a2, b2] : orientations(n2)) {
      const VarSet x_bound = a1 & a2;
      if (x_bound.is_empty()) continue;
      for_each_subset(x_bound, [&](VarSet x) {
        if (x.is_empty()) return;
        for_each_subset(b1, [&](VarSet y) {
          if (y.is_empty()) return;
          for_each_subset(b2 - y, [&](VarSet w) {
            if (w.is_empty()) return;
            const VarSet xyw = x | y | w;
            const VarSet z_lo = c1 | (c2 - y);
            if (z_lo.intersects(xyw)) return;
            const VarSet ext1 =
                k1 == ConeKind::o ? (a1 - x) | (b1 - y) : all - (c1 | x | y);
            const VarSet ext2 =
                k2 == ConeKind::o ? (a2 - x) | (b2 - w) : all - (c2 | x | w);
            if (!(y - c2).subset_of(ext2)) return;
            const VarSet z_hi = ((c1 | ext1) & (c2 | ext2)) - xyw;
            if (!z_lo.subset_of(z_hi)) return;
            if (minimal_z_only) {
              emit(Triplet::canonical(x, y | w, z_lo));
              return;
            }
            for_each_subset(z_hi - z_lo, [&](VarSet zx) {
              emit(Triplet::canonical(x, y | w, z_lo | zx));
            });
          });
        });
      });
    }
  }
}

// Shared fixpoint driver.  The mutable dominant set starts from the seeds
// and grows by contraction, pruned back to an antichain after every batch.
// In combined mode the s_nodes are a fixed stable cover, already closed
// under the stable rules; contractions of two stable cones therefore never
// leave the existing coverage and are skipped.
std::set<Triplet> dominant_fixpoint(const std::set<Triplet>& seeds,
                                    const std::set<Triplet>& s_nodes,
                                    ConeKind kind, const Universe& u) {
  const VarSet all = u.all();
  const DominanceOrder order = kind == ConeKind::o
                                   ? DominanceOrder::o_dominance
                                   : DominanceOrder::s_dominance;
  auto s_covered = [&](const Triplet& t) {
    for (const Triplet& v : s_nodes) {
      if (s_dominates(v, t)) return true;
    }
    return false;
  };

  std::set<Triplet> doms;
  for (const Triplet& t : maximal_elements(seeds, order)) {
    if (!s_covered(t)) doms.insert(t);
  }
  std::vector<Triplet> frontier(doms.begin(), doms.end());

  while (!frontier.empty()) {
    std::set<Triplet> emitted;
    auto sink = [&](const Triplet& t) { emitted.insert(t); };
    const bool min_z = kind == ConeKind::s;
    for (const Triplet& f : frontier) {
      for (const Triplet& d : doms) {
        contract_cones(f, kind, d, kind, all, min_z, sink);
        contract_cones(d, kind, f, kind, all, min_z, sink);
      }
      for (const Triplet& s : s_nodes) {
        contract_cones(f, kind, s, ConeKind::s, all, min_z, sink);
        contract_cones(s, ConeKind::s, f, kind, all, min_z, sink);
      }
    }
    std::set<Triplet> merged = doms;
    for (const Triplet& t : emitted) {
      if (s_covered(t)) continue;
      bool covered = false;
      for (const Triplet& d : doms) {
        if (dominates(order, d, t)) {
          covered = true;
          break;
        }
      }
      if (!covered) merged.insert(t);
    }
    if (merged == doms) break;
    std::set<Triplet> pruned = maximal_elements(merged, order);
    frontier.clear();
    for (const Triplet& t : pruned) {
      if (doms.count(t) == 0) frontier.push_back(t);
    }
    doms = std::move(pruned);
  }
  return doms;
}

}  // namespace

std::set<Triplet> sem_dominants(const Relation& r) {
  return dominant_fixpoint(r.triplets, {}, ConeKind::o, r.universe);
}

std::set<Triplet> stab_dominants(const Relation& r) {
  return dominant_fixpoint(r.triplets, {}, ConeKind::s, r.universe);
}

Representation combined_representation(const Relation& r) {
  const VarSet all = r.universe.all();
  std::set<Triplet> stable_part = r.stable;
  std::set<Triplet> unstable_part;
  for (const Triplet& t : r.triplets) {
    if (stable_part.count(t) > 0) continue;
    if (t.saturated(all)) {
      stable_part.insert(t);
    } else {
      unstable_part.insert(t);
    }
  }
  std::set<Triplet> d_s =
      dominant_fixpoint(stable_part, {}, ConeKind::s, r.universe);
  std::set<Triplet> d_u =
      dominant_fixpoint(unstable_part, d_s, ConeKind::o, r.universe);
  return Representation{r.universe, std::move(d_u), std::move(d_s)};
}

bool contains(const Representation& rep, const Triplet& t) {
  if (!t.span().subset_of(rep.universe.all())) {
    throw std::invalid_argument("statement uses variables outside the universe");
  }
  for (const Triplet& w : rep.d_u) {
    if (o_dominates(w, t)) return true;
  }
  for (const Triplet& w : rep.d_s) {
    if (s_dominates(w, t)) return true;
  }
  return false;
}

}  // namespace sgr
