#include "sgr/core.hpp"

#include <algorithm>

namespace sgr {

VarSet VarSet::of(std::initializer_list<std::size_t> indices) {
  VarSet s;
  for (std::size_t i : indices) {
    if (i >= 64) throw std::invalid_argument("variable index exceeds 63");
    s.bits |= std::uint64_t{1} << i;
  }
  return s;
}

std::vector<std::size_t> VarSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each_member(*this, [&](std::size_t i) { out.push_back(i); });
  return out;
}

Universe::Universe(std::vector<std::string> names, std::size_t max_vars)
    : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("universe has no variables");
  const std::size_t cap = std::min(max_vars, kMaxVars);
  if (names_.size() > cap) {
    throw std::invalid_argument("universe exceeds the variable bound (" +
                                std::to_string(cap) + ")");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw std::invalid_argument("empty variable name");
    }
    for (std::size_t j = i + 1; j < names_.size(); ++j) {
      if (names_[i] == names_[j]) {
        throw std::invalid_argument("duplicate variable name: " + names_[i]);
      }
    }
  }
}

std::optional<std::size_t> Universe::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::string Universe::render(VarSet s) const {
  std::string out;
  for_each_member(s, [&](std::size_t i) {
    if (!out.empty()) out += ',';
    out += name(i);
  });
  return out;
}

std::string render_triplet(const Universe& u, const Triplet& t) {
  std::string out = u.render(t.x()) + " ; " + u.render(t.y()) + " |";
  if (!t.z().is_empty()) out += " " + u.render(t.z());
  return out;
}

Triplet Triplet::canonical(VarSet x, VarSet y, VarSet z) {
  if (x.is_empty() || y.is_empty()) {
    throw std::invalid_argument("statement with an empty side");
  }
  if (x.intersects(y) || x.intersects(z) || y.intersects(z)) {
    throw std::invalid_argument("statement sides overlap");
  }
  if (y.bits < x.bits) std::swap(x, y);
  return Triplet(x, y, z);
}

namespace {

bool o_dom_oriented(VarSet wx, VarSet wy, VarSet wz, const Triplet& u) {
  return u.x().subset_of(wx) && u.y().subset_of(wy) && wz.subset_of(u.z()) &&
         u.z().subset_of(wx | wy | wz);
}

bool s_dom_oriented(VarSet wx, VarSet wy, VarSet wz, const Triplet& u) {
  return u.x().subset_of(wx) && u.y().subset_of(wy) && wz.subset_of(u.z());
}

}  // namespace

// Swapping both statements at once leaves the subset tests unchanged, so
// checking the two orientations of w against u as stored covers all four
// orientation combinations.
bool o_dominates(const Triplet& w, const Triplet& u) {
  return o_dom_oriented(w.x(), w.y(), w.z(), u) ||
         o_dom_oriented(w.y(), w.x(), w.z(), u);
}

bool s_dominates(const Triplet& w, const Triplet& u) {
  return s_dom_oriented(w.x(), w.y(), w.z(), u) ||
         s_dom_oriented(w.y(), w.x(), w.z(), u);
}

bool dominates(DominanceOrder order, const Triplet& w, const Triplet& u) {
  return order == DominanceOrder::o_dominance ? o_dominates(w, u)
                                              : s_dominates(w, u);
}

std::set<Triplet> maximal_elements(const std::set<Triplet>& ts,
                                   DominanceOrder order) {
  std::set<Triplet> out;
  for (const Triplet& t : ts) {
    bool dominated = false;
    for (const Triplet& w : ts) {
      // Both orders are antisymmetric on canonical triplets, so domination
      // by a distinct element is automatically strict.
      if (!(w == t) && dominates(order, w, t)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.insert(t);
  }
  return out;
}

std::vector<Triplet> enumerate_canonical_triplets(const Universe& u) {
  std::vector<Triplet> out;
  const VarSet all = u.all();
  for_each_subset(all, [&](VarSet x) {
    if (x.is_empty()) return;
    for_each_subset(all - x, [&](VarSet y) {
      if (y.is_empty() || y.bits < x.bits) return;
      for_each_subset(all - x - y, [&](VarSet z) {
        out.push_back(Triplet::canonical(x, y, z));
      });
    });
  });
  std::sort(out.begin(), out.end());
  return out;
}

void Relation::insert(const Triplet& t, bool mark_stable) {
  if (!t.span().subset_of(universe.all())) {
    throw std::invalid_argument("statement uses variables outside the universe");
  }
  triplets.insert(t);
  if (mark_stable) stable.insert(t);
}

std::set<Triplet> Relation::unstable_part() const {
  std::set<Triplet> out;
  for (const Triplet& t : triplets) {
    if (stable.count(t) == 0) out.insert(t);
  }
  return out;
}

}  // namespace sgr
