#include "sgr/json_io.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sgr {

namespace {

Universe universe_from_json(const Json& j) {
  std::vector<std::string> names;
  for (const Json& name : j.at("vars")) names.push_back(name.get<std::string>());
  return Universe(std::move(names));
}

Json universe_json(const Universe& u) {
  Json names = Json::array();
  for (const std::string& name : u.names()) names.push_back(name);
  return names;
}

ConditionId condition_id_from_token(const std::string& token) {
  static constexpr ConditionId kAll[] = {
      ConditionId::C1,
      ConditionId::C2,
      ConditionId::C3,
      ConditionId::C4,
      ConditionId::C5,
      ConditionId::C6,
      ConditionId::C7,
      ConditionId::StableTransitivity,
      ConditionId::SaturatedODominant,
      ConditionId::AllSDominantsSaturated,
  };
  for (ConditionId id : kAll) {
    if (condition_name(id) == token) return id;
  }
  throw std::invalid_argument("unknown condition id '" + token + "'");
}

}  // namespace

Json varset_json(const Universe& u, VarSet s) {
  Json names = Json::array();
  for_each_member(s, [&](std::size_t v) { names.push_back(u.name(v)); });
  return names;
}

VarSet varset_from_json(const Universe& u, const Json& j) {
  VarSet s{};
  for (const Json& name : j) {
    const auto index = u.index_of(name.get<std::string>());
    if (!index) {
      throw std::invalid_argument("unknown variable '" +
                                  name.get<std::string>() + "'");
    }
    s = s | VarSet::single(*index);
  }
  return s;
}

Json triplet_json(const Universe& u, const Triplet& t) {
  return Json{{"x", varset_json(u, t.x())},
              {"y", varset_json(u, t.y())},
              {"z", varset_json(u, t.z())}};
}

Triplet triplet_from_json(const Universe& u, const Json& j) {
  return Triplet::canonical(varset_from_json(u, j.at("x")),
                            varset_from_json(u, j.at("y")),
                            varset_from_json(u, j.at("z")));
}

Json relation_json(const Relation& r) {
  Json statements = Json::array();
  for (const Triplet& t : r.triplets) {
    Json s = triplet_json(r.universe, t);
    s["stable"] = r.is_stable(t);
    statements.push_back(std::move(s));
  }
  return Json{{"vars", universe_json(r.universe)}, {"statements", statements}};
}

Relation relation_from_json(const Json& j) {
  Relation r(universe_from_json(j));
  for (const Json& s : j.at("statements")) {
    r.insert(triplet_from_json(r.universe, s), s.at("stable").get<bool>());
  }
  return r;
}

Json dag_json(const Dag& g) {
  Json arcs = Json::array();
  for (const Dag::Arc& a : g.arcs()) {
    arcs.push_back(Json{{"tail", g.universe().name(a.first)},
                        {"head", g.universe().name(a.second)}});
  }
  return Json{{"vars", universe_json(g.universe())}, {"arcs", arcs}};
}

Dag dag_from_json(const Json& j) {
  const Universe u = universe_from_json(j);
  std::vector<Dag::Arc> arcs;
  for (const Json& a : j.at("arcs")) {
    const auto tail = u.index_of(a.at("tail").get<std::string>());
    const auto head = u.index_of(a.at("head").get<std::string>());
    if (!tail || !head) throw std::invalid_argument("unknown arc endpoint");
    arcs.emplace_back(*tail, *head);
  }
  return Dag::validate_acyclic(u, std::move(arcs));
}

Json representation_json(const Representation& rep) {
  Json d_u = Json::array();
  for (const Triplet& t : rep.d_u) d_u.push_back(triplet_json(rep.universe, t));
  Json d_s = Json::array();
  for (const Triplet& t : rep.d_s) d_s.push_back(triplet_json(rep.universe, t));
  return Json{{"vars", universe_json(rep.universe)},
              {"d_u", d_u},
              {"d_s", d_s}};
}

Representation representation_from_json(const Json& j) {
  const Universe u = universe_from_json(j);
  Representation rep{u, {}, {}};
  for (const Json& t : j.at("d_u")) {
    rep.d_u.insert(triplet_from_json(u, t));
  }
  for (const Json& t : j.at("d_s")) {
    rep.d_s.insert(triplet_from_json(u, t));
  }
  return rep;
}

Json report_json(const ConditionReport& report) {
  Json conditions = Json::array();
  for (const ConditionEntry& entry : report.entries) {
    Json e{{"id", std::string(condition_name(entry.id))}};
    switch (entry.status) {
      case CheckStatus::Pass:
        e["status"] = "pass";
        break;
      case CheckStatus::Fail:
        e["status"] = "fail";
        break;
      case CheckStatus::NotRun:
        e["status"] = "not_run";
        break;
    }
    if (entry.witness) {
      Json sets = Json::object();
      for (const auto& [name, vars] : entry.witness->sets) {
        sets[name] = varset_json(report.universe, vars);
      }
      e["witness"] = Json{{"sets", sets}, {"detail", entry.witness->detail}};
    } else {
      e["witness"] = nullptr;
    }
    conditions.push_back(std::move(e));
  }
  return Json{{"vars", universe_json(report.universe)},
              {"conditions", conditions}};
}

ConditionReport report_from_json(const Json& j) {
  ConditionReport report{universe_from_json(j), {}};
  for (const Json& e : j.at("conditions")) {
    ConditionEntry entry;
    entry.id = condition_id_from_token(e.at("id").get<std::string>());
    const std::string status = e.at("status").get<std::string>();
    if (status == "pass") {
      entry.status = CheckStatus::Pass;
    } else if (status == "fail") {
      entry.status = CheckStatus::Fail;
    } else if (status == "not_run") {
      entry.status = CheckStatus::NotRun;
    } else {
      throw std::invalid_argument("unknown check status '" + status + "'");
    }
    if (!e.at("witness").is_null()) {
      Witness w;
      for (const auto& [name, vars] : e.at("witness").at("sets").items()) {
        w.sets.emplace_back(name, varset_from_json(report.universe, vars));
      }
      w.detail = e.at("witness").at("detail").get<std::string>();
      entry.witness = std::move(w);
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

Json verdict_json(SeparationVerdict v) {
  switch (v) {
    case SeparationVerdict::Strong:
      return "strong";
    case SeparationVerdict::Weak:
      return "weak";
    case SeparationVerdict::Connected:
      return "connected";
  }
  throw std::logic_error("unreachable verdict");
}

SeparationVerdict verdict_from_json(const Json& j) {
  const std::string token = j.get<std::string>();
  if (token == "strong") return SeparationVerdict::Strong;
  if (token == "weak") return SeparationVerdict::Weak;
  if (token == "connected") return SeparationVerdict::Connected;
  throw std::invalid_argument("unknown separation verdict '" + token + "'");
}

Json pmap_verdict_json(const PMapVerdict& v) {
  Json out = Json::object();
  switch (v.outcome) {
    case PmapOutcome::NotIsomorphic:
      out["outcome"] = "not_isomorphic";
      break;
    case PmapOutcome::Inconclusive:
      out["outcome"] = "inconclusive";
      break;
    case PmapOutcome::IsomorphicWithWitness:
      out["outcome"] = "isomorphic_with_witness";
      break;
  }
  out["witness"] = v.witness ? dag_json(*v.witness) : Json(nullptr);
  out["dags_examined"] = v.dags_examined;
  out["report"] = report_json(v.report);
  return out;
}

PMapVerdict pmap_verdict_from_json(const Json& j) {
  PMapVerdict v{PmapOutcome::Inconclusive, std::nullopt,
                report_from_json(j.at("report")), 0};
  const std::string outcome = j.at("outcome").get<std::string>();
  if (outcome == "not_isomorphic") {
    v.outcome = PmapOutcome::NotIsomorphic;
  } else if (outcome == "inconclusive") {
    v.outcome = PmapOutcome::Inconclusive;
  } else if (outcome == "isomorphic_with_witness") {
    v.outcome = PmapOutcome::IsomorphicWithWitness;
  } else {
    throw std::invalid_argument("unknown pmap outcome '" + outcome + "'");
  }
  if (!j.at("witness").is_null()) v.witness = dag_from_json(j.at("witness"));
  v.dags_examined = j.at("dags_examined").get<std::size_t>();
  return v;
}

}  // namespace sgr
