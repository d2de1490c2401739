#include "sgr/cli.hpp"

#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sgr/closure.hpp"
#include "sgr/core.hpp"
#include "sgr/graph.hpp"
#include "sgr/io.hpp"
#include "sgr/json_io.hpp"
#include "sgr/pmap.hpp"

namespace sgr::cli {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

VarSet parse_names(const Universe& u, const std::string& text) {
  VarSet s{};
  std::istringstream parts(text);
  std::string name;
  while (std::getline(parts, name, ',')) {
    std::istringstream cleaner(name);
    std::string trimmed;
    cleaner >> trimmed;
    if (trimmed.empty()) continue;
    const auto index = u.index_of(trimmed);
    if (!index) {
      throw std::invalid_argument("unknown variable '" + trimmed + "'");
    }
    s = s | VarSet::single(*index);
  }
  return s;
}

void print_statements(std::ostream& out, const Relation& r,
                      const std::string& indent = "") {
  for (const Triplet& t : r.triplets) {
    out << indent;
    if (r.is_stable(t)) out << "stable: ";
    out << render_triplet(r.universe, t) << "\n";
  }
}

std::string verdict_token(SeparationVerdict v) {
  return verdict_json(v).get<std::string>();
}

std::string status_token(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::NotRun:
      return "not_run";
  }
  return "not_run";
}

void print_report(std::ostream& out, const ConditionReport& report) {
  for (const ConditionEntry& entry : report.entries) {
    out << condition_name(entry.id) << ": " << status_token(entry.status)
        << "\n";
    if (!entry.witness) continue;
    if (!entry.witness->sets.empty()) {
      out << "  witness:";
      for (const auto& [name, vars] : entry.witness->sets) {
        const std::string rendered = report.universe.render(vars);
        out << " " << name << "=" << (rendered.empty() ? "-" : rendered);
      }
      out << "\n";
    }
    if (!entry.witness->detail.empty()) {
      out << "  detail: " << entry.witness->detail << "\n";
    }
  }
}

struct Args {
  std::string file;
  bool json = false;
  std::size_t max_vars = 0;
  bool exhaustive = false;
  bool strong = false;
  std::string x, y, z;

  // Guards stay at their defaults unless --max-vars raises them; lowering
  // is pointless and silently ignoring a lowered bound would mislead.
  std::size_t guard(std::size_t fallback) const {
    return max_vars > fallback ? max_vars : fallback;
  }
};

int run_closure(const Args& a, std::ostream& out) {
  const Relation closed =
      sem_close(parse_relation(slurp(a.file)), a.guard(kOracleGuard));
  if (a.json) {
    out << relation_json(closed).dump(2) << "\n";
  } else {
    print_statements(out, closed);
  }
  return 0;
}

int run_dominants(const Args& a, std::ostream& out) {
  const Representation rep =
      combined_representation(parse_relation(slurp(a.file)));
  if (a.json) {
    out << representation_json(rep).dump(2) << "\n";
    return 0;
  }
  out << "d_u:\n";
  for (const Triplet& t : rep.d_u) {
    out << "  " << render_triplet(rep.universe, t) << "\n";
  }
  out << "d_s:\n";
  for (const Triplet& t : rep.d_s) {
    out << "  " << render_triplet(rep.universe, t) << "\n";
  }
  return 0;
}

int run_stability(const Args& a, std::ostream& out) {
  const std::size_t bound = a.guard(kOracleGuard);
  const Relation closed = close_model(parse_relation(slurp(a.file)), bound);
  const Relation classified = classify_stability(closed, true, bound);
  if (a.json) {
    out << relation_json(classified).dump(2) << "\n";
    return 0;
  }
  out << "stable:\n";
  for (const Triplet& t : classified.triplets) {
    if (classified.is_stable(t)) {
      out << "  " << render_triplet(classified.universe, t) << "\n";
    }
  }
  out << "unstable:\n";
  for (const Triplet& t : classified.triplets) {
    if (!classified.is_stable(t)) {
      out << "  " << render_triplet(classified.universe, t) << "\n";
    }
  }
  return 0;
}

int run_pmap(const Args& a, std::ostream& out) {
  const PmapGuards guards{a.guard(kOracleGuard), a.guard(kConditionGuard),
                          a.guard(kSearchGuard)};
  const PmapAssessment assessment =
      assess_pmap(parse_relation(slurp(a.file)), a.exhaustive, guards);
  const PMapVerdict& verdict = assessment.verdict;
  if (a.json) {
    out << pmap_verdict_json(verdict).dump(2) << "\n";
  } else {
    print_report(out, verdict.report);
    switch (verdict.outcome) {
      case PmapOutcome::NotIsomorphic:
        out << "verdict: not_isomorphic\n";
        break;
      case PmapOutcome::Inconclusive:
        out << "verdict: inconclusive\n";
        break;
      case PmapOutcome::IsomorphicWithWitness:
        out << "verdict: isomorphic_with_witness\n";
        break;
    }
    if (a.exhaustive) {
      out << "dags_examined: " << verdict.dags_examined << "\n";
    }
    if (verdict.witness) {
      out << "map:\n";
      const Dag& g = *verdict.witness;
      for (const Dag::Arc& arc : g.arcs()) {
        out << "  " << g.universe().name(arc.first) << " -> "
            << g.universe().name(arc.second) << "\n";
      }
    }
  }
  return verdict.outcome == PmapOutcome::NotIsomorphic ? 1 : 0;
}

int run_dsep(const Args& a, std::ostream& out) {
  const Dag g = parse_dag(slurp(a.file));
  const SeparationVerdict v =
      separation_query(g, parse_names(g.universe(), a.x),
                       parse_names(g.universe(), a.y),
                       parse_names(g.universe(), a.z));
  if (a.json) {
    out << Json{{"verdict", verdict_json(v)}}.dump(2) << "\n";
  } else {
    out << verdict_token(v) << "\n";
  }
  return v == SeparationVerdict::Connected ? 1 : 0;
}

int run_model(const Args& a, std::ostream& out) {
  const auto [model, strong_model] =
      extract_models(parse_dag(slurp(a.file)), a.guard(kModelGuard));
  const Relation& chosen = a.strong ? strong_model : model;
  if (a.json) {
    out << relation_json(chosen).dump(2) << "\n";
  } else {
    print_statements(out, chosen);
  }
  return 0;
}

int run_classify(const Args& a, std::ostream& out, std::ostream& err) {
  const Dag g = parse_dag(slurp(a.file));
  const VarSet x = parse_names(g.universe(), a.x);
  const VarSet y = parse_names(g.universe(), a.y);
  const VarSet z = parse_names(g.universe(), a.z);
  const SeparationVerdict v = separation_query(g, x, y, z);
  if (v != SeparationVerdict::Strong) {
    err << "x and y are not strongly separated (verdict: " << verdict_token(v)
        << ")\n";
    return 1;
  }
  const Triplet t = Triplet::canonical(x, y, z);
  // Canonicalization may have swapped the two sides; report relative to
  // the sides the caller named.
  const bool swapped = !(t.x() == x);
  Json sides = Json::object();
  for (const auto& [var, side] : classify_external(g, t)) {
    std::string token = "both";
    if (side == Side::XSide) token = swapped ? "y" : "x";
    if (side == Side::YSide) token = swapped ? "x" : "y";
    if (a.json) {
      sides[g.universe().name(var)] = token;
    } else {
      out << g.universe().name(var) << ": " << token << "\n";
    }
  }
  if (a.json) out << Json{{"sides", sides}}.dump(2) << "\n";
  return 0;
}

int run_extract(const Args& a, std::ostream& out) {
  const Dag g = parse_dag(slurp(a.file));
  const std::optional<Triplet> t = terminal_saturated(g);
  if (a.json) {
    out << Json{{"statement",
                 t ? triplet_json(g.universe(), *t) : Json(nullptr)}}
               .dump(2)
        << "\n";
  } else if (t) {
    out << render_triplet(g.universe(), *t) << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"semi-graphoid independence toolkit"};
  app.require_subcommand(1);

  Args a;
  app.add_flag("--json", a.json, "emit a machine-readable report");
  app.add_option("--max-vars", a.max_vars,
                 "raise guarded size bounds to this many variables");

  CLI::App* closure =
      app.add_subcommand("closure", "print the semi-graphoid closure");
  closure->add_option("file", a.file, "relation file")->required();

  CLI::App* dominants = app.add_subcommand(
      "dominants", "print the combined dominant-triplet representation");
  dominants->add_option("file", a.file, "relation file")->required();

  CLI::App* stability = app.add_subcommand(
      "stability", "partition the model closure into stable and unstable");
  stability->add_option("file", a.file, "relation file")->required();

  CLI::App* pmap = app.add_subcommand(
      "pmap", "test necessary conditions for a directed perfect map");
  pmap->add_option("file", a.file, "relation file")->required();
  pmap->add_flag("--exhaustive", a.exhaustive,
                 "also try every labeled DAG (decisive, guarded)");

  CLI::App* dsep =
      app.add_subcommand("dsep", "decide strong/weak/connected separation");
  dsep->add_option("file", a.file, "graph file")->required();
  dsep->add_option("--x", a.x, "first side, comma-separated")->required();
  dsep->add_option("--y", a.y, "second side, comma-separated")->required();
  dsep->add_option("--z", a.z, "conditioning set, comma-separated");

  CLI::App* model = app.add_subcommand(
      "model", "print the graphical independence model of a DAG");
  model->add_option("file", a.file, "graph file")->required();
  model->add_flag("--strong", a.strong,
                  "print the strong model instead of the full one");

  CLI::App* classify = app.add_subcommand(
      "classify", "report which side each external variable can join");
  classify->add_option("file", a.file, "graph file")->required();
  classify->add_option("--x", a.x, "first side, comma-separated")->required();
  classify->add_option("--y", a.y, "second side, comma-separated")->required();
  classify->add_option("--z", a.z, "conditioning set, comma-separated");

  CLI::App* extract = app.add_subcommand(
      "extract", "print the saturated statement of a terminal vertex");
  extract->add_option("file", a.file, "graph file")->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (closure->parsed()) return run_closure(a, out);
    if (dominants->parsed()) return run_dominants(a, out);
    if (stability->parsed()) return run_stability(a, out);
    if (pmap->parsed()) return run_pmap(a, out);
    if (dsep->parsed()) return run_dsep(a, out);
    if (model->parsed()) return run_model(a, out);
    if (classify->parsed()) return run_classify(a, out, err);
    if (extract->parsed()) return run_extract(a, out);
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << " (use --max-vars to raise the bound)\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace sgr::cli
