#include "sgr/io.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace sgr {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Numbered lines with comments stripped and blank lines dropped.
std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++number;
    const std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string kept = trim(raw);
    if (!kept.empty()) out.push_back({number, std::move(kept)});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

bool is_word(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

Universe parse_header(const std::vector<Line>& lines) {
  if (lines.empty() || lines.front().text.rfind("vars:", 0) != 0) {
    throw ParseError(lines.empty() ? 1 : lines.front().number,
                     "expected a 'vars:' line first");
  }
  const Line& header = lines.front();
  std::istringstream words(header.text.substr(5));
  std::vector<std::string> names;
  std::set<std::string> seen;
  std::string word;
  while (words >> word) {
    if (!is_word(word)) {
      throw ParseError(header.number, "invalid variable name '" + word + "'");
    }
    if (!seen.insert(word).second) {
      throw ParseError(header.number, "duplicate variable '" + word + "'");
    }
    names.push_back(word);
  }
  if (names.empty()) {
    throw ParseError(header.number, "'vars:' line declares no variables");
  }
  if (names.size() > Universe::kMaxVars) {
    throw ParseError(header.number, "too many variables (limit " +
                                        std::to_string(Universe::kMaxVars) +
                                        ")");
  }
  return Universe(std::move(names));
}

std::size_t lookup(const Universe& u, const std::string& name,
                   std::size_t line) {
  if (!is_word(name)) {
    throw ParseError(line, "invalid variable name '" + name + "'");
  }
  const auto index = u.index_of(name);
  if (!index) throw ParseError(line, "unknown variable '" + name + "'");
  return *index;
}

// Comma-separated variable list; an empty or whitespace-only text is the
// empty set.
VarSet parse_side(const Universe& u, std::string_view text,
                  std::size_t line) {
  VarSet side{};
  if (trim(text).empty()) return side;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string name = trim(text.substr(
        pos, comma == std::string_view::npos ? text.size() - pos
                                             : comma - pos));
    if (name.empty()) throw ParseError(line, "empty variable name in list");
    side = side | VarSet::single(lookup(u, name, line));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return side;
}

}  // namespace

Relation parse_relation(std::string_view text) {
  const std::vector<Line> lines = significant_lines(text);
  Relation r(parse_header(lines));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    std::string_view body = line.text;
    if (body.rfind("vars:", 0) == 0) {
      throw ParseError(line.number, "duplicate 'vars:' line");
    }
    bool stable = false;
    if (body.rfind("stable:", 0) == 0) {
      stable = true;
      body = body.substr(7);
    }
    const std::size_t semi = body.find(';');
    if (semi == std::string_view::npos) {
      throw ParseError(line.number,
                       "malformed statement (expected 'X ; Y | Z')");
    }
    const std::size_t bar = body.find('|', semi + 1);
    if (bar == std::string_view::npos) {
      throw ParseError(line.number,
                       "malformed statement (expected 'X ; Y | Z')");
    }
    const VarSet x = parse_side(r.universe, body.substr(0, semi), line.number);
    const VarSet y =
        parse_side(r.universe, body.substr(semi + 1, bar - semi - 1),
                   line.number);
    const VarSet z = parse_side(r.universe, body.substr(bar + 1), line.number);
    try {
      r.insert(Triplet::canonical(x, y, z), stable);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line.number, e.what());
    }
  }
  return r;
}

std::string serialize_relation(const Relation& r) {
  std::string out = "vars:";
  for (const std::string& name : r.universe.names()) out += " " + name;
  out += "\n";
  for (const Triplet& t : r.triplets) {
    if (r.is_stable(t)) out += "stable: ";
    out += render_triplet(r.universe, t) + "\n";
  }
  return out;
}

namespace {

// True when `to` is reachable from `from` along the arcs seen so far; on
// success fills `path` with the vertices from `from` to `to` inclusive.
bool find_path(const std::vector<VarSet>& children, std::size_t from,
               std::size_t to, std::vector<std::size_t>& path) {
  std::vector<std::size_t> parent(children.size(), children.size());
  std::vector<std::size_t> stack{from};
  VarSet seen = VarSet::single(from);
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (v == to) {
      path.clear();
      for (std::size_t w = to; w != from; w = parent[w]) path.push_back(w);
      path.push_back(from);
      std::reverse(path.begin(), path.end());
      return true;
    }
    for_each_member(children[v], [&](std::size_t w) {
      if (seen.contains(w)) return;
      seen = seen | VarSet::single(w);
      parent[w] = v;
      stack.push_back(w);
    });
  }
  return false;
}

}  // namespace

Dag parse_dag(std::string_view text) {
  const std::vector<Line> lines = significant_lines(text);
  const Universe u = parse_header(lines);
  std::vector<Dag::Arc> arcs;
  std::vector<VarSet> children(u.size(), VarSet{});
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.text.rfind("vars:", 0) == 0) {
      throw ParseError(line.number, "duplicate 'vars:' line");
    }
    const std::size_t arrow = line.text.find("->");
    if (arrow == std::string::npos) {
      throw ParseError(line.number, "malformed arc (expected 'u -> v')");
    }
    const std::size_t tail =
        lookup(u, trim(std::string_view(line.text).substr(0, arrow)),
               line.number);
    const std::size_t head =
        lookup(u, trim(std::string_view(line.text).substr(arrow + 2)),
               line.number);
    if (tail == head) {
      throw ParseError(line.number,
                       "self arc on vertex '" + u.name(tail) + "'");
    }
    if (children[tail].contains(head)) {
      throw ParseError(line.number, "duplicate arc " + u.name(tail) + " -> " +
                                        u.name(head));
    }
    // Check each arc as it arrives so the error points at the line that
    // closed the cycle.
    std::vector<std::size_t> path;
    if (find_path(children, head, tail, path)) {
      std::string cycle = "cycle detected: " + u.name(tail);
      for (std::size_t v : path) cycle += " -> " + u.name(v);
      throw ParseError(line.number, cycle);
    }
    children[tail] = children[tail] | VarSet::single(head);
    arcs.emplace_back(tail, head);
  }
  return Dag::validate_acyclic(u, std::move(arcs));
}

std::string serialize_dag(const Dag& g) {
  std::string out = "vars:";
  for (const std::string& name : g.universe().names()) out += " " + name;
  out += "\n";
  for (const Dag::Arc& a : g.arcs()) {
    out += g.universe().name(a.first) + " -> " + g.universe().name(a.second) +
           "\n";
  }
  return out;
}

}  // namespace sgr
