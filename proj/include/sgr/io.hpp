#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sgr/core.hpp"
#include "sgr/graph.hpp"

namespace sgr {

// A text-format error pointing at the offending input line (1-based).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Relation format: a `vars:` header with whitespace-separated names, then
// one statement per line as `X ; Y | Z` with comma-separated names per
// side and an empty Z allowed after the bar.  A `stable:` prefix marks the
// statement stable.  `#` starts a comment; blank lines are ignored.
// Statements are canonicalized and deduplicated; a statement that appears
// both plain and stable stays stable.
Relation parse_relation(std::string_view text);

// Emits the header plus one line per statement in canonical sort order,
// so equal relations serialize identically.
std::string serialize_relation(const Relation& r);

// Graph format: a `vars:` header, then one arc per line as `u -> v`.
Dag parse_dag(std::string_view text);
std::string serialize_dag(const Dag& g);

}  // namespace sgr
