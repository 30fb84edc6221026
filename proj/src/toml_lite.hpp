#pragma once

// Minimal TOML-subset reader covering what scenario files need: [table]
// and [[array-of-table]] headers, bare keys, and single-line values that
// are strings, booleans, integers, floats, or (nested) arrays. The exact
// grammar is pinned in docs/scenario_format.md.

#include <map>
#include <string>
#include <vector>

namespace pursuitsim::toml {

struct Value {
  enum class Kind { kInt, kFloat, kBool, kString, kArray };
  Kind kind = Kind::kInt;
  long long i = 0;
  double f = 0.0;
  bool b = false;
  std::string s;
  std::vector<Value> items;
  int line = 0;

  /// Numeric coercion: integers widen to double.
  double as_number() const { return kind == Kind::kInt ? static_cast<double>(i) : f; }
};

struct Table {
  std::string name;  // empty for the root table
  int line = 0;
  std::map<std::string, Value> entries;
};

struct Document {
  // Tables in order of appearance; [[name]] headers append one table per
  // occurrence under the same name.
  std::vector<Table> tables;
};

/// Throws ParseError with a line-numbered message on any syntax problem.
Document parse(const std::string& text);

}  // namespace pursuitsim::toml
