#include "toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "pursuitsim/errors.hpp"

namespace pursuitsim::toml {

namespace {

[[noreturn]] void fail(int line, const std::string& why) {
  throw ParseError("line " + std::to_string(line) + ": " + why);
}

bool is_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.';
}

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  int line;

  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  void skip_ws() {
    while (!done() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
};

Value parse_value(Cursor& c);

Value parse_string(Cursor& c) {
  Value v;
  v.kind = Value::Kind::kString;
  v.line = c.line;
  ++c.pos;  // opening quote
  while (true) {
    if (c.done()) fail(c.line, "unterminated string");
    char ch = c.s[c.pos++];
    if (ch == '"') break;
    if (ch == '\\') {
      if (c.done()) fail(c.line, "unterminated escape");
      char esc = c.s[c.pos++];
      switch (esc) {
        case '"': v.s += '"'; break;
        case '\\': v.s += '\\'; break;
        case 'n': v.s += '\n'; break;
        case 't': v.s += '\t'; break;
        default: fail(c.line, std::string("unsupported escape '\\") + esc + "'");
      }
    } else {
      v.s += ch;
    }
  }
  return v;
}

Value parse_array(Cursor& c) {
  Value v;
  v.kind = Value::Kind::kArray;
  v.line = c.line;
  ++c.pos;  // '['
  c.skip_ws();
  if (!c.done() && c.peek() == ']') {
    ++c.pos;
    return v;
  }
  while (true) {
    v.items.push_back(parse_value(c));
    c.skip_ws();
    if (c.done()) fail(c.line, "unterminated array");
    char ch = c.s[c.pos];
    if (ch == ',') {
      ++c.pos;
      c.skip_ws();
      if (!c.done() && c.peek() == ']') {  // trailing comma
        ++c.pos;
        return v;
      }
      continue;
    }
    if (ch == ']') {
      ++c.pos;
      return v;
    }
    fail(c.line, "expected ',' or ']' in array");
  }
}

Value parse_scalar(Cursor& c) {
  const std::size_t start = c.pos;
  while (!c.done()) {
    char ch = c.peek();
    if (ch == ',' || ch == ']' || ch == ' ' || ch == '\t') break;
    ++c.pos;
  }
  std::string tok = c.s.substr(start, c.pos - start);
  if (tok.empty()) fail(c.line, "expected a value");

  Value v;
  v.line = c.line;
  if (tok == "true" || tok == "false") {
    v.kind = Value::Kind::kBool;
    v.b = (tok == "true");
    return v;
  }

  // Integer if the whole token consumes as one; otherwise try float.
  {
    long long out = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    if (ec == std::errc() && p == tok.data() + tok.size()) {
      v.kind = Value::Kind::kInt;
      v.i = out;
      return v;
    }
  }
  {
    char* end = nullptr;
    const double out = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() + tok.size() && end != tok.c_str()) {
      v.kind = Value::Kind::kFloat;
      v.f = out;
      return v;
    }
  }
  fail(c.line, "cannot parse value '" + tok + "'");
}

Value parse_value(Cursor& c) {
  c.skip_ws();
  if (c.done()) fail(c.line, "expected a value");
  char ch = c.peek();
  if (ch == '"') return parse_string(c);
  if (ch == '[') return parse_array(c);
  return parse_scalar(c);
}

// Strips a comment that starts outside any string literal.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (ch == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (ch == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Document parse(const std::string& text) {
  Document doc;
  doc.tables.push_back(Table{});  // root
  Table* current = &doc.tables.back();

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    ++line_no;
    std::string line = trim(strip_comment(text.substr(pos, eol - pos)));
    pos = eol + 1;
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    if (line.front() == '[') {
      const bool array_table = line.size() > 1 && line[1] == '[';
      const std::string closer = array_table ? "]]" : "]";
      const std::size_t name_start = array_table ? 2 : 1;
      const std::size_t close = line.find(closer, name_start);
      if (close == std::string::npos || close + closer.size() != line.size())
        fail(line_no, "malformed table header '" + line + "'");
      const std::string name = trim(line.substr(name_start, close - name_start));
      if (name.empty()) fail(line_no, "empty table name");
      for (char ch : name)
        if (!is_key_char(ch)) fail(line_no, "bad table name '" + name + "'");
      if (!array_table) {
        for (const Table& t : doc.tables)
          if (t.name == name)
            fail(line_no, "table [" + name + "] defined twice");
      }
      doc.tables.push_back(Table{name, line_no, {}});
      current = &doc.tables.back();
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) fail(line_no, "empty key");
    for (char ch : key)
      if (!is_key_char(ch)) fail(line_no, "bad key '" + key + "'");
    if (current->entries.count(key))
      fail(line_no, "key '" + key + "' set twice in the same table");

    const std::string value_text = trim(line.substr(eq + 1));
    if (value_text.empty()) fail(line_no, "missing value for key '" + key + "'");
    Cursor c{value_text, 0, line_no};
    Value v = parse_value(c);
    c.skip_ws();
    if (!c.done())
      fail(line_no, "trailing characters after value for key '" + key + "'");
    current->entries.emplace(key, std::move(v));
  }

  // Drop an empty root table so documents that start with a header do not
  // carry a phantom section.
  if (doc.tables.front().entries.empty() && doc.tables.size() > 1)
    doc.tables.erase(doc.tables.begin());
  return doc;
}

}  // namespace pursuitsim::toml
