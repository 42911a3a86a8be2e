#pragma once

// Line-oriented block text, the on-disk format for context files and
// corpus manifests. Grammar (one statement per line):
//
//   statement := key value | key '{' | '}'
//   key       := [A-Za-z_][A-Za-z0-9_-]*
//   value     := '"' escaped-chars '"' | bare-token
//
// '#' starts a comment line; blank lines are ignored. The writer always
// emits quoted values, so serialize/parse round-trips byte-stable.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fedarch/result.hpp"
#include "fedarch/text.hpp"

namespace fedarch::blocktext {

struct Node {
  std::string name;  // block key; "" for the document root
  int line = 0;
  std::vector<std::pair<std::string, std::string>> values;  // key/value in file order
  std::vector<Node> children;

  // First value for key, or fallback when absent.
  std::string get(std::string_view key, std::string_view fallback = "") const {
    for (const auto& [k, v] : values)
      if (k == key) return v;
    return std::string(fallback);
  }

  bool has(std::string_view key) const {
    for (const auto& [k, v] : values)
      if (k == key) return true;
    return false;
  }

  std::vector<std::string> get_all(std::string_view key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values)
      if (k == key) out.push_back(v);
    return out;
  }
};

namespace detail {

inline bool is_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

inline std::string unescape(std::string_view s, int line) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (++i == s.size()) throw ParseError("dangling escape in string", line);
    switch (s[i]) {
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      default: throw ParseError(std::string("unknown escape \\") + s[i], line);
    }
  }
  return out;
}

inline std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline Node parse(std::string_view text) {
  Node root;
  std::vector<Node*> stack{&root};
  int lineno = 0;
  for (const std::string& raw : split_lines(text)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (line == "}") {
      if (stack.size() == 1) throw ParseError("unmatched '}'", lineno);
      stack.pop_back();
      continue;
    }

    size_t key_end = 0;
    while (key_end < line.size() && detail::is_key_char(line[key_end])) ++key_end;
    if (key_end == 0) throw ParseError("expected key", lineno);
    std::string key = line.substr(0, key_end);
    std::string rest = trim(std::string_view(line).substr(key_end));

    if (rest == "{") {
      Node& child = stack.back()->children.emplace_back();
      child.name = key;
      child.line = lineno;
      stack.push_back(&child);
      continue;
    }
    if (rest.empty()) throw ParseError("key '" + key + "' has no value", lineno, key);

    std::string value;
    if (rest.front() == '"') {
      if (rest.size() < 2 || rest.back() != '"')
        throw ParseError("unterminated string for key '" + key + "'", lineno, key);
      value = detail::unescape(std::string_view(rest).substr(1, rest.size() - 2), lineno);
    } else {
      value = rest;  // bare token
    }
    stack.back()->values.emplace_back(std::move(key), std::move(value));
  }
  if (stack.size() != 1) throw ParseError("unclosed block '" + stack.back()->name + "'", lineno);
  return root;
}

inline Node parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

inline void serialize_node(const Node& node, std::ostream& out, int depth) {
  std::string indent(static_cast<size_t>(depth) * 2, ' ');
  for (const auto& [k, v] : node.values)
    out << indent << k << " \"" << detail::escape(v) << "\"\n";
  for (const Node& child : node.children) {
    out << indent << child.name << " {\n";
    serialize_node(child, out, depth + 1);
    out << indent << "}\n";
  }
}

inline std::string serialize(const Node& root) {
  std::ostringstream out;
  serialize_node(root, out, 0);
  return out.str();
}

}  // namespace fedarch::blocktext
