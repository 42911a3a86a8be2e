#pragma once

// Minimal XML reader/writer for the canonical record form. The reader only
// accepts well-formed elements (attributes are parsed and dropped, comments
// and CDATA are handled) but knows how to fish the first well-formed element
// out of surrounding prose or code fences, which is how model output arrives.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fedarch::xml {

struct Node {
  std::string name;
  std::string text;  // concatenated character data directly inside this element
  std::vector<Node> children;

  // All character data in document order, including nested elements'.
  std::string deep_text() const {
    if (children.empty()) return text;
    std::string out = text;
    for (const Node& child : children) out += child.deep_text();
    return out;
  }
};

inline std::string escape(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace detail {

inline bool name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
         c == ':';
}

struct Cursor {
  std::string_view s;
  size_t pos = 0;

  bool eof() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  bool starts_with(std::string_view prefix) const { return s.substr(pos, prefix.size()) == prefix; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
};

// Decodes one entity at cur.pos (which points at '&'); returns false on
// anything that is not a well-formed known or numeric entity.
inline bool decode_entity(Cursor& cur, std::string& out) {
  size_t semi = cur.s.find(';', cur.pos);
  if (semi == std::string_view::npos || semi - cur.pos > 12) return false;
  std::string_view body = cur.s.substr(cur.pos + 1, semi - cur.pos - 1);
  if (body == "amp") out += '&';
  else if (body == "lt") out += '<';
  else if (body == "gt") out += '>';
  else if (body == "quot") out += '"';
  else if (body == "apos") out += '\'';
  else if (!body.empty() && body[0] == '#') {
    int base = 10;
    std::string_view digits = body.substr(1);
    if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
      base = 16;
      digits = digits.substr(1);
    }
    if (digits.empty()) return false;
    unsigned long code = 0;
    for (char c : digits) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else return false;
      code = code * static_cast<unsigned long>(base) + static_cast<unsigned long>(d);
      if (code > 0x10FFFF) return false;
    }
    // UTF-8 encode
    if (code < 0x80) {
      out += static_cast<char>(code);
    } else if (code < 0x800) {
      out += static_cast<char>(0xC0 | (code >> 6));
      out += static_cast<char>(0x80 | (code & 0x3F));
    } else if (code < 0x10000) {
      out += static_cast<char>(0xE0 | (code >> 12));
      out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (code & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (code >> 18));
      out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (code & 0x3F));
    }
  } else {
    return false;
  }
  cur.pos = semi + 1;
  return true;
}

inline bool parse_name(Cursor& cur, std::string& name) {
  if (cur.eof() || !name_start(cur.peek())) return false;
  size_t start = cur.pos;
  while (!cur.eof() && name_char(cur.peek())) ++cur.pos;
  name = std::string(cur.s.substr(start, cur.pos - start));
  return true;
}

// Parses attributes up to '>' or '/>'; values are discarded.
inline bool parse_attributes(Cursor& cur, bool& self_closing) {
  for (;;) {
    cur.skip_ws();
    if (cur.eof()) return false;
    if (cur.starts_with("/>")) {
      cur.pos += 2;
      self_closing = true;
      return true;
    }
    if (cur.peek() == '>') {
      ++cur.pos;
      self_closing = false;
      return true;
    }
    std::string attr;
    if (!parse_name(cur, attr)) return false;
    cur.skip_ws();
    if (cur.eof() || cur.peek() != '=') return false;
    ++cur.pos;
    cur.skip_ws();
    if (cur.eof() || (cur.peek() != '"' && cur.peek() != '\'')) return false;
    char quote = cur.peek();
    ++cur.pos;
    size_t end = cur.s.find(quote, cur.pos);
    if (end == std::string_view::npos) return false;
    cur.pos = end + 1;
  }
}

inline bool parse_element(Cursor& cur, Node& node);

inline bool parse_content(Cursor& cur, Node& node, const std::string& open_name) {
  for (;;) {
    if (cur.eof()) return false;
    if (cur.peek() == '<') {
      if (cur.starts_with("</")) {
        cur.pos += 2;
        std::string close_name;
        if (!parse_name(cur, close_name)) return false;
        cur.skip_ws();
        if (cur.eof() || cur.peek() != '>') return false;
        ++cur.pos;
        return close_name == open_name;
      }
      if (cur.starts_with("<!--")) {
        size_t end = cur.s.find("-->", cur.pos + 4);
        if (end == std::string_view::npos) return false;
        cur.pos = end + 3;
        continue;
      }
      if (cur.starts_with("<![CDATA[")) {
        size_t end = cur.s.find("]]>", cur.pos + 9);
        if (end == std::string_view::npos) return false;
        node.text += cur.s.substr(cur.pos + 9, end - cur.pos - 9);
        cur.pos = end + 3;
        continue;
      }
      Node child;
      if (!parse_element(cur, child)) return false;
      node.children.push_back(std::move(child));
      continue;
    }
    if (cur.peek() == '&') {
      if (!decode_entity(cur, node.text)) return false;
      continue;
    }
    node.text += cur.peek();
    ++cur.pos;
  }
}

inline bool parse_element(Cursor& cur, Node& node) {
  if (cur.eof() || cur.peek() != '<') return false;
  ++cur.pos;
  if (!parse_name(cur, node.name)) return false;
  bool self_closing = false;
  if (!parse_attributes(cur, self_closing)) return false;
  if (self_closing) return true;
  return parse_content(cur, node, node.name);
}

}  // namespace detail

// Locates and parses the first well-formed XML element in raw text, skipping
// surrounding prose, code fences, XML declarations, doctypes, and comments.
// Returns nothing when no well-formed element exists anywhere in the text.
inline std::optional<Node> first_element(std::string_view raw) {
  size_t from = 0;
  while (from < raw.size()) {
    size_t lt = raw.find('<', from);
    if (lt == std::string_view::npos) return std::nullopt;
    detail::Cursor cur{raw, lt};
    Node node;
    if (detail::parse_element(cur, node)) return node;
    from = lt + 1;
  }
  return std::nullopt;
}

}  // namespace fedarch::xml
