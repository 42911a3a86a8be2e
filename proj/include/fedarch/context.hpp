#pragma once

// The "context": a machine-readable description standard (areas, elements,
// one-word tags, purposes, examples) shared by prompt builders, the
// validator, and the evaluator so that model output stays consistent in
// structure and vocabulary. Immutable after load; safe to share across
// concurrent pipeline workers.

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fedarch/blocktext.hpp"
#include "fedarch/result.hpp"
#include "fedarch/text.hpp"

namespace fedarch {

// Whether an element's value can be inferred from the material itself or
// needs external sources. Only material-derived elements are required by
// the validator and scored by the evaluator.
enum class Derivability { MaterialDerived, External };

inline std::string derivability_token(Derivability d) {
  return d == Derivability::MaterialDerived ? "material-derived" : "external";
}

struct ElementSpec {
  std::string tag;        // one-word token, globally unique in the context
  std::string full_name;  // human-readable standard name
  std::string area_tag;   // token of the owning area
  std::string purpose;    // guidance for extraction; never empty
  std::vector<std::string> examples;
  Derivability derivability = Derivability::MaterialDerived;
  std::string format_rule;  // "" (free text), "iso-date-or-range", or "regex:<pattern>"

  bool operator==(const ElementSpec&) const = default;
};

struct AreaSpec {
  std::string tag;
  std::string full_name;
  std::vector<ElementSpec> elements;

  bool operator==(const AreaSpec&) const = default;
};

struct ContextSpec {
  std::string standard_name;
  std::string version;
  std::vector<AreaSpec> areas;

  bool operator==(const ContextSpec&) const = default;
};

// Result of looking up a tag: exactly one of the pointers is set, or
// neither when the tag is unknown.
struct TagLookup {
  const AreaSpec* area = nullptr;
  const ElementSpec* element = nullptr;
  bool found() const { return area != nullptr || element != nullptr; }
};

inline TagLookup lookup(const ContextSpec& context, std::string_view tag) {
  for (const AreaSpec& area : context.areas) {
    if (area.tag == tag) return {.area = &area};
    for (const ElementSpec& element : area.elements)
      if (element.tag == tag) return {.element = &element};
  }
  return {};
}

inline const AreaSpec* find_area(const ContextSpec& context, std::string_view tag) {
  for (const AreaSpec& area : context.areas)
    if (area.tag == tag) return &area;
  return nullptr;
}

inline const ElementSpec* find_element(const ContextSpec& context, std::string_view tag) {
  for (const AreaSpec& area : context.areas)
    for (const ElementSpec& element : area.elements)
      if (element.tag == tag) return &element;
  return nullptr;
}

// Elements whose values the material itself must yield, in context order.
inline std::vector<const ElementSpec*> material_elements(const ContextSpec& context) {
  std::vector<const ElementSpec*> out;
  for (const AreaSpec& area : context.areas)
    for (const ElementSpec& element : area.elements)
      if (element.derivability == Derivability::MaterialDerived) out.push_back(&element);
  return out;
}

inline bool is_one_word_tag(std::string_view tag) {
  if (tag.empty()) return false;
  for (char c : tag)
    if (is_space(c)) return false;
  return true;
}

// Enforces the type invariants: non-empty whitespace-free tags, globally
// unique tags across areas and elements, area_tag back-references, non-empty
// purposes, and known format rules.
inline void check_context(const ContextSpec& context) {
  std::set<std::string> seen;
  auto claim = [&seen](const std::string& tag) {
    if (!seen.insert(tag).second)
      throw ParseError("duplicate tag '" + tag + "'", 0, tag);
  };
  for (const AreaSpec& area : context.areas) {
    if (!is_one_word_tag(area.tag))
      throw ParseError("area tag must be a non-empty one-word token", 0, "tag");
    claim(area.tag);
    for (const ElementSpec& element : area.elements) {
      if (!is_one_word_tag(element.tag))
        throw ParseError("element tag must be a non-empty one-word token", 0, "tag");
      claim(element.tag);
      if (element.area_tag != area.tag)
        throw ParseError("element '" + element.tag + "' names area '" + element.area_tag +
                             "' but sits under '" + area.tag + "'",
                         0, "area_tag");
      if (element.purpose.empty())
        throw ParseError("element '" + element.tag + "' has an empty purpose", 0, "purpose");
      if (!element.format_rule.empty() && element.format_rule != "iso-date-or-range" &&
          element.format_rule.rfind("regex:", 0) != 0)
        throw ParseError("element '" + element.tag + "' has unknown format_rule '" +
                             element.format_rule + "'",
                         0, "format_rule");
    }
  }
}

inline ContextSpec context_from_blocktext(const blocktext::Node& root) {
  ContextSpec context;
  context.standard_name = root.get("standard");
  context.version = root.get("version");
  if (context.standard_name.empty())
    throw ParseError("missing top-level 'standard'", root.line, "standard");
  for (const blocktext::Node& area_node : root.children) {
    if (area_node.name != "area")
      throw ParseError("unexpected block '" + area_node.name + "'", area_node.line);
    AreaSpec area;
    area.tag = area_node.get("tag");
    area.full_name = area_node.get("name");
    if (area.tag.empty()) throw ParseError("area missing 'tag'", area_node.line, "tag");
    for (const blocktext::Node& element_node : area_node.children) {
      if (element_node.name != "element")
        throw ParseError("unexpected block '" + element_node.name + "'", element_node.line);
      ElementSpec element;
      element.tag = element_node.get("tag");
      element.full_name = element_node.get("name");
      element.area_tag = area.tag;
      element.purpose = element_node.get("purpose");
      element.examples = element_node.get_all("example");
      element.format_rule = element_node.get("format_rule");
      std::string derivability = element_node.get("derivability", "material-derived");
      if (derivability == "material-derived")
        element.derivability = Derivability::MaterialDerived;
      else if (derivability == "external")
        element.derivability = Derivability::External;
      else
        throw ParseError("unknown derivability '" + derivability + "'", element_node.line,
                         "derivability");
      if (element.tag.empty())
        throw ParseError("element missing 'tag'", element_node.line, "tag");
      if (element.purpose.empty())
        throw ParseError("element '" + element.tag + "' missing 'purpose'", element_node.line,
                         "purpose");
      area.elements.push_back(std::move(element));
    }
    context.areas.push_back(std::move(area));
  }
  check_context(context);
  return context;
}

inline ContextSpec parse_context(std::string_view text) {
  return context_from_blocktext(blocktext::parse(text));
}

inline ContextSpec load_context(const std::string& path) {
  return context_from_blocktext(blocktext::parse_file(path));
}

inline std::string serialize_context(const ContextSpec& context) {
  blocktext::Node root;
  root.values.emplace_back("standard", context.standard_name);
  root.values.emplace_back("version", context.version);
  for (const AreaSpec& area : context.areas) {
    blocktext::Node& area_node = root.children.emplace_back();
    area_node.name = "area";
    area_node.values.emplace_back("tag", area.tag);
    area_node.values.emplace_back("name", area.full_name);
    for (const ElementSpec& element : area.elements) {
      blocktext::Node& element_node = area_node.children.emplace_back();
      element_node.name = "element";
      element_node.values.emplace_back("tag", element.tag);
      element_node.values.emplace_back("name", element.full_name);
      element_node.values.emplace_back("purpose", element.purpose);
      for (const std::string& example : element.examples)
        element_node.values.emplace_back("example", example);
      element_node.values.emplace_back("derivability", derivability_token(element.derivability));
      if (!element.format_rule.empty())
        element_node.values.emplace_back("format_rule", element.format_rule);
    }
  }
  return blocktext::serialize(root);
}

inline void save_context(const ContextSpec& context, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << serialize_context(context);
}

// The ISAD(G) subset that ships built in: three areas, seven elements, all
// material-derived. Other standards (or the full 26-element ISAD(G)) are
// supplied as context files.
inline ContextSpec builtin_isadg() {
  ContextSpec context;
  context.standard_name = "ISAD(G)";
  context.version = "2nd edition";

  AreaSpec id{.tag = "Id", .full_name = "Identity Statement Area", .elements = {}};
  id.elements.push_back({
      .tag = "Title",
      .full_name = "Title",
      .area_tag = "Id",
      .purpose = "The name given to the archival unit, either a formal title (if one exists) "
                 "or a descriptive title created by the archivist.",
      .examples = {},
      .derivability = Derivability::MaterialDerived,
      .format_rule = "",
  });
  id.elements.push_back({
      .tag = "Date",
      .full_name = "Date(s)",
      .area_tag = "Id",
      .purpose = "The date range or specific dates of the archival unit, including creation "
                 "or accumulation dates.",
      .examples = {"1971-05-12", "1968/1974"},
      .derivability = Derivability::MaterialDerived,
      .format_rule = "iso-date-or-range",
  });
  id.elements.push_back({
      .tag = "DescLev",
      .full_name = "Level of Description",
      .area_tag = "Id",
      .purpose = "Indicates the hierarchical level of the archival unit (e.g., fonds, "
                 "sub-fonds, series, file, item).",
      .examples = {"fonds", "sub-fonds", "series", "file", "item"},
      .derivability = Derivability::MaterialDerived,
      .format_rule = "",
  });
  id.elements.push_back({
      .tag = "Extent",
      .full_name = "Extent and medium of the unit of description (quantity, bulk, or size)",
      .area_tag = "Id",
      .purpose = "Describes the physical or digital size and format of the unit (e.g., "
                 "\"3 boxes,\" \"0.5 linear meters,\" \"10 digital files (PDF)\").",
      .examples = {"3 boxes", "0.5 linear meters", "10 digital files (PDF)"},
      .derivability = Derivability::MaterialDerived,
      .format_rule = "",
  });

  AreaSpec cont{.tag = "Cont", .full_name = "Content and Structure Area", .elements = {}};
  cont.elements.push_back({
      .tag = "Scope",
      .full_name = "Scope and Content",
      .area_tag = "Cont",
      .purpose = "A summary of the subject matter, themes, and types of records included in "
                 "the unit, helping users assess its relevance.",
      .examples = {},
      .derivability = Derivability::MaterialDerived,
      .format_rule = "",
  });

  AreaSpec access{.tag = "AccessUse",
                  .full_name = "Conditions of Access and Use Area",
                  .elements = {}};
  access.elements.push_back({
      .tag = "Lang",
      .full_name = "Language(s) and Script(s) of Material",
      .area_tag = "AccessUse",
      .purpose = "Identifies the language(s) and script(s) used in the materials (e.g., "
                 "\"English, with some documents in French; Latin script\").",
      .examples = {"English, with some documents in French; Latin script"},
      .derivability = Derivability::MaterialDerived,
      .format_rule = "",
  });
  access.elements.push_back({
      .tag = "PhysTech",
      .full_name = "Physical Characteristics and Technical Requirements",
      .area_tag = "AccessUse",
      .purpose = "Describes any physical or technical conditions affecting use, such as "
                 "fragility or digital file formats.",
      .examples = {},
      .derivability = Derivability::MaterialDerived,
      .format_rule = "",
  });

  context.areas = {std::move(id), std::move(cont), std::move(access)};
  check_context(context);
  return context;
}

}  // namespace fedarch
