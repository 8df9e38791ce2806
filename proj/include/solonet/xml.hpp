#pragma once

// Minimal element tree over expat. Enough for MusicXML and GraphML; ignores
// comments, processing instructions and the DOCTYPE.

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <expat.h>

#include "solonet/error.hpp"

namespace solonet::xml {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // concatenated character data of this element only
  std::vector<Element> children;

  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes)
      if (k == key) return &v;
    return nullptr;
  }

  const Element* child(std::string_view child_name) const {
    for (const auto& c : children)
      if (c.name == child_name) return &c;
    return nullptr;
  }

  bool has_child(std::string_view child_name) const { return child(child_name) != nullptr; }

  // Text of a direct child, or nullptr if absent.
  const std::string* child_text(std::string_view child_name) const {
    const Element* c = child(child_name);
    return c ? &c->text : nullptr;
  }
};

namespace detail {

struct Builder {
  Element root;
  std::vector<Element*> stack;
  bool seen_root = false;

  static void on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
    auto* self = static_cast<Builder*>(data);
    Element* target;
    if (self->stack.empty()) {
      target = &self->root;
      self->seen_root = true;
    } else {
      self->stack.back()->children.emplace_back();
      target = &self->stack.back()->children.back();
    }
    target->name = name;
    for (std::size_t i = 0; attrs[i]; i += 2) target->attributes.emplace_back(attrs[i], attrs[i + 1]);
    self->stack.push_back(target);
  }

  static void on_end(void* data, const XML_Char*) { static_cast<Builder*>(data)->stack.pop_back(); }

  static void on_text(void* data, const XML_Char* s, int len) {
    auto* self = static_cast<Builder*>(data);
    if (!self->stack.empty()) self->stack.back()->text.append(s, static_cast<std::size_t>(len));
  }
};

struct ParserDeleter {
  void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

}  // namespace detail

// Throws ParseError carrying the byte offset reported by expat.
inline Element parse(std::string_view bytes) {
  std::unique_ptr<XML_ParserStruct, detail::ParserDeleter> parser(XML_ParserCreate(nullptr));
  if (!parser) throw Error("failed to allocate XML parser");
  detail::Builder builder;
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &detail::Builder::on_start, &detail::Builder::on_end);
  XML_SetCharacterDataHandler(parser.get(), &detail::Builder::on_text);
  if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE) == XML_STATUS_ERROR) {
    const auto offset = XML_GetCurrentByteIndex(parser.get());
    throw ParseError(std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())),
                     offset < 0 ? 0 : static_cast<std::size_t>(offset));
  }
  if (!builder.seen_root) throw ParseError("XML document has no root element", 0);
  return std::move(builder.root);
}

// Escapes the five predefined entities for attribute and text content.
inline std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
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

}  // namespace solonet::xml
