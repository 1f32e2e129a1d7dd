#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace krcnl::xml {

std::string escape_text(std::string_view s);
std::string escape_attr(std::string_view s);

// Parsed element tree. Text children are entity-expanded; whitespace-only
// text between elements is dropped.
struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<std::variant<Element, std::string>> children;

    std::optional<std::string> attr(const std::string& name) const;
    std::vector<const Element*> elements() const;        // element children
    std::vector<const Element*> find_all(const std::string& name) const;
    std::string text() const;                            // concatenated text
};

// Minimal non-validating parser for the documents this toolchain emits:
// prolog, comments, a DOCTYPE whose internal subset may declare entities
// (expanded in attribute values and text), elements, attributes, character
// data. On failure sets `err` and returns nullopt.
std::optional<Element> parse(std::string_view input, std::string* err);

// Subset DTD support: ELEMENT declarations with EMPTY / (#PCDATA) /
// sequence-choice content models and ATTLIST declarations with CDATA, ID
// and enumerated types.
struct ContentParticle {
    enum class Type { Name, Seq, Choice, Pcdata, Empty, Any };
    Type type = Type::Name;
    std::string name;
    std::vector<ContentParticle> children;
    enum class Rep { One, Opt, Star, Plus };
    Rep rep = Rep::One;
};

struct AttDef {
    std::string name;
    enum class Type { Cdata, Id, Enumerated };
    Type type = Type::Cdata;
    std::vector<std::string> allowed;  // for Enumerated
    bool required = false;
};

struct Dtd {
    std::map<std::string, ContentParticle> elements;
    std::map<std::string, std::vector<AttDef>> attlists;
};

std::optional<Dtd> parse_dtd(std::string_view text, std::string* err);

// Validates the element tree: every element declared, children match the
// content model, attributes match the ATTLIST (required present, enum
// values legal, ID values unique). On failure `why` names the first
// offending element.
bool validate(const Dtd& dtd, const Element& root, std::string* why);

}  // namespace krcnl::xml
