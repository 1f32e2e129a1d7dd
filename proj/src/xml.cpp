#include "krcnl/xml.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace krcnl::xml {

std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string escape_attr(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::optional<std::string> Element::attr(const std::string& name) const {
    for (const auto& [k, v] : attrs)
        if (k == name) return v;
    return std::nullopt;
}

std::vector<const Element*> Element::elements() const {
    std::vector<const Element*> out;
    for (const auto& child : children)
        if (const auto* e = std::get_if<Element>(&child)) out.push_back(e);
    return out;
}

std::vector<const Element*> Element::find_all(const std::string& name) const {
    std::vector<const Element*> out;
    for (const Element* e : elements())
        if (e->name == name) out.push_back(e);
    return out;
}

std::string Element::text() const {
    std::string out;
    for (const auto& child : children)
        if (const auto* s = std::get_if<std::string>(&child)) out += *s;
    return out;
}

namespace {

struct Reader {
    std::string_view in;
    size_t pos = 0;
    std::string* err;
    std::map<std::string, std::string> entities;

    bool fail(const std::string& what) {
        if (err && err->empty())
            *err = what + " at offset " + std::to_string(pos);
        return false;
    }

    bool eof() const { return pos >= in.size(); }
    char peek() const { return in[pos]; }
    bool starts_with(std::string_view s) const {
        return in.compare(pos, s.size(), s) == 0;
    }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(in[pos]))) ++pos;
    }

    bool name_char(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == ':' ||
               c == '_' || c == '-' || c == '.';
    }

    std::string read_name() {
        size_t b = pos;
        while (!eof() && name_char(in[pos])) ++pos;
        return std::string(in.substr(b, pos - b));
    }

    bool skip_comment() {
        // at "<!--"
        size_t end = in.find("-->", pos + 4);
        if (end == std::string_view::npos) return fail("unterminated comment");
        pos = end + 3;
        return true;
    }

    bool skip_pi() {
        size_t end = in.find("?>", pos + 2);
        if (end == std::string_view::npos)
            return fail("unterminated processing instruction");
        pos = end + 2;
        return true;
    }

    bool read_doctype() {
        // at "<!DOCTYPE"; scan for optional internal subset with entities.
        pos += 9;
        while (!eof() && in[pos] != '[' && in[pos] != '>') ++pos;
        if (eof()) return fail("unterminated DOCTYPE");
        if (in[pos] == '[') {
            ++pos;
            while (!eof() && in[pos] != ']') {
                skip_ws();
                if (starts_with("<!ENTITY")) {
                    pos += 8;
                    skip_ws();
                    std::string name = read_name();
                    skip_ws();
                    if (eof() || (peek() != '"' && peek() != '\''))
                        return fail("malformed ENTITY declaration");
                    char quote = in[pos++];
                    size_t b = pos;
                    while (!eof() && in[pos] != quote) ++pos;
                    if (eof()) return fail("unterminated ENTITY value");
                    entities[name] = std::string(in.substr(b, pos - b));
                    ++pos;
                    skip_ws();
                    if (eof() || in[pos] != '>')
                        return fail("malformed ENTITY declaration");
                    ++pos;
                } else if (starts_with("<!--")) {
                    if (!skip_comment()) return false;
                } else if (!eof() && in[pos] != ']') {
                    ++pos;  // tolerate other declarations
                }
            }
            if (eof()) return fail("unterminated DOCTYPE subset");
            ++pos;  // ']'
        }
        while (!eof() && in[pos] != '>') ++pos;
        if (eof()) return fail("unterminated DOCTYPE");
        ++pos;
        return true;
    }

    bool expand_into(std::string_view raw, std::string& out) {
        size_t i = 0;
        while (i < raw.size()) {
            if (raw[i] != '&') {
                out += raw[i++];
                continue;
            }
            size_t semi = raw.find(';', i + 1);
            if (semi == std::string_view::npos)
                return fail("unterminated entity reference");
            std::string name(raw.substr(i + 1, semi - i - 1));
            if (name == "amp") out += '&';
            else if (name == "lt") out += '<';
            else if (name == "gt") out += '>';
            else if (name == "quot") out += '"';
            else if (name == "apos") out += '\'';
            else if (!name.empty() && name[0] == '#') {
                int code = 0;
                try {
                    code = (name.size() > 1 && (name[1] == 'x' || name[1] == 'X'))
                               ? std::stoi(name.substr(2), nullptr, 16)
                               : std::stoi(name.substr(1));
                } catch (...) {
                    return fail("bad character reference");
                }
                if (code <= 0 || code > 0x10FFFF)
                    return fail("bad character reference");
                // UTF-8 encode
                unsigned cp = static_cast<unsigned>(code);
                if (cp < 0x80) out += static_cast<char>(cp);
                else if (cp < 0x800) {
                    out += static_cast<char>(0xC0 | (cp >> 6));
                    out += static_cast<char>(0x80 | (cp & 0x3F));
                } else if (cp < 0x10000) {
                    out += static_cast<char>(0xE0 | (cp >> 12));
                    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (cp & 0x3F));
                } else {
                    out += static_cast<char>(0xF0 | (cp >> 18));
                    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
                    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (cp & 0x3F));
                }
            } else {
                auto it = entities.find(name);
                if (it == entities.end())
                    return fail("undefined entity '&" + name + ";'");
                out += it->second;
            }
            i = semi + 1;
        }
        return true;
    }

    bool read_attrs(Element& e) {
        while (true) {
            skip_ws();
            if (eof()) return fail("unterminated start tag");
            if (peek() == '>' || peek() == '/' || peek() == '?') return true;
            std::string name = read_name();
            if (name.empty()) return fail("expected attribute name");
            skip_ws();
            if (eof() || peek() != '=') return fail("expected '='");
            ++pos;
            skip_ws();
            if (eof() || (peek() != '"' && peek() != '\''))
                return fail("expected quoted attribute value");
            char quote = in[pos++];
            size_t b = pos;
            while (!eof() && in[pos] != quote) ++pos;
            if (eof()) return fail("unterminated attribute value");
            std::string value;
            if (!expand_into(in.substr(b, pos - b), value)) return false;
            ++pos;
            e.attrs.emplace_back(std::move(name), std::move(value));
        }
    }

    bool read_element(Element& e) {
        if (eof() || peek() != '<') return fail("expected '<'");
        ++pos;
        e.name = read_name();
        if (e.name.empty()) return fail("expected element name");
        if (!read_attrs(e)) return false;
        if (peek() == '/') {
            ++pos;
            if (eof() || peek() != '>') return fail("expected '/>'");
            ++pos;
            return true;
        }
        if (peek() != '>') return fail("expected '>'");
        ++pos;
        // content
        while (true) {
            size_t text_begin = pos;
            while (!eof() && in[pos] != '<') ++pos;
            if (pos > text_begin) {
                std::string_view raw = in.substr(text_begin, pos - text_begin);
                bool ws_only = std::all_of(raw.begin(), raw.end(), [](char c) {
                    return std::isspace(static_cast<unsigned char>(c));
                });
                if (!ws_only) {
                    std::string value;
                    if (!expand_into(raw, value)) return false;
                    e.children.emplace_back(std::move(value));
                }
            }
            if (eof()) return fail("unterminated element '" + e.name + "'");
            if (starts_with("</")) {
                pos += 2;
                std::string close = read_name();
                if (close != e.name)
                    return fail("mismatched close tag '" + close + "' for '" +
                                e.name + "'");
                skip_ws();
                if (eof() || peek() != '>') return fail("expected '>'");
                ++pos;
                return true;
            }
            if (starts_with("<!--")) {
                if (!skip_comment()) return false;
                continue;
            }
            if (starts_with("<?")) {
                if (!skip_pi()) return false;
                continue;
            }
            Element child;
            if (!read_element(child)) return false;
            e.children.emplace_back(std::move(child));
        }
    }
};

}  // namespace

std::optional<Element> parse(std::string_view input, std::string* err) {
    std::string local_err;
    Reader r{input, 0, err ? err : &local_err, {}};
    if (err) err->clear();
    // prolog
    while (true) {
        r.skip_ws();
        if (r.eof()) {
            r.fail("no root element");
            return std::nullopt;
        }
        if (r.starts_with("<?")) {
            if (!r.skip_pi()) return std::nullopt;
        } else if (r.starts_with("<!--")) {
            if (!r.skip_comment()) return std::nullopt;
        } else if (r.starts_with("<!DOCTYPE")) {
            if (!r.read_doctype()) return std::nullopt;
        } else {
            break;
        }
    }
    Element root;
    if (!r.read_element(root)) return std::nullopt;
    r.skip_ws();
    while (!r.eof() && r.starts_with("<!--")) {
        if (!r.skip_comment()) return std::nullopt;
        r.skip_ws();
    }
    if (!r.eof()) {
        r.fail("trailing content after root element");
        return std::nullopt;
    }
    return root;
}

// ---------------------------------------------------------------------------
// DTD subset

namespace {

struct DtdReader {
    std::string_view in;
    size_t pos = 0;
    std::string* err;

    bool fail(const std::string& what) {
        if (err && err->empty())
            *err = what + " at offset " + std::to_string(pos);
        return false;
    }
    bool eof() const { return pos >= in.size(); }
    char peek() const { return in[pos]; }
    bool starts_with(std::string_view s) const {
        return in.compare(pos, s.size(), s) == 0;
    }
    void skip_ws_comments() {
        while (!eof()) {
            if (std::isspace(static_cast<unsigned char>(in[pos]))) {
                ++pos;
            } else if (starts_with("<!--")) {
                size_t end = in.find("-->", pos + 4);
                if (end == std::string_view::npos) { pos = in.size(); return; }
                pos = end + 3;
            } else {
                return;
            }
        }
    }
    bool name_char(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == ':' ||
               c == '_' || c == '-' || c == '.';
    }
    std::string read_name() {
        size_t b = pos;
        while (!eof() && name_char(in[pos])) ++pos;
        return std::string(in.substr(b, pos - b));
    }
    void read_rep(ContentParticle& cp) {
        if (eof()) return;
        switch (peek()) {
            case '?': cp.rep = ContentParticle::Rep::Opt; ++pos; break;
            case '*': cp.rep = ContentParticle::Rep::Star; ++pos; break;
            case '+': cp.rep = ContentParticle::Rep::Plus; ++pos; break;
            default: break;
        }
    }

    bool read_cp(ContentParticle& cp) {
        skip_ws_comments();
        if (eof()) return fail("unexpected end of content model");
        if (peek() == '(') {
            ++pos;
            skip_ws_comments();
            if (starts_with("#PCDATA")) {
                pos += 7;
                skip_ws_comments();
                if (eof() || peek() != ')') return fail("expected ')'");
                ++pos;
                cp.type = ContentParticle::Type::Pcdata;
                return true;
            }
            ContentParticle first;
            if (!read_cp(first)) return false;
            skip_ws_comments();
            if (!eof() && peek() == ')') {
                ++pos;
                // single-child group behaves as a sequence of one
                cp.type = ContentParticle::Type::Seq;
                cp.children.push_back(std::move(first));
                read_rep(cp);
                return true;
            }
            if (eof() || (peek() != '|' && peek() != ','))
                return fail("expected '|', ',' or ')'");
            char sep = peek();
            cp.type = sep == '|' ? ContentParticle::Type::Choice
                                 : ContentParticle::Type::Seq;
            cp.children.push_back(std::move(first));
            while (!eof() && peek() == sep) {
                ++pos;
                ContentParticle next;
                if (!read_cp(next)) return false;
                cp.children.push_back(std::move(next));
                skip_ws_comments();
            }
            if (eof() || peek() != ')') return fail("expected ')'");
            ++pos;
            read_rep(cp);
            return true;
        }
        cp.type = ContentParticle::Type::Name;
        cp.name = read_name();
        if (cp.name.empty()) return fail("expected a name in content model");
        read_rep(cp);
        return true;
    }
};

}  // namespace

std::optional<Dtd> parse_dtd(std::string_view text, std::string* err) {
    std::string local_err;
    DtdReader r{text, 0, err ? err : &local_err};
    if (err) err->clear();
    Dtd dtd;
    while (true) {
        r.skip_ws_comments();
        if (r.eof()) break;
        if (r.starts_with("<!ELEMENT")) {
            r.pos += 9;
            r.skip_ws_comments();
            std::string name = r.read_name();
            if (name.empty()) {
                r.fail("expected element name");
                return std::nullopt;
            }
            r.skip_ws_comments();
            ContentParticle model;
            if (r.starts_with("EMPTY")) {
                r.pos += 5;
                model.type = ContentParticle::Type::Empty;
            } else if (r.starts_with("ANY")) {
                r.pos += 3;
                model.type = ContentParticle::Type::Any;
            } else {
                if (!r.read_cp(model)) return std::nullopt;
            }
            r.skip_ws_comments();
            if (r.eof() || r.peek() != '>') {
                r.fail("expected '>' after ELEMENT declaration");
                return std::nullopt;
            }
            ++r.pos;
            dtd.elements[name] = std::move(model);
        } else if (r.starts_with("<!ATTLIST")) {
            r.pos += 9;
            r.skip_ws_comments();
            std::string element = r.read_name();
            if (element.empty()) {
                r.fail("expected element name");
                return std::nullopt;
            }
            auto& defs = dtd.attlists[element];
            while (true) {
                r.skip_ws_comments();
                if (r.eof()) {
                    r.fail("unterminated ATTLIST");
                    return std::nullopt;
                }
                if (r.peek() == '>') {
                    ++r.pos;
                    break;
                }
                AttDef def;
                def.name = r.read_name();
                if (def.name.empty()) {
                    r.fail("expected attribute name");
                    return std::nullopt;
                }
                r.skip_ws_comments();
                if (r.starts_with("CDATA")) {
                    r.pos += 5;
                    def.type = AttDef::Type::Cdata;
                } else if (r.starts_with("ID")) {
                    r.pos += 2;
                    def.type = AttDef::Type::Id;
                } else if (r.peek() == '(') {
                    ++r.pos;
                    def.type = AttDef::Type::Enumerated;
                    while (true) {
                        r.skip_ws_comments();
                        std::string v = r.read_name();
                        if (v.empty()) {
                            r.fail("expected enumeration value");
                            return std::nullopt;
                        }
                        def.allowed.push_back(std::move(v));
                        r.skip_ws_comments();
                        if (!r.eof() && r.peek() == '|') {
                            ++r.pos;
                            continue;
                        }
                        if (!r.eof() && r.peek() == ')') {
                            ++r.pos;
                            break;
                        }
                        r.fail("expected '|' or ')'");
                        return std::nullopt;
                    }
                } else {
                    r.fail("unsupported attribute type");
                    return std::nullopt;
                }
                r.skip_ws_comments();
                if (r.starts_with("#REQUIRED")) {
                    r.pos += 9;
                    def.required = true;
                } else if (r.starts_with("#IMPLIED")) {
                    r.pos += 8;
                } else if (r.starts_with("#FIXED") || r.peek() == '"' ||
                           r.peek() == '\'') {
                    if (r.starts_with("#FIXED")) {
                        r.pos += 6;
                        r.skip_ws_comments();
                    }
                    if (r.eof() || (r.peek() != '"' && r.peek() != '\'')) {
                        r.fail("expected default value literal");
                        return std::nullopt;
                    }
                    char quote = r.in[r.pos++];
                    while (!r.eof() && r.peek() != quote) ++r.pos;
                    if (r.eof()) {
                        r.fail("unterminated default value");
                        return std::nullopt;
                    }
                    ++r.pos;
                } else {
                    r.fail("expected attribute default");
                    return std::nullopt;
                }
                defs.push_back(std::move(def));
            }
        } else {
            r.fail("expected ELEMENT or ATTLIST declaration");
            return std::nullopt;
        }
    }
    return dtd;
}

namespace {

// Positions reachable after matching `cp` exactly once starting at `pos`.
void match_once(const ContentParticle& cp, const std::vector<std::string>& names,
                size_t pos, std::set<size_t>& out);

void match_with_rep(const ContentParticle& cp,
                    const std::vector<std::string>& names, size_t pos,
                    std::set<size_t>& out) {
    using Rep = ContentParticle::Rep;
    if (cp.rep == Rep::Opt || cp.rep == Rep::Star) out.insert(pos);
    std::set<size_t> frontier;
    match_once(cp, names, pos, frontier);
    out.insert(frontier.begin(), frontier.end());
    if (cp.rep == Rep::Star || cp.rep == Rep::Plus) {
        std::set<size_t> seen = frontier;
        while (!frontier.empty()) {
            std::set<size_t> next;
            for (size_t p : frontier) {
                std::set<size_t> step;
                match_once(cp, names, p, step);
                for (size_t q : step) {
                    if (q > p && seen.insert(q).second) next.insert(q);
                }
            }
            out.insert(next.begin(), next.end());
            frontier = std::move(next);
        }
    }
}

void match_once(const ContentParticle& cp, const std::vector<std::string>& names,
                size_t pos, std::set<size_t>& out) {
    switch (cp.type) {
        case ContentParticle::Type::Name:
            if (pos < names.size() && names[pos] == cp.name) out.insert(pos + 1);
            break;
        case ContentParticle::Type::Seq: {
            std::set<size_t> positions{pos};
            for (const auto& child : cp.children) {
                std::set<size_t> next;
                for (size_t p : positions) match_with_rep(child, names, p, next);
                positions = std::move(next);
                if (positions.empty()) break;
            }
            out.insert(positions.begin(), positions.end());
            break;
        }
        case ContentParticle::Type::Choice:
            for (const auto& child : cp.children)
                match_with_rep(child, names, pos, out);
            break;
        case ContentParticle::Type::Pcdata:
        case ContentParticle::Type::Empty:
        case ContentParticle::Type::Any:
            out.insert(pos);
            break;
    }
}

bool validate_element(const Dtd& dtd, const Element& e,
                      std::set<std::string>& ids, std::string* why) {
    auto set_why = [&](const std::string& what) {
        if (why && why->empty()) *why = "element '" + e.name + "': " + what;
        return false;
    };

    auto decl = dtd.elements.find(e.name);
    if (decl == dtd.elements.end()) return set_why("not declared in the schema");
    const ContentParticle& model = decl->second;

    bool has_text = false;
    std::vector<std::string> child_names;
    for (const auto& child : e.children) {
        if (std::holds_alternative<std::string>(child))
            has_text = true;
        else
            child_names.push_back(std::get<Element>(child).name);
    }

    switch (model.type) {
        case ContentParticle::Type::Empty:
            if (has_text || !child_names.empty())
                return set_why("declared EMPTY but has content");
            break;
        case ContentParticle::Type::Pcdata:
            if (!child_names.empty())
                return set_why("character data only, found child elements");
            break;
        case ContentParticle::Type::Any:
            break;
        default: {
            if (has_text) return set_why("unexpected character data");
            std::set<size_t> ends;
            match_with_rep(model, child_names, 0, ends);
            if (!ends.count(child_names.size()))
                return set_why("children do not match the content model");
        }
    }

    auto attlist = dtd.attlists.find(e.name);
    const std::vector<AttDef> no_defs;
    const std::vector<AttDef>& defs =
        attlist == dtd.attlists.end() ? no_defs : attlist->second;
    for (const auto& [name, value] : e.attrs) {
        const AttDef* def = nullptr;
        for (const auto& d : defs)
            if (d.name == name) def = &d;
        if (!def) return set_why("attribute '" + name + "' not declared");
        if (def->type == AttDef::Type::Enumerated) {
            if (std::find(def->allowed.begin(), def->allowed.end(), value) ==
                def->allowed.end())
                return set_why("attribute '" + name + "' has value '" + value +
                               "' outside its enumeration");
        } else if (def->type == AttDef::Type::Id) {
            if (!ids.insert(value).second)
                return set_why("duplicate ID '" + value + "'");
        }
    }
    for (const auto& d : defs) {
        if (d.required && !e.attr(d.name))
            return set_why("required attribute '" + d.name + "' missing");
    }

    for (const auto& child : e.children) {
        if (const auto* el = std::get_if<Element>(&child)) {
            if (!validate_element(dtd, *el, ids, why)) return false;
        }
    }
    return true;
}

}  // namespace

bool validate(const Dtd& dtd, const Element& root, std::string* why) {
    if (why) why->clear();
    std::set<std::string> ids;
    return validate_element(dtd, root, ids, why);
}

}  // namespace krcnl::xml
