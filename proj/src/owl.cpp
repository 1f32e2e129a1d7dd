#include "krcnl/owl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "krcnl/xml.hpp"

namespace krcnl {

std::string default_namespace() {
    return "http://www.semanticweb.org/ontologies/2014/1/SsePatentLaw#";
}

static std::string sanitize_local(std::string s) {
    for (char& c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
    }
    return s;
}

std::string local_name(const Designation& d, bool keep_surface_case) {
    std::string out;
    if (keep_surface_case) {
        std::istringstream is(d.surface);
        std::string word;
        while (is >> word) {
            if (!out.empty()) out += '_';
            out += word;
        }
    } else {
        for (size_t i = 0; i < d.words.size(); ++i) {
            if (i) out += '_';
            out += d.words[i];
        }
    }
    return sanitize_local(out);
}

std::string property_local_name(const std::vector<std::string>& verb_words) {
    std::string out;
    for (size_t i = 0; i < verb_words.size(); ++i) {
        if (i) out += '_';
        out += verb_words[i];
    }
    return sanitize_local(out);
}

std::vector<OwlAxiom> map_vocabulary_to_owl(const FactModel& model,
                                            const std::string& ns,
                                            Diagnostics& diags) {
    const Vocabulary& vocab = model.vocabulary();
    std::vector<OwlAxiom> axioms;

    auto class_iri = [&](NounId id) {
        return Iri{ns, local_name(vocab.noun(id).designation, false)};
    };

    // iri-collision bookkeeping: category -> local -> first designation key.
    std::map<std::string, std::map<std::string, std::pair<std::string, SourcePos>>>
        locals;
    auto claim_local = [&](const std::string& category, const std::string& local,
                           const std::string& key, const SourcePos& pos) {
        auto [it, inserted] = locals[category].emplace(local, std::make_pair(key, pos));
        if (!inserted && it->second.first != key) {
            diags.error("iri-collision",
                        "local name '" + local + "' derived from '" + key +
                            "' collides with '" + it->second.first + "'",
                        pos, it->second.second);
        }
    };

    for (const auto& noun : vocab.nouns()) {
        Iri iri = Iri{ns, local_name(noun.designation, false)};
        claim_local("class", iri.local, noun.designation.key(), noun.decl_pos);
        axioms.push_back({OwlAxiomKind::ClassDecl, {iri}, {}});
        if (noun.general) {
            axioms.push_back(
                {OwlAxiomKind::SubClassOf, {iri, class_iri(*noun.general)}, {}});
        }
        if (noun.definition) {
            axioms.push_back(
                {OwlAxiomKind::AnnotationAssertion, {iri}, *noun.definition});
        }
    }

    for (const auto& ind : vocab.individuals()) {
        Iri iri = Iri{ns, local_name(ind.designation, true)};
        claim_local("individual", iri.local, ind.designation.key(), ind.decl_pos);
        axioms.push_back({OwlAxiomKind::NamedIndividualDecl, {iri}, {}});
        if (ind.concept_type) {
            axioms.push_back({OwlAxiomKind::ClassAssertion,
                              {class_iri(*ind.concept_type), iri},
                              {}});
        }
    }

    // One property per distinct surface verb phrase, with the union of
    // subjects as domains and objects as ranges.
    struct PropertyInfo {
        std::vector<std::string> name_words;  // words forming the local name
        std::set<NounId> domains;
        std::set<NounId> ranges;
        SourcePos decl_pos;
        bool passive = false;
    };
    std::vector<PropertyInfo> props;
    std::map<uint32_t, size_t> by_phrase;
    for (const auto& fact : vocab.facts()) {
        auto it = by_phrase.find(fact.phrase.index);
        if (it == by_phrase.end()) {
            PropertyInfo info;
            info.name_words = vocab.verb_words(fact.phrase);
            info.decl_pos = fact.decl_pos;
            it = by_phrase.emplace(fact.phrase.index, props.size()).first;
            props.push_back(std::move(info));
        }
        PropertyInfo& info = props[it->second];
        info.domains.insert(fact.subject);
        if (fact.object) info.ranges.insert(*fact.object);
    }
    for (const auto& passive : vocab.passives()) {
        PropertyInfo info;
        // "is included in" names the property included_in.
        info.name_words.assign(passive.verb_words.begin() + 1,
                               passive.verb_words.end());
        info.domains.insert(passive.subject);
        info.ranges.insert(passive.object);
        info.decl_pos = passive.decl_pos;
        info.passive = true;
        props.push_back(std::move(info));
    }

    for (const auto& prop : props) {
        Iri iri = Iri{ns, property_local_name(prop.name_words)};
        claim_local("property", iri.local, phrase_key(prop.name_words),
                    prop.decl_pos);
        axioms.push_back({OwlAxiomKind::ObjectPropertyDecl, {iri}, {}});
        for (NounId d : prop.domains)
            axioms.push_back({OwlAxiomKind::Domain, {iri, class_iri(d)}, {}});
        for (NounId r : prop.ranges)
            axioms.push_back({OwlAxiomKind::Range, {iri, class_iri(r)}, {}});
    }

    // A declared passive is the inverse of every active phrase whose stem
    // matches its participle ("included" <- include, includes).
    for (const auto& prop : props) {
        if (!prop.passive) continue;
        Iri passive_iri = Iri{ns, property_local_name(prop.name_words)};
        const std::string& participle = prop.name_words.front();
        for (const auto& active : props) {
            if (active.passive) continue;
            auto norm = normalize_phrase(active.name_words);
            const std::string& stem = norm.back();
            if (participle == stem || participle == stem + "d" ||
                participle == stem + "ed") {
                axioms.push_back(
                    {OwlAxiomKind::InverseOf,
                     {passive_iri, Iri{ns, property_local_name(active.name_words)}},
                     {}});
            }
        }
    }

    // Inflected variants of one verb are equivalent properties.
    for (size_t i = 0; i < props.size(); ++i) {
        for (size_t j = i + 1; j < props.size(); ++j) {
            if (normalize_phrase(props[i].name_words) !=
                normalize_phrase(props[j].name_words))
                continue;
            Iri a = Iri{ns, property_local_name(props[i].name_words)};
            Iri b = Iri{ns, property_local_name(props[j].name_words)};
            if (b < a) std::swap(a, b);
            axioms.push_back({OwlAxiomKind::EquivalentProperty, {a, b}, {}});
        }
    }

    return axioms;
}

std::string canonical_axiom_line(const OwlAxiom& axiom) {
    const char* kind = nullptr;
    switch (axiom.kind) {
        case OwlAxiomKind::ClassDecl: kind = "ClassDecl"; break;
        case OwlAxiomKind::SubClassOf: kind = "SubClassOf"; break;
        case OwlAxiomKind::NamedIndividualDecl: kind = "NamedIndividualDecl"; break;
        case OwlAxiomKind::ClassAssertion: kind = "ClassAssertion"; break;
        case OwlAxiomKind::ObjectPropertyDecl: kind = "ObjectPropertyDecl"; break;
        case OwlAxiomKind::Domain: kind = "Domain"; break;
        case OwlAxiomKind::Range: kind = "Range"; break;
        case OwlAxiomKind::InverseOf: kind = "InverseOf"; break;
        case OwlAxiomKind::EquivalentProperty: kind = "EquivalentProperty"; break;
        case OwlAxiomKind::AnnotationAssertion: kind = "AnnotationAssertion"; break;
    }
    std::string line = kind;
    for (const auto& arg : axiom.args) {
        line += ' ';
        line += arg.local;
    }
    if (axiom.kind == OwlAxiomKind::AnnotationAssertion) {
        line += " \"" + axiom.literal + "\"";
    }
    return line;
}

namespace {

// Namespace entity name: last path segment of the namespace.
std::string entity_name_for(const std::string& ns) {
    std::string base = ns;
    while (!base.empty() && (base.back() == '#' || base.back() == '/'))
        base.pop_back();
    size_t slash = base.find_last_of('/');
    std::string name =
        slash == std::string::npos ? base : base.substr(slash + 1);
    std::string out;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
            out += c;
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])))
        out = "ns" + out;
    return out;
}

std::string ontology_iri_for(const std::string& ns) {
    std::string iri = ns;
    if (!iri.empty() && iri.back() == '#') iri.pop_back();
    return iri;
}

struct EntityBlock {
    std::string local;
    std::vector<std::string> lines;  // child element lines, pre-indented
};

std::string ref_attr(const std::string& ns, const std::string& entity,
                     const Iri& iri) {
    if (iri.ns == ns) return "&" + entity + ";" + iri.local;
    return xml::escape_attr(iri.full());
}

void banner(std::ostringstream& os, const std::string& title) {
    os << "    <!-- \n"
       << "    ///////////////////////////////////////////////////////////"
          "////////////////////////////\n"
       << "    //\n"
       << "    // " << title << "\n"
       << "    //\n"
       << "    ///////////////////////////////////////////////////////////"
          "////////////////////////////\n"
       << "     -->\n\n";
}

}  // namespace

std::string serialize_rdfxml(const std::vector<OwlAxiom>& axioms,
                             const OwlWriteOptions& opts) {
    const std::string& ns = opts.ns;
    const std::string entity = entity_name_for(ns);
    const std::string ontology_iri = ontology_iri_for(ns);

    // Group per-entity child lines by kind.
    std::map<std::string, std::vector<const OwlAxiom*>> by_subject[3];
    enum { kProp = 0, kClass = 1, kInd = 2 };
    auto section_of = [&](const OwlAxiom& a) -> int {
        switch (a.kind) {
            case OwlAxiomKind::ObjectPropertyDecl:
            case OwlAxiomKind::Domain:
            case OwlAxiomKind::Range:
            case OwlAxiomKind::InverseOf:
            case OwlAxiomKind::EquivalentProperty:
                return kProp;
            case OwlAxiomKind::ClassDecl:
            case OwlAxiomKind::SubClassOf:
            case OwlAxiomKind::AnnotationAssertion:
                return kClass;
            case OwlAxiomKind::NamedIndividualDecl:
            case OwlAxiomKind::ClassAssertion:
                return kInd;
        }
        return kClass;
    };
    for (const OwlAxiom& a : axioms) {
        // ClassAssertion's subject entity is the individual (second arg).
        const Iri& subject =
            a.kind == OwlAxiomKind::ClassAssertion ? a.args[1] : a.args[0];
        by_subject[section_of(a)][subject.local].push_back(&a);
    }

    auto child_rank = [](const OwlAxiom& a) {
        switch (a.kind) {
            case OwlAxiomKind::Domain: return 1;
            case OwlAxiomKind::Range: return 2;
            case OwlAxiomKind::InverseOf: return 3;
            case OwlAxiomKind::EquivalentProperty: return 4;
            case OwlAxiomKind::SubClassOf: return 1;
            case OwlAxiomKind::AnnotationAssertion: return 2;
            case OwlAxiomKind::ClassAssertion: return 1;
            default: return 0;  // declarations render as the element itself
        }
    };

    std::ostringstream os;
    os << "<?xml version=\"1.0\"?>\n"
       << "<!DOCTYPE rdf:RDF [\n"
       << "    <!ENTITY " << entity << " \"" << xml::escape_attr(ns)
       << "\" >\n"
       << "]>\n"
       << "<rdf:RDF xmlns=\"" << xml::escape_attr(ns) << "\"\n"
       << "     xml:base=\"" << xml::escape_attr(ontology_iri) << "\"\n"
       << "     xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\"\n"
       << "     xmlns:owl=\"http://www.w3.org/2002/07/owl#\"\n"
       << "     xmlns:rdfs=\"http://www.w3.org/2000/01/rdf-schema#\">\n"
       << "    <owl:Ontology rdf:about=\"" << xml::escape_attr(ontology_iri)
       << "\"/>\n\n";

    struct Section {
        int index;
        const char* title;
        const char* element;
    };
    const Section sections[] = {
        {kProp, "Object Properties", "owl:ObjectProperty"},
        {kClass, "Classes", "owl:Class"},
        {kInd, "Individuals", "owl:NamedIndividual"},
    };

    for (const auto& section : sections) {
        const auto& subjects = by_subject[section.index];
        if (subjects.empty()) continue;
        os << "\n";
        banner(os, section.title);
        for (const auto& [local, list] : subjects) {
            std::vector<const OwlAxiom*> children(list);
            std::stable_sort(children.begin(), children.end(),
                             [&](const OwlAxiom* a, const OwlAxiom* b) {
                                 int ra = child_rank(*a), rb = child_rank(*b);
                                 if (ra != rb) return ra < rb;
                                 return *a < *b;
                             });
            os << "    <!-- " << ns << local << " -->\n\n";
            os << "    <" << section.element << " rdf:about=\"&" << entity
               << ";" << local << "\"";

            std::vector<std::string> child_lines;
            std::vector<const OwlAxiom*> ranges;
            for (const OwlAxiom* a : children) {
                switch (a->kind) {
                    case OwlAxiomKind::Domain:
                        child_lines.push_back("<rdfs:domain rdf:resource=\"" +
                                              ref_attr(ns, entity, a->args[1]) +
                                              "\"/>");
                        break;
                    case OwlAxiomKind::Range:
                        if (opts.range_union)
                            ranges.push_back(a);
                        else
                            child_lines.push_back(
                                "<rdfs:range rdf:resource=\"" +
                                ref_attr(ns, entity, a->args[1]) + "\"/>");
                        break;
                    case OwlAxiomKind::InverseOf:
                        child_lines.push_back("<owl:inverseOf rdf:resource=\"" +
                                              ref_attr(ns, entity, a->args[1]) +
                                              "\"/>");
                        break;
                    case OwlAxiomKind::EquivalentProperty:
                        child_lines.push_back(
                            "<owl:equivalentProperty rdf:resource=\"" +
                            ref_attr(ns, entity, a->args[1]) + "\"/>");
                        break;
                    case OwlAxiomKind::SubClassOf:
                        child_lines.push_back("<rdfs:subClassOf rdf:resource=\"" +
                                              ref_attr(ns, entity, a->args[1]) +
                                              "\"/>");
                        break;
                    case OwlAxiomKind::AnnotationAssertion:
                        child_lines.push_back("<rdfs:comment>" +
                                              xml::escape_text(a->literal) +
                                              "</rdfs:comment>");
                        break;
                    case OwlAxiomKind::ClassAssertion:
                        child_lines.push_back("<rdf:type rdf:resource=\"" +
                                              ref_attr(ns, entity, a->args[0]) +
                                              "\"/>");
                        break;
                    default:
                        break;  // the declaration itself
                }
            }
            if (opts.range_union && !ranges.empty()) {
                if (ranges.size() == 1) {
                    child_lines.push_back(
                        "<rdfs:range rdf:resource=\"" +
                        ref_attr(ns, entity, ranges[0]->args[1]) + "\"/>");
                } else {
                    std::string block = "<rdfs:range>\n";
                    block += "            <owl:Class>\n";
                    block +=
                        "                <owl:unionOf "
                        "rdf:parseType=\"Collection\">\n";
                    for (const OwlAxiom* r : ranges) {
                        block +=
                            "                    <rdf:Description "
                            "rdf:about=\"" +
                            ref_attr(ns, entity, r->args[1]) + "\"/>\n";
                    }
                    block += "                </owl:unionOf>\n";
                    block += "            </owl:Class>\n";
                    block += "        </rdfs:range>";
                    child_lines.push_back(std::move(block));
                }
            }

            if (child_lines.empty()) {
                os << "/>\n\n";
            } else {
                os << ">\n";
                for (const auto& line : child_lines)
                    os << "        " << line << "\n";
                os << "    </" << section.element << ">\n\n";
            }
        }
    }
    os << "</rdf:RDF>\n";
    return os.str();
}

std::optional<std::vector<RdfTriple>> parse_rdfxml_triples(
    const std::string& xml_text, std::string* err) {
    auto root = xml::parse(xml_text, err);
    if (!root) return std::nullopt;
    if (root->name != "rdf:RDF") {
        if (err) *err = "root element is not rdf:RDF";
        return std::nullopt;
    }
    const std::string rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    const std::string rdfs = "http://www.w3.org/2000/01/rdf-schema#";
    const std::string owl = "http://www.w3.org/2002/07/owl#";
    const std::map<std::string, std::string> types = {
        {"owl:Ontology", owl + "Ontology"},
        {"owl:Class", owl + "Class"},
        {"owl:ObjectProperty", owl + "ObjectProperty"},
        {"owl:NamedIndividual", owl + "NamedIndividual"},
    };
    const std::map<std::string, std::string> predicates = {
        {"rdfs:domain", rdfs + "domain"},
        {"rdfs:range", rdfs + "range"},
        {"rdfs:subClassOf", rdfs + "subClassOf"},
        {"owl:inverseOf", owl + "inverseOf"},
        {"owl:equivalentProperty", owl + "equivalentProperty"},
        {"rdf:type", rdf + "type"},
    };

    std::vector<RdfTriple> triples;
    for (const xml::Element* e : root->elements()) {
        auto type = types.find(e->name);
        if (type == types.end()) {
            if (err) *err = "unexpected element '" + e->name + "'";
            return std::nullopt;
        }
        auto about = e->attr("rdf:about");
        if (!about) {
            if (err) *err = "element '" + e->name + "' has no rdf:about";
            return std::nullopt;
        }
        triples.push_back({*about, rdf + "type", type->second});
        for (const xml::Element* child : e->elements()) {
            if (child->name == "rdfs:comment") {
                triples.push_back({*about, rdfs + "comment", child->text()});
                continue;
            }
            auto pred = predicates.find(child->name);
            if (pred == predicates.end()) {
                if (err) *err = "unexpected child '" + child->name + "'";
                return std::nullopt;
            }
            auto resource = child->attr("rdf:resource");
            if (!resource) continue;  // union-of ranges are skipped
            triples.push_back({*about, pred->second, *resource});
        }
    }
    return triples;
}

}  // namespace krcnl
