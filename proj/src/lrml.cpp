#include "krcnl/lrml.hpp"

#include <map>
#include <sstream>

#include "krcnl/owl.hpp"
#include "krcnl/xml.hpp"

namespace krcnl {

namespace {

constexpr const char* kLrmlNs = "http://docs.oasis-open.org/legalruleml/ns/v1.0/";
constexpr const char* kRulemlNs = "http://ruleml.org/spec";

LrmlNode text_node(LrmlKind kind, std::string element, std::string text) {
    LrmlNode node;
    node.kind = kind;
    node.element = std::move(element);
    node.text = std::move(text);
    return node;
}

// One serialized Atom per object (or a single subject-only Atom for unary
// statements); the subject is always the first argument.
std::vector<LrmlNode> atoms_for(const Vocabulary& vocab, const AtomNode& atom) {
    auto base = [&]() {
        LrmlNode a;
        a.kind = LrmlKind::Atom;
        a.element = "ruleml:Atom";
        a.children.push_back(text_node(LrmlKind::Relation, "ruleml:Rel",
                                       property_local_name(atom.verb_words)));
        LrmlNode subject = text_node(
            LrmlKind::Variable, "ruleml:Var",
            local_name(vocab.noun(atom.subject).designation, false));
        if (atom.quantifier && atom.quantifier->kind == Quantifier::Kind::AtLeast) {
            subject.attrs.emplace_back("minCardinality",
                                       std::to_string(atom.quantifier->count));
        }
        a.children.push_back(std::move(subject));
        return a;
    };

    std::vector<LrmlNode> out;
    if (atom.objects.empty()) {
        out.push_back(base());
        return out;
    }
    for (const ObjectArg& obj : atom.objects) {
        LrmlNode a = base();
        if (obj.individual) {
            a.children.push_back(text_node(
                LrmlKind::Individual, "ruleml:Ind",
                local_name(vocab.individual(*obj.individual).designation, true)));
        } else {
            a.children.push_back(
                text_node(LrmlKind::Variable, "ruleml:Var",
                          local_name(vocab.noun(obj.noun).designation, false)));
        }
        out.push_back(std::move(a));
    }
    return out;
}

bool rule_is_universal(const RuleAst& rule) {
    auto any_each = [](const std::vector<AtomNode>& atoms) {
        for (const AtomNode& a : atoms)
            if (a.quantifier && a.quantifier->kind == Quantifier::Kind::Each)
                return true;
        return false;
    };
    return any_each(rule.consequent) || any_each(rule.antecedent);
}

}  // namespace

LrmlNode map_rules_to_lrml(const FactModel& model) {
    const Vocabulary& vocab = model.vocabulary();

    LrmlNode root;
    root.kind = LrmlKind::RuleBase;
    root.element = "lrml:RuleBase";
    root.attrs.emplace_back("xmlns:lrml", kLrmlNs);
    root.attrs.emplace_back("xmlns:ruleml", kRulemlNs);

    for (const RuleAst& rule : model.rules()) {
        bool deontic = rule.modality.family() == ModalityFamily::Deontic;

        LrmlNode statement;
        statement.kind = LrmlKind::Statement;
        statement.element = deontic ? "lrml:PrescriptiveStatement"
                                    : "lrml:ConstitutiveStatement";
        statement.attrs.emplace_back("key",
                                     "rule-" + std::to_string(rule.rule_id));
        if (rule_is_universal(rule))
            statement.attrs.emplace_back("closure", "universal");
        if (!deontic)
            statement.attrs.emplace_back("modality",
                                         modality_word(rule.modality.kind));

        LrmlNode rule_node;
        rule_node.kind = LrmlKind::Rule;
        rule_node.element = "ruleml:Rule";

        if (!rule.antecedent.empty()) {
            LrmlNode if_node;
            if_node.kind = LrmlKind::IfPart;
            if_node.element = "ruleml:If";
            for (const AtomNode& atom : rule.antecedent)
                for (LrmlNode& a : atoms_for(vocab, atom))
                    if_node.children.push_back(std::move(a));
            rule_node.children.push_back(std::move(if_node));
        }

        LrmlNode then_node;
        then_node.kind = LrmlKind::ThenPart;
        then_node.element = "ruleml:Then";
        std::vector<LrmlNode> consequent_atoms;
        for (const AtomNode& atom : rule.consequent)
            for (LrmlNode& a : atoms_for(vocab, atom))
                consequent_atoms.push_back(std::move(a));
        if (deontic) {
            LrmlNode wrapper;
            wrapper.kind = LrmlKind::DeonticWrapper;
            switch (rule.modality.kind) {
                case ModalityKind::Obligatory:
                    wrapper.element = "lrml:Obligation";
                    break;
                case ModalityKind::Prohibited:
                    wrapper.element = "lrml:Prohibition";
                    break;
                default:
                    wrapper.element = "lrml:Permission";
                    break;
            }
            wrapper.children = std::move(consequent_atoms);
            then_node.children.push_back(std::move(wrapper));
        } else {
            then_node.children = std::move(consequent_atoms);
        }
        rule_node.children.push_back(std::move(then_node));
        statement.children.push_back(std::move(rule_node));
        root.children.push_back(std::move(statement));
    }
    return root;
}

const char* lrml_subset_dtd() {
    // Same text as schemas/lrml-subset.dtd; a test pins the two copies
    // together.
    return R"dtd(<!-- Rulebase subset schema.

     A rulebase is a flat list of statements, one per source rule.
     Deontic rules (obligatory / prohibited / permitted) become
     lrml:PrescriptiveStatement whose consequent atoms sit inside a deontic
     wrapper element; alethic rules (necessary / impossible / possible)
     become lrml:ConstitutiveStatement with bare consequent atoms, the
     non-default alethic modality carried by the `modality` attribute.

     Extensions beyond plain rule markup:
       closure="universal"   statement-level marker for "each" quantification
       minCardinality="n"    variable-level marker for "at least n"
-->

<!ELEMENT lrml:RuleBase ((lrml:PrescriptiveStatement | lrml:ConstitutiveStatement)*)>
<!ATTLIST lrml:RuleBase
    xmlns:lrml   CDATA #REQUIRED
    xmlns:ruleml CDATA #REQUIRED>

<!ELEMENT lrml:PrescriptiveStatement (ruleml:Rule)>
<!ATTLIST lrml:PrescriptiveStatement
    key     ID #REQUIRED
    closure (universal) #IMPLIED>

<!ELEMENT lrml:ConstitutiveStatement (ruleml:Rule)>
<!ATTLIST lrml:ConstitutiveStatement
    key      ID #REQUIRED
    closure  (universal) #IMPLIED
    modality (necessary | impossible | possible) #IMPLIED>

<!ELEMENT ruleml:Rule (ruleml:If?, ruleml:Then)>

<!ELEMENT ruleml:If (ruleml:Atom+)>

<!-- Prescriptive consequents carry exactly one deontic wrapper; constitutive
     consequents are bare atoms. -->
<!ELEMENT ruleml:Then (lrml:Obligation | lrml:Prohibition | lrml:Permission | ruleml:Atom+)>

<!ELEMENT lrml:Obligation (ruleml:Atom+)>
<!ELEMENT lrml:Prohibition (ruleml:Atom+)>
<!ELEMENT lrml:Permission (ruleml:Atom+)>

<!-- One atom per subject/verb/object triple; multi-object statements are
     expanded into one atom per object before serialization. The first
     argument is always the subject variable. -->
<!ELEMENT ruleml:Atom (ruleml:Rel, (ruleml:Var | ruleml:Ind)+)>

<!ELEMENT ruleml:Rel (#PCDATA)>

<!ELEMENT ruleml:Var (#PCDATA)>
<!ATTLIST ruleml:Var
    minCardinality CDATA #IMPLIED>

<!ELEMENT ruleml:Ind (#PCDATA)>
)dtd";
}

namespace {

void write_node(std::ostringstream& os, const LrmlNode& node, int depth) {
    std::string indent(static_cast<size_t>(depth) * 2, ' ');
    os << indent << '<' << node.element;
    for (const auto& [key, value] : node.attrs)
        os << ' ' << key << "=\"" << xml::escape_attr(value) << '"';
    if (!node.text.empty()) {
        os << '>' << xml::escape_text(node.text) << "</" << node.element
           << ">\n";
    } else if (node.children.empty()) {
        os << "/>\n";
    } else {
        os << ">\n";
        for (const LrmlNode& child : node.children)
            write_node(os, child, depth + 1);
        os << indent << "</" << node.element << ">\n";
    }
}

}  // namespace

std::optional<std::string> serialize_lrml(const LrmlNode& root,
                                          Diagnostics& diags) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\"?>\n";
    write_node(os, root, 0);
    std::string text = os.str();

    std::string err;
    auto dtd = xml::parse_dtd(lrml_subset_dtd(), &err);
    if (!dtd) {
        diags.error("schema-violation", "embedded schema is unreadable: " + err,
                    {});
        return std::nullopt;
    }
    auto parsed = xml::parse(text, &err);
    if (!parsed) {
        diags.error("schema-violation", "serialized rulebase is unreadable: " + err,
                    {});
        return std::nullopt;
    }
    if (!xml::validate(*dtd, *parsed, &err)) {
        diags.error("schema-violation", err, {});
        return std::nullopt;
    }
    return text;
}

namespace {

// Splits a property local name back into verb words.
std::vector<std::string> split_underscores(const std::string& s) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : s) {
        if (c == '_') {
            if (!cur.empty()) words.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) words.push_back(cur);
    return words;
}

struct LoadMaps {
    std::map<std::string, NounId> nouns;
    std::map<std::string, IndividualId> individuals;
};

LoadMaps build_load_maps(const Vocabulary& vocab) {
    LoadMaps maps;
    for (uint32_t i = 0; i < vocab.nouns().size(); ++i)
        maps.nouns.emplace(local_name(vocab.nouns()[i].designation, false),
                           NounId{i});
    for (uint32_t i = 0; i < vocab.individuals().size(); ++i)
        maps.individuals.emplace(
            local_name(vocab.individuals()[i].designation, true),
            IndividualId{i});
    return maps;
}

std::optional<AtomNode> load_atom(const xml::Element& atom_el,
                                  const Vocabulary& vocab,
                                  const LoadMaps& maps, Diagnostics& diags) {
    AtomNode atom;
    bool have_subject = false;
    for (const xml::Element* child : atom_el.elements()) {
        if (child->name == "ruleml:Rel") {
            atom.verb_words = split_underscores(child->text());
            continue;
        }
        if (!have_subject) {
            // First argument is the subject variable.
            auto it = maps.nouns.find(child->text());
            if (child->name != "ruleml:Var" || it == maps.nouns.end()) {
                diags.error("malformed-rulebase",
                            "atom subject '" + child->text() +
                                "' does not name a declared noun concept",
                            {});
                return std::nullopt;
            }
            atom.subject = it->second;
            have_subject = true;
            continue;
        }
        if (child->name == "ruleml:Var") {
            auto it = maps.nouns.find(child->text());
            if (it == maps.nouns.end()) {
                diags.error("malformed-rulebase",
                            "variable '" + child->text() +
                                "' does not name a declared noun concept",
                            {});
                return std::nullopt;
            }
            atom.objects.push_back({it->second, std::nullopt});
        } else {
            auto it = maps.individuals.find(child->text());
            if (it == maps.individuals.end()) {
                diags.error("malformed-rulebase",
                            "individual '" + child->text() +
                                "' is not declared in the vocabulary",
                            {});
                return std::nullopt;
            }
            const IndividualConcept& ind = vocab.individual(it->second);
            if (!ind.concept_type) {
                diags.error("malformed-rulebase",
                            "individual '" + child->text() +
                                "' has no resolved concept type",
                            {});
                return std::nullopt;
            }
            atom.objects.push_back({*ind.concept_type, it->second});
        }
    }
    if (!have_subject) {
        diags.error("malformed-rulebase", "atom has no subject variable", {});
        return std::nullopt;
    }
    return atom;
}

}  // namespace

std::vector<RuleAst> load_rulebase(const std::string& xml_text,
                                   const Vocabulary& vocab,
                                   Diagnostics& diags) {
    std::string err;
    auto root = xml::parse(xml_text, &err);
    if (!root) {
        diags.error("malformed-rulebase", "cannot read rulebase: " + err, {});
        return {};
    }
    auto dtd = xml::parse_dtd(lrml_subset_dtd(), &err);
    if (!dtd || !xml::validate(*dtd, *root, &err)) {
        diags.error("schema-violation", err, {});
        return {};
    }

    LoadMaps maps = build_load_maps(vocab);
    std::vector<RuleAst> rules;
    for (const xml::Element* statement : root->elements()) {
        RuleAst rule;
        auto key = statement->attr("key");
        if (key && key->rfind("rule-", 0) == 0) {
            try {
                rule.rule_id = std::stoi(key->substr(5));
            } catch (...) {
                rule.rule_id = 0;
            }
        }

        const xml::Element* rule_el = statement->elements().front();
        const xml::Element* then_el = nullptr;
        for (const xml::Element* part : rule_el->elements()) {
            if (part->name == "ruleml:If") {
                for (const xml::Element* atom_el : part->elements()) {
                    auto atom = load_atom(*atom_el, vocab, maps, diags);
                    if (!atom) return {};
                    rule.antecedent.push_back(std::move(*atom));
                }
            } else {
                then_el = part;
            }
        }

        std::vector<const xml::Element*> consequent_atoms;
        if (statement->name == "lrml:PrescriptiveStatement") {
            const xml::Element* wrapper = then_el->elements().front();
            if (wrapper->name == "lrml:Obligation")
                rule.modality.kind = ModalityKind::Obligatory;
            else if (wrapper->name == "lrml:Prohibition")
                rule.modality.kind = ModalityKind::Prohibited;
            else
                rule.modality.kind = ModalityKind::Permitted;
            consequent_atoms = wrapper->elements();
        } else {
            auto modality = statement->attr("modality");
            if (modality && *modality == "impossible")
                rule.modality.kind = ModalityKind::Impossible;
            else if (modality && *modality == "possible")
                rule.modality.kind = ModalityKind::Possible;
            else
                rule.modality.kind = ModalityKind::Necessary;
            consequent_atoms = then_el->elements();
        }
        for (const xml::Element* atom_el : consequent_atoms) {
            auto atom = load_atom(*atom_el, vocab, maps, diags);
            if (!atom) return {};
            rule.consequent.push_back(std::move(*atom));
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

RuleAst expand_rule_atoms(const RuleAst& rule) {
    RuleAst out;
    out.modality = rule.modality;
    out.rule_id = rule.rule_id;
    out.pos = rule.pos;
    auto expand = [](const std::vector<AtomNode>& atoms) {
        std::vector<AtomNode> expanded;
        for (const AtomNode& atom : atoms) {
            if (atom.objects.empty()) {
                AtomNode one = atom;
                one.quantifier = std::nullopt;
                expanded.push_back(std::move(one));
                continue;
            }
            for (const ObjectArg& obj : atom.objects) {
                AtomNode one;
                one.subject = atom.subject;
                one.verb_words = atom.verb_words;
                one.objects = {obj};
                one.pos = atom.pos;
                expanded.push_back(std::move(one));
            }
        }
        return expanded;
    };
    out.consequent = expand(rule.consequent);
    out.antecedent = expand(rule.antecedent);
    return out;
}

}  // namespace krcnl
