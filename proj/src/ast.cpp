#include "krcnl/ast.hpp"

#include <sstream>

namespace krcnl {

ModalityFamily family_of(ModalityKind kind) {
    switch (kind) {
        case ModalityKind::Obligatory:
        case ModalityKind::Prohibited:
        case ModalityKind::Permitted:
            return ModalityFamily::Deontic;
        case ModalityKind::Necessary:
        case ModalityKind::Impossible:
        case ModalityKind::Possible:
            return ModalityFamily::Alethic;
    }
    return ModalityFamily::Deontic;
}

std::string modality_word(ModalityKind kind) {
    switch (kind) {
        case ModalityKind::Obligatory: return "obligatory";
        case ModalityKind::Prohibited: return "prohibited";
        case ModalityKind::Permitted: return "permitted";
        case ModalityKind::Necessary: return "necessary";
        case ModalityKind::Impossible: return "impossible";
        case ModalityKind::Possible: return "possible";
    }
    return "obligatory";
}

std::string family_name(ModalityFamily family) {
    return family == ModalityFamily::Deontic ? "Deontic" : "Alethic";
}

bool structurally_equal(const AtomNode& a, const AtomNode& b) {
    return a.subject == b.subject && a.verb_words == b.verb_words &&
           a.objects == b.objects && a.quantifier == b.quantifier;
}

static bool atoms_equal(const std::vector<AtomNode>& a,
                        const std::vector<AtomNode>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!structurally_equal(a[i], b[i])) return false;
    return true;
}

bool structurally_equal(const RuleAst& a, const RuleAst& b, bool compare_ids) {
    if (compare_ids && a.rule_id != b.rule_id) return false;
    return a.modality == b.modality && atoms_equal(a.consequent, b.consequent) &&
           atoms_equal(a.antecedent, b.antecedent);
}

std::string print_atom(const Vocabulary& vocab, const AtomNode& atom) {
    std::ostringstream os;
    if (atom.quantifier) {
        if (atom.quantifier->kind == Quantifier::Kind::Each)
            os << "each ";
        else
            os << "at least " << atom.quantifier->count << ' ';
    }
    os << vocab.noun(atom.subject).designation.key();
    for (const auto& w : atom.verb_words) os << ' ' << w;
    for (size_t i = 0; i < atom.objects.size(); ++i) {
        os << (i ? " and " : " ");
        const auto& obj = atom.objects[i];
        if (obj.individual) {
            const auto& ind = vocab.individual(*obj.individual);
            // Bare name when the written concept is just the individual's
            // type; apposition otherwise.
            if (ind.concept_type && *ind.concept_type == obj.noun) {
                os << ind.designation.surface;
            } else {
                os << vocab.noun(obj.noun).designation.key() << ' '
                   << ind.designation.surface;
            }
        } else {
            os << vocab.noun(obj.noun).designation.key();
        }
    }
    return os.str();
}

static std::string print_conjunction(const Vocabulary& vocab,
                                     const std::vector<AtomNode>& atoms) {
    std::string out;
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += " and ";
        out += print_atom(vocab, atoms[i]);
    }
    return out;
}

std::string print_rule(const Vocabulary& vocab, const RuleAst& rule) {
    std::string out = "It is " + modality_word(rule.modality.kind) + " that ";
    out += print_conjunction(vocab, rule.consequent);
    if (!rule.antecedent.empty()) {
        out += " if " + print_conjunction(vocab, rule.antecedent);
    }
    return out;
}

}  // namespace krcnl
