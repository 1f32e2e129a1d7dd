#pragma once

#include <optional>
#include <string>
#include <vector>

#include "krcnl/vocabulary.hpp"

namespace krcnl {

enum class ModalityKind {
    Obligatory,
    Prohibited,
    Permitted,
    Necessary,
    Impossible,
    Possible,
};

enum class ModalityFamily { Deontic, Alethic };

ModalityFamily family_of(ModalityKind kind);
// "obligatory", "necessary", ...
std::string modality_word(ModalityKind kind);
std::string family_name(ModalityFamily family);

struct Modality {
    ModalityKind kind = ModalityKind::Obligatory;
    ModalityFamily family() const { return family_of(kind); }
    bool operator==(const Modality&) const = default;
};

struct Quantifier {
    enum class Kind { Each, AtLeast };
    Kind kind = Kind::Each;
    int count = 1;  // meaningful for AtLeast
    bool operator==(const Quantifier&) const = default;
};

struct ObjectArg {
    NounId noun;
    std::optional<IndividualId> individual;
    bool operator==(const ObjectArg&) const = default;
};

// One statement: subject, verb words, zero or more objects.
struct AtomNode {
    NounId subject;
    std::vector<std::string> verb_words;
    std::vector<ObjectArg> objects;
    std::optional<Quantifier> quantifier;
    SourcePos pos;
};

struct RuleAst {
    Modality modality;
    std::vector<AtomNode> consequent;
    std::vector<AtomNode> antecedent;  // empty for unconditional rules
    int rule_id = 0;
    SourcePos pos;
};

// Structural comparison ignoring source positions (and rule ids unless
// `compare_ids`).
bool structurally_equal(const AtomNode& a, const AtomNode& b);
bool structurally_equal(const RuleAst& a, const RuleAst& b, bool compare_ids = false);

// Canonical controlled-English form; parsing the result reproduces the
// same structure.
std::string print_atom(const Vocabulary& vocab, const AtomNode& atom);
std::string print_rule(const Vocabulary& vocab, const RuleAst& rule);

}  // namespace krcnl
