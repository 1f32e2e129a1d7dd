#pragma once

#include <optional>
#include <string>
#include <vector>

#include "krcnl/analyzer.hpp"
#include "krcnl/diagnostics.hpp"

namespace krcnl {

enum class LrmlKind {
    RuleBase,
    Statement,       // prescriptive or constitutive, per `deontic` flag
    DeonticWrapper,  // Obligation / Prohibition / Permission
    Rule,
    IfPart,
    ThenPart,
    Atom,
    Relation,
    Variable,
    Individual,
};

struct LrmlNode {
    LrmlKind kind = LrmlKind::RuleBase;
    // Concrete XML element name; statements and deontic wrappers have
    // several ("lrml:PrescriptiveStatement", "lrml:Obligation", ...).
    std::string element;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::string text;  // Relation/Variable/Individual content
    std::vector<LrmlNode> children;
};

// Rules -> rulebase tree. Deontic rules become prescriptive statements
// whose consequent atoms sit inside a deontic wrapper; alethic rules
// become constitutive statements with bare consequent atoms. Multi-object
// atoms expand to one Atom per object. Statement keys are "rule-<id>".
LrmlNode map_rules_to_lrml(const FactModel& model);

// The shipped subset schema (same text as schemas/lrml-subset.dtd).
const char* lrml_subset_dtd();

// Serializes after validating the tree against the subset schema;
// reports schema-violation and returns nullopt if the tree is invalid.
std::optional<std::string> serialize_lrml(const LrmlNode& root,
                                          Diagnostics& diags);

// Reads a serialized rulebase back into rule ASTs. Needs the vocabulary
// to map Rel/Var/Ind names to concepts. Quantifier markers are ignored
// (closure / minCardinality are write-only extensions).
std::vector<RuleAst> load_rulebase(const std::string& xml_text,
                                   const Vocabulary& vocab,
                                   Diagnostics& diags);

// Expands multi-object atoms into single-object atoms, the shape
// load_rulebase reconstructs; used for round-trip comparison.
RuleAst expand_rule_atoms(const RuleAst& rule);

}  // namespace krcnl
