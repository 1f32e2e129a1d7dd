#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "krcnl/ast.hpp"
#include "krcnl/diagnostics.hpp"
#include "krcnl/vocabulary.hpp"

namespace krcnl {

struct AttributeLine {
    std::string key;    // lowercased
    std::string value;  // raw, trimmed
    SourcePos pos;
};

// Raw block from a vocabulary document; semantic assembly happens in
// build_vocabulary.
struct ConceptBlock {
    bool is_individual = false;  // "Name:" caption
    std::string caption;         // designation text (after "Name:" if any)
    SourcePos pos;
    std::vector<AttributeLine> attrs;
};

struct FactBlock {
    std::string sentence;
    SourcePos pos;
    std::vector<AttributeLine> attrs;  // e.g. "passive form"
};

struct VocabularyDocument {
    std::vector<ConceptBlock> concepts;
    std::vector<FactBlock> facts;
};

// Splits a document into blocks under the "Legal Concepts" / "Legal Facts"
// section headers. Indented lines are block attributes; '#' lines are
// comments. Reports missing-caption and malformed-block.
VocabularyDocument parse_vocabulary_document(std::string_view text,
                                             const std::string& file,
                                             Diagnostics& diags);

// Merges documents in order: declares concepts and individuals, finalizes
// generalization edges, then parses fact sentences (declaration mode) and
// registers their verb phrases in the match index.
Vocabulary build_vocabulary(std::span<const VocabularyDocument> docs,
                            Diagnostics& diags);

// One rule sentence -> AST, or nullopt after reporting errors.
std::optional<RuleAst> parse_rule_sentence(const Vocabulary& vocab,
                                           std::string_view sentence,
                                           const SourcePos& origin,
                                           Diagnostics& diags);

// One rule per non-blank line; numbered-list prefixes ("1." / "1)") are
// allowed and '#' lines are comments. Rule ids follow line order of rule
// attempts; a malformed line is skipped, later rules keep their ordinals.
std::vector<RuleAst> parse_rule_document(const Vocabulary& vocab,
                                         std::string_view text,
                                         const std::string& file,
                                         Diagnostics& diags);

// Statement grammar in declaration mode, for fact sentences and passive
// forms. Unknown words form the verb phrase.
std::optional<AtomNode> parse_fact_statement(const Vocabulary& vocab,
                                             std::string_view sentence,
                                             const SourcePos& origin,
                                             Diagnostics& diags);

}  // namespace krcnl
