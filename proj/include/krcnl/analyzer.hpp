#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "krcnl/ast.hpp"
#include "krcnl/diagnostics.hpp"
#include "krcnl/vocabulary.hpp"

namespace krcnl {

// Strip one trailing "s" from the final word so inflected variants
// compare equal ("includes" == "include"). Guarded so the operation is
// idempotent: words shorter than three letters or ending in "ss" are
// left alone.
std::vector<std::string> normalize_phrase(std::vector<std::string> words);
std::string phrase_key(const std::vector<std::string>& words);

// Checked view of a rulebase: the vocabulary's fact-type pairs indexed
// for matching, plus every parsed rule with its check results.
class FactModel {
public:
    FactModel(std::shared_ptr<const Vocabulary> vocab,
              std::vector<RuleAst> rules, Diagnostics& diags);

    const Vocabulary& vocabulary() const { return *vocab_; }
    std::shared_ptr<const Vocabulary> vocabulary_ptr() const { return vocab_; }
    const std::vector<RuleAst>& rules() const { return rules_; }
    bool has_errors() const { return has_errors_; }

    // True when some declared fact type (subject', verb, object') exists
    // with subject generalizing subject upward and likewise for object.
    // Verb comparison uses normalize_phrase.
    bool fact_exists(NounId subject, const std::vector<std::string>& verb_words,
                     std::optional<NounId> object) const;

    // Diagnostics for one rule: unknown-fact-type per unmatched
    // subject/verb/object combination and individual-type-mismatch for bad
    // groundings. Pure; usable before the rule is part of the model.
    std::vector<Diagnostic> check_rule(const RuleAst& rule) const;

    // Closest declared verb phrase within a word-level edit distance of 2.
    std::optional<std::vector<std::string>> nearest_phrase(
        const std::vector<std::string>& verb_words) const;

private:
    std::shared_ptr<const Vocabulary> vocab_;
    std::vector<RuleAst> rules_;
    // (subject, normalized verb key, object or sentinel) for each pair
    std::map<std::string, std::vector<size_t>> pair_index_;
    bool has_errors_ = false;
};

FactModel build_fact_model(std::shared_ptr<const Vocabulary> vocab,
                           std::vector<RuleAst> rules, Diagnostics& diags);

// rule id -> modality family.
std::map<int, ModalityFamily> classify_rules(const FactModel& model);

// Word-level Levenshtein distance (exposed for tests).
int word_edit_distance(const std::vector<std::string>& a,
                       const std::vector<std::string>& b);

}  // namespace krcnl
