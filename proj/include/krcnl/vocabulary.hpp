#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krcnl/diagnostics.hpp"

namespace krcnl {

// A term's written form: identity is the lowercase word sequence,
// `surface` keeps the first spelling seen.
struct Designation {
    std::vector<std::string> words;
    std::string surface;

    // Splits on whitespace and lowercases. Returns nullopt for empty text.
    static std::optional<Designation> make(const std::string& text);
    std::string key() const;  // words joined with single spaces
    bool operator==(const Designation& o) const { return words == o.words; }
};

struct NounId {
    uint32_t index = 0;
    auto operator<=>(const NounId&) const = default;
};
struct IndividualId {
    uint32_t index = 0;
    auto operator<=>(const IndividualId&) const = default;
};
struct VerbPhraseId {
    uint32_t index = 0;
    auto operator<=>(const VerbPhraseId&) const = default;
};

// What a token can resolve to in the vocabulary index.
struct SymbolRef {
    enum class Kind { Noun, Name, Verb };
    Kind kind = Kind::Noun;
    uint32_t index = 0;
    auto operator<=>(const SymbolRef&) const = default;
};

struct NounConcept {
    Designation designation;
    std::optional<std::string> definition;
    std::optional<std::string> dictionary_basis;
    std::optional<std::string> source;
    // General concept as written; resolved to `general` at finalize
    // (forward references are allowed).
    std::optional<std::string> general_name;
    std::optional<NounId> general;
    SourcePos decl_pos;
};

struct IndividualConcept {
    Designation designation;
    std::string concept_type_name;
    std::optional<NounId> concept_type;
    SourcePos decl_pos;
};

// One expanded fact-type pair: a multi-object fact sentence yields one
// VerbConcept per object, all sharing the surface sentence.
struct VerbConcept {
    NounId subject;
    VerbPhraseId phrase;
    std::optional<NounId> object;               // absent for unary facts
    std::optional<IndividualId> grounding;      // individual named in the sentence
    std::string surface_sentence;
    SourcePos decl_pos;
};

// A declared passive synonym ("statement is included in office action").
// Not a fact-type pair; consumed by the ontology emitter.
struct PassiveFact {
    NounId subject;
    std::vector<std::string> verb_words;        // e.g. {"is","included","in"}
    NounId object;
    std::string surface_sentence;
    SourcePos decl_pos;
};

class Vocabulary {
public:
    // Returns false (and reports dup-designation / empty-designation)
    // when the entry is rejected.
    bool add_noun_concept(NounConcept entry, Diagnostics& diags);
    bool add_individual(IndividualConcept entry, Diagnostics& diags);

    VerbPhraseId intern_verb_phrase(const std::vector<std::string>& words);
    void add_fact(VerbConcept pair);
    void add_passive_fact(PassiveFact fact);

    // Resolves forward references, rejects generalization cycles, and
    // rebuilds the longest-match index. Safe to call more than once;
    // reports unresolved-general-concept and cycle-in-generalization.
    bool finalize(Diagnostics& diags);

    // Longest designation match at words[start], ties broken by declaration
    // order. Matching is case-insensitive (words must be pre-lowercased).
    std::optional<std::pair<SymbolRef, int>> longest_match(
        const std::vector<std::string>& words, size_t start) const;

    const std::vector<NounConcept>& nouns() const { return nouns_; }
    const std::vector<IndividualConcept>& individuals() const { return individuals_; }
    const std::vector<VerbConcept>& facts() const { return facts_; }
    const std::vector<PassiveFact>& passives() const { return passives_; }

    const NounConcept& noun(NounId id) const { return nouns_[id.index]; }
    const IndividualConcept& individual(IndividualId id) const {
        return individuals_[id.index];
    }
    const std::vector<std::string>& verb_words(VerbPhraseId id) const {
        return verb_phrases_[id.index];
    }
    const std::vector<std::vector<std::string>>& verb_phrases() const {
        return verb_phrases_;
    }

    std::optional<NounId> find_noun(const std::string& key) const;
    std::optional<IndividualId> find_individual(const std::string& key) const;

    // True when `sub` equals `ancestor` or reaches it via general-concept
    // edges.
    bool is_specialization_of(NounId sub, NounId ancestor) const;

    // Every indexed designation with its symbol and declaration order;
    // lets tests re-run matching by brute force.
    struct IndexedDesignation {
        std::vector<std::string> words;
        SymbolRef symbol;
        uint64_t decl_order;
    };
    std::vector<IndexedDesignation> indexed_designations() const;

private:
    struct IndexEntry {
        SymbolRef symbol;
        uint64_t decl_order;
    };

    void index_designation(const std::vector<std::string>& words, SymbolRef sym,
                           uint64_t order);
    bool resolve_references(Diagnostics& diags);
    bool reject_cycles(Diagnostics& diags);

    std::vector<NounConcept> nouns_;
    std::vector<IndividualConcept> individuals_;
    std::vector<std::vector<std::string>> verb_phrases_;
    std::vector<uint64_t> noun_orders_;
    std::vector<uint64_t> individual_orders_;
    std::vector<uint64_t> verb_orders_;
    std::vector<VerbConcept> facts_;
    std::vector<PassiveFact> passives_;
    std::map<std::string, std::vector<IndexEntry>> index_;
    size_t index_max_words_ = 0;
    uint64_t next_order_ = 0;
};

}  // namespace krcnl
