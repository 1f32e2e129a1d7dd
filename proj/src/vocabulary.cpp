#include "krcnl/vocabulary.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace krcnl {

static std::string to_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::optional<Designation> Designation::make(const std::string& text) {
    Designation d;
    std::istringstream is(text);
    std::string word;
    std::vector<std::string> surface_words;
    while (is >> word) {
        surface_words.push_back(word);
        d.words.push_back(to_lower(word));
    }
    if (d.words.empty()) return std::nullopt;
    std::string surface;
    for (size_t i = 0; i < surface_words.size(); ++i) {
        if (i) surface += ' ';
        surface += surface_words[i];
    }
    d.surface = surface;
    return d;
}

std::string Designation::key() const {
    std::string k;
    for (size_t i = 0; i < words.size(); ++i) {
        if (i) k += ' ';
        k += words[i];
    }
    return k;
}

static std::string join_words(const std::vector<std::string>& words) {
    std::string k;
    for (size_t i = 0; i < words.size(); ++i) {
        if (i) k += ' ';
        k += words[i];
    }
    return k;
}

bool Vocabulary::add_noun_concept(NounConcept entry, Diagnostics& diags) {
    if (entry.designation.words.empty()) {
        diags.error("empty-designation", "noun concept has an empty designation",
                    entry.decl_pos);
        return false;
    }
    const std::string key = entry.designation.key();
    for (size_t i = 0; i < nouns_.size(); ++i) {
        if (nouns_[i].designation.key() == key) {
            diags.error("dup-designation",
                        "duplicate declaration of concept '" + key + "'",
                        entry.decl_pos, nouns_[i].decl_pos);
            return false;
        }
    }
    uint64_t order = next_order_++;
    noun_orders_.push_back(order);
    nouns_.push_back(std::move(entry));
    return true;
}

bool Vocabulary::add_individual(IndividualConcept entry, Diagnostics& diags) {
    if (entry.designation.words.empty()) {
        diags.error("empty-designation", "individual has an empty designation",
                    entry.decl_pos);
        return false;
    }
    const std::string key = entry.designation.key();
    for (size_t i = 0; i < individuals_.size(); ++i) {
        if (individuals_[i].designation.key() == key) {
            diags.error("dup-designation",
                        "duplicate declaration of individual '" + key + "'",
                        entry.decl_pos, individuals_[i].decl_pos);
            return false;
        }
    }
    uint64_t order = next_order_++;
    individual_orders_.push_back(order);
    individuals_.push_back(std::move(entry));
    return true;
}

VerbPhraseId Vocabulary::intern_verb_phrase(const std::vector<std::string>& words) {
    for (size_t i = 0; i < verb_phrases_.size(); ++i) {
        if (verb_phrases_[i] == words) return VerbPhraseId{static_cast<uint32_t>(i)};
    }
    verb_orders_.push_back(next_order_++);
    verb_phrases_.push_back(words);
    return VerbPhraseId{static_cast<uint32_t>(verb_phrases_.size() - 1)};
}

void Vocabulary::add_fact(VerbConcept pair) {
    // Fact types are a set keyed by (subject, phrase, object): re-declaring
    // the same pair is a no-op.
    for (const auto& f : facts_) {
        if (f.subject == pair.subject && f.phrase == pair.phrase &&
            f.object == pair.object)
            return;
    }
    facts_.push_back(std::move(pair));
}

void Vocabulary::add_passive_fact(PassiveFact fact) {
    passives_.push_back(std::move(fact));
}

std::optional<NounId> Vocabulary::find_noun(const std::string& key) const {
    for (size_t i = 0; i < nouns_.size(); ++i) {
        if (nouns_[i].designation.key() == key)
            return NounId{static_cast<uint32_t>(i)};
    }
    return std::nullopt;
}

std::optional<IndividualId> Vocabulary::find_individual(const std::string& key) const {
    for (size_t i = 0; i < individuals_.size(); ++i) {
        if (individuals_[i].designation.key() == key)
            return IndividualId{static_cast<uint32_t>(i)};
    }
    return std::nullopt;
}

bool Vocabulary::resolve_references(Diagnostics& diags) {
    bool ok = true;
    for (auto& n : nouns_) {
        if (n.general_name && !n.general) {
            auto target = find_noun(to_lower(*n.general_name));
            if (!target) {
                diags.error("unresolved-general-concept",
                            "general concept '" + *n.general_name +
                                "' of '" + n.designation.key() +
                                "' is not declared",
                            n.decl_pos);
                // Drop the reference so a later finalize pass does not
                // report it again.
                n.general_name = std::nullopt;
                ok = false;
            } else {
                n.general = target;
            }
        }
    }
    for (auto& ind : individuals_) {
        if (!ind.concept_type && !ind.concept_type_name.empty()) {
            auto target = find_noun(to_lower(ind.concept_type_name));
            if (!target) {
                diags.error("unresolved-general-concept",
                            "concept type '" + ind.concept_type_name +
                                "' of individual '" + ind.designation.key() +
                                "' is not declared",
                            ind.decl_pos);
                ind.concept_type_name.clear();
                ok = false;
            } else {
                ind.concept_type = target;
            }
        }
    }
    return ok;
}

bool Vocabulary::reject_cycles(Diagnostics& diags) {
    // Iterative DFS over general edges; 0 = unvisited, 1 = on stack, 2 = done.
    std::vector<int> state(nouns_.size(), 0);
    bool ok = true;
    for (size_t start = 0; start < nouns_.size(); ++start) {
        if (state[start]) continue;
        std::vector<size_t> path;
        size_t cur = start;
        while (true) {
            if (state[cur] == 0) {
                state[cur] = 1;
                path.push_back(cur);
            }
            std::optional<NounId> next = nouns_[cur].general;
            if (!next || state[next->index] == 2) {
                // Chain is acyclic from here; unwind.
                for (size_t i : path) state[i] = 2;
                break;
            }
            if (state[next->index] == 1) {
                // Found a cycle; report its designations starting at the
                // re-entered node.
                auto it = std::find(path.begin(), path.end(),
                                    static_cast<size_t>(next->index));
                std::string names;
                for (auto p = it; p != path.end(); ++p) {
                    if (!names.empty()) names += " -> ";
                    names += nouns_[*p].designation.key();
                }
                names += " -> " + nouns_[next->index].designation.key();
                diags.error("cycle-in-generalization",
                            "generalization cycle: " + names,
                            nouns_[next->index].decl_pos);
                // Drop the closing edge so later passes see an acyclic
                // graph and the cycle is reported once.
                nouns_[cur].general = std::nullopt;
                nouns_[cur].general_name = std::nullopt;
                for (size_t i : path) state[i] = 2;
                ok = false;
                break;
            }
            cur = next->index;
        }
    }
    return ok;
}

void Vocabulary::index_designation(const std::vector<std::string>& words,
                                   SymbolRef sym, uint64_t order) {
    index_[join_words(words)].push_back({sym, order});
    index_max_words_ = std::max(index_max_words_, words.size());
}

bool Vocabulary::finalize(Diagnostics& diags) {
    bool ok = resolve_references(diags);
    ok = reject_cycles(diags) && ok;

    index_.clear();
    index_max_words_ = 0;
    for (size_t i = 0; i < nouns_.size(); ++i) {
        index_designation(nouns_[i].designation.words,
                          {SymbolRef::Kind::Noun, static_cast<uint32_t>(i)},
                          noun_orders_[i]);
    }
    for (size_t i = 0; i < individuals_.size(); ++i) {
        index_designation(individuals_[i].designation.words,
                          {SymbolRef::Kind::Name, static_cast<uint32_t>(i)},
                          individual_orders_[i]);
    }
    for (size_t i = 0; i < verb_phrases_.size(); ++i) {
        index_designation(verb_phrases_[i],
                          {SymbolRef::Kind::Verb, static_cast<uint32_t>(i)},
                          verb_orders_[i]);
    }
    for (auto& [key, entries] : index_) {
        std::sort(entries.begin(), entries.end(),
                  [](const IndexEntry& a, const IndexEntry& b) {
                      return a.decl_order < b.decl_order;
                  });
    }
    return ok;
}

std::optional<std::pair<SymbolRef, int>> Vocabulary::longest_match(
    const std::vector<std::string>& words, size_t start) const {
    if (start >= words.size()) return std::nullopt;
    size_t longest = std::min(index_max_words_, words.size() - start);
    std::string key;
    for (size_t len = longest; len >= 1; --len) {
        key.clear();
        for (size_t i = 0; i < len; ++i) {
            if (i) key += ' ';
            key += words[start + i];
        }
        auto it = index_.find(key);
        if (it != index_.end())
            return std::make_pair(it->second.front().symbol, static_cast<int>(len));
    }
    return std::nullopt;
}

bool Vocabulary::is_specialization_of(NounId sub, NounId ancestor) const {
    std::optional<NounId> cur = sub;
    size_t steps = 0;
    while (cur) {
        if (*cur == ancestor) return true;
        if (++steps > nouns_.size()) return false;  // cycle guard
        cur = nouns_[cur->index].general;
    }
    return false;
}

std::vector<Vocabulary::IndexedDesignation> Vocabulary::indexed_designations() const {
    std::vector<IndexedDesignation> out;
    for (size_t i = 0; i < nouns_.size(); ++i)
        out.push_back({nouns_[i].designation.words,
                       {SymbolRef::Kind::Noun, static_cast<uint32_t>(i)},
                       noun_orders_[i]});
    for (size_t i = 0; i < individuals_.size(); ++i)
        out.push_back({individuals_[i].designation.words,
                       {SymbolRef::Kind::Name, static_cast<uint32_t>(i)},
                       individual_orders_[i]});
    for (size_t i = 0; i < verb_phrases_.size(); ++i)
        out.push_back({verb_phrases_[i],
                       {SymbolRef::Kind::Verb, static_cast<uint32_t>(i)},
                       verb_orders_[i]});
    return out;
}

}  // namespace krcnl
