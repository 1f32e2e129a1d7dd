#include "krcnl/analyzer.hpp"

#include <algorithm>

namespace krcnl {

std::vector<std::string> normalize_phrase(std::vector<std::string> words) {
    if (!words.empty()) {
        std::string& last = words.back();
        if (last.size() >= 3 && last.back() == 's' &&
            last[last.size() - 2] != 's') {
            last.pop_back();
        }
    }
    return words;
}

std::string phrase_key(const std::vector<std::string>& words) {
    std::string key;
    for (size_t i = 0; i < words.size(); ++i) {
        if (i) key += ' ';
        key += words[i];
    }
    return key;
}

int word_edit_distance(const std::vector<std::string>& a,
                       const std::vector<std::string>& b) {
    std::vector<std::vector<int>> d(a.size() + 1,
                                    std::vector<int>(b.size() + 1, 0));
    for (size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
    for (size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            int sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
        }
    }
    return d[a.size()][b.size()];
}

static int char_edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::vector<int>> d(a.size() + 1,
                                    std::vector<int>(b.size() + 1, 0));
    for (size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
    for (size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            int sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
        }
    }
    return d[a.size()][b.size()];
}

static std::string pair_key(NounId subject,
                            const std::vector<std::string>& normalized_verb,
                            std::optional<NounId> object) {
    std::string key = std::to_string(subject.index);
    key += '|';
    key += phrase_key(normalized_verb);
    key += '|';
    key += object ? std::to_string(object->index) : std::string("-");
    return key;
}

FactModel::FactModel(std::shared_ptr<const Vocabulary> vocab,
                     std::vector<RuleAst> rules, Diagnostics& diags)
    : vocab_(std::move(vocab)), rules_(std::move(rules)) {
    const auto& facts = vocab_->facts();
    for (size_t i = 0; i < facts.size(); ++i) {
        const auto& f = facts[i];
        auto verb = normalize_phrase(vocab_->verb_words(f.phrase));
        pair_index_[pair_key(f.subject, verb, f.object)].push_back(i);
    }
    size_t before = diags.all().size();
    for (const auto& rule : rules_) {
        for (auto& d : check_rule(rule)) diags.add(std::move(d));
    }
    for (size_t i = before; i < diags.all().size(); ++i) {
        if (diags.all()[i].severity == Severity::Error) has_errors_ = true;
    }
}

bool FactModel::fact_exists(NounId subject,
                            const std::vector<std::string>& verb_words,
                            std::optional<NounId> object) const {
    auto verb = normalize_phrase(verb_words);
    // Walk both generalization chains upward: a fact declared about a
    // general concept covers its specializations.
    std::optional<NounId> s = subject;
    while (s) {
        if (object) {
            std::optional<NounId> o = object;
            while (o) {
                if (pair_index_.count(pair_key(*s, verb, o))) return true;
                o = vocab_->noun(*o).general;
            }
        } else {
            if (pair_index_.count(pair_key(*s, verb, std::nullopt))) return true;
        }
        s = vocab_->noun(*s).general;
    }
    return false;
}

std::optional<std::vector<std::string>> FactModel::nearest_phrase(
    const std::vector<std::string>& verb_words) const {
    const auto& phrases = vocab_->verb_phrases();
    std::optional<std::vector<std::string>> best;
    int best_word = 0, best_char = 0;
    std::string joined = phrase_key(verb_words);
    for (const auto& candidate : phrases) {
        int wd = word_edit_distance(verb_words, candidate);
        if (wd > 2) continue;
        int cd = char_edit_distance(joined, phrase_key(candidate));
        std::string ck = phrase_key(candidate);
        if (!best || wd < best_word || (wd == best_word && cd < best_char) ||
            (wd == best_word && cd == best_char && ck < phrase_key(*best))) {
            best = candidate;
            best_word = wd;
            best_char = cd;
        }
    }
    return best;
}

std::vector<Diagnostic> FactModel::check_rule(const RuleAst& rule) const {
    std::vector<Diagnostic> out;
    const Vocabulary& vocab = *vocab_;

    auto verb_declared = [&](const std::vector<std::string>& words) {
        auto norm = normalize_phrase(words);
        for (const auto& p : vocab.verb_phrases()) {
            if (normalize_phrase(p) == norm) return true;
        }
        return false;
    };

    auto check_atom = [&](const AtomNode& atom) {
        const std::string subject_name =
            vocab.noun(atom.subject).designation.key();
        const std::string verb_text = phrase_key(atom.verb_words);

        auto report_missing = [&](std::optional<NounId> object) {
            std::string object_name =
                object ? vocab.noun(*object).designation.key()
                       : std::string("(none)");
            std::string msg;
            if (verb_declared(atom.verb_words)) {
                msg = "fact types with verb '" + verb_text +
                      "' do not cover subject '" + subject_name +
                      "' and object '" + object_name + "'";
            } else {
                msg = "no fact type declares verb '" + verb_text +
                      "' for subject '" + subject_name + "' and object '" +
                      object_name + "'";
                if (auto near = nearest_phrase(atom.verb_words)) {
                    msg += "; nearest declared verb phrase is '" +
                           phrase_key(*near) + "'";
                }
            }
            out.push_back({Severity::Error, "unknown-fact-type", msg, atom.pos,
                           std::nullopt});
        };

        if (atom.objects.empty()) {
            if (!fact_exists(atom.subject, atom.verb_words, std::nullopt))
                report_missing(std::nullopt);
            return;
        }
        // Multi-object atoms are checked pair by pair so each missing
        // combination gets its own diagnostic.
        for (const auto& obj : atom.objects) {
            if (!fact_exists(atom.subject, atom.verb_words, obj.noun))
                report_missing(obj.noun);
            if (obj.individual) {
                const auto& ind = vocab.individual(*obj.individual);
                if (ind.concept_type &&
                    !vocab.is_specialization_of(*ind.concept_type, obj.noun)) {
                    out.push_back(
                        {Severity::Error, "individual-type-mismatch",
                         "individual '" + ind.designation.surface +
                             "' of type '" +
                             vocab.noun(*ind.concept_type)
                                 .designation.key() +
                             "' cannot ground concept '" +
                             vocab.noun(obj.noun).designation.key() +
                             "'",
                         atom.pos, std::nullopt});
                }
            }
        }
    };

    for (const auto& atom : rule.consequent) check_atom(atom);
    for (const auto& atom : rule.antecedent) check_atom(atom);
    return out;
}

FactModel build_fact_model(std::shared_ptr<const Vocabulary> vocab,
                           std::vector<RuleAst> rules, Diagnostics& diags) {
    return FactModel(std::move(vocab), std::move(rules), diags);
}

std::map<int, ModalityFamily> classify_rules(const FactModel& model) {
    std::map<int, ModalityFamily> families;
    for (const auto& rule : model.rules())
        families[rule.rule_id] = rule.modality.family();
    return families;
}

}  // namespace krcnl
