#include "krcnl/parser.hpp"

#include <algorithm>
#include <cctype>

#include "krcnl/tokenizer.hpp"

namespace krcnl {

namespace {

std::string to_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// ---------------------------------------------------------------------------
// Vocabulary documents

enum class Section { None, Concepts, Facts };

std::optional<Section> match_section_header(const std::string& trimmed) {
    std::string low = to_lower(trimmed);
    for (const auto& [phrase, section] :
         {std::pair<const char*, Section>{"legal concepts", Section::Concepts},
          std::pair<const char*, Section>{"legal facts", Section::Facts}}) {
        size_t n = std::string(phrase).size();
        if (low.rfind(phrase, 0) != 0) continue;
        std::string rest = trim(low.substr(n));
        if (rest.empty() || rest[0] == ':' || rest[0] == '(') return section;
    }
    return std::nullopt;
}

const char* kConceptAttrKeys[] = {"definition", "dictionary basis", "source",
                                  "general concept"};
const char* kFactAttrKeys[] = {"passive form"};

bool known_key(const std::string& key, bool fact_block) {
    if (fact_block) {
        for (const char* k : kFactAttrKeys)
            if (key == k) return true;
        return false;
    }
    for (const char* k : kConceptAttrKeys)
        if (key == k) return true;
    return false;
}

}  // namespace

VocabularyDocument parse_vocabulary_document(std::string_view text,
                                             const std::string& file,
                                             Diagnostics& diags) {
    VocabularyDocument doc;
    Section section = Section::None;
    // Block currently collecting attribute lines; null between blocks.
    ConceptBlock* concept_block = nullptr;
    FactBlock* fact_block = nullptr;
    bool skipping_block = false;  // caption was malformed; drop its attrs

    size_t start = 0;
    int lineno = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        std::string line(text.substr(
            start, end == std::string_view::npos ? text.size() - start
                                                 : end - start));
        ++lineno;
        start = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        std::string trimmed = trim(line);
        if (trimmed.empty()) {
            concept_block = nullptr;
            fact_block = nullptr;
            skipping_block = false;
            continue;
        }
        if (trimmed[0] == '#') continue;

        if (auto s = match_section_header(trimmed)) {
            section = *s;
            concept_block = nullptr;
            fact_block = nullptr;
            skipping_block = false;
            continue;
        }

        bool indented = line[0] == ' ' || line[0] == '\t';
        size_t first_char = line.find_first_not_of(" \t");
        SourcePos pos{file, lineno, static_cast<int>(first_char) + 1};

        if (indented) {
            if (!concept_block && !fact_block) {
                if (!skipping_block) {
                    diags.error("missing-caption",
                                "attribute line has no preceding declaration",
                                pos);
                }
                continue;
            }
            size_t colon = trimmed.find(':');
            if (colon == std::string::npos) {
                diags.warning("bad-attribute-key",
                              "attribute line has no 'key:' prefix", pos);
                continue;
            }
            AttributeLine attr;
            attr.key = to_lower(trim(trimmed.substr(0, colon)));
            attr.value = trim(trimmed.substr(colon + 1));
            attr.pos = pos;
            if (!known_key(attr.key, fact_block != nullptr)) {
                diags.warning("bad-attribute-key",
                              "unknown attribute key '" + attr.key + "'", pos);
                continue;
            }
            if (concept_block)
                concept_block->attrs.push_back(std::move(attr));
            else
                fact_block->attrs.push_back(std::move(attr));
            continue;
        }

        // Caption line.
        concept_block = nullptr;
        fact_block = nullptr;
        skipping_block = false;
        if (section == Section::Facts) {
            doc.facts.push_back({trimmed, pos, {}});
            fact_block = &doc.facts.back();
            continue;
        }
        // Content before any header is treated as concept declarations.
        ConceptBlock block;
        block.pos = pos;
        std::string caption = trimmed;
        if (to_lower(caption).rfind("name:", 0) == 0) {
            block.is_individual = true;
            caption = trim(caption.substr(5));
        }
        auto designation = Designation::make(caption);
        if (!designation) {
            diags.error("malformed-block", "declaration has an empty designation",
                        pos);
            skipping_block = true;
            continue;
        }
        if (is_reserved_keyword_phrase(designation->words)) {
            diags.error("malformed-block",
                        "designation '" + designation->key() +
                            "' is a reserved keyword phrase",
                        pos);
            skipping_block = true;
            continue;
        }
        block.caption = caption;
        doc.concepts.push_back(std::move(block));
        concept_block = &doc.concepts.back();
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Statement grammar

namespace {

struct Cursor {
    const std::vector<Token>& toks;
    size_t pos = 0;
    std::string file;
    int line = 1;

    bool at_end() const { return pos >= toks.size(); }
    const Token& peek() const { return toks[pos]; }
    const Token& get() { return toks[pos++]; }
    SourcePos here() const {
        if (at_end()) {
            if (toks.empty()) return {file, line, 1};
            const Token& last = toks.back();
            return {file, last.line,
                    last.column + static_cast<int>(last.text.size())};
        }
        return {file, toks[pos].line, toks[pos].column};
    }
};

bool is_kw(const Token& t, KeywordKind k) {
    return t.kind == TokenKind::Keyword && t.keyword == k;
}

bool is_article_kw(const Token& t) {
    return is_kw(t, KeywordKind::The) || is_kw(t, KeywordKind::A) ||
           is_kw(t, KeywordKind::An);
}

// Keywords that may sit inside a verb phrase being collected.
bool is_interior_kw(const Token& t) {
    return is_kw(t, KeywordKind::Is) || is_kw(t, KeywordKind::Not) ||
           is_article_kw(t);
}

// Could this token begin the verb of a new statement?
bool starts_verb(const Token& t) {
    return t.kind == TokenKind::VerbRef || t.kind == TokenKind::Unknown ||
           is_kw(t, KeywordKind::Is) || is_kw(t, KeywordKind::Not);
}

// After "and": does a fresh statement follow, or another object?
bool and_starts_statement(const Cursor& c) {
    size_t j = c.pos;
    while (j < c.toks.size() && is_article_kw(c.toks[j])) ++j;
    if (j >= c.toks.size()) return false;
    const Token& t = c.toks[j];
    if (is_kw(t, KeywordKind::Each) || is_kw(t, KeywordKind::AtLeast))
        return true;
    if (t.kind != TokenKind::TermRef) return false;
    return j + 1 < c.toks.size() && starts_verb(c.toks[j + 1]);
}

std::optional<ObjectArg> parse_object(Cursor& c, const Vocabulary& vocab,
                                      Diagnostics& diags) {
    while (!c.at_end() && is_article_kw(c.peek())) c.get();
    if (c.at_end()) {
        diags.error("expected-keyword", "expected an object term", c.here());
        return std::nullopt;
    }
    const Token& t = c.peek();
    if (t.kind == TokenKind::TermRef) {
        ObjectArg obj;
        obj.noun = NounId{t.symbol->index};
        c.get();
        if (!c.at_end() && c.peek().kind == TokenKind::NameRef) {
            obj.individual = IndividualId{c.peek().symbol->index};
            c.get();
        }
        return obj;
    }
    if (t.kind == TokenKind::NameRef) {
        const auto& ind = vocab.individual(IndividualId{t.symbol->index});
        if (!ind.concept_type) {
            diags.error("individual-type-mismatch",
                        "individual '" + ind.designation.surface +
                            "' has no resolved concept type",
                        {c.file, t.line, t.column});
            return std::nullopt;
        }
        ObjectArg obj;
        obj.noun = *ind.concept_type;
        obj.individual = IndividualId{t.symbol->index};
        c.get();
        return obj;
    }
    diags.error("expected-keyword", "expected an object term", c.here());
    return std::nullopt;
}

std::optional<AtomNode> parse_statement(Cursor& c, const Vocabulary& vocab,
                                        Diagnostics& diags,
                                        bool declaration_mode) {
    AtomNode atom;
    if (c.at_end()) {
        diags.error("expected-keyword", "expected a statement", c.here());
        return std::nullopt;
    }

    if (is_kw(c.peek(), KeywordKind::Each)) {
        atom.quantifier = Quantifier{Quantifier::Kind::Each, 1};
        c.get();
    } else if (is_kw(c.peek(), KeywordKind::AtLeast)) {
        c.get();
        if (!c.at_end() && is_kw(c.peek(), KeywordKind::Number)) {
            atom.quantifier =
                Quantifier{Quantifier::Kind::AtLeast, std::stoi(c.peek().text)};
            c.get();
        } else if (!c.at_end() && is_kw(c.peek(), KeywordKind::One)) {
            atom.quantifier = Quantifier{Quantifier::Kind::AtLeast, 1};
            c.get();
        } else {
            diags.error("expected-keyword",
                        "expected a count after 'at least'", c.here());
            return std::nullopt;
        }
    }

    while (!c.at_end() && is_article_kw(c.peek())) c.get();
    if (c.at_end() || c.peek().kind != TokenKind::TermRef) {
        if (!c.at_end() && c.peek().kind == TokenKind::VerbRef) {
            diags.error("verb-without-subject",
                        "verb phrase '" + c.peek().text +
                            "' appears without a subject",
                        c.here());
        } else if (!c.at_end() && c.peek().kind == TokenKind::Unknown &&
                   declaration_mode) {
            diags.error("unknown-word",
                        "word '" + c.peek().text +
                            "' is not a declared noun concept",
                        c.here());
        } else {
            diags.error("expected-keyword", "expected a subject term", c.here());
        }
        return std::nullopt;
    }
    const Token& subject_tok = c.get();
    atom.subject = NounId{subject_tok.symbol->index};
    atom.pos = {c.file, subject_tok.line, subject_tok.column};

    // Verb phrase: declared phrases come in one VerbRef token, new or
    // unknown verbs are collected word by word.
    while (!c.at_end()) {
        const Token& t = c.peek();
        if (t.kind == TokenKind::VerbRef || t.kind == TokenKind::Unknown ||
            is_interior_kw(t)) {
            for (const auto& w : t.words) atom.verb_words.push_back(w);
            c.get();
        } else {
            break;
        }
    }
    // A trailing article belongs to the object ("rejects the claim") unless
    // it follows a preposition ("is about the invention").
    while (!atom.verb_words.empty() && is_article(atom.verb_words.back()) &&
           (atom.verb_words.size() < 2 ||
            !is_preposition(atom.verb_words[atom.verb_words.size() - 2]))) {
        atom.verb_words.pop_back();
    }
    if (atom.verb_words.empty()) {
        diags.error("expected-keyword", "expected a verb phrase", c.here());
        return std::nullopt;
    }

    if (!c.at_end() && (c.peek().kind == TokenKind::TermRef ||
                        c.peek().kind == TokenKind::NameRef)) {
        auto obj = parse_object(c, vocab, diags);
        if (!obj) return std::nullopt;
        atom.objects.push_back(*obj);
        while (!c.at_end() && is_kw(c.peek(), KeywordKind::And)) {
            Cursor ahead = c;
            ahead.get();  // and
            if (and_starts_statement(ahead)) break;
            c.get();
            auto next = parse_object(c, vocab, diags);
            if (!next) return std::nullopt;
            atom.objects.push_back(*next);
        }
    }
    return atom;
}

std::optional<std::vector<AtomNode>> parse_conjunction(Cursor& c,
                                                       const Vocabulary& vocab,
                                                       Diagnostics& diags,
                                                       bool declaration_mode) {
    std::vector<AtomNode> atoms;
    auto first = parse_statement(c, vocab, diags, declaration_mode);
    if (!first) return std::nullopt;
    atoms.push_back(*first);
    while (!c.at_end()) {
        if (is_kw(c.peek(), KeywordKind::Or)) {
            diags.error("or-unsupported",
                        "disjunction is not part of this language", c.here());
            return std::nullopt;
        }
        if (!is_kw(c.peek(), KeywordKind::And)) break;
        c.get();
        auto next = parse_statement(c, vocab, diags, declaration_mode);
        if (!next) return std::nullopt;
        atoms.push_back(*next);
    }
    return atoms;
}

std::optional<RuleAst> parse_rule_tokens(Cursor& c, const Vocabulary& vocab,
                                         const SourcePos& origin,
                                         Diagnostics& diags) {
    if (c.at_end()) {
        diags.error("expected-keyword", "empty rule sentence", origin);
        return std::nullopt;
    }
    RuleAst rule;
    rule.pos = origin;

    if (is_kw(c.peek(), KeywordKind::ModalOpener)) {
        rule.modality.kind = *c.get().modality;
        if (c.at_end() || is_kw(c.peek(), KeywordKind::If)) {
            diags.error("dangling-if", "rule has no consequent", c.here());
            return std::nullopt;
        }
        auto consequent = parse_conjunction(c, vocab, diags, false);
        if (!consequent) return std::nullopt;
        rule.consequent = std::move(*consequent);
        if (!c.at_end() && is_kw(c.peek(), KeywordKind::If)) {
            c.get();
            if (c.at_end()) {
                diags.error("dangling-if", "nothing follows 'if'", c.here());
                return std::nullopt;
            }
            auto antecedent = parse_conjunction(c, vocab, diags, false);
            if (!antecedent) return std::nullopt;
            rule.antecedent = std::move(*antecedent);
        }
    } else if (is_kw(c.peek(), KeywordKind::If)) {
        c.get();
        if (c.at_end()) {
            diags.error("dangling-if", "nothing follows 'if'", c.here());
            return std::nullopt;
        }
        auto antecedent = parse_conjunction(c, vocab, diags, false);
        if (!antecedent) return std::nullopt;
        rule.antecedent = std::move(*antecedent);
        if (c.at_end() || !is_kw(c.peek(), KeywordKind::Then)) {
            diags.error("expected-keyword", "expected 'then'", c.here());
            return std::nullopt;
        }
        c.get();
        if (c.at_end() || !is_kw(c.peek(), KeywordKind::ModalOpener)) {
            diags.error("expected-keyword",
                        "expected 'it is <modality> that' after 'then'",
                        c.here());
            return std::nullopt;
        }
        rule.modality.kind = *c.get().modality;
        if (c.at_end()) {
            diags.error("dangling-if", "rule has no consequent", c.here());
            return std::nullopt;
        }
        auto consequent = parse_conjunction(c, vocab, diags, false);
        if (!consequent) return std::nullopt;
        rule.consequent = std::move(*consequent);
    } else {
        diags.error("expected-keyword",
                    "a rule begins with 'It is <modality> that' or 'If'",
                    c.here());
        return std::nullopt;
    }

    if (!c.at_end()) {
        diags.error("expected-keyword",
                    "unexpected '" + c.peek().text + "' after the rule",
                    c.here());
        return std::nullopt;
    }
    return rule;
}

}  // namespace

std::optional<RuleAst> parse_rule_sentence(const Vocabulary& vocab,
                                           std::string_view sentence,
                                           const SourcePos& origin,
                                           Diagnostics& diags) {
    std::vector<Token> toks =
        tokenize_sentence(vocab, sentence, origin, diags, {.report_unknown = true});
    Cursor c{toks, 0, origin.file, origin.line};
    return parse_rule_tokens(c, vocab, origin, diags);
}

std::vector<RuleAst> parse_rule_document(const Vocabulary& vocab,
                                         std::string_view text,
                                         const std::string& file,
                                         Diagnostics& diags) {
    std::vector<RuleAst> rules;
    size_t start = 0;
    int lineno = 0;
    int attempt = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        std::string line(text.substr(
            start, end == std::string_view::npos ? text.size() - start
                                                 : end - start));
        ++lineno;
        start = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;

        // Optional numbered-list prefix: "1." or "1)".
        size_t content = first;
        size_t j = first;
        while (j < line.size() &&
               std::isdigit(static_cast<unsigned char>(line[j])))
            ++j;
        if (j > first && j < line.size() && (line[j] == '.' || line[j] == ')') &&
            (j + 1 == line.size() ||
             std::isspace(static_cast<unsigned char>(line[j + 1])))) {
            content = j + 1;
            while (content < line.size() &&
                   std::isspace(static_cast<unsigned char>(line[content])))
                ++content;
        }

        ++attempt;
        SourcePos origin{file, lineno, static_cast<int>(content) + 1};
        auto rule =
            parse_rule_sentence(vocab, line.substr(content), origin, diags);
        if (rule) {
            rule->rule_id = attempt;
            rules.push_back(std::move(*rule));
        }
    }
    return rules;
}

std::optional<AtomNode> parse_fact_statement(const Vocabulary& vocab,
                                             std::string_view sentence,
                                             const SourcePos& origin,
                                             Diagnostics& diags) {
    std::vector<Token> toks = tokenize_sentence(vocab, sentence, origin, diags,
                                                {.report_unknown = false});
    Cursor c{toks, 0, origin.file, origin.line};
    if (c.at_end()) {
        diags.error("expected-keyword", "empty fact sentence", origin);
        return std::nullopt;
    }
    auto atom = parse_statement(c, vocab, diags, true);
    if (!atom) return std::nullopt;
    if (!c.at_end()) {
        diags.error("expected-keyword",
                    "a fact sentence declares a single statement; unexpected '" +
                        c.peek().text + "'",
                    c.here());
        return std::nullopt;
    }
    return atom;
}

// ---------------------------------------------------------------------------
// Vocabulary assembly

namespace {

const std::string* find_attr(const std::vector<AttributeLine>& attrs,
                             const char* key) {
    for (const auto& a : attrs)
        if (a.key == key) return &a.value;
    return nullptr;
}

const AttributeLine* find_attr_line(const std::vector<AttributeLine>& attrs,
                                    const char* key) {
    for (const auto& a : attrs)
        if (a.key == key) return &a;
    return nullptr;
}

}  // namespace

Vocabulary build_vocabulary(std::span<const VocabularyDocument> docs,
                            Diagnostics& diags) {
    Vocabulary vocab;

    for (const auto& doc : docs) {
        for (const auto& block : doc.concepts) {
            auto designation = Designation::make(block.caption);
            if (!designation) continue;  // rejected at parse time
            if (block.is_individual) {
                IndividualConcept ind;
                ind.designation = std::move(*designation);
                ind.decl_pos = block.pos;
                if (const auto* type = find_attr(block.attrs, "general concept")) {
                    ind.concept_type_name = *type;
                } else {
                    diags.error("malformed-block",
                                "individual '" + ind.designation.surface +
                                    "' needs a 'General concept:' attribute",
                                block.pos);
                    continue;
                }
                vocab.add_individual(std::move(ind), diags);
            } else {
                NounConcept noun;
                noun.designation = std::move(*designation);
                noun.decl_pos = block.pos;
                if (const auto* v = find_attr(block.attrs, "definition"))
                    noun.definition = *v;
                if (const auto* v = find_attr(block.attrs, "dictionary basis"))
                    noun.dictionary_basis = *v;
                if (const auto* v = find_attr(block.attrs, "source"))
                    noun.source = *v;
                if (const auto* v = find_attr(block.attrs, "general concept"))
                    noun.general_name = *v;
                vocab.add_noun_concept(std::move(noun), diags);
            }
        }
    }

    // Resolve generalization edges (forward references included) before
    // fact sentences are read.
    vocab.finalize(diags);

    for (const auto& doc : docs) {
        for (const auto& block : doc.facts) {
            auto atom = parse_fact_statement(vocab, block.sentence, block.pos,
                                             diags);
            if (atom) {
                VerbPhraseId phrase = vocab.intern_verb_phrase(atom->verb_words);
                if (atom->objects.empty()) {
                    vocab.add_fact({atom->subject, phrase, std::nullopt,
                                    std::nullopt, block.sentence, block.pos});
                } else {
                    for (const auto& obj : atom->objects) {
                        vocab.add_fact({atom->subject, phrase, obj.noun,
                                        obj.individual, block.sentence,
                                        block.pos});
                    }
                }
            }
            if (const auto* passive = find_attr_line(block.attrs, "passive form")) {
                SourcePos vpos = passive->pos;
                auto patom = parse_fact_statement(vocab, passive->value, vpos,
                                                  diags);
                if (!patom) continue;
                bool shape_ok = patom->objects.size() == 1 &&
                                !patom->objects[0].individual &&
                                patom->verb_words.size() >= 3 &&
                                patom->verb_words.front() == "is" &&
                                is_preposition(patom->verb_words.back());
                if (!shape_ok) {
                    diags.error(
                        "malformed-block",
                        "passive form must read '<subject> is <participle> "
                        "<preposition> <object>'",
                        vpos);
                    continue;
                }
                vocab.add_passive_fact({patom->subject, patom->verb_words,
                                        patom->objects[0].noun,
                                        passive->value, vpos});
            }
        }
    }

    // Index the verb phrases the fact sentences introduced.
    vocab.finalize(diags);
    return vocab;
}

}  // namespace krcnl
