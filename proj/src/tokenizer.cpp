#include "krcnl/tokenizer.hpp"

#include <array>
#include <cctype>

namespace krcnl {

namespace {

struct Word {
    std::string lower;
    std::string surface;
    int column;  // 1-based within the original line
};

std::string to_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<Word> split_words(std::string_view sentence, int column_offset) {
    std::vector<Word> words;
    size_t i = 0;
    while (i < sentence.size()) {
        while (i < sentence.size() &&
               std::isspace(static_cast<unsigned char>(sentence[i])))
            ++i;
        if (i >= sentence.size()) break;
        size_t begin = i;
        while (i < sentence.size() &&
               !std::isspace(static_cast<unsigned char>(sentence[i])))
            ++i;
        std::string surface(sentence.substr(begin, i - begin));
        words.push_back({to_lower(surface), std::move(surface),
                         static_cast<int>(begin) + column_offset});
    }
    // A terminal period belongs to the sentence, not the last word.
    if (!words.empty()) {
        auto& last = words.back();
        if (last.surface.size() > 1 && last.surface.back() == '.') {
            last.surface.pop_back();
            last.lower.pop_back();
        } else if (last.surface == ".") {
            words.pop_back();
        }
    }
    return words;
}

struct Opener {
    std::array<const char*, 4> words;
    ModalityKind modality;
};

constexpr Opener kOpeners[] = {
    {{"it", "is", "obligatory", "that"}, ModalityKind::Obligatory},
    {{"it", "is", "prohibited", "that"}, ModalityKind::Prohibited},
    {{"it", "is", "permitted", "that"}, ModalityKind::Permitted},
    {{"it", "is", "necessary", "that"}, ModalityKind::Necessary},
    {{"it", "is", "impossible", "that"}, ModalityKind::Impossible},
    {{"it", "is", "possible", "that"}, ModalityKind::Possible},
};

const std::pair<const char*, KeywordKind> kSingleKeywords[] = {
    {"if", KeywordKind::If},   {"then", KeywordKind::Then},
    {"and", KeywordKind::And}, {"or", KeywordKind::Or},
    {"each", KeywordKind::Each}, {"at", KeywordKind::At},
    {"least", KeywordKind::Least}, {"the", KeywordKind::The},
    {"a", KeywordKind::A},     {"an", KeywordKind::An},
    {"that", KeywordKind::That}, {"it", KeywordKind::It},
    {"is", KeywordKind::Is},   {"not", KeywordKind::Not},
    {"one", KeywordKind::One},
};

bool all_digits(const std::string& w) {
    if (w.empty()) return false;
    for (char c : w)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::optional<KeywordKind> single_keyword(const std::string& w) {
    for (const auto& [text, kind] : kSingleKeywords)
        if (w == text) return kind;
    if (all_digits(w)) return KeywordKind::Number;
    return std::nullopt;
}

Token make_token(const std::vector<Word>& words, size_t start, size_t span,
                 int line) {
    Token t;
    t.line = line;
    t.column = words[start].column;
    t.span = static_cast<int>(span);
    for (size_t i = 0; i < span; ++i) {
        if (i) t.text += ' ';
        t.text += words[start + i].surface;
        t.words.push_back(words[start + i].lower);
    }
    return t;
}

}  // namespace

bool is_article(const std::string& word) {
    return word == "the" || word == "a" || word == "an";
}

bool is_preposition(const std::string& word) {
    static const char* kPrepositions[] = {"under", "about", "to",  "of", "in",
                                          "by",    "with",  "for", "on"};
    for (const char* p : kPrepositions)
        if (word == p) return true;
    return false;
}

bool is_reserved_keyword_phrase(const std::vector<std::string>& words) {
    if (words.size() == 1)
        return single_keyword(words[0]).has_value();
    if (words.size() == 2) return words[0] == "at" && words[1] == "least";
    if (words.size() == 4) {
        for (const auto& op : kOpeners) {
            bool match = true;
            for (size_t i = 0; i < 4; ++i)
                if (words[i] != op.words[i]) match = false;
            if (match) return true;
        }
    }
    return false;
}

std::vector<Token> tokenize_sentence(const Vocabulary& vocab,
                                     std::string_view sentence,
                                     const SourcePos& origin,
                                     Diagnostics& diags,
                                     const TokenizeOptions& opts) {
    std::vector<Word> words = split_words(sentence, origin.column);
    std::vector<std::string> lowers;
    lowers.reserve(words.size());
    for (const auto& w : words) lowers.push_back(w.lower);

    std::vector<Token> tokens;
    size_t i = 0;
    while (i < words.size()) {
        // 1. Multiword keywords win over everything.
        bool matched = false;
        if (i + 4 <= words.size()) {
            for (const auto& op : kOpeners) {
                bool eq = true;
                for (size_t k = 0; k < 4; ++k)
                    if (lowers[i + k] != op.words[k]) eq = false;
                if (eq) {
                    Token t = make_token(words, i, 4, origin.line);
                    t.kind = TokenKind::Keyword;
                    t.keyword = KeywordKind::ModalOpener;
                    t.modality = op.modality;
                    tokens.push_back(std::move(t));
                    i += 4;
                    matched = true;
                    break;
                }
            }
        }
        if (matched) continue;
        if (i + 2 <= words.size() && lowers[i] == "at" && lowers[i + 1] == "least") {
            Token t = make_token(words, i, 2, origin.line);
            t.kind = TokenKind::Keyword;
            t.keyword = KeywordKind::AtLeast;
            tokens.push_back(std::move(t));
            i += 2;
            continue;
        }

        // 2. Vocabulary longest match.
        if (auto m = vocab.longest_match(lowers, i)) {
            Token t = make_token(words, i, static_cast<size_t>(m->second),
                                 origin.line);
            t.symbol = m->first;
            switch (m->first.kind) {
                case SymbolRef::Kind::Noun: t.kind = TokenKind::TermRef; break;
                case SymbolRef::Kind::Name: t.kind = TokenKind::NameRef; break;
                case SymbolRef::Kind::Verb: t.kind = TokenKind::VerbRef; break;
            }
            tokens.push_back(std::move(t));
            i += static_cast<size_t>(m->second);
            continue;
        }

        // 3. Single-word keywords and digit words.
        if (auto kw = single_keyword(lowers[i])) {
            Token t = make_token(words, i, 1, origin.line);
            t.kind = TokenKind::Keyword;
            t.keyword = *kw;
            tokens.push_back(std::move(t));
            ++i;
            continue;
        }

        // 4. Unknown.
        Token t = make_token(words, i, 1, origin.line);
        t.kind = TokenKind::Unknown;
        tokens.push_back(t);
        if (opts.report_unknown) {
            diags.error("unknown-word",
                        "word '" + t.text + "' is not in the vocabulary",
                        {origin.file, origin.line, t.column});
        }
        ++i;
    }
    return tokens;
}

}  // namespace krcnl
