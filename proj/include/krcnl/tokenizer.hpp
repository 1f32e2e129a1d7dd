#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "krcnl/ast.hpp"
#include "krcnl/diagnostics.hpp"
#include "krcnl/vocabulary.hpp"

namespace krcnl {

enum class TokenKind { TermRef, NameRef, VerbRef, Keyword, Unknown };

enum class KeywordKind {
    None,
    ModalOpener,  // "it is <modality> that", carries `modality`
    AtLeast,      // "at least"
    If,
    Then,
    And,
    Or,
    Each,
    At,
    Least,
    The,
    A,
    An,
    That,
    It,
    Is,
    Not,
    One,
    Number,  // digit word; `text` holds the digits
};

struct Token {
    TokenKind kind = TokenKind::Unknown;
    std::optional<SymbolRef> symbol;         // for TermRef / NameRef / VerbRef
    std::string text;                        // surface, space-joined
    std::vector<std::string> words;          // lowercase words covered
    int line = 1;
    int column = 1;                          // 1-based, first covered word
    int span = 1;                            // words covered
    KeywordKind keyword = KeywordKind::None;
    std::optional<ModalityKind> modality;    // for ModalOpener
};

struct TokenizeOptions {
    // Rule mode reports unknown-word Errors; declaration mode (fact
    // sentences, which introduce new verbs) does not.
    bool report_unknown = true;
};

// Splits on whitespace, strips one terminal period, then matches in
// precedence order: multiword keywords, vocabulary longest match, single
// keywords / digit words, unknown.
std::vector<Token> tokenize_sentence(const Vocabulary& vocab,
                                     std::string_view sentence,
                                     const SourcePos& origin,
                                     Diagnostics& diags,
                                     const TokenizeOptions& opts = {});

bool is_article(const std::string& word);
bool is_preposition(const std::string& word);
bool is_reserved_keyword_phrase(const std::vector<std::string>& words);

}  // namespace krcnl
