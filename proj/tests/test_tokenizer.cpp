#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "krcnl/tokenizer.hpp"
#include "test_support.hpp"

using namespace krcnl;

namespace {

// Reference word split: lowercase, whitespace-separated, one terminal
// period stripped.
std::vector<std::string> split_reference(const std::string& sentence) {
    std::istringstream is(sentence);
    std::string word;
    std::vector<std::string> words;
    while (is >> word) {
        for (char& c : word)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        words.push_back(word);
    }
    if (!words.empty() && words.back() == ".") words.pop_back();
    if (!words.empty() && words.back().size() > 1 && words.back().back() == '.')
        words.back().pop_back();
    return words;
}

}  // namespace

TEST_CASE("a full rule sentence tokenizes into the expected kinds and spans") {
    auto fe = testsupport::load_corpus(false);
    REQUIRE(fe.io_ok);
    REQUIRE_FALSE(fe.diags.has_errors());
    const Vocabulary& vocab = *fe.vocab;

    const std::string sentence =
        "It is obligatory that examiner rejects the claim and office action "
        "includes paragraphs Paragraph 7 33 01 if claim is rejected under "
        "essential subject matter requirement";
    Diagnostics diags;
    auto tokens = tokenize_sentence(vocab, sentence, {"r", 1, 1}, diags);
    REQUIRE_FALSE(diags.has_errors());

    std::vector<std::pair<TokenKind, int>> kinds;
    for (const auto& t : tokens) kinds.emplace_back(t.kind, t.span);
    std::vector<std::pair<TokenKind, int>> expected = {
        {TokenKind::Keyword, 4},  // it is obligatory that
        {TokenKind::TermRef, 1},  // examiner
        {TokenKind::VerbRef, 1},  // rejects
        {TokenKind::Keyword, 1},  // the
        {TokenKind::TermRef, 1},  // claim
        {TokenKind::Keyword, 1},  // and
        {TokenKind::TermRef, 2},  // office action
        {TokenKind::VerbRef, 1},  // includes
        {TokenKind::TermRef, 1},  // paragraphs
        {TokenKind::NameRef, 4},  // Paragraph 7 33 01
        {TokenKind::Keyword, 1},  // if
        {TokenKind::TermRef, 1},  // claim
        {TokenKind::VerbRef, 3},  // is rejected under
        {TokenKind::TermRef, 4},  // essential subject matter requirement
    };
    CHECK(kinds == expected);

    CHECK(tokens[0].keyword == KeywordKind::ModalOpener);
    REQUIRE(tokens[0].modality.has_value());
    CHECK(*tokens[0].modality == ModalityKind::Obligatory);
    CHECK(tokens[9].text == "Paragraph 7 33 01");

    // Columns point at the first character of the covered surface text.
    CHECK(tokens[1].column ==
          static_cast<int>(sentence.find("examiner")) + 1);
    CHECK(tokens[12].column ==
          static_cast<int>(sentence.find("is rejected under")) + 1);
}

TEST_CASE("an out-of-vocabulary word is reported at its own column") {
    auto fe = testsupport::load_corpus(false);
    const std::string sentence = "examiner frobnicates the claim";
    Diagnostics diags;
    auto tokens =
        tokenize_sentence(*fe.vocab, sentence, {"rules.txt", 3, 1}, diags);
    REQUIRE(diags.error_count() == 1);
    const Diagnostic& d = diags.all()[0];
    CHECK(d.code == "unknown-word");
    CHECK(d.message == "word 'frobnicates' is not in the vocabulary");
    CHECK(d.pos.file == "rules.txt");
    CHECK(d.pos.line == 3);
    CHECK(d.pos.column == static_cast<int>(sentence.find("frobnicates")) + 1);

    REQUIRE(tokens.size() == 4);
    CHECK(tokens[1].kind == TokenKind::Unknown);
}

TEST_CASE("declaration mode keeps unknown words silent") {
    auto fe = testsupport::load_corpus(false);
    Diagnostics diags;
    TokenizeOptions opts;
    opts.report_unknown = false;
    auto tokens = tokenize_sentence(*fe.vocab, "examiner frobnicates claim",
                                    {"v", 1, 1}, diags, opts);
    CHECK(diags.empty());
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[1].kind == TokenKind::Unknown);
}

TEST_CASE("keywords beat a designation that copies a keyword phrase") {
    Vocabulary v;
    Diagnostics diags;
    NounConcept trap;
    trap.designation = *Designation::make("it is obligatory");
    v.add_noun_concept(trap, diags);
    NounConcept claim;
    claim.designation = *Designation::make("claim");
    v.add_noun_concept(claim, diags);
    REQUIRE(v.finalize(diags));

    // Followed by "that" the four-word opener wins...
    Diagnostics d1;
    auto tokens = tokenize_sentence(v, "it is obligatory that claim", {"r", 1, 1}, d1);
    REQUIRE_FALSE(tokens.empty());
    CHECK(tokens[0].kind == TokenKind::Keyword);
    CHECK(tokens[0].keyword == KeywordKind::ModalOpener);
    CHECK(tokens[0].span == 4);

    // ...anywhere else the three-word designation is an ordinary term.
    Diagnostics d2;
    auto tokens2 = tokenize_sentence(v, "the it is obligatory claim", {"r", 1, 1}, d2);
    REQUIRE(tokens2.size() == 3);
    CHECK(tokens2[1].kind == TokenKind::TermRef);
    CHECK(tokens2[1].span == 3);
    CHECK(tokens2[2].kind == TokenKind::TermRef);
}

TEST_CASE("counts after 'at least' become number keywords") {
    auto fe = testsupport::load_corpus(false);
    Diagnostics diags;
    auto tokens = tokenize_sentence(
        *fe.vocab, "office action include at least 3 statement", {"r", 1, 1},
        diags);
    REQUIRE_FALSE(diags.has_errors());
    REQUIRE(tokens.size() == 5);
    CHECK(tokens[0].kind == TokenKind::TermRef);
    CHECK(tokens[1].kind == TokenKind::VerbRef);
    CHECK(tokens[2].keyword == KeywordKind::AtLeast);
    CHECK(tokens[2].span == 2);
    CHECK(tokens[3].keyword == KeywordKind::Number);
    CHECK(tokens[3].text == "3");
    CHECK(tokens[4].kind == TokenKind::TermRef);

    Diagnostics d2;
    auto one = tokenize_sentence(*fe.vocab,
                                 "office action include at least one statement",
                                 {"r", 1, 1}, d2);
    REQUIRE(one.size() == 5);
    CHECK(one[3].keyword == KeywordKind::One);
}

TEST_CASE("tokens tile every sentence: covered words rebuild the input") {
    auto fe = testsupport::load_corpus(false);
    const Vocabulary& vocab = *fe.vocab;
    const std::vector<std::string> sentences = {
        "It is obligatory that examiner rejects the claim and office action "
        "includes paragraphs Paragraph 7 33 01 if claim is rejected under "
        "essential subject matter requirement",
        "It is obligatory that office action include statement and argument "
        "and date and drawing if claim is rejected under Paragraph 7 33 01",
        "It is necessary that examiner applies Paragraph 7 33 01 if "
        "applicant conceals effective feature and effective feature is about "
        "the invention",
        "office action includes paragraphs.",
        "claim is rejected under essential subject matter requirement.",
        "statement is included in office action.",
        "examiner frobnicates the mystery gizmo",
    };
    for (const auto& sentence : sentences) {
        Diagnostics diags;
        TokenizeOptions opts;
        opts.report_unknown = false;
        auto tokens = tokenize_sentence(vocab, sentence, {"s", 1, 1}, diags, opts);
        std::vector<std::string> covered;
        for (const auto& t : tokens)
            covered.insert(covered.end(), t.words.begin(), t.words.end());
        CHECK(covered == split_reference(sentence));
    }
}

TEST_CASE("reserved keyword phrases are recognized exactly") {
    CHECK(is_reserved_keyword_phrase({"if"}));
    CHECK(is_reserved_keyword_phrase({"at", "least"}));
    CHECK(is_reserved_keyword_phrase({"it", "is", "obligatory", "that"}));
    CHECK_FALSE(is_reserved_keyword_phrase({"it", "is", "obligatory"}));
    CHECK_FALSE(is_reserved_keyword_phrase({"office", "action"}));
    CHECK(is_article("the"));
    CHECK(is_article("an"));
    CHECK_FALSE(is_article("each"));
    CHECK(is_preposition("under"));
    CHECK(is_preposition("about"));
    CHECK_FALSE(is_preposition("rejects"));
}
