#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "krcnl/parser.hpp"
#include "test_support.hpp"

using namespace krcnl;

namespace {

std::shared_ptr<const Vocabulary> corpus_vocab() {
    static std::shared_ptr<const Vocabulary> vocab = [] {
        auto fe = testsupport::load_corpus(false);
        REQUIRE(fe.io_ok);
        REQUIRE_FALSE(fe.diags.has_errors());
        return fe.vocab;
    }();
    return vocab;
}

NounId must_noun(const Vocabulary& v, const std::string& key) {
    auto id = v.find_noun(key);
    REQUIRE(id.has_value());
    return *id;
}

}  // namespace

TEST_CASE("the three bundled rules parse into the expected structures") {
    auto vocab = corpus_vocab();
    Diagnostics diags;
    std::string text = testsupport::read_file(
        testsupport::source_path("corpus/patent-law.rules"));
    auto rules = parse_rule_document(*vocab, text, "patent-law.rules", diags);
    REQUIRE_FALSE(diags.has_errors());
    REQUIRE(rules.size() == 3);

    NounId claim = must_noun(*vocab, "claim");
    NounId examiner = must_noun(*vocab, "examiner");
    NounId office_action = must_noun(*vocab, "office action");
    NounId paragraphs = must_noun(*vocab, "paragraphs");
    NounId esmr = must_noun(*vocab, "essential subject matter requirement");
    auto ind = vocab->find_individual("paragraph 7 33 01");
    REQUIRE(ind.has_value());

    const RuleAst& r1 = rules[0];
    CHECK(r1.rule_id == 1);
    CHECK(r1.modality.kind == ModalityKind::Obligatory);
    REQUIRE(r1.consequent.size() == 2);
    CHECK(r1.consequent[0].subject == examiner);
    CHECK(r1.consequent[0].verb_words == std::vector<std::string>{"rejects"});
    REQUIRE(r1.consequent[0].objects.size() == 1);
    CHECK(r1.consequent[0].objects[0] == ObjectArg{claim, std::nullopt});
    CHECK(r1.consequent[1].subject == office_action);
    REQUIRE(r1.consequent[1].objects.size() == 1);
    CHECK(r1.consequent[1].objects[0] == ObjectArg{paragraphs, ind});
    REQUIRE(r1.antecedent.size() == 1);
    CHECK(r1.antecedent[0].subject == claim);
    CHECK(r1.antecedent[0].verb_words ==
          std::vector<std::string>{"is", "rejected", "under"});
    CHECK(r1.antecedent[0].objects[0] == ObjectArg{esmr, std::nullopt});

    // One statement, four coordinated objects.
    const RuleAst& r2 = rules[1];
    CHECK(r2.rule_id == 2);
    REQUIRE(r2.consequent.size() == 1);
    CHECK(r2.consequent[0].verb_words == std::vector<std::string>{"include"});
    REQUIRE(r2.consequent[0].objects.size() == 4);
    CHECK(r2.consequent[0].objects[0].noun == must_noun(*vocab, "statement"));
    CHECK(r2.consequent[0].objects[3].noun == must_noun(*vocab, "drawing"));
    REQUIRE(r2.antecedent.size() == 1);
    CHECK(r2.antecedent[0].objects[0] == ObjectArg{paragraphs, ind});

    const RuleAst& r3 = rules[2];
    CHECK(r3.rule_id == 3);
    CHECK(r3.modality.kind == ModalityKind::Necessary);
    REQUIRE(r3.consequent.size() == 1);
    CHECK(r3.consequent[0].objects[0] == ObjectArg{paragraphs, ind});
    REQUIRE(r3.antecedent.size() == 2);
    CHECK(r3.antecedent[1].verb_words ==
          std::vector<std::string>{"is", "about", "the"});
    CHECK(r3.antecedent[1].objects[0].noun == must_noun(*vocab, "invention"));

    // Atom positions track the subject token in the source line.
    const std::string line3 =
        "1. It is obligatory that examiner rejects the claim and office "
        "action includes paragraphs Paragraph 7 33 01 if claim is rejected "
        "under essential subject matter requirement";
    CHECK(r1.consequent[0].pos.line == 3);
    CHECK(r1.consequent[0].pos.column ==
          static_cast<int>(line3.find("examiner")) + 1);
}

TEST_CASE("a broken line is skipped but later rules keep their numbers") {
    auto vocab = corpus_vocab();
    Diagnostics diags;
    const std::string text =
        "It is obligatory that examiner rejects the claim\n"
        "It is obligatory that examiner rejects the claim or applicant "
        "conceals effective feature\n"
        "It is necessary that applicant conceals effective feature\n";
    auto rules = parse_rule_document(*vocab, text, "r", diags);
    CHECK(diags.has_errors());
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].rule_id == 1);
    CHECK(rules[1].rule_id == 3);

    // A rule whose verb is simply unknown still parses (the verb is
    // collected word by word) and is caught later by fact-type checking.
    Diagnostics d2;
    auto absorbed = parse_rule_document(
        *vocab, "It is obligatory that examiner frobnicates the claim\n", "r",
        d2);
    CHECK(d2.error_count() == 1);
    CHECK(d2.all()[0].code == "unknown-word");
    REQUIRE(absorbed.size() == 1);
    CHECK(absorbed[0].consequent[0].verb_words ==
          std::vector<std::string>{"frobnicates"});
}

TEST_CASE("disjunction is refused with its own code") {
    auto vocab = corpus_vocab();
    Diagnostics diags;
    auto rule = parse_rule_sentence(
        *vocab,
        "It is obligatory that examiner rejects the claim or office action "
        "includes paragraphs",
        {"r", 1, 1}, diags);
    CHECK_FALSE(rule.has_value());
    REQUIRE_FALSE(diags.empty());
    CHECK(diags.all()[0].code == "or-unsupported");
    CHECK(diags.all()[0].message == "disjunction is not part of this language");
}

TEST_CASE("an 'if' with nothing around it is a dangling-if") {
    auto vocab = corpus_vocab();

    Diagnostics d1;
    auto r1 = parse_rule_sentence(
        *vocab, "It is obligatory that if claim is rejected under Paragraph 7 33 01",
        {"r", 1, 1}, d1);
    CHECK_FALSE(r1.has_value());
    CHECK(d1.all()[0].code == "dangling-if");

    Diagnostics d2;
    auto r2 = parse_rule_sentence(
        *vocab, "It is obligatory that examiner rejects the claim if", {"r", 1, 1},
        d2);
    CHECK_FALSE(r2.has_value());
    CHECK(d2.all()[0].code == "dangling-if");
}

TEST_CASE("the if-then spelling parses to the same structure") {
    auto vocab = corpus_vocab();
    Diagnostics d1, d2;
    auto flipped = parse_rule_sentence(
        *vocab,
        "If claim is rejected under essential subject matter requirement "
        "then it is obligatory that examiner rejects the claim",
        {"r", 1, 1}, d1);
    auto modal = parse_rule_sentence(
        *vocab,
        "It is obligatory that examiner rejects the claim if claim is "
        "rejected under essential subject matter requirement",
        {"r", 1, 1}, d2);
    REQUIRE(flipped.has_value());
    REQUIRE(modal.has_value());
    CHECK(structurally_equal(*flipped, *modal));

    Diagnostics d3;
    auto missing_then = parse_rule_sentence(
        *vocab,
        "If claim is rejected under essential subject matter requirement it "
        "is obligatory that examiner rejects the claim",
        {"r", 1, 1}, d3);
    CHECK_FALSE(missing_then.has_value());
    CHECK(d3.all()[0].code == "expected-keyword");
    CHECK(d3.all()[0].message == "expected 'then'");
}

TEST_CASE("quantifiers attach to the subject of their statement") {
    auto vocab = corpus_vocab();
    Diagnostics diags;
    auto rule = parse_rule_sentence(
        *vocab,
        "It is obligatory that each office action include statement and "
        "argument",
        {"r", 1, 1}, diags);
    REQUIRE(rule.has_value());
    REQUIRE_FALSE(diags.has_errors());
    REQUIRE(rule->consequent.size() == 1);
    REQUIRE(rule->consequent[0].quantifier.has_value());
    CHECK(rule->consequent[0].quantifier->kind == Quantifier::Kind::Each);
    CHECK(rule->consequent[0].objects.size() == 2);

    Diagnostics d3;
    auto counted = parse_rule_sentence(
        *vocab, "It is permitted that at least 3 statement is about the invention",
        {"r", 1, 1}, d3);
    REQUIRE(counted.has_value());
    REQUIRE(counted->consequent[0].quantifier.has_value());
    CHECK(counted->consequent[0].quantifier->kind == Quantifier::Kind::AtLeast);
    CHECK(counted->consequent[0].quantifier->count == 3);

    Diagnostics d5;
    auto one = parse_rule_sentence(
        *vocab,
        "It is permitted that at least one statement is about the invention",
        {"r", 1, 1}, d5);
    REQUIRE(one.has_value());
    REQUIRE(one->consequent[0].quantifier.has_value());
    CHECK(one->consequent[0].quantifier->count == 1);

    Diagnostics d4;
    auto bad = parse_rule_sentence(
        *vocab, "It is permitted that at least statement is about the invention",
        {"r", 1, 1}, d4);
    CHECK_FALSE(bad.has_value());
    CHECK(d4.all()[0].code == "expected-keyword");
    CHECK(d4.all()[0].message == "expected a count after 'at least'");
}

TEST_CASE("a bare individual name stands for its own concept") {
    auto vocab = corpus_vocab();
    Diagnostics diags;
    auto rule = parse_rule_sentence(
        *vocab, "It is necessary that examiner applies Paragraph 7 33 01",
        {"r", 1, 1}, diags);
    REQUIRE(rule.has_value());
    auto ind = vocab->find_individual("paragraph 7 33 01");
    NounId paragraphs = must_noun(*vocab, "paragraphs");
    CHECK(rule->consequent[0].objects[0] == ObjectArg{paragraphs, ind});
}

TEST_CASE("vocabulary documents split into captioned attribute blocks") {
    const std::string text =
        "# comment line\n"
        "Legal Concepts\n"
        "\n"
        "claim\n"
        "    Definition: Defines the invention\n"
        "    Mystery knob: dropped with a warning\n"
        "\n"
        "patent\n"
        "\n"
        "Name: Claim One\n"
        "    General concept: claim\n"
        "\n"
        "Legal Facts\n"
        "\n"
        "patent covers claim\n"
        "    Passive form: claim is covered by patent\n";
    Diagnostics diags;
    auto doc = parse_vocabulary_document(text, "v", diags);
    CHECK(diags.error_count() == 0);
    REQUIRE(diags.all().size() == 1);
    CHECK(diags.all()[0].severity == Severity::Warning);
    CHECK(diags.all()[0].code == "bad-attribute-key");

    REQUIRE(doc.concepts.size() == 3);
    CHECK_FALSE(doc.concepts[0].is_individual);
    CHECK(doc.concepts[0].caption == "claim");
    REQUIRE(doc.concepts[0].attrs.size() == 1);
    CHECK(doc.concepts[0].attrs[0].key == "definition");
    CHECK(doc.concepts[0].attrs[0].value == "Defines the invention");
    CHECK(doc.concepts[2].is_individual);
    CHECK(doc.concepts[2].caption == "Claim One");
    REQUIRE(doc.facts.size() == 1);
    CHECK(doc.facts[0].sentence == "patent covers claim");
    REQUIRE(doc.facts[0].attrs.size() == 1);
    CHECK(doc.facts[0].attrs[0].key == "passive form");

    // The assembled vocabulary carries the same content.
    std::vector<VocabularyDocument> docs = {doc};
    Diagnostics build_diags;
    Vocabulary vocab = build_vocabulary(docs, build_diags);
    CHECK_FALSE(build_diags.has_errors());
    CHECK(vocab.nouns().size() == 2);
    CHECK(vocab.individuals().size() == 1);
    REQUIRE(vocab.facts().size() == 1);
    REQUIRE(vocab.passives().size() == 1);
    CHECK(vocab.passives()[0].verb_words ==
          std::vector<std::string>{"is", "covered", "by"});
}

TEST_CASE("an indented line with no block above it is a missing caption") {
    Diagnostics diags;
    parse_vocabulary_document("Legal Concepts\n\n    General concept: claim\n",
                              "v", diags);
    REQUIRE_FALSE(diags.empty());
    CHECK(diags.all()[0].code == "missing-caption");
}

TEST_CASE("a designation that spells a keyword phrase is rejected") {
    Diagnostics diags;
    auto doc = parse_vocabulary_document(
        "Legal Concepts\n\nit is obligatory that\n", "v", diags);
    CHECK(doc.concepts.empty());
    REQUIRE_FALSE(diags.empty());
    CHECK(diags.all()[0].code == "malformed-block");
}

TEST_CASE("an individual must name its concept type") {
    const std::string text = "Legal Concepts\n\nName: Claim One\n";
    Diagnostics diags;
    auto doc = parse_vocabulary_document(text, "v", diags);
    std::vector<VocabularyDocument> docs = {doc};
    build_vocabulary(docs, diags);
    CHECK(diags.has_errors());
    bool found = false;
    for (const auto& d : diags.all())
        if (d.code == "malformed-block") found = true;
    CHECK(found);
}

TEST_CASE("a misshapen passive form is reported against its fact") {
    const std::string text =
        "Legal Concepts\n\nclaim\n\npatent\n\nLegal Facts\n\n"
        "patent covers claim\n"
        "    Passive form: claim covered patent\n";
    Diagnostics diags;
    auto doc = parse_vocabulary_document(text, "v", diags);
    std::vector<VocabularyDocument> docs = {doc};
    Vocabulary vocab = build_vocabulary(docs, diags);
    CHECK(diags.has_errors());
    CHECK(vocab.passives().empty());
    bool found = false;
    for (const auto& d : diags.all())
        if (d.code == "malformed-block" &&
            d.message.find("passive form") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("printing a parsed rule and reparsing it is a fixed point") {
    auto fe = testsupport::load_corpus();
    REQUIRE(fe.io_ok);
    REQUIRE_FALSE(fe.diags.has_errors());
    const Vocabulary& vocab = *fe.vocab;
    REQUIRE(fe.model.has_value());
    for (const RuleAst& rule : fe.model->rules()) {
        std::string printed = print_rule(vocab, rule);
        Diagnostics diags;
        auto again = parse_rule_sentence(vocab, printed, {"printed", 1, 1}, diags);
        REQUIRE(again.has_value());
        CHECK(structurally_equal(rule, *again));
        CHECK(print_rule(vocab, *again) == printed);
    }
}

TEST_CASE("random rules survive a print and reparse round trip") {
    auto vocab_ptr = corpus_vocab();
    const Vocabulary& vocab = *vocab_ptr;
    const uint32_t noun_count = static_cast<uint32_t>(vocab.nouns().size());
    const auto& verbs = vocab.verb_phrases();
    auto ind = vocab.find_individual("paragraph 7 33 01");
    REQUIRE(ind.has_value());
    NounId paragraphs = must_noun(vocab, "paragraphs");

    std::mt19937 rng(112358);
    auto rand_int = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<uint32_t>(hi - lo + 1));
    };

    auto random_atom = [&]() {
        AtomNode atom;
        atom.subject = NounId{rng() % noun_count};
        atom.verb_words = verbs[rng() % verbs.size()];
        int objects = rand_int(0, 3);
        for (int i = 0; i < objects; ++i) {
            ObjectArg obj;
            obj.noun = NounId{rng() % noun_count};
            if (rand_int(0, 4) == 0) {
                obj.individual = ind;
                if (rand_int(0, 1) == 0) obj.noun = paragraphs;
            }
            atom.objects.push_back(obj);
        }
        int q = rand_int(0, 9);
        if (q == 0)
            atom.quantifier = Quantifier{Quantifier::Kind::Each, 1};
        else if (q == 1)
            atom.quantifier = Quantifier{Quantifier::Kind::AtLeast, rand_int(1, 9)};
        return atom;
    };

    const ModalityKind modalities[] = {
        ModalityKind::Obligatory, ModalityKind::Prohibited,
        ModalityKind::Permitted,  ModalityKind::Necessary,
        ModalityKind::Impossible, ModalityKind::Possible,
    };

    for (int round = 0; round < 150; ++round) {
        RuleAst rule;
        rule.modality.kind = modalities[rng() % 6];
        int consequent = rand_int(1, 3);
        for (int i = 0; i < consequent; ++i)
            rule.consequent.push_back(random_atom());
        int antecedent = rand_int(0, 2);
        for (int i = 0; i < antecedent; ++i)
            rule.antecedent.push_back(random_atom());

        std::string printed = print_rule(vocab, rule);
        CAPTURE(printed);
        Diagnostics diags;
        auto parsed = parse_rule_sentence(vocab, printed, {"gen", 1, 1}, diags);
        REQUIRE_MESSAGE(parsed.has_value(), printed);
        CHECK_MESSAGE(structurally_equal(rule, *parsed), printed);
        CHECK(print_rule(vocab, *parsed) == printed);
    }
}
