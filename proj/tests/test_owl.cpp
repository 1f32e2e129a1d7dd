#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "krcnl/owl.hpp"
#include "test_support.hpp"

using namespace krcnl;

namespace {

std::vector<OwlAxiom> corpus_axioms(Diagnostics& diags,
                                    const std::string& ns = default_namespace()) {
    auto fe = testsupport::load_corpus();
    REQUIRE(fe.io_ok);
    REQUIRE_FALSE(fe.diags.has_errors());
    REQUIRE(fe.model.has_value());
    return map_vocabulary_to_owl(*fe.model, ns, diags);
}

}  // namespace

TEST_CASE("local names join words with underscores") {
    CHECK(local_name(*Designation::make("office action"), false) ==
          "office_action");
    CHECK(local_name(*Designation::make("Paragraph 7 33 01"), true) ==
          "Paragraph_7_33_01");
    CHECK(local_name(*Designation::make("Paragraph 7 33 01"), false) ==
          "paragraph_7_33_01");
    CHECK(property_local_name({"is", "rejected", "under"}) ==
          "is_rejected_under");
}

TEST_CASE("the corpus maps to exactly the golden axiom set") {
    Diagnostics diags;
    auto axioms = corpus_axioms(diags);
    CHECK(diags.empty());

    std::vector<std::string> lines;
    for (const auto& a : axioms) lines.push_back(canonical_axiom_line(a));
    std::sort(lines.begin(), lines.end());

    auto golden = testsupport::golden_lines("tests/golden/owl_axioms.txt");
    std::sort(golden.begin(), golden.end());
    CHECK(lines == golden);
    CHECK(axioms.size() == 48);
}

TEST_CASE("serialization is deterministic across independent runs") {
    Diagnostics d1, d2;
    auto a1 = corpus_axioms(d1);
    auto a2 = corpus_axioms(d2);
    OwlWriteOptions opts{default_namespace(), false};
    CHECK(serialize_rdfxml(a1, opts) == serialize_rdfxml(a2, opts));
    CHECK(serialize_rdfxml(a1, opts) == serialize_rdfxml(a1, opts));
}

TEST_CASE("the written ontology reads back into exactly its own triples") {
    Diagnostics diags;
    auto axioms = corpus_axioms(diags);
    const std::string ns = default_namespace();
    std::string xml_text = serialize_rdfxml(axioms, {ns, false});

    std::string err;
    auto triples = parse_rdfxml_triples(xml_text, &err);
    REQUIRE_MESSAGE(triples.has_value(), err);

    const std::string rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    const std::string rdfs = "http://www.w3.org/2000/01/rdf-schema#";
    const std::string owl = "http://www.w3.org/2002/07/owl#";
    std::string ontology_iri = ns.substr(0, ns.size() - 1);

    std::vector<RdfTriple> expected = {
        {ontology_iri, rdf + "type", owl + "Ontology"}};
    for (const auto& a : axioms) {
        switch (a.kind) {
            case OwlAxiomKind::ClassDecl:
                expected.push_back({a.args[0].full(), rdf + "type", owl + "Class"});
                break;
            case OwlAxiomKind::SubClassOf:
                expected.push_back(
                    {a.args[0].full(), rdfs + "subClassOf", a.args[1].full()});
                break;
            case OwlAxiomKind::NamedIndividualDecl:
                expected.push_back(
                    {a.args[0].full(), rdf + "type", owl + "NamedIndividual"});
                break;
            case OwlAxiomKind::ClassAssertion:
                expected.push_back(
                    {a.args[1].full(), rdf + "type", a.args[0].full()});
                break;
            case OwlAxiomKind::ObjectPropertyDecl:
                expected.push_back(
                    {a.args[0].full(), rdf + "type", owl + "ObjectProperty"});
                break;
            case OwlAxiomKind::Domain:
                expected.push_back(
                    {a.args[0].full(), rdfs + "domain", a.args[1].full()});
                break;
            case OwlAxiomKind::Range:
                expected.push_back(
                    {a.args[0].full(), rdfs + "range", a.args[1].full()});
                break;
            case OwlAxiomKind::InverseOf:
                expected.push_back(
                    {a.args[0].full(), owl + "inverseOf", a.args[1].full()});
                break;
            case OwlAxiomKind::EquivalentProperty:
                expected.push_back({a.args[0].full(), owl + "equivalentProperty",
                                    a.args[1].full()});
                break;
            case OwlAxiomKind::AnnotationAssertion:
                expected.push_back({a.args[0].full(), rdfs + "comment", a.literal});
                break;
        }
    }
    std::sort(expected.begin(), expected.end());
    std::sort(triples->begin(), triples->end());
    CHECK(*triples == expected);
    CHECK(triples->size() == 49);
}

TEST_CASE("the emitted ontology contains every required triple") {
    Diagnostics diags;
    auto axioms = corpus_axioms(diags);
    std::string xml_text = serialize_rdfxml(axioms, {default_namespace(), false});
    std::string err;
    auto triples = parse_rdfxml_triples(xml_text, &err);
    REQUIRE(triples.has_value());

    for (const std::string& line :
         testsupport::golden_lines("tests/golden/owl_required_subset.txt")) {
        std::istringstream is(line);
        RdfTriple want;
        is >> want.subject >> want.predicate >> want.object;
        bool found = std::find(triples->begin(), triples->end(), want) !=
                     triples->end();
        CHECK_MESSAGE(found, line);
    }
}

TEST_CASE("two concepts that collapse to one local name collide") {
    Diagnostics diags;
    std::vector<VocabularyDocument> docs(1);
    ConceptBlock a;
    a.caption = "office action";
    a.pos = {"v", 1, 1};
    ConceptBlock b;
    b.caption = "office_action";
    b.pos = {"v", 3, 1};
    docs[0].concepts = {a, b};
    Vocabulary vocab = build_vocabulary(docs, diags);
    REQUIRE_FALSE(diags.has_errors());

    Diagnostics model_diags;
    FactModel model = build_fact_model(
        std::make_shared<Vocabulary>(std::move(vocab)), {}, model_diags);
    Diagnostics map_diags;
    map_vocabulary_to_owl(model, default_namespace(), map_diags);
    REQUIRE(map_diags.error_count() == 1);
    CHECK(map_diags.all()[0].code == "iri-collision");
    CHECK(map_diags.all()[0].related.has_value());
}

TEST_CASE("the union option folds one property's ranges together") {
    Diagnostics diags;
    auto axioms = corpus_axioms(diags);
    std::string plain = serialize_rdfxml(axioms, {default_namespace(), false});
    std::string unioned = serialize_rdfxml(axioms, {default_namespace(), true});

    auto count = [](const std::string& text, const std::string& needle) {
        size_t n = 0;
        for (size_t pos = text.find(needle); pos != std::string::npos;
             pos = text.find(needle, pos + needle.size()))
            ++n;
        return n;
    };
    CHECK(count(plain, "<rdfs:range") == 11);
    CHECK(count(plain, "owl:unionOf") == 0);
    // Seven single-range properties plus one union block.
    CHECK(count(unioned, "<rdfs:range") == 8);
    CHECK(count(unioned, "<owl:unionOf rdf:parseType=\"Collection\">") == 1);
    CHECK(count(unioned, "<rdf:Description") == 4);

    // The union form is still well-formed markup.
    std::string err;
    CHECK_MESSAGE(parse_rdfxml_triples(unioned, &err).has_value(), err);
}

TEST_CASE("the namespace flows into entity, base and every subject") {
    Diagnostics diags;
    const std::string ns = "http://example.org/onto#";
    auto axioms = corpus_axioms(diags, ns);
    std::string xml_text = serialize_rdfxml(axioms, {ns, false});

    CHECK(xml_text.find("<!ENTITY onto \"http://example.org/onto#\" >") !=
          std::string::npos);
    CHECK(xml_text.find("rdf:about=\"&onto;include\"") != std::string::npos);
    CHECK(xml_text.find("<owl:Ontology rdf:about=\"http://example.org/onto\"/>") !=
          std::string::npos);

    std::string err;
    auto triples = parse_rdfxml_triples(xml_text, &err);
    REQUIRE(triples.has_value());
    for (const auto& t : *triples) {
        if (t.predicate == "http://www.w3.org/1999/02/22-rdf-syntax-ns#type" &&
            t.object == "http://www.w3.org/2002/07/owl#Ontology")
            continue;
        CHECK(t.subject.rfind(ns, 0) == 0);
    }
}
