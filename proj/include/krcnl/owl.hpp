#pragma once

#include <optional>
#include <string>
#include <vector>

#include "krcnl/analyzer.hpp"
#include "krcnl/diagnostics.hpp"

namespace krcnl {

struct Iri {
    std::string ns;
    std::string local;
    std::string full() const { return ns + local; }
    auto operator<=>(const Iri&) const = default;
};

enum class OwlAxiomKind {
    ClassDecl,
    SubClassOf,
    NamedIndividualDecl,
    ClassAssertion,
    ObjectPropertyDecl,
    Domain,
    Range,
    InverseOf,
    EquivalentProperty,
    AnnotationAssertion,
};

struct OwlAxiom {
    OwlAxiomKind kind = OwlAxiomKind::ClassDecl;
    std::vector<Iri> args;
    std::string literal;  // annotation text
    auto operator<=>(const OwlAxiom&) const = default;
};

// Default ontology namespace (overridable via --ns / KR_CNL_NS).
std::string default_namespace();

// "office action" -> "office_action": lowercase words joined by
// underscores, non-alphanumeric characters mapped to underscores.
// Individuals keep their surface capitalization ("Paragraph_7_33_01").
std::string local_name(const Designation& d, bool keep_surface_case);
std::string property_local_name(const std::vector<std::string>& verb_words);

// Vocabulary -> axiom set. Classes per noun concept, SubClassOf per
// generalization edge, NamedIndividual + ClassAssertion per individual,
// ObjectProperty per distinct surface verb phrase with Domain/Range per
// fact pair, EquivalentProperty for phrases equal after inflection
// normalization, and passive declarations becoming inverse properties.
// Reports iri-collision when two distinct concepts map to one local name.
std::vector<OwlAxiom> map_vocabulary_to_owl(const FactModel& model,
                                            const std::string& ns,
                                            Diagnostics& diags);

struct OwlWriteOptions {
    std::string ns;
    // One unionOf range instead of repeated rdfs:range elements.
    bool range_union = false;
};

// Deterministic RDF/XML: DOCTYPE entity for the namespace, entities
// sorted by local name within banner-separated sections.
std::string serialize_rdfxml(const std::vector<OwlAxiom>& axioms,
                             const OwlWriteOptions& opts);

// Canonical one-line form used by the golden axiom-set tests.
std::string canonical_axiom_line(const OwlAxiom& axiom);

struct RdfTriple {
    std::string subject;
    std::string predicate;
    std::string object;  // IRI, or literal text for annotation triples
    auto operator<=>(const RdfTriple&) const = default;
};

// Reads serialized RDF/XML back into triples (round-trip checks).
std::optional<std::vector<RdfTriple>> parse_rdfxml_triples(
    const std::string& xml, std::string* err);

}  // namespace krcnl
