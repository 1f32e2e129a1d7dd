#include "krcnl/compiler.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <utility>

#include "krcnl/lrml.hpp"
#include "krcnl/owl.hpp"
#include "krcnl/parser.hpp"

namespace krcnl {

std::string resolve_namespace(const CompileConfig& config) {
    if (!config.ns.empty()) return config.ns;
    if (const char* env = std::getenv("KR_CNL_NS"); env && *env) return env;
    return default_namespace();
}

std::string output_basename(const CompileConfig& config) {
    std::string source;
    if (!config.rules_paths.empty())
        source = config.rules_paths.front();
    else if (!config.vocab_paths.empty())
        source = config.vocab_paths.front();
    if (source.empty()) return "rulebase";
    std::string stem = std::filesystem::path(source).stem().string();
    return stem.empty() ? "rulebase" : stem;
}

namespace {

std::optional<std::string> read_file(const std::string& path,
                                     std::string* err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        *err = "cannot open '" + path + "'";
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_diags(const Diagnostics& diags, DiagFormat format,
                 std::ostream& os) {
    if (format == DiagFormat::Json) {
        os << diagnostics_to_json(diags.all());
        return;
    }
    for (const Diagnostic& d : diags.all()) os << format_text(d) << "\n";
}

}  // namespace

Frontend run_frontend(const CompileConfig& config) {
    Frontend fe;
    if (config.vocab_paths.empty()) {
        fe.io_ok = false;
        fe.io_message = "no vocabulary files given";
        return fe;
    }

    struct Source {
        std::string path;
        std::string text;
    };
    std::vector<Source> vocab_sources, rules_sources;
    for (const std::string& path : config.vocab_paths) {
        std::string err;
        auto text = read_file(path, &err);
        if (!text) {
            fe.io_ok = false;
            fe.io_message = err;
            return fe;
        }
        vocab_sources.push_back({path, std::move(*text)});
    }
    for (const std::string& path : config.rules_paths) {
        std::string err;
        auto text = read_file(path, &err);
        if (!text) {
            fe.io_ok = false;
            fe.io_message = err;
            return fe;
        }
        rules_sources.push_back({path, std::move(*text)});
    }

    // Documents parse concurrently; results merge in path order so the
    // diagnostic stream and declaration order stay deterministic.
    std::vector<std::future<std::pair<VocabularyDocument, Diagnostics>>>
        vocab_futures;
    vocab_futures.reserve(vocab_sources.size());
    for (const Source& src : vocab_sources) {
        vocab_futures.push_back(std::async(std::launch::async, [&src]() {
            Diagnostics local;
            VocabularyDocument doc =
                parse_vocabulary_document(src.text, src.path, local);
            return std::make_pair(std::move(doc), std::move(local));
        }));
    }
    std::vector<VocabularyDocument> docs;
    docs.reserve(vocab_futures.size());
    for (auto& fut : vocab_futures) {
        auto [doc, local] = fut.get();
        fe.diags.merge(local);
        docs.push_back(std::move(doc));
    }

    auto vocab = std::make_shared<Vocabulary>(build_vocabulary(docs, fe.diags));
    fe.vocab = vocab;

    std::vector<std::future<std::pair<std::vector<RuleAst>, Diagnostics>>>
        rule_futures;
    rule_futures.reserve(rules_sources.size());
    for (const Source& src : rules_sources) {
        rule_futures.push_back(std::async(std::launch::async, [&src, &vocab]() {
            Diagnostics local;
            std::vector<RuleAst> doc_rules =
                parse_rule_document(*vocab, src.text, src.path, local);
            return std::make_pair(std::move(doc_rules), std::move(local));
        }));
    }
    std::vector<RuleAst> rules;
    int id_offset = 0;
    for (auto& fut : rule_futures) {
        auto [doc_rules, local] = fut.get();
        fe.diags.merge(local);
        int doc_max = id_offset;
        for (RuleAst& rule : doc_rules) {
            rule.rule_id += id_offset;
            doc_max = std::max(doc_max, rule.rule_id);
            rules.push_back(std::move(rule));
        }
        id_offset = doc_max;
    }

    fe.model = build_fact_model(vocab, std::move(rules), fe.diags);
    return fe;
}

int cmd_check(const CompileConfig& config, std::ostream& out,
              std::ostream& err) {
    Frontend fe = run_frontend(config);
    if (!fe.io_ok) {
        err << "error: " << fe.io_message << "\n";
        return 2;
    }
    print_diags(fe.diags, config.diag_format, out);
    return fe.diags.has_errors() ? 1 : 0;
}

int cmd_emit(const CompileConfig& config, const std::set<EmitTarget>& targets,
             std::ostream& out, std::ostream& err) {
    Frontend fe = run_frontend(config);
    if (!fe.io_ok) {
        err << "error: " << fe.io_message << "\n";
        return 2;
    }
    bool emit_owl = targets.empty() || targets.count(EmitTarget::Owl) > 0;
    bool emit_lrml = targets.empty() || targets.count(EmitTarget::Lrml) > 0;

    if (fe.diags.has_errors() && !config.force) {
        print_diags(fe.diags, config.diag_format, err);
        return 1;
    }

    const std::string ns = resolve_namespace(config);
    std::string owl_text, lrml_text;
    if (emit_owl) {
        std::vector<OwlAxiom> axioms =
            map_vocabulary_to_owl(*fe.model, ns, fe.diags);
        owl_text = serialize_rdfxml(axioms, {ns, config.range_union});
    }
    if (emit_lrml) {
        auto serialized = serialize_lrml(map_rules_to_lrml(*fe.model), fe.diags);
        if (serialized) lrml_text = std::move(*serialized);
    }

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) {
        err << "error: cannot create '" << config.output_dir
            << "': " << ec.message() << "\n";
        return 2;
    }
    const std::string base = output_basename(config);
    auto write_out = [&](const std::string& name, const std::string& text) {
        std::filesystem::path path =
            std::filesystem::path(config.output_dir) / name;
        std::ofstream os(path, std::ios::binary);
        os << text;
        if (!os) {
            err << "error: cannot write '" << path.string() << "'\n";
            return false;
        }
        out << "wrote " << path.string() << "\n";
        return true;
    };
    if (emit_owl && !write_out(base + ".owl", owl_text)) return 2;
    if (emit_lrml && !lrml_text.empty() &&
        !write_out(base + ".lrml.xml", lrml_text))
        return 2;

    print_diags(fe.diags, config.diag_format, err);
    return fe.diags.has_errors() ? 1 : 0;
}

int cmd_inspect(const CompileConfig& config, InspectWhat what,
                std::ostream& out, std::ostream& err) {
    Frontend fe = run_frontend(config);
    if (!fe.io_ok) {
        err << "error: " << fe.io_message << "\n";
        return 2;
    }
    const Vocabulary& vocab = *fe.vocab;
    switch (what) {
        case InspectWhat::Concepts:
            for (const NounConcept& noun : vocab.nouns()) {
                out << "concept " << noun.designation.key();
                if (noun.general)
                    out << " < " << vocab.noun(*noun.general).designation.key();
                out << "\n";
            }
            for (const IndividualConcept& ind : vocab.individuals()) {
                out << "individual " << ind.designation.surface;
                if (ind.concept_type)
                    out << " : "
                        << vocab.noun(*ind.concept_type).designation.key();
                out << "\n";
            }
            break;
        case InspectWhat::Facts:
            for (const VerbConcept& fact : vocab.facts()) {
                out << vocab.noun(fact.subject).designation.key() << " | ";
                const auto& words = vocab.verb_words(fact.phrase);
                for (size_t i = 0; i < words.size(); ++i)
                    out << (i ? " " : "") << words[i];
                out << " | "
                    << (fact.object
                            ? vocab.noun(*fact.object).designation.key()
                            : std::string("-"))
                    << "\n";
            }
            break;
        case InspectWhat::Rules: {
            auto families = classify_rules(*fe.model);
            for (const RuleAst& rule : fe.model->rules()) {
                out << "rule " << rule.rule_id << " ("
                    << family_name(families.at(rule.rule_id))
                    << "): " << print_rule(vocab, rule) << "\n";
            }
            break;
        }
    }
    print_diags(fe.diags, config.diag_format, err);
    return fe.diags.has_errors() ? 1 : 0;
}

}  // namespace krcnl
