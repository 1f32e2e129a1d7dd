#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "krcnl/compiler.hpp"
#include "krcnl/lrml.hpp"

// Reads a serialized rulebase back against its vocabulary and prints each
// rule in canonical controlled English; a sanity check that the emitted
// markup still carries the full rule structure.
int main(int argc, char** argv) {
    CLI::App app{"Rulebase loader"};

    krcnl::CompileConfig config;
    std::string rulebase_path;
    app.add_option("--vocab", config.vocab_paths,
                   "vocabulary document (repeatable)")
        ->required()
        ->allow_extra_args(false);
    app.add_option("rulebase", rulebase_path, "serialized rulebase file")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    krcnl::Frontend fe = krcnl::run_frontend(config);
    if (!fe.io_ok) {
        std::cerr << "error: " << fe.io_message << "\n";
        return 2;
    }
    for (const krcnl::Diagnostic& d : fe.diags.all())
        std::cerr << krcnl::format_text(d) << "\n";
    if (fe.diags.has_errors()) return 1;

    std::ifstream in(rulebase_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open '" << rulebase_path << "'\n";
        return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();

    krcnl::Diagnostics load_diags;
    std::vector<krcnl::RuleAst> rules =
        krcnl::load_rulebase(ss.str(), *fe.vocab, load_diags);
    for (const krcnl::Diagnostic& d : load_diags.all())
        std::cerr << krcnl::format_text(d) << "\n";
    if (load_diags.has_errors()) return 1;

    for (const krcnl::RuleAst& rule : rules) {
        std::cout << "rule " << rule.rule_id << " ("
                  << krcnl::family_name(rule.modality.family())
                  << "): " << krcnl::print_rule(*fe.vocab, rule) << "\n";
    }
    return 0;
}
