#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "krcnl/compiler.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Controlled-English legal vocabulary and rulebook compiler"};
    app.require_subcommand(1);

    krcnl::CompileConfig config;
    std::string diag_format = "text";
    std::vector<std::string> target_names;
    std::string what;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--vocab", config.vocab_paths,
                        "vocabulary document (repeatable)")
            ->required()
            ->allow_extra_args(false);
        cmd->add_option("--rules", config.rules_paths,
                        "rule document (repeatable)")
            ->allow_extra_args(false);
        cmd->add_option("--ns", config.ns,
                        "ontology namespace (default: KR_CNL_NS or built-in)");
        cmd->add_option("--diag-format", diag_format, "diagnostic format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* check = app.add_subcommand(
        "check", "Parse and type-check without writing output");
    add_common(check);

    CLI::App* emit =
        app.add_subcommand("emit", "Compile to ontology and rulebase files");
    add_common(emit);
    emit->add_option("--target", target_names,
                     "what to emit: owl, lrml (default: both)")
        ->check(CLI::IsMember({"owl", "lrml"}))
        ->allow_extra_args(false);
    emit->add_option("--out", config.output_dir, "output directory");
    emit->add_flag("--force", config.force,
                   "write output even when checks report errors");
    emit->add_flag("--range-union", config.range_union,
                   "emit one unionOf range per property");

    CLI::App* inspect =
        app.add_subcommand("inspect", "Print the compiled model");
    inspect->add_option("what", what, "concepts, facts, or rules")
        ->required()
        ->check(CLI::IsMember({"concepts", "facts", "rules"}));
    add_common(inspect);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    config.diag_format = diag_format == "json" ? krcnl::DiagFormat::Json
                                               : krcnl::DiagFormat::Text;

    if (app.got_subcommand(check))
        return krcnl::cmd_check(config, std::cout, std::cerr);

    if (app.got_subcommand(emit)) {
        std::set<krcnl::EmitTarget> targets;
        for (const std::string& name : target_names)
            targets.insert(name == "owl" ? krcnl::EmitTarget::Owl
                                         : krcnl::EmitTarget::Lrml);
        return krcnl::cmd_emit(config, targets, std::cout, std::cerr);
    }

    krcnl::InspectWhat which = what == "concepts" ? krcnl::InspectWhat::Concepts
                               : what == "facts"  ? krcnl::InspectWhat::Facts
                                                  : krcnl::InspectWhat::Rules;
    return krcnl::cmd_inspect(config, which, std::cout, std::cerr);
}
