#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "cartan_forge.h"

namespace {

int emit(cf_result* res) {
    std::fputs(cf_result_report(res), stdout);
    int code = cf_result_exit_code(res);
    cf_result_free(res);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cartan-forge: variational calculus on differential equations"};
    app.require_subcommand(1);

    bool json = false;
    int maxOrder = 0;
    app.add_flag("--json", json, "render the report as JSON");
    app.add_option("--max-order", maxOrder,
                   "derivative order bound for rewriting (overrides the file "
                   "option and CARTAN_FORGE_MAX_ORDER)")
        ->check(CLI::PositiveNumber);

    struct FileCmd {
        const char* name;
        const char* help;
        std::string file;
    };
    FileCmd cmds[] = {
        {"euler", "Euler-Lagrange equations of the [lagrangian] section", ""},
        {"internal", "internal Lagrangian, presymplectic form and cocycle check", ""},
        {"roundtrip", "recover a certified action from an internal Lagrangian", ""},
        {"reduce", "normal forms of the scalars and forms in the file", ""},
        {"presymplectic", "presymplectic representative of the internal input", ""},
    };
    for (FileCmd& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->fallthrough();
        sub->add_option("FILE", c.file, "problem file")->required();
    }
    std::string corpusName;
    CLI::App* corpus =
        app.add_subcommand("corpus", "run the built-in example suite");
    corpus->fallthrough();
    corpus->add_option("NAME", corpusName, "corpus entry name, or `all`")
        ->default_val("all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (maxOrder == 0) {
        if (const char* env = std::getenv("CARTAN_FORGE_MAX_ORDER")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (!end || *end != '\0' || v < 1) {
                std::fprintf(stderr,
                             "error: CARTAN_FORGE_MAX_ORDER must be a positive "
                             "integer, got `%s`\n",
                             env);
                return 2;
            }
            maxOrder = static_cast<int>(v);
        }
    }

    if (corpus->parsed())
        return emit(cf_run_corpus(corpusName.c_str(), json ? 1 : 0, maxOrder));
    for (const FileCmd& c : cmds)
        if (app.get_subcommand(c.name)->parsed())
            return emit(
                cf_run_file(c.name, c.file.c_str(), json ? 1 : 0, maxOrder));
    return 2;  // unreachable: require_subcommand(1)
}
