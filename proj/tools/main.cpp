#include "qorth/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace qorth;
    CLI::App app{"Recurrence coefficients of semi-classical q-orthogonal polynomials"};
    app.require_subcommand(1, 1);

    cli::RunConfig cfg;
    std::string weight = "ex1";
    std::string format = "csv";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--weight", weight, "ex1, ex2, little-q-laguerre or custom")
            ->check(CLI::IsMember({"ex1", "ex2", "little-q-laguerre", "custom"}));
        sub->add_option("--q", cfg.weight.q, "lattice base, 0 < q < 1");
        sub->add_option("--alpha", cfg.weight.alpha);
        sub->add_option("--c", cfg.weight.c, "example 1 parameter");
        sub->add_option("--c1", cfg.weight.c1, "example 2 parameter");
        sub->add_option("--c2", cfg.weight.c2, "example 2 parameter");
        sub->add_option("--N", cfg.N, "highest degree")->capture_default_str();
        sub->add_option("--digits", cfg.digits, "reported decimal digits")->capture_default_str();
        sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        sub->add_option("--spec", cfg.spec_path, "weight spec JSON for --weight custom");
        sub->add_option("--out", cfg.out_path, "write output here instead of stdout");
        sub->add_option("--tol", cfg.tol, "override every derived tolerance");
    };

    for (const char* name : {"moments", "recurrence", "ladder-check", "painleve", "verify"}) {
        add_common(app.add_subcommand(name));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::kExitValidation;
    }

    cfg.command = cli::command_from_string(app.get_subcommands().front()->get_name());
    cfg.format = format == "json" ? cli::Format::Json : cli::Format::Csv;
    try {
        cfg.weight.kind = weight_kind_from_string(weight);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitValidation;
    }

    const cli::RunResult res = cli::run(cfg);
    if (!cfg.out_path) std::cout << res.output;
    std::cerr << res.diagnostics;
    return res.exit_code;
}
