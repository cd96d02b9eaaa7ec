// bundlesig: command line driver for the Euler class, Meyer signature and
// branched transfer sweeps.
//
// Exit codes: 0 success, 1 configuration or input error, 2 violation found.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <bundlesig/harness.hpp>

namespace {

void emit(const bundlesig::RunReport& report, const bundlesig::SweepConfig& cfg) {
    std::ofstream file;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) throw bundlesig::ConfigError("cannot write " + cfg.output);
    }
    std::ostream& out = cfg.output.empty() ? std::cout : file;
    if (cfg.format == "csv")
        report.write_csv(out);
    else
        out << report.to_json().dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded Euler class, Milnor-Wood, Meyer signature and branched transfer checks"};
    app.require_subcommand(1);
    // "-h" would collide with the base genus option "--h".
    app.set_help_flag("--help", "print help and exit");
    bundlesig::SweepConfig cfg;
    std::size_t samples = 0;

    auto add_global = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "64-bit seed; fixes the whole sample stream");
        sub->add_option("--samples", samples, "number of samples (per degree for transfer)");
        sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.output, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--basepoint", cfg.basepoint, "basepoint for canonical lifts, as p/q");
    };

    auto* cocycle = app.add_subcommand("cocycle-check", "value range and 2-cocycle identity on random triples");
    add_global(cocycle);
    cocycle->add_option("--n", cfg.n_values, "numbers of circle factors (even)");
    cocycle->add_option("--exactness", cfg.exactness, "identity, rotation, pl, exact or numeric");
    cocycle->add_flag("--fault-swap-product", cfg.fault_swap_product)->group("");

    auto* mw = app.add_subcommand("milnor-wood", "Euler numbers of random surface group representations");
    add_global(mw);
    mw->add_option("--n", cfg.n_values, "numbers of circle factors (even)");
    mw->add_option("--h", cfg.h_values, "base genera");
    mw->add_option("--exactness", cfg.exactness, "rotation, exact, mixed or fuchsian");

    auto* meyer = app.add_subcommand("meyer", "signatures of surface bundles from symplectic monodromy");
    add_global(meyer);
    meyer->add_option("--g", cfg.g_values, "fiber genera");
    meyer->add_option("--h", cfg.h_values, "base genera");

    auto* transfer = app.add_subcommand("transfer", "validate branched coverings and check the transfer identity");
    add_global(transfer);
    transfer->add_option("--corpus", cfg.corpus, "directory of .cov files (default: $BUNDLESIG_CORPUS)");

    auto* eval = app.add_subcommand("euler-eval", "evaluate one representation read from JSON");
    add_global(eval);
    eval->add_option("input", cfg.input, "representation JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (samples > 0) cfg.samples = samples;
    try {
        const auto report = bundlesig::run_command(cfg);
        emit(report, cfg);
        if (!report.ok()) {
            std::cerr << "bundlesig: " << report.violations.size() << " violation(s), first: "
                      << report.violations.front().dump() << "\n";
            return 2;
        }
        return 0;
    } catch (const bundlesig::Error& e) {
        std::cerr << "bundlesig: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "bundlesig: bad JSON: " << e.what() << "\n";
        return 1;
    }
}
