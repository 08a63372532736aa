// cjt -- phase diagram, saddle-point and collective-mode toolkit for the
// cooperative E(x)e Jahn-Teller lattice.

#include <string>

#include <CLI11.hpp>

#include "cjt/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"cooperative Jahn-Teller lattice: mean field and collective modes"};
    app.require_subcommand(1);

    std::string config_path;
    cjt::io::CliOptions opt;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* c = cmd->add_option("--config", config_path, "path to the JSON run configuration");
        if (config_required) c->required();
        cmd->add_option("--out", opt.out_override, "output file path override");
        cmd->add_option("--units", opt.units, "energy units: g (default) or absolute")
            ->check(CLI::IsMember({"g", "absolute"}));
        cmd->add_option("--workers", opt.workers, "worker threads (0 = hardware)");
    };

    CLI::App* meanfield = app.add_subcommand("meanfield", "saddle-point configuration");
    add_common(meanfield, true);
    CLI::App* dispersion = app.add_subcommand("dispersion", "three collective-mode branches");
    add_common(dispersion, true);
    CLI::App* gaps = app.add_subcommand("gaps", "closed-form gaps and Goldstone slope");
    add_common(gaps, true);
    CLI::App* fig1 =
        app.add_subcommand("fig1", "reference dispersion data set (Delta/g=1, t/g=0.5, w_z/g=1)");
    add_common(fig1, false);
    fig1->add_option("--N", opt.fig1_sites, "chain length (default 100)")
        ->check(CLI::PositiveNumber);
    CLI::App* ed = app.add_subcommand("ed-check", "exact-diagonalization cross checks");
    add_common(ed, true);
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep");
    add_common(sweep, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (fig1->parsed()) return cjt::io::run_fig1(opt);
        const cjt::io::RunConfig cfg = cjt::io::load_config(config_path);
        if (meanfield->parsed()) return cjt::io::run_meanfield(cfg, opt);
        if (dispersion->parsed()) return cjt::io::run_dispersion(cfg, opt);
        if (gaps->parsed()) return cjt::io::run_gaps(cfg, opt);
        if (ed->parsed()) return cjt::io::run_ed_check(cfg, opt);
        if (sweep->parsed()) return cjt::io::run_sweep(cfg, opt);
    } catch (const cjt::io::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
