// cli.hpp -- subcommand implementations behind the `cjt` tool. Kept in the
// library so the test suite can drive the exact code paths the binary runs.
//
// Exit codes: 0 ok, 2 config, 3 non-convergence, 4 out-of-domain, 5 budget,
// 6 sweep-all-failed.
//
// Unit convention: energies are reported in units of g whenever g > 0
// (matching the usual dispersion-plot axes) and absolutely otherwise; pass
// units = "absolute" to override.

#pragma once

#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "cjt/dynamics.hpp"
#include "cjt/ed.hpp"
#include "cjt/fluctuations.hpp"
#include "cjt/io/config.hpp"
#include "cjt/io/format.hpp"
#include "cjt/meanfield.hpp"
#include "cjt/numerics/parallel.hpp"

namespace cjt::io {

struct CliOptions {
    std::string out_override;
    std::string units{"g"};
    int workers{0};
    int fig1_sites{100};
};

namespace detail {

inline double unit_divisor(double g, const std::string& units) {
    return (units == "g" && g > 0.0) ? g : 1.0;
}

inline std::string output_path(const RunConfig& cfg, const CliOptions& opt,
                               const std::string& fallback) {
    if (!opt.out_override.empty()) return opt.out_override;
    if (!cfg.output.path.empty()) return cfg.output.path;
    return fallback;
}

inline void emit_table(const Table& table, const RunConfig& cfg, const std::string& path) {
    write_text_file(path, cfg.output.format == "csv" ? to_csv(table) : to_json(table));
}

inline int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 5;
    } catch (const convergence_error& e) {
        std::cerr << "solver did not converge: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "out of domain: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

struct MeanFieldReport {
    MeanFieldState state;
    double g_c{0.0};
    double energy_per_site{0.0};
};

inline MeanFieldReport solve_mean_field(const ModelParams& p) {
    MeanFieldReport rep;
    rep.g_c = critical_coupling(p);
    if (cjt::detail::translation_invariant(p.lattice)) {
        rep.state = homogeneous_saddle_point(p);
    } else {
        MeanFieldState init;
        const int n = p.lattice.n_sites;
        init.theta.assign(n, std::numbers::pi - 0.3);
        init.phi.assign(n, 0.0);
        init.alpha_r.assign(n, cxd{});
        init.alpha_l.assign(n, cxd{});
        rep.state = general_saddle_point(p, init, 1e-12, 50000).state;
    }
    rep.energy_per_site = classical_energy(p, rep.state) / p.lattice.n_sites;
    return rep;
}

inline double mean_cos(const MeanFieldState& s) {
    double acc = 0.0;
    for (double th : s.theta) acc += std::cos(th);
    return acc / static_cast<double>(s.theta.size());
}

inline double mean_sin(const MeanFieldState& s) {
    double acc = 0.0;
    for (double th : s.theta) acc += std::sin(th);
    return acc / static_cast<double>(s.theta.size());
}

} // namespace detail

inline int run_meanfield(const RunConfig& cfg, const CliOptions& opt) {
    return detail::guarded([&]() {
        const ModelParams p = to_model_params(cfg.model);
        const double unit = detail::unit_divisor(p.g, opt.units);
        const int prec = cfg.output.precision;
        const detail::MeanFieldReport rep = detail::solve_mean_field(p);
        const bool broken = rep.state.phase == Phase::Broken;

        std::vector<std::pair<std::string, Cell>> record{
            {"phase", text_cell(broken ? "broken" : "normal")},
            {"g_c", number_cell(rep.g_c / unit, prec)},
            {"cos_theta", number_cell(detail::mean_cos(rep.state), prec)},
            {"sin_theta", number_cell(detail::mean_sin(rep.state), prec)},
            {"alpha_0", number_cell(rep.state.alpha_r[0].real(), prec)},
            {"rho_bar", number_cell(rep.state.rho_bar, prec)},
            {"energy_per_site", number_cell(rep.energy_per_site / unit, prec)},
        };
        const std::string path =
            detail::output_path(cfg, opt, std::string("meanfield.") + cfg.output.format);
        if (cfg.output.format == "csv") {
            write_text_file(path, to_csv(record_table(record)));
        } else {
            // the JSON form also carries the per-site angles, which matter for
            // inhomogeneous lattices
            std::string arr_theta = "[", arr_phi = "[";
            for (std::size_t j = 0; j < rep.state.theta.size(); ++j) {
                if (j) {
                    arr_theta += ", ";
                    arr_phi += ", ";
                }
                arr_theta += format_sci(rep.state.theta[j], prec);
                arr_phi += format_sci(rep.state.phi[j], prec);
            }
            record.emplace_back("theta", Cell{arr_theta + "]", false});
            record.emplace_back("phi", Cell{arr_phi + "]", false});
            write_text_file(path, to_json(record));
        }
        std::cout << "phase " << (broken ? "broken" : "normal") << ", g/g_c "
                  << format_sci(rep.g_c > 0 ? p.g / rep.g_c : 0.0, 6) << ", wrote " << path
                  << "\n";
        return 0;
    });
}

namespace detail {

inline Table dispersion_table(const BranchSpectrum& s, double unit, int prec) {
    Table t;
    t.columns = {"k_index", "wavenumber", "omega_G", "omega_A_minus", "omega_A_plus"};
    for (std::size_t i = 0; i < s.k_index.size(); ++i)
        t.rows.push_back({integer_cell(s.k_index[i]), number_cell(s.wavenumber[i], prec),
                          number_cell(s.omega[i][0] / unit, prec),
                          number_cell(s.omega[i][1] / unit, prec),
                          number_cell(s.omega[i][2] / unit, prec)});
    return t;
}

} // namespace detail

inline int run_dispersion(const RunConfig& cfg, const CliOptions& opt) {
    return detail::guarded([&]() {
        const ModelParams p = to_model_params(cfg.model);
        const double unit = detail::unit_divisor(p.g, opt.units);
        std::vector<int> grid(p.lattice.n_sites);
        for (int k = 0; k < p.lattice.n_sites; ++k) grid[k] = k;
        const BranchSpectrum s = branch_dispersion(p, grid, opt.workers);
        const Table t = detail::dispersion_table(s, unit, cfg.output.precision);
        const std::string path =
            detail::output_path(cfg, opt, std::string("dispersion.") + cfg.output.format);
        detail::emit_table(t, cfg, path);
        std::cout << "wrote " << s.k_index.size() << " rows to " << path << "\n";
        return 0;
    });
}

inline int run_gaps(const RunConfig& cfg, const CliOptions& opt) {
    return detail::guarded([&]() {
        const ModelParams p = to_model_params(cfg.model);
        const double unit = detail::unit_divisor(p.g, opt.units);
        const int prec = cfg.output.precision;
        const auto [dm, dp] = amplitude_gaps(p);
        Cell cs_cell = empty_cell();
        try {
            cs_cell = number_cell(goldstone_slope(p) / unit, prec);
        } catch (const std::domain_error&) {
            // no closed-form slope away from the uniform NN chain
        }
        const std::vector<std::pair<std::string, Cell>> record{
            {"g_c", number_cell(critical_coupling(p) / unit, prec)},
            {"Omega", number_cell(renormalized_frequency(p) / unit, prec)},
            {"Delta_minus", number_cell(dm / unit, prec)},
            {"Delta_plus", number_cell(dp / unit, prec)},
            {"c_s", cs_cell},
        };
        const std::string path =
            detail::output_path(cfg, opt, std::string("gaps.") + cfg.output.format);
        if (cfg.output.format == "csv")
            write_text_file(path, to_csv(record_table(record)));
        else
            write_text_file(path, to_json(record));
        std::cout << "wrote " << path << "\n";
        return 0;
    });
}

inline int run_fig1(const CliOptions& opt) {
    return detail::guarded([&]() {
        RunConfig cfg;
        cfg.model.omega_z = 1.0;
        cfg.model.g = 1.0;
        cfg.model.delta = 1.0;
        cfg.model.t = 0.5;
        cfg.model.n_sites = opt.fig1_sites;
        cfg.output.format = "csv";
        const ModelParams p = to_model_params(cfg.model);
        const double unit = detail::unit_divisor(p.g, opt.units);
        const int prec = cfg.output.precision;

        std::vector<int> grid(p.lattice.n_sites);
        for (int k = 0; k < p.lattice.n_sites; ++k) grid[k] = k;
        const BranchSpectrum s = branch_dispersion(p, grid, opt.workers);
        const std::string path = opt.out_override.empty() ? "fig1.csv" : opt.out_override;
        write_text_file(path, to_csv(detail::dispersion_table(s, unit, prec)));

        const auto [dm, dp] = amplitude_gaps(p);
        const std::vector<std::pair<std::string, Cell>> scalars{
            {"g_c", number_cell(critical_coupling(p) / unit, prec)},
            {"Omega", number_cell(renormalized_frequency(p) / unit, prec)},
            {"c_s", number_cell(goldstone_slope(p) / unit, prec)},
            {"Delta_minus", number_cell(dm / unit, prec)},
            {"Delta_plus", number_cell(dp / unit, prec)},
        };
        std::string sidecar = path;
        const std::size_t dot = sidecar.rfind('.');
        sidecar = (dot == std::string::npos ? sidecar : sidecar.substr(0, dot)) + "_scalars.json";
        write_text_file(sidecar, to_json(scalars));
        std::cout << "wrote " << path << " and " << sidecar << "\n";
        return 0;
    });
}

inline int run_ed_check(const RunConfig& cfg, const CliOptions& opt) {
    return detail::guarded([&]() {
        if (!cfg.ed) throw config_error("ed-check requires an \"ed\" config block");
        const EdConfig& ed = *cfg.ed;
        ModelConfig model = cfg.model;
        model.n_sites = ed.n_sites;
        const ModelParams p = to_model_params(model);
        const TruncationSpec trunc{ed.n_max, ed.n_sites};
        trunc.validate();
        const double unit = detail::unit_divisor(p.g, opt.units);
        const int prec = cfg.output.precision;

        const CMatrix h_chiral = build_hamiltonian_chiral(p, trunc);
        const CMatrix h_cart = build_hamiltonian(p, trunc);
        const int levels = std::min<int>(ed.num_levels, static_cast<int>(trunc.dimension()));
        const SpectrumResult sc = low_spectrum(h_chiral, levels, trunc);
        const SpectrumResult sx = low_spectrum(h_cart, levels, trunc);
        double basis_agreement = 0.0;
        for (int i = 0; i < levels; ++i)
            basis_agreement =
                std::max(basis_agreement, std::abs(sc.energies[i] - sx.energies[i]));

        const CMatrix charge = charge_operator(trunc);
        const CMatrix comm = matmul(h_chiral, charge) - matmul(charge, h_chiral);
        const std::vector<bool> interior = interior_mask(trunc);
        double comm_interior = 0.0, comm_full = 0.0;
        for (int i = 0; i < comm.rows(); ++i)
            for (int j = 0; j < comm.cols(); ++j) {
                const double v = std::abs(comm(i, j));
                comm_full = std::max(comm_full, v);
                if (interior[i] && interior[j]) comm_interior = std::max(comm_interior, v);
            }

        const double e0 = sc.energies.front();
        const double e_mf = classical_energy(p, detail::solve_mean_field(p).state);
        const std::vector<std::pair<std::string, Cell>> record{
            {"E0", number_cell(e0 / unit, prec)},
            {"E_MF", number_cell(e_mf / unit, prec)},
            {"ratio", number_cell(e_mf != 0.0 ? e0 / e_mf : 0.0, prec)},
            {"commutator_norm", number_cell(comm_interior, prec)},
            {"basis_agreement", number_cell(basis_agreement, prec)},
        };
        const std::string path =
            detail::output_path(cfg, opt, std::string("ed_check.") + cfg.output.format);
        if (cfg.output.format == "csv") {
            write_text_file(path, to_csv(record_table(record)));
        } else {
            auto extended = record;
            extended.emplace_back("commutator_norm_full", number_cell(comm_full, prec));
            write_text_file(path, to_json(extended));
        }
        std::cout << "E0 " << format_sci(e0 / unit, 6) << ", E_MF " << format_sci(e_mf / unit, 6)
                  << ", wrote " << path << "\n";
        return 0;
    });
}

inline int run_sweep(const RunConfig& cfg, const CliOptions& opt) {
    return detail::guarded([&]() {
        if (!cfg.sweep) throw config_error("sweep requires a \"sweep\" config block");
        const SweepConfig& sw = *cfg.sweep;
        const int prec = cfg.output.precision;
        const bool gaps = sw.observable == "gaps";

        Table t;
        t.columns = gaps ? std::vector<std::string>{"parameter", "value", "status", "g_c",
                                                    "Omega", "Delta_minus", "Delta_plus", "c_s"}
                         : std::vector<std::string>{"parameter", "value", "status", "phase",
                                                    "g_c", "cos_theta", "sin_theta", "rho_bar",
                                                    "energy_per_site"};
        t.rows.assign(sw.points, {});
        std::vector<bool> ok(sw.points, false);

        parallel_for(
            sw.points,
            [&](int i) {
                const double value =
                    sw.points == 1
                        ? sw.start
                        : sw.start + (sw.stop - sw.start) * i / double(sw.points - 1);
                ModelConfig model = cfg.model;
                if (sw.parameter == "g") model.g = value;
                else if (sw.parameter == "omega_z") model.omega_z = value;
                else if (sw.parameter == "Delta") model.delta = value;
                else model.t = value;

                std::vector<Cell> row{text_cell(sw.parameter), number_cell(value, prec)};
                try {
                    const ModelParams p = to_model_params(model);
                    const double unit = detail::unit_divisor(p.g, opt.units);
                    if (gaps) {
                        const auto [dm, dp] = amplitude_gaps(p);
                        Cell cs_cell = empty_cell();
                        try {
                            cs_cell = number_cell(goldstone_slope(p) / unit, prec);
                        } catch (const std::domain_error&) {
                        }
                        row.push_back(text_cell("ok"));
                        row.push_back(number_cell(critical_coupling(p) / unit, prec));
                        row.push_back(number_cell(renormalized_frequency(p) / unit, prec));
                        row.push_back(number_cell(dm / unit, prec));
                        row.push_back(number_cell(dp / unit, prec));
                        row.push_back(cs_cell);
                    } else {
                        const detail::MeanFieldReport rep = detail::solve_mean_field(p);
                        row.push_back(text_cell("ok"));
                        row.push_back(number_cell(rep.g_c / unit, prec));
                        row.push_back(number_cell(detail::mean_cos(rep.state), prec));
                        row.push_back(number_cell(detail::mean_sin(rep.state), prec));
                        row.push_back(number_cell(rep.state.rho_bar, prec));
                        row.push_back(number_cell(rep.energy_per_site / unit, prec));
                    }
                    ok[i] = true;
                } catch (const std::domain_error&) {
                    row.resize(2);
                    row.push_back(text_cell("domain_error"));
                    while (row.size() < t.columns.size()) row.push_back(empty_cell());
                } catch (const convergence_error&) {
                    row.resize(2);
                    row.push_back(text_cell("non_convergence"));
                    while (row.size() < t.columns.size()) row.push_back(empty_cell());
                } catch (const std::exception&) {
                    row.resize(2);
                    row.push_back(text_cell("error"));
                    while (row.size() < t.columns.size()) row.push_back(empty_cell());
                }
                t.rows[i] = std::move(row);
            },
            opt.workers);

        const std::string path =
            detail::output_path(cfg, opt, std::string("sweep.") + cfg.output.format);
        detail::emit_table(t, cfg, path);
        int succeeded = 0;
        for (bool b : ok) succeeded += b ? 1 : 0;
        std::cout << succeeded << "/" << sw.points << " points ok, wrote " << path << "\n";
        return succeeded > 0 ? 0 : 6;
    });
}

} // namespace cjt::io
