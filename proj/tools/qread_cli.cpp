// Command-line front end: figure-data sweeps as CSV, secure-memory design
// reports, and brute-force oracle checks of the closed forms.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qread/qread.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitIo = 3;
constexpr int kExitOracle = 4;

struct CommonOpts {
    std::string out_path;
    int precision = 12;
};

// Streams the writer either to stdout or to --out, and maps write failures
// to the I/O exit code.
template <typename Writer>
int emit(const CommonOpts& opts, Writer&& writer) {
    if (opts.out_path.empty()) {
        writer(std::cout);
        std::cout.flush();
        if (!std::cout) {
            std::cerr << "error: writing to standard output failed\n";
            return kExitIo;
        }
        return kExitOk;
    }
    std::ofstream file(opts.out_path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open '" << opts.out_path << "' for writing\n";
        return kExitIo;
    }
    writer(file);
    file.flush();
    if (!file) {
        std::cerr << "error: writing to '" << opts.out_path << "' failed\n";
        return kExitIo;
    }
    return kExitOk;
}

void add_grid_flags(CLI::App* cmd, qread::sweep::SweepConfig& cfg, std::string& scale,
                    bool with_r = false) {
    cmd->add_option("--n-min", cfg.n_min, "lower end of the photon-number grid");
    cmd->add_option("--n-max", cfg.n_max, "upper end of the photon-number grid");
    cmd->add_option("--n-steps", cfg.n_steps, "photon-number grid size");
    cmd->add_option("--n-scale", scale, "photon-number grid spacing: linear or log")
        ->check(CLI::IsMember({"linear", "log"}));
    if (with_r) {
        cmd->add_option("--r-min", cfg.r_min, "lower end of the reflectivity grid");
        cmd->add_option("--r-max", cfg.r_max, "upper end of the reflectivity grid");
        cmd->add_option("--r-steps", cfg.r_steps, "reflectivity grid size");
    }
}

qread::sweep::GridScale parse_scale(const std::string& s) {
    return s == "linear" ? qread::sweep::GridScale::Linear : qread::sweep::GridScale::Log;
}

int run_design(double nbar_max, double K, const CommonOpts& opts) {
    const qread::DesignReport report = qread::design_report({nbar_max, K});
    const auto fmt = [&opts](double v) { return qread::sweep::format_value(v, opts.precision); };
    std::cout << "secure-memory design for photon budget " << fmt(nbar_max) << ", gap coefficient "
              << fmt(K) << "\n"
              << "  reflectivity r            = " << fmt(report.r) << "\n"
              << "  classical information cap = " << fmt(report.info_classical_cap) << " bits\n"
              << "  quantum information       = " << fmt(report.info_quantum) << " bits\n"
              << "  gain delta                = " << fmt(report.delta) << " bits\n"
              << "  large-budget quantum info = " << fmt(report.asymptotic_quantum) << " bits\n";
    if (!opts.out_path.empty()) {
        nlohmann::json j{{"nbar_max", nbar_max},
                         {"K", K},
                         {"r", report.r},
                         {"info_classical_cap", report.info_classical_cap},
                         {"info_quantum", report.info_quantum},
                         {"delta", report.delta},
                         {"asymptotic_quantum", report.asymptotic_quantum}};
        std::ofstream file(opts.out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open '" << opts.out_path << "' for writing\n";
            return kExitIo;
        }
        file << j.dump(2) << '\n';
        file.flush();
        if (!file) {
            std::cerr << "error: writing to '" << opts.out_path << "' failed\n";
            return kExitIo;
        }
    }
    return kExitOk;
}

int run_oracle_check(const qread::OracleCheckConfig& cfg, int precision) {
    const qread::OracleCheckReport report = qread::run_oracle_check(cfg);
    const auto fmt = [precision](double v) { return qread::sweep::format_value(v, precision); };
    std::cout << "oracle check at n_bar = " << fmt(report.nbar) << ", r = " << fmt(report.r) << "\n"
              << "  coherent cutoff " << report.coherent_cutoff << " (tail "
              << fmt(report.coherent_tail) << "), EPR cutoff " << report.epr_cutoff << " (tail "
              << fmt(report.epr_tail) << ")\n"
              << "  exact-Helstrom error bar " << fmt(report.helstrom_error_bar) << "\n";
    for (const qread::OracleCheckItem& item : report.checks) {
        std::cout << "  [" << (item.passed ? "PASS" : "FAIL") << "] " << item.name
                  << ": closed/bound = " << fmt(item.closed_form)
                  << ", oracle = " << fmt(item.oracle) << ", tolerance = " << fmt(item.tolerance)
                  << "\n";
    }
    if (!report.all_passed) {
        std::cerr << "error: oracle check failed tolerance\n";
        return kExitOracle;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-reading readout bounds, secure-memory design, and oracle checks"};
    app.require_subcommand(1);

    // sweep-delta
    auto* sweep_cmd = app.add_subcommand(
        "sweep-delta", "CSV map of the information gain delta(n_bar, r) over a grid");
    qread::sweep::SweepConfig sweep_cfg;
    std::string sweep_scale = "log";
    CommonOpts sweep_opts;
    add_grid_flags(sweep_cmd, sweep_cfg, sweep_scale, true);
    sweep_cmd->add_option("--out", sweep_opts.out_path, "output CSV path (default stdout)");
    sweep_cmd->add_option("--precision", sweep_cfg.precision, "significant digits for floats");

    // condition-curves
    auto* cond_cmd = app.add_subcommand(
        "condition-curves",
        "CSV of info_classical and info_quantum along the design rule 1 - r = K / n_bar");
    qread::sweep::SweepConfig cond_cfg;
    cond_cfg.n_min = -1.0;  // resolved from K below when not given
    cond_cfg.n_max = 1e6;
    std::string cond_scale = "log";
    CommonOpts cond_opts;
    double cond_K = 1.0;
    cond_cmd->add_option("--K", cond_K, "gap coefficient");
    add_grid_flags(cond_cmd, cond_cfg, cond_scale);
    cond_cmd->add_option("--out", cond_opts.out_path, "output CSV path (default stdout)");
    cond_cmd->add_option("--precision", cond_cfg.precision, "significant digits for floats");

    // classical-cap
    auto* cap_cmd = app.add_subcommand(
        "classical-cap", "CSV of info_classical for budgets up to nbar_max at r = 1 - 1/nbar_max");
    qread::sweep::SweepConfig cap_cfg;
    cap_cfg.n_max = -1.0;  // resolved from nbar_max below when not given
    std::string cap_scale = "log";
    CommonOpts cap_opts;
    double cap_nbar_max = 1000.0;
    cap_cmd->add_option("--nbar-max", cap_nbar_max, "photon budget per cell");
    add_grid_flags(cap_cmd, cap_cfg, cap_scale);
    cap_cmd->add_option("--out", cap_opts.out_path, "output CSV path (default stdout)");
    cap_cmd->add_option("--precision", cap_cfg.precision, "significant digits for floats");

    // design
    auto* design_cmd =
        app.add_subcommand("design", "evaluate a secure-memory design for a photon budget");
    double design_nbar_max = 1000.0;
    double design_K = 1.0;
    CommonOpts design_opts;
    design_cmd->add_option("--nbar-max", design_nbar_max, "photon budget per cell")->required();
    design_cmd->add_option("--K", design_K, "gap coefficient");
    design_cmd->add_option("--out", design_opts.out_path, "also write the report as JSON");
    design_cmd->add_option("--precision", design_opts.precision, "significant digits for floats");

    // oracle-check
    auto* oracle_cmd = app.add_subcommand(
        "oracle-check", "compare the closed forms against the truncated-Fock oracle");
    qread::OracleCheckConfig oracle_cfg;
    int oracle_precision = 12;
    oracle_cmd->add_option("nbar", oracle_cfg.nbar, "mean signal photons per cell")->required();
    oracle_cmd->add_option("r", oracle_cfg.r, "bit-0 reflectivity")->required();
    oracle_cmd->add_option("--cutoff", oracle_cfg.cutoff_override,
                           "override the per-mode Fock cutoff");
    oracle_cmd->add_flag("--force", oracle_cfg.force, "lift the desk-scale guard n_bar <= 5");
    oracle_cmd->add_option("--precision", oracle_precision, "significant digits for floats");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitDomain;
    }

    try {
        if (sweep_cmd->parsed()) {
            sweep_cfg.n_scale = parse_scale(sweep_scale);
            return emit(sweep_opts,
                        [&](std::ostream& os) { qread::sweep::write_sweep_delta(os, sweep_cfg); });
        }
        if (cond_cmd->parsed()) {
            cond_cfg.n_scale = parse_scale(cond_scale);
            if (cond_cfg.n_min < 0.0) {
                cond_cfg.n_min = 2.0 * cond_K;
            }
            return emit(cond_opts, [&](std::ostream& os) {
                qread::sweep::write_condition_curves(os, cond_K, cond_cfg);
            });
        }
        if (cap_cmd->parsed()) {
            cap_cfg.n_scale = parse_scale(cap_scale);
            if (cap_cfg.n_max < 0.0) {
                cap_cfg.n_max = cap_nbar_max;
            }
            return emit(cap_opts, [&](std::ostream& os) {
                qread::sweep::write_classical_cap(os, cap_nbar_max, cap_cfg);
            });
        }
        if (design_cmd->parsed()) {
            return run_design(design_nbar_max, design_K, design_opts);
        }
        if (oracle_cmd->parsed()) {
            return run_oracle_check(oracle_cfg, oracle_precision);
        }
    } catch (const qread::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const qread::CutoffError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const qread::ConfigurationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const qread::StructureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const qread::DegeneracyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
