#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "qread/errors.hpp"
#include "qread/readout.hpp"
#include "qread/secure_design.hpp"

namespace qread::sweep {

enum class GridScale { Linear, Log };

/// Grid and formatting parameters for the CSV sweeps. Defaults reproduce the
/// information-gain map over the high-reflectivity band: 200 log-spaced
/// photon numbers in [1, 5e4] against 200 linear reflectivities in
/// [0.99, 0.99999].
struct SweepConfig {
    double n_min = 1.0;
    double n_max = 5e4;
    int n_steps = 200;
    GridScale n_scale = GridScale::Log;
    double r_min = 0.99;
    double r_max = 0.99999;
    int r_steps = 200;
    int precision = 12;  ///< significant digits for emitted floats

    void validate() const {
        if (!std::isfinite(n_min) || !std::isfinite(n_max) || !std::isfinite(r_min) ||
            !std::isfinite(r_max)) {
            throw DomainError("SweepConfig: ranges must be finite");
        }
        if (!(n_min >= 0.0) || !(n_min <= n_max)) {
            throw DomainError("SweepConfig: need 0 <= n_min <= n_max");
        }
        if (!(r_min >= 0.0 && r_max <= 1.0 && r_min <= r_max)) {
            throw DomainError("SweepConfig: reflectivity range must lie in [0, 1]");
        }
        if (n_steps < 2 && !(n_steps == 1 && n_min == n_max)) {
            throw DomainError("SweepConfig: n_steps must be >= 2 (or 1 for a point grid)");
        }
        if (r_steps < 2 && !(r_steps == 1 && r_min == r_max)) {
            throw DomainError("SweepConfig: r_steps must be >= 2 (or 1 for a point grid)");
        }
        if (n_scale == GridScale::Log && !(n_min > 0.0)) {
            throw DomainError("SweepConfig: log scale needs n_min > 0");
        }
        if (precision < 6 || precision > 17) {
            throw DomainError("SweepConfig: precision must lie in [6, 17]");
        }
    }
};

/// Evenly spaced grid with exact endpoints; log scale spaces the logarithms.
inline std::vector<double> make_grid(double lo, double hi, int steps, GridScale scale) {
    std::vector<double> grid(static_cast<std::size_t>(steps));
    if (steps == 1) {
        grid[0] = lo;
        return grid;
    }
    grid.front() = lo;
    grid.back() = hi;
    if (scale == GridScale::Log) {
        const double llo = std::log(lo), lhi = std::log(hi);
        for (int i = 1; i + 1 < steps; ++i) {
            grid[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (steps - 1));
        }
    } else {
        for (int i = 1; i + 1 < steps; ++i) {
            grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
        }
    }
    return grid;
}

/// Locale-independent decimal rendering with the given number of significant
/// digits. Refuses non-finite values: every emitted cell must be a number.
inline std::string format_value(double v, int precision) {
    if (!std::isfinite(v)) {
        throw DomainError("format_value: refusing to emit a non-finite value");
    }
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
    if (res.ec != std::errc{}) {
        throw DomainError("format_value: conversion failed");
    }
    return std::string(buf, res.ptr);
}

/// Information gain Delta(n_bar, r) over the full grid, r-major row order.
/// Columns: n_bar, r, delta.
inline void write_sweep_delta(std::ostream& out, const SweepConfig& cfg) {
    cfg.validate();
    const auto n_grid = make_grid(cfg.n_min, cfg.n_max, cfg.n_steps, cfg.n_scale);
    const auto r_grid = make_grid(cfg.r_min, cfg.r_max, cfg.r_steps, GridScale::Linear);
    out << "n_bar,r,delta\n";
    std::string line;
    for (const double r : r_grid) {
        for (const double n : n_grid) {
            line = format_value(n, cfg.precision);
            line += ',';
            line += format_value(r, cfg.precision);
            line += ',';
            line += format_value(info_gain_delta(n, r), cfg.precision);
            line += '\n';
            out << line;
        }
    }
}

/// Both information curves along the design rule 1 - r = K / n_bar.
/// Columns: n_bar, info_classical, info_quantum. Every grid point must
/// exceed K; offending grids are rejected before any output.
inline void write_condition_curves(std::ostream& out, double K, const SweepConfig& cfg) {
    cfg.validate();
    if (!(K > 0.0) || !std::isfinite(K)) {
        throw DomainError("condition curves: gap coefficient K must be > 0");
    }
    const auto n_grid = make_grid(cfg.n_min, cfg.n_max, cfg.n_steps, cfg.n_scale);
    for (const double n : n_grid) {
        if (!(n > K)) {
            throw DomainError("condition curves: every n_bar in the grid must exceed K");
        }
    }
    out << "n_bar,info_classical,info_quantum\n";
    std::string line;
    for (const double n : n_grid) {
        const double r = reflectivity_for_budget(n, K);
        line = format_value(n, cfg.precision);
        line += ',';
        line += format_value(info_classical(n, r), cfg.precision);
        line += ',';
        line += format_value(info_quantum(n, r), cfg.precision);
        line += '\n';
        out << line;
    }
}

/// Classical information at the fixed design reflectivity 1 - 1/nbar_max for
/// budgets up to nbar_max. Columns: n_bar, info_classical.
inline void write_classical_cap(std::ostream& out, double nbar_max, const SweepConfig& cfg) {
    cfg.validate();
    if (!(nbar_max > 1.0) || !std::isfinite(nbar_max)) {
        throw DomainError("classical cap: nbar_max must be > 1");
    }
    const double r = reflectivity_for_budget(nbar_max, 1.0);
    const auto n_grid = make_grid(cfg.n_min, cfg.n_max, cfg.n_steps, cfg.n_scale);
    out << "n_bar,info_classical\n";
    std::string line;
    for (const double n : n_grid) {
        line = format_value(n, cfg.precision);
        line += ',';
        line += format_value(info_classical(n, r), cfg.precision);
        line += '\n';
        out << line;
    }
}

}  // namespace qread::sweep
