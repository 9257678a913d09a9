#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qread/covariance.hpp"
#include "qread/errors.hpp"
#include "qread/fock.hpp"
#include "qread/readout.hpp"

namespace qread {

/// One comparison between a closed form and the brute-force oracle.
struct OracleCheckItem {
    std::string name;
    double closed_form;
    double oracle;
    double tolerance;
    bool passed;
};

struct OracleCheckConfig {
    double nbar = 1.0;
    double r = 0.5;
    int cutoff_override = 0;  ///< 0 selects the cutoff from the tail target
    bool force = false;       ///< lift the desk-scale guard nbar <= 5
    double tail_tol = fock::kDefaultTailTolerance;
    int max_auto_cutoff = 80;  ///< two-mode solves above this need an explicit cutoff
    double fidelity_tol = 1e-8;
    double coherent_tol = 1e-8;
    double moments_tol = 1e-8;
    double qcb_slack = 1e-9;
};

/// Everything the oracle run produced, ready for printing.
struct OracleCheckReport {
    double nbar;
    double r;
    int coherent_cutoff;
    int epr_cutoff;
    double coherent_tail;
    double epr_tail;
    double helstrom_error_bar;
    std::vector<OracleCheckItem> checks;
    bool all_passed;
};

/// Compare every closed form against the truncated-Fock oracle at one
/// operating point: coherent-pair Helstrom, EPR fidelity, QCB bound
/// direction, and the lossy-output covariance entries.
inline OracleCheckReport run_oracle_check(const OracleCheckConfig& cfg) {
    if (!(cfg.nbar >= 0.0) || !std::isfinite(cfg.nbar)) {
        throw DomainError("oracle check: mean photon number must be >= 0");
    }
    if (!(cfg.r >= 0.0 && cfg.r <= 1.0)) {
        throw DomainError("oracle check: reflectivity must lie in [0, 1]");
    }
    if (cfg.nbar > 5.0 && !cfg.force) {
        throw DomainError("oracle check: nbar > 5 is beyond desk scale; pass force to override");
    }

    OracleCheckReport report;
    report.nbar = cfg.nbar;
    report.r = cfg.r;
    const auto add = [&report](std::string name, double closed, double oracle, double tol) {
        const bool ok = std::abs(closed - oracle) <= tol;
        report.checks.push_back({std::move(name), closed, oracle, tol, ok});
    };
    const auto add_bound = [&report](std::string name, double bound, double oracle, double slack) {
        const bool ok = oracle <= bound + slack;
        report.checks.push_back({std::move(name), bound, oracle, slack, ok});
    };

    // Coherent pair (sqrt(r) alpha, alpha), one mode.
    const double alpha = std::sqrt(cfg.nbar);
    int n_coh = cfg.cutoff_override > 0 ? cfg.cutoff_override
                                        : std::max(2, fock::coherent_cutoff_for_tail(alpha, cfg.tail_tol));
    const auto c0 = fock::coherent_state_vector(std::sqrt(cfg.r) * alpha, n_coh, cfg.tail_tol);
    const auto c1 = fock::coherent_state_vector(alpha, n_coh, cfg.tail_tol);
    report.coherent_cutoff = n_coh;
    report.coherent_tail = std::max(c0.tail, c1.tail);
    const double overlap = std::norm(c1.amplitudes.dot(c0.amplitudes)) /
                           (c0.amplitudes.squaredNorm() * c1.amplitudes.squaredNorm());
    add("coherent fidelity: closed form vs truncated overlap", fidelity_coherent(cfg.nbar, cfg.r),
        overlap, cfg.fidelity_tol);
    const auto coh = fock::helstrom_exact(fock::pure_density(c0), fock::pure_density(c1), 0.5);
    add("coherent Helstrom: closed form vs exact", classical_error_prob(cfg.nbar, cfg.r), coh.p_bar,
        cfg.coherent_tol);

    // EPR transmitter, two modes.
    const double mu = 2.0 * cfg.nbar + 1.0;
    int n_epr = cfg.cutoff_override > 0 ? cfg.cutoff_override
                                        : std::max(2, fock::tmsv_cutoff_for_tail(mu, cfg.tail_tol));
    if (cfg.cutoff_override == 0 && n_epr > cfg.max_auto_cutoff) {
        const double reachable = std::pow((mu - 1.0) / (mu + 1.0), cfg.max_auto_cutoff);
        throw CutoffError("oracle check: tail target needs cutoff " + std::to_string(n_epr) +
                          " (dimension " + std::to_string(n_epr * n_epr) +
                          "); the auto limit " + std::to_string(cfg.max_auto_cutoff) +
                          " only reaches tail " + fock::detail::sci(reachable) +
                          " - pass an explicit cutoff to proceed");
    }
    const auto psi = fock::tmsv_state_vector(mu, n_epr, cfg.tail_tol);
    report.epr_cutoff = n_epr;
    report.epr_tail = psi.tail;
    const auto sigma0 = fock::apply_loss_to_signal_fock(psi, cfg.r, -1, cfg.tail_tol);
    add("EPR fidelity: closed form vs <psi|sigma0|psi>", fidelity_epr_closed(cfg.nbar, cfg.r),
        fock::fidelity_with_density(psi, sigma0), cfg.fidelity_tol);
    const auto epr = fock::helstrom_exact(sigma0, fock::pure_density(psi), 0.5);
    report.helstrom_error_bar = epr.error_bar;
    add_bound("EPR error probability: QCB upper bound vs exact",
              quantum_error_prob_qcb(cfg.nbar, cfg.r), epr.p_bar, cfg.qcb_slack);
    const auto moments = fock::moments_from_density(sigma0, cfg.moments_tol);
    const TwoModeCovariance expected = apply_loss_to_signal(epr_covariance(mu), cfg.r);
    add("lossy output variance a", expected.a, moments.cm.a, cfg.moments_tol);
    add("lossy output variance b", expected.b, moments.cm.b, cfg.moments_tol);
    add("lossy output correlation c", expected.c, moments.cm.c, cfg.moments_tol);

    report.all_passed = std::all_of(report.checks.begin(), report.checks.end(),
                                    [](const OracleCheckItem& c) { return c.passed; });
    return report;
}

}  // namespace qread
