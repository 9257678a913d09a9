#pragma once

#include <cmath>
#include <string>

#include "qread/errors.hpp"
#include "qread/readout.hpp"

namespace qread {

/// A secure-cell design: photon budget nbar_max per cell and gap coefficient
/// K fixing the reflectivity through 1 - r = K / nbar_max.
struct DesignSpec {
    double nbar_max;
    double K;

    void validate() const {
        if (!(nbar_max >= 1.0) || !std::isfinite(nbar_max)) {
            throw DomainError("DesignSpec: photon budget must be >= 1");
        }
        if (!(K > 0.0) || !std::isfinite(K)) {
            throw DomainError("DesignSpec: gap coefficient K must be > 0");
        }
        if (!(K < nbar_max)) {
            throw DesignInfeasibleError("DesignSpec: K >= nbar_max leaves no reflectivity in (0, 1)");
        }
    }
};

/// Everything a designed cell promises: its reflectivity, the classical
/// information cap at full budget, the quantum information and gain at full
/// budget, and the large-budget limit of the quantum information at this K.
struct DesignReport {
    double r;
    double info_classical_cap;
    double info_quantum;
    double delta;
    double asymptotic_quantum;
};

/// Reflectivity r = 1 - K / nbar_max implied by a budget and gap coefficient.
inline double reflectivity_for_budget(double nbar_max, double K) {
    if (!(K > 0.0) || !std::isfinite(K)) {
        throw DomainError("reflectivity_for_budget: gap coefficient K must be > 0");
    }
    if (!(nbar_max > 0.0) || !std::isfinite(nbar_max)) {
        throw DomainError("reflectivity_for_budget: photon budget must be > 0");
    }
    if (!(K < nbar_max)) {
        throw DesignInfeasibleError("reflectivity_for_budget: K >= nbar_max gives r <= 0");
    }
    return 1.0 - K / nbar_max;
}

/// Large-budget limit of the quantum information under 1 - r = K / nbar:
/// nbar (1 - sqrt r) -> K/2, so the limit is 1 - H((1 + K/2)^-2 / 2).
inline double asymptotic_quantum_info(double K) {
    if (!(K > 0.0) || !std::isfinite(K)) {
        throw DomainError("asymptotic_quantum_info: gap coefficient K must be > 0");
    }
    const double t = 1.0 + 0.5 * K;
    return readout_information(0.5 / (t * t));
}

/// Leading form of the classical information under 1 - r = K / nbar:
/// K^2 / (nbar ln 256). Vanishes as the budget grows.
inline double asymptotic_classical_info(double nbar, double K) {
    if (!(nbar > 0.0) || !std::isfinite(nbar)) {
        throw DomainError("asymptotic_classical_info: mean photon number must be > 0");
    }
    if (!(K > 0.0) || !std::isfinite(K)) {
        throw DomainError("asymptotic_classical_info: gap coefficient K must be > 0");
    }
    return K * K / (nbar * kLn256);
}

/// Quantum information of the designed cell read at budget nbar.
inline double design_rule_quantum_info(double nbar, double K) {
    return info_quantum(nbar, reflectivity_for_budget(nbar, K));
}

/// Evaluate a design end to end. The classical cap is the maximum of
/// info_classical over budgets up to nbar_max, which by monotonicity in nbar
/// is its value at nbar_max itself.
inline DesignReport design_report(const DesignSpec& spec) {
    spec.validate();
    const double r = reflectivity_for_budget(spec.nbar_max, spec.K);
    const double cap = info_classical(spec.nbar_max, r);
    const double quantum = info_quantum(spec.nbar_max, r);
    return {r, cap, quantum, quantum - cap, asymptotic_quantum_info(spec.K)};
}

/// Largest budget whose designed cell still grants the quantum reader at
/// least target_bits.
///
/// Under 1 - r = K / nbar the quantum information decreases monotonically
/// in nbar from its value at the bracket floor nbar = K + 1 down to
/// asymptotic_quantum_info(K), so feasible targets lie strictly between
/// those two numbers and the answer is the upper boundary of the feasible
/// budget interval. Bisection to relative width 1e-9, bracket [K+1, 1e12],
/// with a monotonicity precheck on the bracket endpoints.
inline double budget_for_target_quantum_info(double target_bits, double K) {
    if (!(K > 0.0) || !std::isfinite(K)) {
        throw DomainError("budget_for_target_quantum_info: gap coefficient K must be > 0");
    }
    if (!(target_bits > 0.0 && target_bits < 1.0)) {
        throw DomainError("budget_for_target_quantum_info: target must lie in (0, 1) bits");
    }
    double lo = K + 1.0;
    double hi = 1e12;
    const double f_lo = design_rule_quantum_info(lo, K);
    const double f_hi = design_rule_quantum_info(hi, K);
    if (!(f_lo > f_hi)) {
        throw DegeneracyError("budget_for_target_quantum_info: monotonicity precheck failed");
    }
    const double limit = asymptotic_quantum_info(K);
    if (!(target_bits > limit) || !(target_bits > f_hi)) {
        throw UnreachableTargetError(
            "budget_for_target_quantum_info: target " + std::to_string(target_bits) +
            " is at or below the large-budget limit " + std::to_string(limit) +
            "; every feasible budget attains it, so no largest budget exists");
    }
    if (!(target_bits <= f_lo)) {
        throw UnreachableTargetError(
            "budget_for_target_quantum_info: target " + std::to_string(target_bits) +
            " exceeds the " + std::to_string(f_lo) + " bits available at the minimum budget");
    }
    while (hi - lo > 1e-9 * lo) {
        const double mid = 0.5 * (lo + hi);
        if (design_rule_quantum_info(mid, K) >= target_bits) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace qread
