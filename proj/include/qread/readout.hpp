#pragma once

#include <cmath>
#include <numbers>

#include "qread/covariance.hpp"
#include "qread/discrimination.hpp"
#include "qread/errors.hpp"

namespace qread {

enum class TransmitterKind {
    Coherent,  ///< single-mode coherent state, nbar = |alpha|^2
    Epr,       ///< two-mode squeezed vacuum, signal + retained reference
};

/// A transmitter irradiating nbar mean signal photons per cell.
struct TransmitterSpec {
    TransmitterKind kind;
    double nbar;

    void validate() const {
        if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
            throw DomainError("TransmitterSpec: mean photon number must be >= 0");
        }
    }
};

/// Memory cell storing bit 0 as reflectivity r0 < 1 and bit 1 as unit
/// reflectivity, read with equiprobable priors.
struct MemoryCellSpec {
    double r0;
    double r1 = 1.0;

    void validate() const {
        if (!(r0 >= 0.0 && r0 < 1.0)) {
            throw DomainError("MemoryCellSpec: r0 must lie in [0, 1)");
        }
        if (r1 != 1.0) {
            throw DomainError("MemoryCellSpec: r1 is fixed to 1");
        }
    }
};

inline constexpr double kLn4 = 2.0 * std::numbers::ln2_v<double>;
inline constexpr double kLn256 = 8.0 * std::numbers::ln2_v<double>;

/// Exact Helstrom error probability of the coherent-state reader:
/// p = (1 - sqrt(1 - e^x)) / 2 with x = -nbar (1 - sqrt r)^2.
/// expm1 keeps 1 - F accurate when the exponent is tiny, and the
/// rationalised form keeps p accurate when F itself is tiny.
inline double classical_error_prob(double nbar, double r) {
    const double x = coherent_log_fidelity(nbar, r);
    const double f = std::exp(x);
    const double one_minus_f = -std::expm1(x);
    return f / (2.0 * (1.0 + std::sqrt(one_minus_f)));
}

/// Chernoff upper bound on the EPR reader's error probability:
/// p = (1 + nbar (1 - sqrt r))^-2 / 2.
inline double quantum_error_prob_qcb(double nbar, double r) {
    return 0.5 * fidelity_epr_closed(nbar, r);
}

/// Bits per cell read by the coherent transmitter.
inline double info_classical(double nbar, double r) {
    return readout_information(classical_error_prob(nbar, r));
}

/// Bits per cell guaranteed to the EPR transmitter (Chernoff-derived, hence
/// a lower bound on its true performance).
inline double info_quantum(double nbar, double r) {
    return readout_information(quantum_error_prob_qcb(nbar, r));
}

/// Information gain of the EPR reader over the coherent reader. May be
/// negative at low reflectivity, where the Chernoff-derived bound is loose;
/// no clamping is applied.
inline double info_gain_delta(double nbar, double r) {
    return info_quantum(nbar, r) - info_classical(nbar, r);
}

/// Leading order of info_classical in (1 - r): nbar (1 - r)^2 / ln 256.
inline double info_classical_leading(double nbar, double r) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw DomainError("info_classical_leading: mean photon number must be >= 0");
    }
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("info_classical_leading: reflectivity must lie in [0, 1]");
    }
    const double e = 1.0 - r;
    return nbar * e * e / kLn256;
}

/// Leading order of info_quantum in (1 - r): nbar^2 (1 - r)^2 / ln 4.
/// The ratio to info_classical_leading is exactly 4 nbar.
inline double info_quantum_leading(double nbar, double r) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw DomainError("info_quantum_leading: mean photon number must be >= 0");
    }
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("info_quantum_leading: reflectivity must lie in [0, 1]");
    }
    const double e = 1.0 - r;
    return nbar * nbar * e * e / kLn4;
}

/// Full readout figure of one transmitter against one cell, tagged with the
/// provenance of the bound.
inline DiscriminationResult discriminate(const TransmitterSpec& tx, const MemoryCellSpec& cell) {
    tx.validate();
    cell.validate();
    if (tx.kind == TransmitterKind::Coherent) {
        return make_discrimination_result(classical_error_prob(tx.nbar, cell.r0),
                                          BoundKind::ExactHelstrom);
    }
    return make_discrimination_result(quantum_error_prob_qcb(tx.nbar, cell.r0),
                                      BoundKind::QcbUpper);
}

}  // namespace qread
