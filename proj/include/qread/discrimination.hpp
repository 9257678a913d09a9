#pragma once

#include <cmath>
#include <numbers>

#include "qread/errors.hpp"

namespace qread {

/// How a reported error probability was obtained.
enum class BoundKind {
    ExactHelstrom,  ///< exact minimum error probability
    QcbUpper,       ///< quantum Chernoff upper bound
};

/// Mean error probability of an equiprobable binary discrimination together
/// with the readout information 1 - H(p_bar) it implies.
struct DiscriminationResult {
    double p_bar;
    BoundKind kind;
    double info_bits;
};

/// Helstrom bound for two pure states of fidelity F:
/// p_bar = (1 - sqrt(1 - F)) / 2, written as F / (2 (1 + sqrt(1 - F))) so
/// nearly orthogonal pairs (F -> 0) keep full relative accuracy.
inline double helstrom_pure(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw DomainError("helstrom_pure: fidelity must lie in [0, 1]");
    }
    return fidelity / (2.0 * (1.0 + std::sqrt(1.0 - fidelity)));
}

/// Trace distance between two pure states of fidelity F: D = sqrt(1 - F).
inline double trace_distance_pure(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw DomainError("trace_distance_pure: fidelity must lie in [0, 1]");
    }
    return std::sqrt(1.0 - fidelity);
}

/// Quantum Chernoff upper bound on the mean error probability when one of
/// the two hypothesis states is pure: p_bar <= F / 2.
inline double qcb_from_fidelity(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw DomainError("qcb_from_fidelity: fidelity must lie in [0, 1]");
    }
    return 0.5 * fidelity;
}

/// Binary Shannon entropy in bits, H(0) = H(1) = 0.
/// The (1-p) term goes through log1p, which realises the small-p expansion
/// H(p) ~ p log2(1/p) + p/ln 2 without a branch.
inline double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("binary_entropy: probability must lie in [0, 1]");
    }
    if (p == 0.0 || p == 1.0) {
        return 0.0;
    }
    const double q = 1.0 - p;
    return -(p * std::log2(p) + q * std::log1p(-p) * std::numbers::log2e_v<double>);
}

/// Readout information 1 - H(p_bar) in bits for p_bar in [0, 1/2].
///
/// Near p_bar = 1/2 the direct difference loses everything, so for
/// x = 1 - 2 p_bar < 1/4 the series
///     1 - H((1-x)/2) = (1/ln 2) sum_{k>=1} x^{2k} / (2k (2k-1))
/// is summed instead; it converges geometrically in x^2.
inline double readout_information(double p_bar) {
    if (!(p_bar >= 0.0 && p_bar <= 0.5)) {
        throw DomainError("readout_information: p_bar must lie in [0, 1/2]");
    }
    const double x = 2.0 * (0.5 - p_bar);
    if (x < 0.25) {
        const double x2 = x * x;
        double pw = x2;
        double sum = 0.5 * x2;
        for (int k = 2; k < 40; ++k) {
            pw *= x2;
            const double term = pw / (2.0 * k * (2.0 * k - 1.0));
            sum += term;
            if (term < sum * 1e-17) {
                break;
            }
        }
        return sum * std::numbers::log2e_v<double>;
    }
    return 1.0 - binary_entropy(p_bar);
}

/// Tag a probability with its provenance and attach the implied information.
inline DiscriminationResult make_discrimination_result(double p_bar, BoundKind kind) {
    return {p_bar, kind, readout_information(p_bar)};
}

}  // namespace qread
