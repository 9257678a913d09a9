#pragma once

#include <cmath>
#include <string>

#include "qread/errors.hpp"
#include "qread/numeric.hpp"

namespace qread {

/// Covariance matrix of a symmetric two-mode Gaussian state in block
/// standard form,
///
///     [ a I   c Z ]
///     [ c Z   b I ],   I = diag(1, 1),  Z = diag(1, -1),
///
/// with the vacuum normalised to the identity (a = b = 1, c = 0).
///
/// Entries are carried in extended precision: the dual-route consistency
/// between the block determinant and the closed forms needs
/// |c^2 - (mu^2 - 1)| well below 1e-12 up to mu = 1e3, which a
/// double-rounded c cannot provide.
struct TwoModeCovariance {
    long double a;  ///< variance of the first (signal) mode
    long double b;  ///< variance of the second (reference) mode
    long double c;  ///< cross-mode correlation
};

/// Symplectic spectrum of a two-mode covariance matrix, nu_minus <= nu_plus.
/// Physical states have nu_minus >= 1; pure states have nu_minus = nu_plus = 1.
struct SymplecticSpectrum {
    double nu_minus;
    double nu_plus;
};

/// |nu - 1| tolerance under which a state counts as pure.
inline constexpr double kPurityTolerance = 1e-9;

/// Both symplectic eigenvalues of a block-form covariance matrix.
///
/// Uses nu^2 = (Delta -+ sqrt(Delta^2 - 4 det)) / 2 with
/// Delta = a^2 + b^2 - 2c^2 and det = (ab - c^2)^2, but evaluates every
/// difference with compensated products and factors the discriminant as
/// (a - b)^2 ((a+b)^2 - 4c^2) so that pure states come out at nu = 1 to
/// full precision instead of drowning in cancellation.
inline SymplecticSpectrum symplectic_eigenvalues(const TwoModeCovariance& cm) {
    const long double a = cm.a, b = cm.b, c = cm.c;
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)) || a <= 0.0L || b <= 0.0L) {
        throw DomainError("symplectic_eigenvalues: covariance matrix is not well-formed");
    }
    const long double y = num::diff_of_products(a, b, c, c);  // nu- * nu+
    const long double delta =
        num::diff_of_products(a, a, c, c) + num::diff_of_products(b, b, c, c);
    long double f = num::diff_of_products(a + b, a + b, 2.0L * c, 2.0L * c);
    if (f < 0.0L) {
        if (f < -1e-12L * (a + b) * (a + b)) {
            throw DegeneracyError("symplectic_eigenvalues: discriminant negative beyond tolerance");
        }
        f = 0.0L;
    }
    const long double s = fabsl(a - b) * sqrtl(f);  // sqrt(Delta^2 - 4 det)
    const long double hi = delta + s;               // 2 nu+^2
    if (!(hi > 0.0L)) {
        throw DegeneracyError("symplectic_eigenvalues: spectrum collapsed to zero");
    }
    return {static_cast<double>(fabsl(y) * sqrtl(2.0L / hi)),
            static_cast<double>(sqrtl(0.5L * hi))};
}

/// True when both symplectic eigenvalues are >= 1 - tol.
inline bool is_physical(const TwoModeCovariance& cm, double tol = kPurityTolerance) {
    const SymplecticSpectrum nu = symplectic_eigenvalues(cm);
    return nu.nu_minus >= 1.0 - tol;
}

/// True when both symplectic eigenvalues equal 1 within tol.
inline bool is_pure(const TwoModeCovariance& cm, double tol = kPurityTolerance) {
    const SymplecticSpectrum nu = symplectic_eigenvalues(cm);
    return std::abs(nu.nu_minus - 1.0) <= tol && std::abs(nu.nu_plus - 1.0) <= tol;
}

/// Squeeze parameter mu >= 1 of a two-mode squeezed vacuum together with the
/// mean signal photon number nbar = (mu - 1) / 2.
struct EprParameter {
    double mu;
    double nbar;

    static EprParameter from_mu(double mu) {
        if (!(mu >= 1.0) || !std::isfinite(mu)) {
            throw DomainError("EprParameter: squeeze parameter mu must be >= 1");
        }
        return {mu, 0.5 * (mu - 1.0)};
    }

    static EprParameter from_nbar(double nbar) {
        if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
            throw DomainError("EprParameter: mean photon number must be >= 0");
        }
        return {2.0 * nbar + 1.0, nbar};
    }
};

/// Covariance matrix of the two-mode squeezed vacuum with squeeze
/// parameter mu: a = b = mu, c = sqrt(mu^2 - 1). Pure for every mu >= 1.
inline TwoModeCovariance epr_covariance(double mu) {
    if (!(mu >= 1.0) || !std::isfinite(mu)) {
        throw DomainError("epr_covariance: squeeze parameter mu must be >= 1");
    }
    const long double m = mu;
    return {m, m, sqrtl((m - 1.0L) * (m + 1.0L))};
}

/// Action of a transmissivity-r pure-loss channel on the signal mode:
/// a' = r a + (1 - r), b' = b, c' = sqrt(r) c. The identity at r = 1 and
/// the vacuum limit at r = 0 are exact.
inline TwoModeCovariance apply_loss_to_signal(const TwoModeCovariance& cm, double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("apply_loss_to_signal: reflectivity must lie in [0, 1]");
    }
    if (!is_physical(cm)) {
        throw DomainError("apply_loss_to_signal: input covariance matrix is unphysical");
    }
    const long double rr = r;
    return {fmal(rr, cm.a - 1.0L, 1.0L), cm.b, sqrtl(rr) * cm.c};
}

/// Fidelity between a pure and an arbitrary zero-mean Gaussian state from
/// their covariance matrices: F = 4 / sqrt(det[V1 + V2]). In block form
/// det[V1 + V2] = (A D - B^2)^2 with A = a1 + a2, D = b1 + b2, B = c1 + c2,
/// and the compensated product keeps the result accurate even when A D and
/// B^2 agree to many digits (high squeezing, r near 1).
inline double fidelity_pure_mixed_det(const TwoModeCovariance& v_pure,
                                      const TwoModeCovariance& v_mixed) {
    if (!is_pure(v_pure)) {
        throw DomainError("fidelity_pure_mixed_det: first argument must be a pure state");
    }
    if (!is_physical(v_mixed)) {
        throw DomainError("fidelity_pure_mixed_det: second argument is unphysical");
    }
    const long double sum_a = v_pure.a + v_mixed.a;
    const long double sum_b = v_pure.b + v_mixed.b;
    const long double sum_c = v_pure.c + v_mixed.c;
    const long double x = num::diff_of_products(sum_a, sum_b, sum_c, sum_c);
    if (!(x > 0.0L)) {
        throw DegeneracyError("fidelity_pure_mixed_det: determinant not positive");
    }
    return static_cast<double>(std::min(4.0L / x, 1.0L));
}

/// Closed-form fidelity between the two-mode squeezed vacuum and its
/// signal-lossy image: F = (1 + nbar (1 - sqrt(r)))^-2.
inline double fidelity_epr_closed(double nbar, double r) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw DomainError("fidelity_epr_closed: mean photon number must be >= 0");
    }
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("fidelity_epr_closed: reflectivity must lie in [0, 1]");
    }
    const double t = std::fma(nbar, num::one_minus_sqrt(r), 1.0);
    return 1.0 / (t * t);
}

/// Log-fidelity exponent -nbar (1 - sqrt(r))^2 of the coherent-state pair.
/// Exposed so callers can form 1 - F through expm1 when the exponent is tiny.
inline double coherent_log_fidelity(double nbar, double r) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw DomainError("coherent_log_fidelity: mean photon number must be >= 0");
    }
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("coherent_log_fidelity: reflectivity must lie in [0, 1]");
    }
    const double s = num::one_minus_sqrt(r);
    return -nbar * s * s;
}

/// Fidelity |<sqrt(r) alpha | alpha>|^2 = exp(-nbar (1 - sqrt(r))^2) of the
/// coherent-state pair with nbar = |alpha|^2.
inline double fidelity_coherent(double nbar, double r) {
    return std::exp(coherent_log_fidelity(nbar, r));
}

}  // namespace qread
