#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include "qread/covariance.hpp"
#include "qread/errors.hpp"

namespace qread::fock {

using Complex = std::complex<double>;

namespace detail {

/// Scientific-notation rendering for error messages; std::to_string flattens
/// small tails to 0.000000.
inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

}  // namespace detail

/// Default bound on the probability mass a truncation may discard.
inline constexpr double kDefaultTailTolerance = 1e-12;

/// Eigenvalues below this magnitude are treated as exact zeros when a trace
/// norm is accumulated; they sit under the rounding floor of the dense
/// eigensolver for the matrix sizes handled here.
inline constexpr double kEigenvalueFloor = 1e-14;

/// Pure state on a truncated Fock basis. Two-mode amplitudes use the
/// composite index n_signal * cutoff + n_reference.
struct FockVector {
    Eigen::VectorXcd amplitudes;
    int cutoff = 0;  ///< per-mode photon-number truncation (exclusive)
    int modes = 1;
    double tail = 0.0;  ///< probability mass beyond the truncation
};

/// Density matrix on a truncated Fock basis, same index convention.
struct FockDensity {
    Eigen::MatrixXcd matrix;
    int cutoff = 0;
    int modes = 1;
    double tail = 0.0;

    Eigen::Index dim() const { return matrix.rows(); }
};

/// Exact Helstrom error probability on the truncated space plus the
/// truncation-driven error bar (sum of the two discarded tails).
struct HelstromResult {
    double p_bar;
    double error_bar;
};

/// Block-form covariance estimate recovered from a two-mode density matrix,
/// with the largest residual against the (aI, bI, cZ) structure.
struct MomentsResult {
    TwoModeCovariance cm;
    double residual;
};

/// Smallest cutoff whose Poisson tail for a coherent state of amplitude
/// alpha stays below tol.
inline int coherent_cutoff_for_tail(double alpha, double tol) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw DomainError("coherent_cutoff_for_tail: amplitude must be >= 0");
    }
    if (!(tol > 0.0)) {
        throw DomainError("coherent_cutoff_for_tail: tolerance must be > 0");
    }
    const double lambda = alpha * alpha;
    if (lambda == 0.0) {
        return 1;
    }
    // March the Poisson pmf upward until the geometric remainder bound
    // t_n / (1 - lambda/(n+1)) drops below tol.
    double t = std::exp(-lambda);
    int n = 0;
    for (;;) {
        if (n > static_cast<int>(lambda) && t / (1.0 - lambda / (n + 1.0)) < tol) {
            return n;
        }
        ++n;
        t *= lambda / n;
        if (n > 100000) {
            throw DomainError("coherent_cutoff_for_tail: amplitude too large");
        }
    }
}

/// Smallest cutoff whose geometric tail lambda^{2N} for the two-mode
/// squeezed vacuum of squeeze parameter mu stays below tol.
inline int tmsv_cutoff_for_tail(double mu, double tol) {
    if (!(mu >= 1.0) || !std::isfinite(mu)) {
        throw DomainError("tmsv_cutoff_for_tail: mu must be >= 1");
    }
    if (!(tol > 0.0)) {
        throw DomainError("tmsv_cutoff_for_tail: tolerance must be > 0");
    }
    const double lam2 = (mu - 1.0) / (mu + 1.0);
    if (lam2 == 0.0) {
        return 1;
    }
    const int n = static_cast<int>(std::ceil(std::log(tol) / std::log(lam2)));
    return std::max(n, 1);
}

/// Coherent state |alpha> (alpha real, >= 0) truncated at `cutoff` photons:
/// c_n = e^{-alpha^2/2} alpha^n / sqrt(n!). The tail is accumulated from the
/// continued series rather than by subtraction, so values far below 1e-16
/// are still meaningful.
inline FockVector coherent_state_vector(double alpha, int cutoff,
                                        double tail_tol = kDefaultTailTolerance) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw DomainError("coherent_state_vector: amplitude must be >= 0");
    }
    if (cutoff < 1) {
        throw DomainError("coherent_state_vector: cutoff must be >= 1");
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(cutoff);
    double c = std::exp(-0.5 * alpha * alpha);
    amps(0) = c;
    for (int n = 1; n < cutoff; ++n) {
        c *= alpha / std::sqrt(static_cast<double>(n));
        amps(n) = c;
    }
    // tail = sum_{n >= cutoff} t_n with t_n = e^{-a^2} a^{2n} / n!
    double tail = 0.0;
    double t = c * c;
    for (int n = cutoff; n < cutoff + 2000; ++n) {
        t *= alpha * alpha / n;
        tail += t;
        if (t < tail_tol * 1e-6 && n > alpha * alpha) {
            break;
        }
    }
    if (tail > tail_tol) {
        throw CutoffError("coherent_state_vector: cutoff " + std::to_string(cutoff) +
                          " leaves tail " + detail::sci(tail) + " above tolerance");
    }
    return {std::move(amps), cutoff, 1, tail};
}

/// Two-mode squeezed vacuum in Schmidt form, amplitudes
/// sqrt(1 - lambda^2) lambda^n on |n, n> with lambda = sqrt((mu-1)/(mu+1)).
/// The discarded tail is exactly lambda^{2 cutoff}.
inline FockVector tmsv_state_vector(double mu, int cutoff,
                                    double tail_tol = kDefaultTailTolerance) {
    if (!(mu >= 1.0) || !std::isfinite(mu)) {
        throw DomainError("tmsv_state_vector: mu must be >= 1");
    }
    if (cutoff < 1) {
        throw DomainError("tmsv_state_vector: cutoff must be >= 1");
    }
    const double lam2 = (mu - 1.0) / (mu + 1.0);
    const double lam = std::sqrt(lam2);
    const double head = std::sqrt(1.0 - lam2);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cutoff) * cutoff);
    double d = head;
    for (int n = 0; n < cutoff; ++n) {
        amps(static_cast<Eigen::Index>(n) * cutoff + n) = d;
        d *= lam;
    }
    const double tail = lam2 == 0.0 ? 0.0 : std::pow(lam2, cutoff);
    if (tail > tail_tol) {
        throw CutoffError("tmsv_state_vector: cutoff " + std::to_string(cutoff) +
                          " leaves tail " + detail::sci(tail) + " above tolerance");
    }
    return {std::move(amps), cutoff, 2, tail};
}

/// Kraus operators of the transmissivity-r pure-loss channel on a truncated
/// basis: K_l maps |n> to sqrt(C(n,l) (1-r)^l r^{n-l}) |n-l>. Operators that
/// vanish identically on the basis are dropped. Completeness
/// sum_l K_l^dag K_l = 1 holds exactly on photon numbers n <= max_loss and
/// is verified there to 1e-12.
inline std::vector<Eigen::MatrixXd> loss_channel_kraus(double r, int max_loss, int cutoff) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("loss_channel_kraus: reflectivity must lie in [0, 1]");
    }
    if (cutoff < 1 || max_loss < 0 || max_loss > cutoff) {
        throw DomainError("loss_channel_kraus: need 0 <= max_loss <= cutoff and cutoff >= 1");
    }
    const int top = std::min(max_loss, cutoff - 1);
    std::vector<Eigen::MatrixXd> ops;
    ops.reserve(top + 1);
    for (int l = 0; l <= top; ++l) {
        ops.emplace_back(Eigen::MatrixXd::Zero(cutoff, cutoff));
    }
    // ln n! table; keeps every weight sqrt(C(n,l) (1-r)^l r^{n-l}) accurate
    // even where the direct product recurrence would underflow.
    std::vector<double> lfact(cutoff + 1, 0.0);
    for (int k = 2; k <= cutoff; ++k) {
        lfact[k] = lfact[k - 1] + std::log(static_cast<double>(k));
    }
    const double lr = r > 0.0 ? std::log(r) : 0.0;
    const double lq = r < 1.0 ? std::log1p(-r) : 0.0;
    for (int n = 0; n < cutoff; ++n) {
        for (int l = 0; l <= std::min(n, top); ++l) {
            double t;
            if (r == 1.0) {
                t = l == 0 ? 1.0 : 0.0;
            } else if (r == 0.0) {
                t = l == n ? 1.0 : 0.0;
            } else {
                const double lt = lfact[n] - lfact[l] - lfact[n - l] + l * lq + (n - l) * lr;
                t = std::exp(lt);
            }
            ops[l](n - l, n) = std::sqrt(t);
        }
    }
    for (int n = 0; n <= std::min(top, cutoff - 1); ++n) {
        double s = 0.0;
        for (int l = 0; l <= std::min(n, top); ++l) {
            s += ops[l](n - l, n) * ops[l](n - l, n);
        }
        if (std::abs(s - 1.0) > 1e-12) {
            throw ConfigurationError("loss_channel_kraus: completeness violated at n = " +
                                     std::to_string(n) + " by " + detail::sci(s - 1.0));
        }
    }
    std::erase_if(ops, [](const Eigen::MatrixXd& k) { return k.isZero(0.0); });
    return ops;
}

/// Density matrix |psi><psi| of a truncated pure state.
inline FockDensity pure_density(const FockVector& psi) {
    FockDensity rho;
    rho.cutoff = psi.cutoff;
    rho.modes = psi.modes;
    rho.tail = psi.tail;
    const Eigen::Index dim = psi.amplitudes.size();
    rho.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<Eigen::Index> nz;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (psi.amplitudes(i) != Complex{0.0, 0.0}) {
            nz.push_back(i);
        }
    }
    for (Eigen::Index i : nz) {
        for (Eigen::Index j : nz) {
            rho.matrix(i, j) = psi.amplitudes(i) * std::conj(psi.amplitudes(j));
        }
    }
    return rho;
}

/// Output state sigma_0 = (E_r (x) I)(|psi><psi|) of the loss channel acting
/// on the signal mode of a two-mode pure state, as an explicit density
/// matrix. Its trace equals the input norm, so the recorded tail carries
/// over unchanged.
inline FockDensity apply_loss_to_signal_fock(const FockVector& psi, double r, int max_loss = -1,
                                             double tail_tol = kDefaultTailTolerance) {
    if (psi.modes != 2) {
        throw DomainError("apply_loss_to_signal_fock: need a two-mode state");
    }
    if (psi.tail > tail_tol) {
        throw CutoffError("apply_loss_to_signal_fock: input tail " + detail::sci(psi.tail) +
                          " above tolerance");
    }
    const int n = psi.cutoff;
    if (psi.amplitudes.size() != static_cast<Eigen::Index>(n) * n) {
        throw DomainError("apply_loss_to_signal_fock: amplitude vector size does not match cutoff");
    }
    if (max_loss < 0) {
        max_loss = n;
    }
    const auto kraus = loss_channel_kraus(r, max_loss, n);
    const Eigen::Index dim = psi.amplitudes.size();
    FockDensity rho;
    rho.cutoff = n;
    rho.modes = 2;
    rho.tail = psi.tail;
    rho.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    // Column-major view: entry (row = n_ref, col = n_sig) sits at the
    // composite index n_sig * cutoff + n_ref, so K acts from the right.
    const Eigen::Map<const Eigen::MatrixXcd> in(psi.amplitudes.data(), n, n);
    std::vector<std::pair<Eigen::Index, Complex>> nz;
    for (const Eigen::MatrixXd& k : kraus) {
        const Eigen::MatrixXcd out = in * k.transpose().cast<Complex>();
        nz.clear();
        for (Eigen::Index i = 0; i < dim; ++i) {
            const Complex v = out(i % n, i / n);
            if (v != Complex{0.0, 0.0}) {
                nz.emplace_back(i, v);
            }
        }
        for (const auto& [i, vi] : nz) {
            for (const auto& [j, vj] : nz) {
                rho.matrix(i, j) += vi * std::conj(vj);
            }
        }
    }
    return rho;
}

/// Overlap <psi| rho |psi> between a pure state and a density matrix, both
/// renormalised so that small truncation deficits cancel.
inline double fidelity_with_density(const FockVector& psi, const FockDensity& rho) {
    if (psi.amplitudes.size() != rho.dim() || psi.modes != rho.modes) {
        throw DomainError("fidelity_with_density: dimension mismatch");
    }
    Complex raw{0.0, 0.0};
    std::vector<Eigen::Index> nz;
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
        if (psi.amplitudes(i) != Complex{0.0, 0.0}) {
            nz.push_back(i);
        }
    }
    for (Eigen::Index i : nz) {
        for (Eigen::Index j : nz) {
            raw += std::conj(psi.amplitudes(i)) * rho.matrix(i, j) * psi.amplitudes(j);
        }
    }
    const double norm2 = psi.amplitudes.squaredNorm();
    const double trace = rho.matrix.trace().real();
    return raw.real() / (norm2 * trace);
}

namespace detail {

struct UnionFind {
    std::vector<Eigen::Index> parent;

    explicit UnionFind(Eigen::Index n) : parent(static_cast<std::size_t>(n)) {
        for (Eigen::Index i = 0; i < n; ++i) {
            parent[static_cast<std::size_t>(i)] = i;
        }
    }
    Eigen::Index find(Eigen::Index i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            parent[static_cast<std::size_t>(i)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
            i = parent[static_cast<std::size_t>(i)];
        }
        return i;
    }
    void unite(Eigen::Index a, Eigen::Index b) {
        const Eigen::Index ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[static_cast<std::size_t>(rb)] = ra;
        }
    }
};

inline void unite_pattern(UnionFind& uf, const Eigen::MatrixXcd& m) {
    const Eigen::Index dim = m.rows();
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < j; ++i) {
            if (m(i, j) != Complex{0.0, 0.0}) {
                uf.unite(i, j);
            }
        }
    }
}

}  // namespace detail

/// Exact Helstrom error probability for discriminating rho0 (prior p0) from
/// rho1 (prior 1 - p0): p = (1 - || (1-p0) rho1 - p0 rho0 ||_1) / 2, the
/// trace norm taken as the sum of absolute eigenvalues of the Helstrom
/// matrix.
///
/// The Helstrom matrix is first split into the connected components of its
/// sparsity pattern (structural zeros are exact here, never rounded dust),
/// and each block is diagonalised separately. For loss-channel outputs of
/// number-diagonal inputs the blocks are the photon-number-difference
/// sectors, which turns an intractable dense solve into many small ones
/// without any approximation.
inline HelstromResult helstrom_exact(const FockDensity& rho0, const FockDensity& rho1,
                                     double p0 = 0.5, double tail_tol = 1e-9) {
    if (rho0.dim() != rho1.dim() || rho0.modes != rho1.modes || rho0.cutoff != rho1.cutoff) {
        throw DomainError("helstrom_exact: operands live on different truncated spaces");
    }
    if (!(p0 >= 0.0 && p0 <= 1.0)) {
        throw DomainError("helstrom_exact: prior must lie in [0, 1]");
    }
    if (rho0.tail > tail_tol || rho1.tail > tail_tol) {
        throw CutoffError("helstrom_exact: truncation tails " + detail::sci(rho0.tail) + ", " +
                          detail::sci(rho1.tail) + " above tolerance");
    }
    const double p1 = 1.0 - p0;
    const Eigen::Index dim = rho0.dim();
    detail::UnionFind uf(dim);
    detail::unite_pattern(uf, rho0.matrix);
    detail::unite_pattern(uf, rho1.matrix);
    std::vector<std::vector<Eigen::Index>> groups(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        groups[static_cast<std::size_t>(uf.find(i))].push_back(i);
    }
    double trace_norm = 0.0;
    Eigen::MatrixXcd block;
    for (const auto& g : groups) {
        if (g.empty()) {
            continue;
        }
        if (g.size() == 1) {
            const Eigen::Index i = g[0];
            const double v = p1 * rho1.matrix(i, i).real() - p0 * rho0.matrix(i, i).real();
            if (std::abs(v) >= kEigenvalueFloor) {
                trace_norm += std::abs(v);
            }
            continue;
        }
        const Eigen::Index k = static_cast<Eigen::Index>(g.size());
        block.resize(k, k);
        for (Eigen::Index bi = 0; bi < k; ++bi) {
            for (Eigen::Index bj = 0; bj < k; ++bj) {
                block(bi, bj) = p1 * rho1.matrix(g[static_cast<std::size_t>(bi)],
                                                 g[static_cast<std::size_t>(bj)]) -
                                p0 * rho0.matrix(g[static_cast<std::size_t>(bi)],
                                                 g[static_cast<std::size_t>(bj)]);
            }
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block,
                                                                     Eigen::EigenvaluesOnly);
        for (Eigen::Index e = 0; e < k; ++e) {
            const double v = solver.eigenvalues()(e);
            if (std::abs(v) >= kEigenvalueFloor) {
                trace_norm += std::abs(v);
            }
        }
    }
    return {0.5 * (1.0 - trace_norm), rho0.tail + rho1.tail};
}

/// Quadrature second moments of a two-mode density matrix assembled into
/// block standard form. Throws if the residual against the (aI, bI, cZ)
/// structure (including nonzero means and x-p cross terms) exceeds tol.
inline MomentsResult moments_from_density(const FockDensity& rho, double tol = 1e-8) {
    if (rho.modes != 2) {
        throw DomainError("moments_from_density: need a two-mode density matrix");
    }
    const int n = rho.cutoff;
    const auto idx = [n](int s, int m) { return static_cast<Eigen::Index>(s) * n + m; };
    double trace = 0.0;
    double num_s = 0.0, num_r = 0.0;
    Complex a_s{}, a_r{}, a_s2{}, a_r2{}, a_sr{}, a_srd{};
    for (int s = 0; s < n; ++s) {
        for (int m = 0; m < n; ++m) {
            const Eigen::Index i = idx(s, m);
            const double diag = rho.matrix(i, i).real();
            trace += diag;
            num_s += s * diag;
            num_r += m * diag;
            if (s >= 1) {
                a_s += std::sqrt(static_cast<double>(s)) * rho.matrix(i, idx(s - 1, m));
            }
            if (m >= 1) {
                a_r += std::sqrt(static_cast<double>(m)) * rho.matrix(i, idx(s, m - 1));
            }
            if (s >= 2) {
                a_s2 += std::sqrt(static_cast<double>(s) * (s - 1)) * rho.matrix(i, idx(s - 2, m));
            }
            if (m >= 2) {
                a_r2 += std::sqrt(static_cast<double>(m) * (m - 1)) * rho.matrix(i, idx(s, m - 2));
            }
            if (s >= 1 && m >= 1) {
                a_sr += std::sqrt(static_cast<double>(s) * m) * rho.matrix(i, idx(s - 1, m - 1));
            }
            if (s >= 1 && m + 1 < n) {
                a_srd += std::sqrt(static_cast<double>(s) * (m + 1)) * rho.matrix(i, idx(s - 1, m + 1));
            }
        }
    }
    if (!(trace > 0.0)) {
        throw StructureError("moments_from_density: non-positive trace");
    }
    num_s /= trace;
    num_r /= trace;
    a_s /= trace;
    a_r /= trace;
    a_s2 /= trace;
    a_r2 /= trace;
    a_sr /= trace;
    a_srd /= trace;

    const double a = 2.0 * num_s + 1.0;
    const double b = 2.0 * num_r + 1.0;
    const double c = 2.0 * a_sr.real();
    double residual = 0.0;
    const auto track = [&residual](double v) { residual = std::max(residual, std::abs(v)); };
    track(2.0 * a_s.real());    // <x_S>
    track(2.0 * a_s.imag());    // <p_S>
    track(2.0 * a_r.real());    // <x_R>
    track(2.0 * a_r.imag());    // <p_R>
    track(2.0 * a_s2.real());   // (<x_S^2> - <p_S^2>) / 2
    track(2.0 * a_s2.imag());   // <{x_S, p_S}> / 2
    track(2.0 * a_r2.real());
    track(2.0 * a_r2.imag());
    track(2.0 * a_srd.real());  // (<x_S x_R> + <p_S p_R>) / 2
    track(2.0 * a_srd.imag());
    track(2.0 * a_sr.imag());   // x-p cross correlations
    if (residual > tol) {
        throw StructureError("moments_from_density: block-form residual " +
                             std::to_string(residual) + " above tolerance");
    }
    return {{a, b, c}, residual};
}

}  // namespace qread::fock
