// density.hpp -- dense density matrices, a cyclic-Jacobi Hermitian
// eigensolver, Uhlmann fidelity and trace distance.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qpkc/qsim.hpp"

namespace qpkc {

inline constexpr int kDensityMaxDim = 1 << 10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kJacobiOffTolerance = 1e-14;

// Dense complex square matrix, row-major. Used for density operators and for
// the eigensolver's working storage.
class DensityMatrix {
public:
    explicit DensityMatrix(int dim)
        : dim_(dim), a_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
        if (dim < 1 || dim > kDensityMaxDim)
            throw std::invalid_argument("DensityMatrix: dimension out of range");
    }

    int dim() const { return dim_; }

    Amplitude& at(int i, int j) {
        return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) +
                  static_cast<std::size_t>(j)];
    }
    const Amplitude& at(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) +
                  static_cast<std::size_t>(j)];
    }

    static DensityMatrix identity(int dim) {
        DensityMatrix m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    DensityMatrix operator*(const DensityMatrix& b) const {
        require_same_dim(b);
        DensityMatrix out(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < dim_; ++k) {
                Amplitude aik = at(i, k);
                if (aik == Amplitude{}) continue;
                for (int j = 0; j < dim_; ++j) out.at(i, j) += aik * b.at(k, j);
            }
        return out;
    }

    DensityMatrix operator-(const DensityMatrix& b) const {
        require_same_dim(b);
        DensityMatrix out(dim_);
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - b.a_[i];
        return out;
    }

    DensityMatrix adjoint() const {
        DensityMatrix out(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) out.at(i, j) = std::conj(at(j, i));
        return out;
    }

    double trace_real() const {
        double t = 0;
        for (int i = 0; i < dim_; ++i) t += at(i, i).real();
        return t;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    double hermiticity_error() const {
        double m = 0;
        for (int i = 0; i < dim_; ++i)
            for (int j = i; j < dim_; ++j)
                m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
        return m;
    }

    bool is_hermitian(double tol = kHermitianTolerance) const {
        return hermiticity_error() <= tol;
    }

private:
    void require_same_dim(const DensityMatrix& b) const {
        if (dim_ != b.dim_)
            throw std::invalid_argument("DensityMatrix: dimension mismatch");
    }

    int dim_;
    std::vector<Amplitude> a_;
};

struct EigenSystem {
    std::vector<double> values; // ascending
    DensityMatrix vectors;      // column j is the eigenvector of values[j]

    EigenSystem(int dim) : values(static_cast<std::size_t>(dim)), vectors(dim) {}
};

namespace detail {

inline double offdiag_frobenius(const DensityMatrix& a) {
    double s = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

} // namespace detail

// Cyclic Jacobi sweeps with complex plane rotations. Converges when the
// off-diagonal Frobenius mass drops below kJacobiOffTolerance (relative to
// the matrix scale); throws after the sweep cap, which signals numerical
// pathology rather than a recoverable condition.
inline EigenSystem hermitian_eig(const DensityMatrix& m,
                                 double hermitian_tol = kHermitianTolerance) {
    if (!m.is_hermitian(hermitian_tol))
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
    int n = m.dim();
    DensityMatrix a = m;
    // Symmetrize roundoff so the iteration preserves Hermiticity exactly.
    for (int i = 0; i < n; ++i) {
        a.at(i, i) = Amplitude{a.at(i, i).real(), 0.0};
        for (int j = i + 1; j < n; ++j) {
            Amplitude v = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
            a.at(i, j) = v;
            a.at(j, i) = std::conj(v);
        }
    }
    DensityMatrix v = DensityMatrix::identity(n);
    double scale = std::max(1.0, m.max_abs() * n);
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (detail::offdiag_frobenius(a) < kJacobiOffTolerance * scale) {
            EigenSystem es(n);
            std::vector<int> order(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
            std::sort(order.begin(), order.end(), [&](int x, int y) {
                return a.at(x, x).real() < a.at(y, y).real();
            });
            for (int j = 0; j < n; ++j) {
                int src = order[static_cast<std::size_t>(j)];
                es.values[static_cast<std::size_t>(j)] = a.at(src, src).real();
                for (int i = 0; i < n; ++i) es.vectors.at(i, j) = v.at(i, src);
            }
            return es;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                Amplitude apq = a.at(p, q);
                double r = std::abs(apq);
                if (r < kJacobiOffTolerance * scale / (10.0 * n)) continue;
                Amplitude phase = apq / r;
                double app = a.at(p, p).real();
                double aqq = a.at(q, q).real();
                double tau = (aqq - app) / (2.0 * r);
                double t = (tau >= 0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                Amplitude se_pos = s * phase;            // s * e^{i phi}
                Amplitude se_neg = s * std::conj(phase); // s * e^{-i phi}

                // Rows: [p; q] <- [[c, -s e^{i phi}], [s e^{-i phi}, c]] [p; q]
                for (int j = 0; j < n; ++j) {
                    Amplitude xp = a.at(p, j), xq = a.at(q, j);
                    a.at(p, j) = c * xp - se_pos * xq;
                    a.at(q, j) = se_neg * xp + c * xq;
                }
                // Columns: [p, q] <- [p, q] [[c, s e^{i phi}], [-s e^{-i phi}, c]]
                for (int i = 0; i < n; ++i) {
                    Amplitude xp = a.at(i, p), xq = a.at(i, q);
                    a.at(i, p) = c * xp - se_neg * xq;
                    a.at(i, q) = se_pos * xp + c * xq;
                    Amplitude vp = v.at(i, p), vq = v.at(i, q);
                    v.at(i, p) = c * vp - se_neg * vq;
                    v.at(i, q) = se_pos * vp + c * vq;
                }
                a.at(p, q) = Amplitude{0.0, 0.0};
                a.at(q, p) = Amplitude{0.0, 0.0};
                a.at(p, p) = Amplitude{a.at(p, p).real(), 0.0};
                a.at(q, q) = Amplitude{a.at(q, q).real(), 0.0};
            }
        }
    }
    throw std::runtime_error("hermitian_eig: no convergence within sweep cap");
}

// V f(diag) V^dagger for a spectral function f.
inline DensityMatrix spectral_apply(const EigenSystem& es,
                                    const std::function<double(double)>& f) {
    int n = es.vectors.dim();
    DensityMatrix out(n);
    for (int k = 0; k < n; ++k) {
        double fv = f(es.values[static_cast<std::size_t>(k)]);
        if (fv == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            Amplitude vik = es.vectors.at(i, k) * fv;
            if (vik == Amplitude{}) continue;
            for (int j = 0; j < n; ++j)
                out.at(i, j) += vik * std::conj(es.vectors.at(j, k));
        }
    }
    return out;
}

// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), clamped to [0, 1].
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("fidelity: dimension mismatch");
    EigenSystem er = hermitian_eig(rho);
    DensityMatrix sqrt_rho =
        spectral_apply(er, [](double x) { return x > 0 ? std::sqrt(x) : 0.0; });
    DensityMatrix inner = sqrt_rho * sigma * sqrt_rho;
    EigenSystem ei = hermitian_eig(inner, 1e-8);
    // Eigenvalues at roundoff scale are spectral noise of the exact zeros;
    // sqrt would blow each up to ~1e-8, so they are cut before summing.
    double lmax = 0;
    for (double lam : ei.values) lmax = std::max(lmax, std::abs(lam));
    double cut = 1e-12 * std::max(1.0, lmax);
    double f = 0;
    for (double lam : ei.values)
        if (lam > cut) f += std::sqrt(lam);
    return std::clamp(f, 0.0, 1.0);
}

// Trace distance (1/2) sum |eigenvalues of rho - sigma|.
inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    EigenSystem ed = hermitian_eig(rho - sigma);
    double d = 0;
    for (double lam : ed.values) d += std::abs(lam);
    return std::clamp(0.5 * d, 0.0, 1.0);
}

// Sorted union of the basis labels occupied by the given ensembles. Density
// matrices built on this common sub-basis have the same spectra (hence the
// same fidelity and trace distance) as full-space ones, because all states
// involved are supported inside it.
inline std::vector<std::uint64_t> span_basis(
    std::initializer_list<const CipherEnsemble*> ensembles) {
    std::vector<std::uint64_t> labels;
    for (const auto* e : ensembles)
        for (const auto& m : e->members())
            for (const auto& [label, amp] : m.state.terms()) labels.push_back(label);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

// Sum_r p_r |psi_r><psi_r| over an explicit ordered label basis.
inline DensityMatrix ensemble_to_density(const CipherEnsemble& e,
                                         const std::vector<std::uint64_t>& basis) {
    if (basis.empty() || basis.size() > kDensityMaxDim)
        throw std::invalid_argument("ensemble_to_density: basis size out of range");
    std::map<std::uint64_t, int> index;
    for (std::size_t i = 0; i < basis.size(); ++i)
        index.emplace(basis[i], static_cast<int>(i));

    DensityMatrix rho(static_cast<int>(basis.size()));
    for (const auto& m : e.members()) {
        std::vector<std::pair<int, Amplitude>> entries;
        for (const auto& [label, amp] : m.state.terms()) {
            auto it = index.find(label);
            if (it == index.end())
                throw std::invalid_argument("ensemble_to_density: label outside basis");
            entries.emplace_back(it->second, amp);
        }
        for (const auto& [i, ai] : entries)
            for (const auto& [j, aj] : entries)
                rho.at(i, j) += m.probability * ai * std::conj(aj);
    }
    return rho;
}

// Full computational basis of the ensemble's layout; the dense construction
// bound caps the dimension at 2^10.
inline DensityMatrix ensemble_to_density(const CipherEnsemble& e) {
    int w = e.layout().total_width();
    if (w > 10)
        throw std::invalid_argument("ensemble_to_density: 2^width exceeds dense bound");
    std::vector<std::uint64_t> basis(std::size_t{1} << w);
    for (std::size_t i = 0; i < basis.size(); ++i) basis[i] = i;
    return ensemble_to_density(e, basis);
}

// Rank-1 density matrix of a pure state over an explicit basis.
inline DensityMatrix pure_to_density(const PureState& s,
                                     const std::vector<std::uint64_t>& basis) {
    CipherEnsemble e(std::vector<CipherEnsemble::Member>{
        CipherEnsemble::Member{1.0, {}, s}});
    return ensemble_to_density(e, basis);
}

} // namespace qpkc
