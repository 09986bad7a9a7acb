#pragma once

#include "thermoplate/assembly.hpp"
#include "thermoplate/errors.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include <array>
#include <cstdio>
#include <limits>
#include <memory>
#include <optional>
#include <string>

namespace thermoplate {

enum class SolverKind { DirectLU, Iterative };

/// Reusable factorization of a square sparse matrix. Copies share the
/// underlying factors; solves are const and may run concurrently.
class Factorization {
public:
    static constexpr double kResidualTolerance = 1e-10;
    static constexpr double kBackwardErrorTolerance = 1e-12;
    static constexpr int kMaxRefinement = 5;

    Factorization() = default;

    explicit Factorization(const SparseMatrix& a, SolverKind kind = SolverKind::DirectLU) : kind_(kind) {
        if (a.rows() != a.cols())
            throw InvalidArgument("factor: matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
        state_ = std::make_shared<State>();
        state_->rows = a;
        if (a.rows() == 0) return;
        equilibrate();
        if (kind == SolverKind::DirectLU) {
            state_->lu.analyzePattern(state_->matrix);
            state_->lu.factorize(state_->matrix);
            if (state_->lu.info() != Eigen::Success)
                throw FactorizationError("sparse LU failed: " + state_->lu.lastErrorMessage());
        } else {
            state_->krylov.setTolerance(1e-13);
            state_->krylov.setMaxIterations(20000);
            state_->krylov.preconditioner().setDroptol(1e-6);
            state_->krylov.preconditioner().setFillfactor(20);
            state_->krylov.compute(state_->matrix);
            if (state_->krylov.info() != Eigen::Success)
                throw FactorizationError("incomplete LU preconditioner failed");
        }
    }

    [[nodiscard]] Eigen::Index size() const { return state_ ? state_->rows.rows() : 0; }
    [[nodiscard]] SolverKind kind() const { return kind_; }

    /// Solves A x = b. Accepts when ||b - Ax|| / ||b|| < 1e-10; when that
    /// lies below what double precision can represent (heavy cancellation in
    /// A x), accepts a componentwise backward error below 1e-12 instead.
    [[nodiscard]] Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
        if (!state_) throw InvalidArgument("solve: empty factorization handle");
        if (b.size() != size())
            throw InvalidArgument("solve: rhs has size " + std::to_string(b.size()) + ", expected " +
                                  std::to_string(size()));
        const double bnorm = b.norm();
        if (bnorm == 0.0) return Eigen::VectorXd::Zero(b.size());
        Eigen::VectorXd x = raw_solve(b);
        Eigen::VectorXd r = residual(b, x);
        double rnorm = r.norm();
        // Refinement with an extended-precision residual; stops once the
        // residual no longer halves.
        for (int sweep = 0; sweep < kMaxRefinement && rnorm >= kResidualTolerance * bnorm; ++sweep) {
            const Eigen::VectorXd x_new = x + raw_solve(r);
            const Eigen::VectorXd r_new = residual(b, x_new);
            const double n_new = r_new.norm();
            if (!(n_new < rnorm)) break;
            const bool stagnating = n_new > 0.5 * rnorm;
            x = x_new;
            r = r_new;
            rnorm = n_new;
            if (stagnating) break;
        }
        const double rel = rnorm / bnorm;
        if (std::isfinite(rel) && rel < kResidualTolerance) return x;
        const double omega = backward_error(b, x, r);
        if (std::isfinite(omega) && omega < kBackwardErrorTolerance) return x;
        char buf[128];
        std::snprintf(buf, sizeof buf, "linear solve relative residual %.3e (backward error %.3e) exceeds tolerance",
                      rel, omega);
        throw SolverError(buf);
    }

    /// max_i |r_i| / (|A| |x| + |b|)_i.
    [[nodiscard]] double backward_error(const Eigen::VectorXd& b, const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& r) const {
        double omega = 0.0;
        for (Eigen::Index i = 0; i < state_->rows.outerSize(); ++i) {
            double denom = std::abs(b[i]);
            for (SparseMatrix::InnerIterator it(state_->rows, i); it; ++it) denom += std::abs(it.value() * x[it.col()]);
            if (r[i] == 0.0) continue;
            omega = std::max(omega, denom > 0.0 ? std::abs(r[i]) / denom : std::numeric_limits<double>::infinity());
        }
        return omega;
    }

    [[nodiscard]] Eigen::VectorXd residual(const Eigen::VectorXd& b, const Eigen::VectorXd& x) const {
        Eigen::VectorXd r(b.size());
        for (Eigen::Index i = 0; i < state_->rows.outerSize(); ++i) {
            long double acc = b[i];
            for (SparseMatrix::InnerIterator it(state_->rows, i); it; ++it)
                acc -= static_cast<long double>(it.value()) * static_cast<long double>(x[it.col()]);
            r[i] = static_cast<double>(acc);
        }
        return r;
    }

private:
    struct State {
        SparseMatrix rows;                   // the matrix as given
        Eigen::SparseMatrix<double> matrix;  // R A C, column-major for the factorizations
        Eigen::VectorXd row_scale, col_scale;
        Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
        Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> krylov;
    };

    /// Row then column max-norm scaling; powers of two keep it exact.
    void equilibrate() {
        const SparseMatrix& a = state_->rows;
        auto pow2 = [](double m) { return m > 0.0 ? std::exp2(-std::round(std::log2(m))) : 1.0; };
        Eigen::VectorXd r = Eigen::VectorXd::Zero(a.rows()), c = Eigen::VectorXd::Zero(a.cols());
        for (Eigen::Index i = 0; i < a.outerSize(); ++i)
            for (SparseMatrix::InnerIterator it(a, i); it; ++it) r[i] = std::max(r[i], std::abs(it.value()));
        for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = pow2(r[i]);
        for (Eigen::Index i = 0; i < a.outerSize(); ++i)
            for (SparseMatrix::InnerIterator it(a, i); it; ++it)
                c[it.col()] = std::max(c[it.col()], std::abs(r[i] * it.value()));
        for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = pow2(c[j]);
        state_->matrix = r.asDiagonal() * a * c.asDiagonal();
        state_->matrix.makeCompressed();
        state_->row_scale = std::move(r);
        state_->col_scale = std::move(c);
    }

    [[nodiscard]] Eigen::VectorXd raw_solve(const Eigen::VectorXd& b) const {
        const Eigen::VectorXd sb = state_->row_scale.cwiseProduct(b);
        Eigen::VectorXd y;
        if (kind_ == SolverKind::DirectLU) {
            y = state_->lu.solve(sb);
        } else {
            y = state_->krylov.solve(sb);
            if (state_->krylov.info() != Eigen::Success) throw SolverError("BiCGSTAB did not converge");
        }
        return state_->col_scale.cwiseProduct(y);
    }

    SolverKind kind_ = SolverKind::DirectLU;
    std::shared_ptr<State> state_;
};

inline Factorization factor(const SparseMatrix& a, SolverKind kind = SolverKind::DirectLU) {
    return Factorization(a, kind);
}

inline Eigen::VectorXd solve(const Factorization& f, const Eigen::VectorXd& rhs) { return f.solve(rhs); }

/// 3x3 block system over (U, Theta, P) free DOFs with its factorization.
struct BlockSystem {
    std::array<Eigen::Index, 4> offsets{};  // block starts, offsets[3] = total size
    SparseMatrix matrix;
    Factorization factors;

    [[nodiscard]] Eigen::Index size() const { return offsets[3]; }

    [[nodiscard]] Eigen::VectorXd stack(const Eigen::VectorXd& u, const Eigen::VectorXd& th,
                                        const Eigen::VectorXd& p) const {
        Eigen::VectorXd x(size());
        x << u, th, p;
        return x;
    }
    [[nodiscard]] Eigen::VectorXd block(const Eigen::VectorXd& x, int i) const {
        return x.segment(offsets[static_cast<std::size_t>(i)],
                         offsets[static_cast<std::size_t>(i) + 1] - offsets[static_cast<std::size_t>(i)]);
    }
};

/// Builds the monolithic matrix from a 3x3 grid of optional blocks (empty
/// entries are zero blocks) and factors it.
inline BlockSystem make_block_system(const std::array<std::array<std::optional<SparseMatrix>, 3>, 3>& blocks,
                                     std::array<Eigen::Index, 3> sizes, SolverKind kind = SolverKind::DirectLU) {
    BlockSystem sys;
    sys.offsets = {0, sizes[0], sizes[0] + sizes[1], sizes[0] + sizes[1] + sizes[2]};
    Triplets trips;
    for (int bi = 0; bi < 3; ++bi)
        for (int bj = 0; bj < 3; ++bj) {
            const auto& blk = blocks[static_cast<std::size_t>(bi)][static_cast<std::size_t>(bj)];
            if (!blk) continue;
            if (blk->rows() != sizes[static_cast<std::size_t>(bi)] || blk->cols() != sizes[static_cast<std::size_t>(bj)])
                throw InvalidArgument("make_block_system: block (" + std::to_string(bi) + "," + std::to_string(bj) +
                                      ") has wrong shape");
            const auto r0 = sys.offsets[static_cast<std::size_t>(bi)], c0 = sys.offsets[static_cast<std::size_t>(bj)];
            for (int r = 0; r < blk->outerSize(); ++r)
                for (SparseMatrix::InnerIterator it(*blk, r); it; ++it)
                    trips.emplace_back(static_cast<int>(r0 + it.row()), static_cast<int>(c0 + it.col()), it.value());
        }
    sys.matrix = compress(sys.size(), sys.size(), trips);
    sys.factors = factor(sys.matrix, kind);
    return sys;
}

}  // namespace thermoplate
