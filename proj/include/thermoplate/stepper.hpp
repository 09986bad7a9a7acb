#pragma once

#include "thermoplate/assembly.hpp"
#include "thermoplate/errors.hpp"
#include "thermoplate/fem.hpp"
#include "thermoplate/linsolve.hpp"
#include "thermoplate/mesh.hpp"
#include "thermoplate/mms.hpp"
#include "thermoplate/model.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace thermoplate {

inline constexpr double kDefaultSigmaIp = 8.0;

struct TimeGrid {
    double T = 1.0;
    int N = 2;

    TimeGrid() = default;
    TimeGrid(double final_time, int steps) : T(final_time), N(steps) {
        if (!(final_time > 0.0) || !std::isfinite(final_time))
            throw InvalidArgument("TimeGrid: final time must be positive");
        if (steps < 2) throw InvalidArgument("TimeGrid: need at least 2 steps, got " + std::to_string(steps));
    }

    /// Grid with step closest to `dt` that divides T evenly.
    static TimeGrid from_step(double final_time, double dt) {
        if (!(dt > 0.0)) throw InvalidArgument("TimeGrid: dt must be positive");
        return {final_time, static_cast<int>(std::lround(final_time / dt))};
    }

    [[nodiscard]] double dt() const { return T / N; }
    [[nodiscard]] double t(int n) const { return n == N ? T : n * dt(); }
};

/// Free-DOF operators of one mesh: P2 space V for u, P1 space W for theta, p.
struct Operators {
    std::shared_ptr<const TriMesh> mesh;
    FeSpace v, w;
    double sigma_ip = kDefaultSigmaIp;
    SparseMatrix Mv, Kv, A, Hn;  // Hn: volume + penalty parts of A (broken norm)
    SparseMatrix Mw, Kw;
    SparseMatrix B, Bt;  // B(i, j) = (grad chi_j, grad v_i)
};

inline Operators build_operators(std::shared_ptr<const TriMesh> mesh, double sigma_ip = kDefaultSigmaIp) {
    if (!(sigma_ip > 0.0)) throw InvalidArgument("build_operators: sigma_ip must be positive");
    Operators op;
    op.mesh = mesh;
    op.sigma_ip = sigma_ip;
    op.v = build_space(mesh, FeKind::P2);
    op.w = build_space(mesh, FeKind::P1);
    op.Mv = restrict_to_free(mass_matrix(op.v), op.v, op.v);
    op.Kv = restrict_to_free(h1_matrix(op.v), op.v, op.v);
    op.A = restrict_to_free(c0ip_matrix(op.v, sigma_ip), op.v, op.v);
    op.Hn = restrict_to_free(c0ip_matrix(op.v, sigma_ip, C0ipTerms{true, false, true}), op.v, op.v);
    op.Mw = restrict_to_free(mass_matrix(op.w), op.w, op.w);
    op.Kw = restrict_to_free(h1_matrix(op.w), op.w, op.w);
    op.B = restrict_to_free(coupling_matrix(op.v, op.w), op.v, op.w);
    op.Bt = op.B.transpose();
    return op;
}

/// Free-DOF starting data: U0 (nodal interpolant), Theta0 and P0 (H1
/// projections) and the velocity load (u*0, v) + a0 (grad u*0, grad v).
struct InitialData {
    Eigen::VectorXd U0, Th0, P0, velocity_load;
};

/// H1 projection onto W_h with homogeneous Dirichlet values.
template <class GradFn>
Eigen::VectorXd h1_projection(const Operators& op, GradFn&& grad) {
    const Eigen::VectorXd rhs = restrict_to_free(op.w, load_vector_grad(op.w, grad));
    if (op.w.n_free == 0) return rhs;
    return factor(op.Kw).solve(rhs);
}

inline InitialData project_initial(const ManufacturedCase& mc, const Operators& op) {
    InitialData d;
    d.U0 = restrict_to_free(op.v, interpolate(op.v, [&](double x, double y) { return mc.u(0.0, x, y); }));
    d.Th0 = h1_projection(op, [&](double x, double y) { return mc.grad_theta(0.0, x, y); });
    d.P0 = h1_projection(op, [&](double x, double y) { return mc.grad_p(0.0, x, y); });
    const Eigen::VectorXd l2 = load_vector(op.v, [&](double x, double y) { return mc.u_t(0.0, x, y); });
    const Eigen::VectorXd h1 = load_vector_grad(op.v, [&](double x, double y) { return mc.grad_u_t(0.0, x, y); });
    d.velocity_load = restrict_to_free(op.v, Eigen::VectorXd(l2 + mc.coeffs.a0 * h1));
    return d;
}

/// Levels n-1 and n of all three unknowns (free DOFs).
struct StateHistory {
    int n = 0;
    Eigen::VectorXd U_prev, U, Th_prev, Th, P_prev, P;

    void check_finite() const {
        if (!U.allFinite() || !Th.allFinite() || !P.allFinite())
            throw SolverError("non-finite state at time level " + std::to_string(n));
    }
};

/// Free-DOF load vectors (f, v), (phi, w), (g, w) at one time level.
struct Loads {
    Eigen::VectorXd F, Phi, G;
};

/// Marches the fully discrete scheme. Both block matrices are built and
/// factored in the constructor.
class Stepper {
public:
    Stepper(const Operators& op, ManufacturedCase mc, TimeGrid grid, SolverKind kind = SolverKind::DirectLU)
        : op_(&op), mc_(std::move(mc)), grid_(grid) {
        mc_.coeffs.validate(true);
        const auto& c = mc_.coeffs;
        const double dt = grid_.dt();
        const SparseMatrix MK = op.Mv + c.a0 * op.Kv;
        theta_diag_ = (c.a1 / dt + 0.5 * c.b1) * op.Mw + 0.5 * c.c1 * op.Kw;
        p_diag_ = (c.a2 / dt) * op.Mw + 0.5 * c.kappa * op.Kw;
        const SparseMatrix cross = (-c.gamma / dt) * op.Mw;
        const SparseMatrix bt_a = (c.alpha / dt) * op.Bt, bt_b = (c.beta / dt) * op.Bt;
        const std::array<Eigen::Index, 3> sizes{op.v.n_free, op.w.n_free, op.w.n_free};

        first_ = make_block_system({{{SparseMatrix((2.0 / (dt * dt)) * MK + 0.5 * c.d0 * op.A),
                                      SparseMatrix(-0.5 * c.alpha * op.B), SparseMatrix(-0.5 * c.beta * op.B)},
                                     {bt_a, theta_diag_, cross},
                                     {bt_b, cross, p_diag_}}},
                                   sizes, kind);
        main_ = make_block_system({{{SparseMatrix((1.0 / (dt * dt)) * MK + 0.25 * c.d0 * op.A),
                                     SparseMatrix(-0.25 * c.alpha * op.B), SparseMatrix(-0.25 * c.beta * op.B)},
                                    {bt_a, theta_diag_, cross},
                                    {bt_b, cross, p_diag_}}},
                                  sizes, kind);
    }

    [[nodiscard]] const Operators& operators() const { return *op_; }
    [[nodiscard]] const ManufacturedCase& problem() const { return mc_; }
    [[nodiscard]] const TimeGrid& grid() const { return grid_; }
    [[nodiscard]] const BlockSystem& first_system() const { return first_; }
    [[nodiscard]] const BlockSystem& main_system() const { return main_; }

    /// Load vectors at level k (cached for the last three levels).
    const Loads& loads(int k) {
        auto it = loads_.find(k);
        if (it != loads_.end()) return it->second;
        const double t = grid_.t(k);
        Loads l;
        l.F = restrict_to_free(op_->v, load_vector(op_->v, mc_.f, t, 8));
        l.Phi = restrict_to_free(op_->w, load_vector(op_->w, mc_.phi, t, 8));
        l.G = restrict_to_free(op_->w, load_vector(op_->w, mc_.g, t, 8));
        while (!loads_.empty() && loads_.begin()->first < k - 2) loads_.erase(loads_.begin());
        return loads_.emplace(k, std::move(l)).first->second;
    }

    [[nodiscard]] StateHistory start(const InitialData& d) const {
        StateHistory s;
        s.U = s.U_prev = d.U0;
        s.Th = s.Th_prev = d.Th0;
        s.P = s.P_prev = d.P0;
        s.check_finite();
        return s;
    }

    /// Right-hand side of the first step given level-0 data.
    [[nodiscard]] Eigen::VectorXd first_rhs(const StateHistory& s, const InitialData& d, const Loads& l0,
                                            const Loads& l1) const {
        const auto& c = mc_.coeffs;
        const double dt = grid_.dt();
        const auto& op = *op_;
        const Eigen::VectorXd MKu = op.Mv * s.U + c.a0 * (op.Kv * s.U);
        const Eigen::VectorXd ru = 0.5 * (l0.F + l1.F) + (2.0 / dt) * d.velocity_load + (2.0 / (dt * dt)) * MKu -
                                   0.5 * c.d0 * (op.A * s.U) + 0.5 * c.alpha * (op.B * s.Th) +
                                   0.5 * c.beta * (op.B * s.P);
        return first_.stack(ru, parabolic_rhs_theta(s, l0, l1), parabolic_rhs_p(s, l0, l1));
    }

    /// Right-hand side of the main step n -> n+1 (n >= 1).
    [[nodiscard]] Eigen::VectorXd main_rhs(const StateHistory& s, const Loads& lm, const Loads& l0,
                                           const Loads& l1) const {
        const auto& c = mc_.coeffs;
        const double dt = grid_.dt();
        const auto& op = *op_;
        const Eigen::VectorXd u2 = 2.0 * s.U - s.U_prev;
        const Eigen::VectorXd ua = 2.0 * s.U + s.U_prev;
        const Eigen::VectorXd tha = 2.0 * s.Th + s.Th_prev;
        const Eigen::VectorXd pa = 2.0 * s.P + s.P_prev;
        const Eigen::VectorXd ru = 0.25 * (l1.F + 2.0 * l0.F + lm.F) +
                                   (1.0 / (dt * dt)) * (op.Mv * u2 + c.a0 * (op.Kv * u2)) -
                                   0.25 * c.d0 * (op.A * ua) + 0.25 * c.alpha * (op.B * tha) +
                                   0.25 * c.beta * (op.B * pa);
        return main_.stack(ru, parabolic_rhs_theta(s, l0, l1), parabolic_rhs_p(s, l0, l1));
    }

    void first_step(StateHistory& s, const InitialData& d) {
        if (s.n != 0) throw InvalidArgument("first_step: state is not at level 0");
        const Loads l0 = loads(0);
        const Loads& l1 = loads(1);
        advance(s, first_.factors.solve(first_rhs(s, d, l0, l1)), first_);
    }

    void main_step(StateHistory& s) {
        if (s.n < 1 || s.n >= grid_.N) throw InvalidArgument("main_step: level " + std::to_string(s.n) + " out of range");
        const Loads lm = loads(s.n - 1);
        const Loads l0 = loads(s.n);
        const Loads& l1 = loads(s.n + 1);
        advance(s, main_.factors.solve(main_rhs(s, lm, l0, l1)), main_);
    }

    /// Runs levels 0..N from `d`, calling observe(state) at every level.
    template <class Observer>
    StateHistory run(const InitialData& d, Observer&& observe) {
        StateHistory s = start(d);
        observe(static_cast<const StateHistory&>(s));
        first_step(s, d);
        observe(static_cast<const StateHistory&>(s));
        while (s.n < grid_.N) {
            main_step(s);
            observe(static_cast<const StateHistory&>(s));
        }
        return s;
    }

    StateHistory run(const InitialData& d) {
        return run(d, [](const StateHistory&) {});
    }

private:
    [[nodiscard]] Eigen::VectorXd parabolic_rhs_theta(const StateHistory& s, const Loads& l0, const Loads& l1) const {
        const auto& c = mc_.coeffs;
        const double dt = grid_.dt();
        const auto& op = *op_;
        return 0.5 * (l0.Phi + l1.Phi) + (c.a1 / dt - 0.5 * c.b1) * (op.Mw * s.Th) - 0.5 * c.c1 * (op.Kw * s.Th) -
               (c.gamma / dt) * (op.Mw * s.P) + (c.alpha / dt) * (op.Bt * s.U);
    }

    [[nodiscard]] Eigen::VectorXd parabolic_rhs_p(const StateHistory& s, const Loads& l0, const Loads& l1) const {
        const auto& c = mc_.coeffs;
        const double dt = grid_.dt();
        const auto& op = *op_;
        return 0.5 * (l0.G + l1.G) + (c.a2 / dt) * (op.Mw * s.P) - 0.5 * c.kappa * (op.Kw * s.P) -
               (c.gamma / dt) * (op.Mw * s.Th) + (c.beta / dt) * (op.Bt * s.U);
    }

    static void advance(StateHistory& s, const Eigen::VectorXd& x, const BlockSystem& sys) {
        s.U_prev = std::move(s.U);
        s.Th_prev = std::move(s.Th);
        s.P_prev = std::move(s.P);
        s.U = sys.block(x, 0);
        s.Th = sys.block(x, 1);
        s.P = sys.block(x, 2);
        ++s.n;
        s.check_finite();
    }

    const Operators* op_;
    ManufacturedCase mc_;
    TimeGrid grid_;
    SparseMatrix theta_diag_, p_diag_;
    BlockSystem first_, main_;
    std::map<int, Loads> loads_;
};

inline double quad_form(const SparseMatrix& m, const Eigen::VectorXd& x) { return x.dot(m * x); }

struct EnergyTerms {
    double kinetic = 0.0;       // ||dU||^2
    double grad_kinetic = 0.0;  // a0 ||grad dU||^2
    double bending = 0.0;       // d0 C ||U^{m+1/2}||_h^2
    double theta = 0.0;         // (a1 - |gamma|/gamma0) ||Theta||^2
    double pressure = 0.0;      // (a2 - |gamma| gamma0) ||P||^2
    double accumulator = 0.0;   // dt sum of the dissipation terms

    [[nodiscard]] double total() const { return kinetic + grad_kinetic + bending + theta + pressure + accumulator; }
};

/// Discrete energy E_h at every level k >= 1 (k = m+1) of a run. Feed it
/// each state through observe().
class EnergyMonitor {
public:
    EnergyMonitor(const Operators& op, const ModelCoefficients& c, double dt, double gamma0, double c_coer = 1.0)
        : op_(&op), c_(c), dt_(dt), gamma0_(gamma0), c_coer_(c_coer) {
        const auto [lo, hi] = gamma0_interval(c);
        if (!(gamma0 > lo && gamma0 < hi))
            throw InvalidArgument("gamma0 = " + std::to_string(gamma0) + " outside the admissible interval (" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + ")");
        if (!(c_coer > 0.0)) throw InvalidArgument("EnergyMonitor: C_coer must be positive");
    }

    EnergyMonitor(const Operators& op, const ModelCoefficients& c, double dt)
        : EnergyMonitor(op, c, dt, default_gamma0(c)) {}

    void observe(const StateHistory& s) {
        if (s.n == 0) return;
        if (s.n >= 2) {
            const Eigen::VectorXd th = 0.5 * (s.Th + s.Th_prev), p = 0.5 * (s.P + s.P_prev);
            accumulator_ += dt_ * (c_.b1 * quad_form(op_->Mw, th) + c_.c1 * quad_form(op_->Kw, th) +
                                   c_.kappa * quad_form(op_->Kw, p));
        }
        history_.push_back(terms(s));
    }

    [[nodiscard]] EnergyTerms terms(const StateHistory& s) const {
        const Eigen::VectorXd du = (s.U - s.U_prev) / dt_;
        const Eigen::VectorXd uh = 0.5 * (s.U + s.U_prev);
        const double g = std::abs(c_.gamma);
        EnergyTerms e;
        e.kinetic = quad_form(op_->Mv, du);
        e.grad_kinetic = c_.a0 * quad_form(op_->Kv, du);
        e.bending = c_.d0 * c_coer_ * quad_form(op_->Hn, uh);
        e.theta = (c_.a1 - g / gamma0_) * quad_form(op_->Mw, s.Th);
        e.pressure = (c_.a2 - g * gamma0_) * quad_form(op_->Mw, s.P);
        e.accumulator = accumulator_;
        return e;
    }

    /// Entry k-1 holds E_h at level k.
    [[nodiscard]] const std::vector<EnergyTerms>& history() const { return history_; }

private:
    const Operators* op_;
    ModelCoefficients c_;
    double dt_, gamma0_, c_coer_;
    double accumulator_ = 0.0;
    std::vector<EnergyTerms> history_;
};

/// ||dU||_M^2 + a0 ||grad dU||^2 + d0 a_h(U^{k-1/2}, U^{k-1/2}); conserved by
/// the main loop when alpha = beta = 0 and f = 0.
inline double newmark_energy(const Operators& op, const ModelCoefficients& c, double dt, const StateHistory& s) {
    const Eigen::VectorXd du = (s.U - s.U_prev) / dt;
    const Eigen::VectorXd uh = 0.5 * (s.U + s.U_prev);
    return quad_form(op.Mv, du) + c.a0 * quad_form(op.Kv, du) + c.d0 * quad_form(op.A, uh);
}

}  // namespace thermoplate
