#include "hyst/lure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hyst/preisach.hpp"

namespace hyst {

void LtiSystem::validate() const {
    const auto n = A.rows();
    if (n == 0 || A.cols() != n) throw ValidationError("LtiSystem: A must be square and non-empty");
    if (B.size() != n) throw ValidationError("LtiSystem: B must be n x 1");
    if (C.size() != n) throw ValidationError("LtiSystem: C must be 1 x n");
}

std::complex<double> LtiSystem::transfer(double omega) const {
    const auto n = A.rows();
    Eigen::MatrixXcd M = -A.cast<std::complex<double>>();
    for (Eigen::Index i = 0; i < n; ++i) M(i, i) += std::complex<double>(0.0, omega);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
    if (!lu.isInvertible()) throw SingularAtFrequency("transfer: jw is an eigenvalue of A");
    const Eigen::VectorXcd v = lu.solve(B.cast<std::complex<double>>());
    return (C.cast<std::complex<double>>() * v)(0);
}

namespace {

bool full_rank(const Eigen::MatrixXd& M, double sv_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return false;
    return sv(sv.size() - 1) > sv_tol * sv(0);
}

}  // namespace

bool LtiSystem::controllable(double sv_tol) const {
    const auto n = A.rows();
    Eigen::MatrixXd K(n, n);
    Eigen::VectorXd col = B;
    for (Eigen::Index j = 0; j < n; ++j) {
        K.col(j) = col;
        col = A * col;
    }
    return full_rank(K, sv_tol);
}

bool LtiSystem::observable(double sv_tol) const {
    const auto n = A.rows();
    Eigen::MatrixXd O(n, n);
    Eigen::RowVectorXd row = C;
    for (Eigen::Index i = 0; i < n; ++i) {
        O.row(i) = row;
        row = row * A;
    }
    return full_rank(O, sv_tol);
}

LtiSystem loop_plant(const LtiSystem& sys) { return LtiSystem{sys.A, -sys.B, sys.C}; }

StabilityReport spr_check(const LtiSystem& sys, double lambda_m, double lambda_M, double omega_max,
                          int grid_n) {
    sys.validate();
    StabilityReport rep;
    rep.lambda_m = lambda_m;
    rep.lambda_M = lambda_M;
    rep.hypothesis.controllable = sys.controllable();
    rep.hypothesis.observable = sys.observable();
    rep.hypothesis.lambda_M_positive = lambda_M > 0.0;
    rep.hypothesis.lambda_m_negative = lambda_m < 0.0;

    // Gbar is analytic in the closed right half plane iff the zeros of
    // 1 + lambda_m G, i.e. the eigenvalues of A - lambda_m B C, stay left
    const Eigen::MatrixXd Acl = sys.A - lambda_m * (sys.B * sys.C);
    const Eigen::VectorXcd eigs = Eigen::EigenSolver<Eigen::MatrixXd>(Acl, false).eigenvalues();
    rep.hypothesis.poles_stable = true;
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
        if (eigs(i).real() >= 0.0) rep.hypothesis.poles_stable = false;

    auto re_gbar = [&](double w) {
        const std::complex<double> G = sys.transfer(w);
        const std::complex<double> den = 1.0 + lambda_m * G;
        if (std::abs(den) < 1e-14) return std::numeric_limits<double>::infinity();
        return ((1.0 + lambda_M * G) / den).real();
    };

    // hybrid grid: linear sweep through the plant's natural frequencies plus
    // a log sweep out to omega_max
    const double eig_scale =
        1.0 + Eigen::EigenSolver<Eigen::MatrixXd>(sys.A, false).eigenvalues().cwiseAbs().maxCoeff();
    const double w_lin = std::min(omega_max, 10.0 * eig_scale);
    std::vector<double> ws;
    ws.reserve(grid_n + 2);
    const int n_lin = grid_n / 2, n_log = grid_n - n_lin;
    for (int i = 0; i <= n_lin; ++i) ws.push_back(w_lin * i / n_lin);
    const double w0 = std::max(1e-4, w_lin * 1e-6);
    for (int i = 0; i <= n_log; ++i)
        ws.push_back(w0 * std::pow(omega_max / w0, static_cast<double>(i) / n_log));
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());

    std::vector<double> re(ws.size());
    std::size_t imin = 0;
    bool pole_on_grid = false;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        try {
            re[i] = re_gbar(ws[i]);
        } catch (const SingularAtFrequency&) {
            re[i] = std::numeric_limits<double>::infinity();
            pole_on_grid = true;
        }
        if (re[i] < re[imin]) imin = i;
    }

    // golden-section polish around every grid-local minimum
    constexpr double invphi = 0.6180339887498949;
    auto refine = [&](std::size_t i) {
        double a = ws[i > 0 ? i - 1 : 0];
        double b = ws[std::min(i + 1, ws.size() - 1)];
        if (!(b > a)) return std::pair<double, double>{re[i], ws[i]};
        double c = b - invphi * (b - a), d = a + invphi * (b - a);
        double fc = re_gbar(c), fd = re_gbar(d);
        for (int it = 0; it < 120 && (b - a) > 1e-12 * (1.0 + b); ++it) {
            if (fc < fd) {
                b = d; d = c; fd = fc;
                c = b - invphi * (b - a);
                fc = re_gbar(c);
            } else {
                a = c; c = d; fc = fd;
                d = a + invphi * (b - a);
                fd = re_gbar(d);
            }
        }
        const double x = 0.5 * (a + b);
        return std::pair<double, double>{re_gbar(x), x};
    };

    double best = re[imin], best_w = ws[imin];
    for (std::size_t i = 0; i < ws.size(); ++i) {
        const bool local_min = (i == 0 || re[i] <= re[i - 1]) && (i + 1 == ws.size() || re[i] <= re[i + 1]);
        if (!local_min && i != imin) continue;
        const auto [v, w] = refine(i);
        if (v < best) {
            best = v;
            best_w = w;
        }
    }
    rep.min_real_part = best;
    rep.min_real_omega = best_w;
    rep.limit_at_infinity = 1.0;  // strictly proper G

    char desc[160];
    std::snprintf(desc, sizeof desc, "linear[0,%.6g]x%d + log[%.6g,%.6g]x%d, golden-refined%s", w_lin,
                  n_lin, w0, omega_max, n_log, pole_on_grid ? " (pole skipped on grid)" : "");
    rep.omega_grid = desc;

    rep.spr_ok = rep.hypothesis.controllable && rep.hypothesis.observable &&
                 rep.hypothesis.lambda_M_positive && rep.hypothesis.lambda_m_negative &&
                 rep.hypothesis.poles_stable && rep.min_real_part > 0.0 && rep.limit_at_infinity > 0.0;
    return rep;
}

LureTrajectory simulate_lure(const LtiSystem& sys, const Eigen::VectorXd& x0,
                             const WeightingFunction& mu, const MemoryInterface& L0, double t_final,
                             double dt_max) {
    sys.validate();
    if (x0.size() != sys.A.rows()) throw ValidationError("simulate_lure: x0 dimension mismatch");
    if (!(dt_max > 0.0) || !(t_final > 0.0)) throw ValidationError("simulate_lure: need positive dt_max, t_final");
    const double u0 = (sys.C * x0)(0);
    if (std::abs(u0 - L0.terminal()) > 1e-9 * std::max(1.0, std::abs(u0)))
        throw InitialValueMismatch("simulate_lure: C x0 must match the interface terminal value");

    PreisachState state(mu, L0);
    const auto n = sys.A.rows();
    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(t_final / dt_max));
    LureTrajectory traj;
    traj.times.reserve(n_steps + 1);
    traj.states.resize(0, n);
    std::vector<Eigen::VectorXd> xs;
    xs.reserve(n_steps + 1);

    // stage outputs use the frozen interface of the current step
    auto deriv = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        const double u = (sys.C * x)(0);
        const double y = state.peek(u);
        return sys.A * x - sys.B * y;  // w = -y
    };
    auto rk4 = [&](const Eigen::VectorXd& x, double h) -> Eigen::VectorXd {
        const Eigen::VectorXd k1 = deriv(x);
        const Eigen::VectorXd k2 = deriv(x + 0.5 * h * k1);
        const Eigen::VectorXd k3 = deriv(x + 0.5 * h * k2);
        const Eigen::VectorXd k4 = deriv(x + h * k3);
        return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
    auto u_rate = [&](const Eigen::VectorXd& x) { return (sys.C * deriv(x))(0); };

    Eigen::VectorXd x = x0;
    double t = 0.0;
    auto record = [&](double tt, const Eigen::VectorXd& xx) {
        const double u = (sys.C * xx)(0);
        const double y = state.output();
        traj.times.push_back(tt);
        xs.push_back(xx);
        traj.u_trace.push_back(u);
        traj.y_trace.push_back(y);
        traj.equilibrium_residual.push_back((sys.A * xx - sys.B * y).norm());
    };
    record(0.0, x);
    const std::size_t snap_every = std::max<std::size_t>(1, n_steps / 64);
    traj.interface_snapshots.emplace_back(0.0, state.interface());

    std::size_t step_i = 0;
    while (t < t_final - 1e-15 * t_final) {
        double h = std::min(dt_max, t_final - t);
        Eigen::VectorXd x_try = rk4(x, h);

        // split the step at an input-direction reversal
        const double d0 = u_rate(x);
        const double d1 = u_rate(x_try);
        if (d0 * d1 < 0.0 && std::abs(d0) > 1e-13) {
            double lo = 0.0, hi = h;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double dm = u_rate(rk4(x, mid));
                if ((dm < 0.0) == (d0 < 0.0))
                    lo = mid;
                else
                    hi = mid;
            }
            const double h_split = 0.5 * (lo + hi);
            if (h_split < 1e-12 * dt_max)
                throw StepSizeUnderflow("simulate_lure: reversal split underflow");
            h = h_split;
            x_try = rk4(x, h);
        }

        x = x_try;
        t += h;
        state.apply((sys.C * x)(0));  // interface commits once per accepted step
        record(t, x);
        ++step_i;
        if (step_i % snap_every == 0) traj.interface_snapshots.emplace_back(t, state.interface());
    }

    traj.states.resize(static_cast<Eigen::Index>(xs.size()), n);
    for (std::size_t i = 0; i < xs.size(); ++i) traj.states.row(static_cast<Eigen::Index>(i)) = xs[i];

    // convergence: residual below 1e-6 (1 + ||x0||), sustained for 5% of t_final
    const double threshold = 1e-6 * (1.0 + x0.norm());
    const double window = 0.05 * t_final;
    traj.final_residual = traj.equilibrium_residual.back();
    std::size_t start = 0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (traj.equilibrium_residual[i] < threshold) {
            if (traj.times[i] - traj.times[start] >= window) {
                traj.converged = true;
                traj.convergence_time = traj.times[start];
                break;
            }
        } else {
            start = i + 1;
        }
    }
    return traj;
}

}  // namespace hyst
