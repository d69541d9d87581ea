#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyst/plane.hpp"
#include "hyst/weighting.hpp"

namespace hyst {

/// Linear block of the feedback interconnection
///   x' = A x + B w,  z = C x,  with w = -y, u = z
/// closed around a Preisach operator y = P(u, L0).
struct LtiSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    Eigen::RowVectorXd C;

    int order() const { return static_cast<int>(A.rows()); }
    void validate() const;

    /// G(jw) = C (jwI - A)^{-1} B.  Throws SingularAtFrequency when jw is an
    /// eigenvalue of A (up to conditioning).
    std::complex<double> transfer(double omega) const;

    bool controllable(double sv_tol = 1e-10) const;
    bool observable(double sv_tol = 1e-10) const;
};

/// The open-loop system from operator output y to operator input u under
/// w = -y, i.e. (A, -B, C).  The circle-criterion test certifies this loop.
LtiSystem loop_plant(const LtiSystem& sys);

struct StabilityReport {
    double lambda_m{}, lambda_M{};
    bool spr_ok{};
    double min_real_part{};          // inf over omega of Re Gbar(jw)
    double min_real_omega{};
    double limit_at_infinity{};      // Gbar(j inf) = 1 for strictly proper G
    std::string omega_grid;          // grid description for the report
    struct {
        bool controllable{}, observable{};
        bool lambda_M_positive{}, lambda_m_negative{};
        bool poles_stable{};         // eigenvalues of A - lambda_m B C in open LHP
    } hypothesis;
};

/// Strict positive-realness of Gbar(jw) = (1 + lambda_M G)(1 + lambda_m G)^{-1}
/// on a hybrid linear+log omega grid over [0, omega_max] with golden-section
/// refinement around grid minima.
StabilityReport spr_check(const LtiSystem& sys, double lambda_m, double lambda_M,
                          double omega_max = 1e3, int grid_n = 2000);

struct LureTrajectory {
    std::vector<double> times;
    Eigen::MatrixXd states;                 // one row per sample
    std::vector<double> u_trace;            // C x
    std::vector<double> y_trace;            // operator output
    std::vector<double> equilibrium_residual;  // ||A x - B y||
    std::vector<std::pair<double, MemoryInterface>> interface_snapshots;
    bool converged{};
    double convergence_time{-1.0};
    double final_residual{};
};

/// Fixed-step RK4 with the hysteresis inside the loop.  Stage outputs use a
/// frozen copy of the interface; the interface commits once per accepted step.
/// Steps are split by bisection at input-direction reversals.  Convergence is
/// declared when the residual stays below 1e-6*(1+||x0||) for 5% of t_final.
LureTrajectory simulate_lure(const LtiSystem& sys, const Eigen::VectorXd& x0,
                             const WeightingFunction& mu, const MemoryInterface& L0,
                             double t_final, double dt_max);

}  // namespace hyst
