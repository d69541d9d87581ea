#pragma once

#include <utility>
#include <vector>

#include "hyst/preisach.hpp"

namespace hyst {

/// One steady-state period of (u, y) pairs, split into the monotone branches.
struct HysteresisLoop {
    std::vector<std::pair<double, double>> ascending;   // u strictly increasing
    std::vector<std::pair<double, double>> descending;  // u strictly decreasing
    double u_min{}, u_max{};
    double t1{}, t2{}, period{};

    /// Closed traversal ascending then descending (shared endpoints dropped).
    std::vector<std::pair<double, double>> closed_polyline() const;
};

struct CrossoverSet {
    std::vector<std::pair<double, double>> points;          // interior isolated crossovers (u_c, y_c), sorted by u_c
    std::vector<std::pair<double, double>> segments;        // (u_lo, u_hi) where the branches coincide
    int maximal_components{};                               // connected components of the branch intersection,
                                                            // including the two trivial extremes
    double scan_scale{1.0};                                 // max(1, max |crossover integral|) over the scan lattice
};

enum class LoopKind { simple_cw, simple_ccw, butterfly, multi_loop, degenerate_line };

struct LoopClassification {
    LoopKind kind{LoopKind::degenerate_line};
    int subloop_count{};
    std::vector<double> subloop_areas;
    double total_area{};
    CrossoverSet crossovers;
};

struct ClassifyOptions {
    int scan_n{256};
    double tol{1e-9};
    /// |total area| threshold for the butterfly verdict; non-positive selects
    /// a default (1e-9 closed-form, 1e-6*(u_max-u_min)^2 for sampled grids).
    double area_tol{0.0};
    int samples_per_branch{2048};
};

/// Drive the operator through one transient period of a triangle wave over
/// [u_min, u_max], then record one steady period with samples_per_branch
/// intervals per branch.  Rate independence makes the wave shape immaterial.
HysteresisLoop run_periodic(PreisachState state, double u_min, double u_max, int samples_per_branch);

/// Discrete Green's-theorem (shoelace) area of the closed loop; positive =
/// counterclockwise traversal.
double signed_area(const HysteresisLoop& loop);
double signed_area(const std::vector<std::pair<double, double>>& closed_polyline);

/// Phase polyline of an input/output pair; step outputs contribute exact
/// vertical jump edges, so relay loops close to exact rectangles.
std::vector<std::pair<double, double>> phase_polyline(const SampledSignal& u, const SampledSignal& y);

/// ∬ mu over {u_c < alpha < u_max, u_min < beta < u_c}; vanishes exactly at
/// the crossover inputs of the steady loop spanning [u_min, u_max].
double crossover_integral(const WeightingFunction& mu, double u_min, double u_max, double u_c);

/// Scan the crossover integral over [u_min, u_max]: sign changes are polished
/// by bisection, tangential touches by golden-section minimization, and
/// near-zero plateaus become coincidence segments.  y_c values come from the
/// ascending branch of the loop started from the virgin interface at u_min.
CrossoverSet find_crossovers(const WeightingFunction& mu, double u_min, double u_max,
                             int scan_n = 256, double tol = 1e-9);

/// Split the steady loop at its interior crossovers and classify:
///   butterfly   = exactly two opposite-oriented subloops with zero net area
///   multi_loop  = certified interior crossover component otherwise
///   simple_cw / simple_ccw by area sign when no interior crossover exists
///   degenerate_line when the branches coincide everywhere
LoopClassification classify(const WeightingFunction& mu, double u_min, double u_max,
                            const ClassifyOptions& opts = {});

/// Find an input range whose steady loop has zero signed area, extending
/// u_max (negative-dominant density) or u_min (positive-dominant) from the
/// seed triangle by bisection.  Throws MomentExhausted when the support
/// boundary is reached before the residual area cancels.
std::pair<double, double> design_zero_area_input(const WeightingFunction& mu, double alpha1,
                                                 double beta1, double tol = 1e-9);

}  // namespace hyst
