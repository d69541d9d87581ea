// Acceptance suite: one check per shipped guarantee, each printed as a
// single [PASS]/[FAIL] line.  Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "hyst/loop.hpp"
#include "hyst/lure.hpp"
#include "hyst/preisach.hpp"
#include "hyst/relay.hpp"
#include "../support/oracles.hpp"

using namespace hyst;
constexpr double kPi = std::numbers::pi;

namespace {

int g_failures = 0;

void report(int idx, const std::string& what, bool ok, double seconds, const std::string& detail) {
    std::printf("[%s] %d. %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", idx, what.c_str(), seconds,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

void criterion(int idx, const std::string& what, const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(idx, what, ok, dt, detail);
}

double butterfly_ref(double u, bool ascending) {
    if (ascending) return u <= 0 ? -(1 + u) * (1 + u) : -(1 - u) * (1 + 3 * u);
    return u >= 0 ? -(1 - u) * (1 - u) : -(1 + u) * (1 - 3 * u);
}

LtiSystem bench_plant() {
    LtiSystem sys;
    sys.A = Eigen::MatrixXd{{0, 1, 0}, {0, 0, 1}, {-26, -28, -3}};
    sys.B = Eigen::VectorXd{{0, 0, -26}};
    sys.C = Eigen::RowVectorXd{{1, 0, 0}};
    return sys;
}

}  // namespace

int main() {
    // 1. closed-form reproduction of the two-sided butterfly output
    HysteresisLoop bf_loop;
    criterion(1, "closed-form butterfly trace, L-inf <= 1e-9, < 1 s", [&](std::string& detail) {
        const auto t0 = std::chrono::steady_clock::now();
        auto bf = WeightingFunction::butterfly_sym(1.0);
        bf_loop = run_periodic(PreisachState(bf, MemoryInterface::from_value(-1.0)), -1.0, 1.0, 4096);
        double worst = 0.0;
        for (const auto& [u, y] : bf_loop.ascending)
            worst = std::max(worst, std::abs(y - butterfly_ref(u, true)));
        for (const auto& [u, y] : bf_loop.descending)
            worst = std::max(worst, std::abs(y - butterfly_ref(u, false)));
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[96];
        std::snprintf(buf, sizeof buf, "L-inf %.2e, %.3f s", worst, secs);
        detail = buf;
        return worst <= 1e-9 && secs < 1.0;
    });

    // 2. zero signed area of that loop; exact relay loop areas
    criterion(2, "butterfly area <= 1e-9; relay loop area 2(alpha-beta) / 0", [&](std::string& detail) {
        const double area = signed_area(bf_loop);

        auto relay_area = [](double lo, double hi) {
            RelayConfig cfg{0.3, -0.4, RelayOrientation::ccw, -1};
            std::vector<double> t, v;
            // two triangle periods; the second is steady
            const double legs[] = {0.0, lo, hi, lo, hi, lo};
            for (int i = 0; i < 6; ++i) {
                t.push_back(i);
                v.push_back(legs[i]);
            }
            auto u = make_signal(t, v);
            auto y = relay_eval(cfg, u);
            SampledSignal ul, yl;
            yl.interp = SampledSignal::Interp::step;
            const double t_start = 3.0;
            ul.push(t_start, u.value_at(t_start));
            for (std::size_t i = 0; i < u.size(); ++i)
                if (u.times[i] > t_start) ul.push(u.times[i], u.values[i]);
            yl.push(t_start, y.value_at(t_start));
            for (std::size_t i = 0; i < y.size(); ++i)
                if (y.times[i] > t_start) yl.push(y.times[i], y.values[i]);
            return signed_area(phase_polyline(ul, yl));
        };
        const double spanning = relay_area(-1.0, 1.0);
        const double partial = relay_area(0.0, 1.0);  // crosses alpha only
        char buf[120];
        std::snprintf(buf, sizeof buf, "area %.2e, relay err %.2e / %.2e", area,
                      std::abs(spanning - 2.0 * (0.3 + 0.4)), std::abs(partial));
        detail = buf;
        // the rectangle area is exact up to shoelace rounding (a few ulp)
        return std::abs(area) <= 1e-9 && std::abs(spanning - 2.0 * (0.3 + 0.4)) <= 1e-13 &&
               partial == 0.0;
    });

    // 3. crossover set of the sine weighting + four subloops
    criterion(3, "sine crossovers {-0.5, 0, 0.5} within 1e-9, probes nonzero, 4 subloops, < 5 s",
              [&](std::string& detail) {
                  const auto t0 = std::chrono::steady_clock::now();
                  auto ms = WeightingFunction::multiloop_sin();
                  auto cs = find_crossovers(ms, -1.0, 1.0, 256, 1e-9);
                  bool ok = cs.points.size() == 3;
                  const double expect[] = {-0.5, 0.0, 0.5};
                  const double delta = 2.0 / 256;
                  for (std::size_t i = 0; ok && i < 3; ++i) {
                      ok = std::abs(cs.points[i].first - expect[i]) <= 1e-9;
                      const double fm = crossover_integral(ms, -1, 1, expect[i] - delta);
                      const double fp = crossover_integral(ms, -1, 1, expect[i] + delta);
                      ok = ok && std::abs(fm) > 1e-9 && std::abs(fp) > 1e-9;
                  }
                  auto cls = classify(ms, -1.0, 1.0, {});
                  ok = ok && cls.subloop_count == 4 && cls.kind == LoopKind::multi_loop;
                  const double secs =
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                  char buf[120];
                  std::snprintf(buf, sizeof buf, "roots %zu, subloops %d, %.3f s", cs.points.size(),
                                cls.subloop_count, secs);
                  detail = buf;
                  return ok && secs < 5.0;
              });

    // 4. slope bounds of the sine weighting
    criterion(4, "lambda bounds (-1/(2 pi), 4/pi) within 1e-9", [&](std::string& detail) {
        auto lb = lambda_bounds(WeightingFunction::multiloop_sin(), 256);
        const double em = std::abs(lb.lambda_m + 1.0 / (2.0 * kPi));
        const double eM = std::abs(lb.lambda_M - 4.0 / kPi);
        char buf[96];
        std::snprintf(buf, sizeof buf, "err %.2e / %.2e", em, eM);
        detail = buf;
        return em <= 1e-9 && eM <= 1e-9;
    });

    // 5. circle-criterion verdicts
    criterion(5, "SPR verdict for the benchmark loop and the rational example", [&](std::string& detail) {
        auto sys = bench_plant();
        auto rep = spr_check(loop_plant(sys), -1.0 / (2.0 * kPi), 4.0 / kPi);
        bool ok = rep.spr_ok && rep.min_real_part > 0.0;

        LtiSystem scalar;
        scalar.A = Eigen::MatrixXd{{-1.0}};
        scalar.B = Eigen::VectorXd{{1.0}};
        scalar.C = Eigen::RowVectorXd{{1.0}};
        double worst = 0.0;
        for (int k = 0; k <= 200; ++k) {
            const double w = 50.0 * k / 200;
            const std::complex<double> G = scalar.transfer(w);
            const double re = ((1.0 + 1.0 * G) / (1.0 - 0.5 * G)).real();
            const double analytic = (w * w + 1.0) / (w * w + 0.25);
            worst = std::max(worst, std::abs(re - analytic));
        }
        ok = ok && worst <= 1e-12;
        char buf[120];
        std::snprintf(buf, sizeof buf, "min Re %.6f at w=%.3f, rational err %.2e", rep.min_real_part,
                      rep.min_real_omega, worst);
        detail = buf;
        return ok;
    });

    // 6. feedback interconnection settles; linear limit matches the matrix exponential
    criterion(6, "interconnection residual < 1e-6 by t=50; zero-weighting matches expm",
              [&](std::string& detail) {
                  auto sys = bench_plant();
                  const Eigen::VectorXd x0{{0.8, -1.0, -1.0}};
                  const PlanePoint corners[] = {{1.0, -0.9}, {0.0, -0.9}, {0.0, 0.0}};
                  auto L0 = MemoryInterface::from_corners(corners).updated((sys.C * x0)(0));
                  auto traj =
                      simulate_lure(sys, x0, WeightingFunction::multiloop_sin(), L0, 50.0, 0.002);
                  bool ok = traj.converged && traj.final_residual < 1e-6 * (1.0 + x0.norm());

                  std::vector<WeightingFunction::Region> none;
                  auto zero = WeightingFunction::piecewise_constant(std::move(none));
                  double errs[2];
                  const double dts[2] = {1e-2, 5e-3};
                  for (int p = 0; p < 2; ++p) {
                      auto lin = simulate_lure(sys, x0, zero, MemoryInterface::from_value(0.8), 2.0,
                                               dts[p]);
                      const Eigen::VectorXd exact = (sys.A * 2.0).exp() * x0;
                      errs[p] = (lin.states.bottomRows(1).transpose() - exact).norm();
                  }
                  const double order = std::log2(errs[0] / errs[1]);
                  ok = ok && errs[0] < 1e-6 && order >= 3.5;
                  char buf[140];
                  std::snprintf(buf, sizeof buf,
                                "residual %.2e at t=%.1f, expm err %.2e, order %.2f",
                                traj.final_residual, traj.times.back(), errs[0], order);
                  detail = buf;
                  return ok;
              });

    // 7. interface path vs relay-lattice oracle over random densities
    criterion(7, "oracle equivalence over 100 random densities, order >= 0.9", [&](std::string& detail) {
        std::mt19937_64 g = testing::rng(1234);
        const int grids[3] = {64, 128, 256};
        double mean_err[3] = {0, 0, 0};
        bool bound_ok = true;
        for (int trial = 0; trial < 100; ++trial) {
            auto mu = (trial % 2 == 0) ? testing::random_regions_mu(g)
                                       : testing::random_grid_mu(g, 8, GridInterp::piecewise_constant);
            auto u = testing::random_input(g, 0.0, 3, -1.0, 1.0);
            auto [y_ref, st] =
                preisach_eval(PreisachState(mu, MemoryInterface::from_value(0.0)), u);
            for (int gi = 0; gi < 3; ++gi) {
                auto y_or = preisach_eval_oracle(mu, MemoryInterface::from_value(0.0), u, grids[gi]);
                double e = 0.0;
                for (std::size_t i = 0; i < y_ref.size(); ++i)
                    e = std::max(e, std::abs(y_ref.values[i] - y_or.values[i]));
                mean_err[gi] += e / 100.0;
                bound_ok = bound_ok && e <= 64.0 / grids[gi];
            }
        }
        const double p1 = std::log2(mean_err[0] / mean_err[1]);
        const double p2 = std::log2(mean_err[1] / mean_err[2]);
        char buf[140];
        std::snprintf(buf, sizeof buf, "mean err %.2e/%.2e/%.2e, orders %.2f, %.2f", mean_err[0],
                      mean_err[1], mean_err[2], p1, p2);
        detail = buf;
        return bound_ok && std::min(p1, p2) >= 0.9;
    });

    // 8. hysteresis operator axioms
    criterion(8, "rate independence, causality, wiping-out congruency, slope window",
              [&](std::string& detail) {
                  std::mt19937_64 g = testing::rng(77);
                  bool ok = true;
                  for (int trial = 0; trial < 20 && ok; ++trial) {
                      auto mu = (trial % 3 == 0) ? WeightingFunction::multiloop_sin()
                                : (trial % 3 == 1) ? testing::random_regions_mu(g)
                                                    : testing::random_grid_mu(g, 8);
                      auto u = testing::random_input(g, 0.0, 5, -1.0, 1.0);

                      // rate independence: a piecewise-linear time warp must not
                      // change a single output bit
                      std::vector<double> warped(u.times.size());
                      for (std::size_t i = 0; i < u.times.size(); ++i)
                          warped[i] = u.times[i] * (1.3 + 0.2 * (i % 3));
                      for (std::size_t i = 1; i < warped.size(); ++i)
                          warped[i] = std::max(warped[i], warped[i - 1] + 0.1);
                      auto u2 = make_signal(warped, u.values);
                      auto [y1, s1] =
                          preisach_eval(PreisachState(mu, MemoryInterface::from_value(0.0)), u);
                      auto [y2, s2] =
                          preisach_eval(PreisachState(mu, MemoryInterface::from_value(0.0)), u2);
                      for (std::size_t i = 0; i < y1.size(); ++i) ok = ok && y1.values[i] == y2.values[i];

                      // causality under truncation
                      SampledSignal ut;
                      for (std::size_t i = 0; i + 2 < u.size(); ++i) ut.push(u.times[i], u.values[i]);
                      auto [y3, s3] =
                          preisach_eval(PreisachState(mu, MemoryInterface::from_value(0.0)), ut);
                      for (std::size_t i = 0; i < y3.size(); ++i) ok = ok && y3.values[i] == y1.values[i];

                      // wiping-out congruency on a repeated minor cycle
                      PreisachState st(mu, MemoryInterface::from_value(0.0));
                      const double a = 0.75, b = -0.4;
                      st.apply(a);
                      st.apply(b);
                      const double ya1 = st.apply(a), yb1 = st.apply(b);
                      const double ya2 = st.apply(a), yb2 = st.apply(b);
                      ok = ok && ya1 == ya2 && yb1 == yb2;

                      // discrete slopes confined to the bound window
                      const auto lb = lambda_bounds(mu, 96);
                      const double slack = 1e-6 * (std::abs(lb.lambda_m) + std::abs(lb.lambda_M)) + 1e-12;
                      PreisachState st2(mu, MemoryInterface::from_value(0.0));
                      double prev = 0.0;
                      std::uniform_real_distribution<double> val(-1.0, 1.0);
                      for (int k = 0; k < 25; ++k) {
                          const double v = val(g);
                          if (std::abs(v - prev) < 1e-9) continue;
                          const double y0 = st2.output();
                          const double slope = (st2.apply(v) - y0) / (v - prev);
                          ok = ok && slope >= lb.lambda_m - slack && slope <= lb.lambda_M + slack;
                          prev = v;
                      }
                  }
                  detail = ok ? "all four axioms exact" : "axiom violated";
                  return ok;
              });

    // 9. same-orientation double loop: crossover without a butterfly
    criterion(9, "double loop: multi_loop, two same-sign subloops, nonzero total",
              [&](std::string& detail) {
                  auto cls = classify(WeightingFunction::double_loop_same_orientation(1.0), -1, 1, {});
                  const bool ok = cls.kind == LoopKind::multi_loop && cls.subloop_count == 2 &&
                                  cls.subloop_areas.size() == 2 &&
                                  cls.subloop_areas[0] * cls.subloop_areas[1] > 0.0 &&
                                  std::abs(cls.total_area) > 1e-3;
                  char buf[120];
                  std::snprintf(buf, sizeof buf, "areas %.6f, %.6f, total %.6f", cls.subloop_areas[0],
                                cls.subloop_areas[1], cls.total_area);
                  detail = buf;
                  return ok;
              });

    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return g_failures;
}
