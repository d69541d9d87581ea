#include "scenario.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "hyst/loop.hpp"
#include "hyst/lure.hpp"
#include "hyst/preisach.hpp"
#include "hyst/version.hpp"
#include "hyst/weighting.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace hyst::cli {

namespace {

// ---------------------------------------------------------------------------
// deterministic JSON writer: fixed key order, every real with 17 significant
// digits, wall time as the final field

std::string fmt_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct JsonOut {
    std::ostringstream os;
    int indent = 0;
    bool need_comma = false;

    void pad() {
        for (int i = 0; i < indent; ++i) os << "  ";
    }
    void sep() {
        if (need_comma) os << ",";
        os << "\n";
        pad();
        need_comma = true;
    }
    void open_obj(const std::string& key = {}) {
        sep();
        if (!key.empty()) os << '"' << key << "\": ";
        os << "{";
        ++indent;
        need_comma = false;
    }
    void close_obj() {
        --indent;
        os << "\n";
        pad();
        os << "}";
        need_comma = true;
    }
    void open_arr(const std::string& key) {
        sep();
        os << '"' << key << "\": [";
        ++indent;
        need_comma = false;
    }
    void close_arr() {
        --indent;
        os << "\n";
        pad();
        os << "]";
        need_comma = true;
    }
    void field(const std::string& key, double v) {
        sep();
        os << '"' << key << "\": " << fmt_double(v);
    }
    void field(const std::string& key, int v) {
        sep();
        os << '"' << key << "\": " << v;
    }
    void field(const std::string& key, bool v) {
        sep();
        os << '"' << key << "\": " << (v ? "true" : "false");
    }
    void field(const std::string& key, const std::string& v) {
        sep();
        os << '"' << key << "\": " << json(v).dump();
    }
    void elem(double v) {
        sep();
        os << fmt_double(v);
    }
    void elem_pair(double a, double b) {
        sep();
        os << "[" << fmt_double(a) << ", " << fmt_double(b) << "]";
    }
};

// ---------------------------------------------------------------------------
// scenario parsing

double need_num(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ValidationError(std::string("scenario: missing numeric field '") + key + "'");
    return j[key].get<double>();
}

double opt_num(const json& j, const char* key, double def) {
    if (!j.contains(key)) return def;
    if (!j[key].is_number()) throw ValidationError(std::string("scenario: field '") + key + "' must be numeric");
    return j[key].get<double>();
}

WeightingFunction parse_weighting(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ValidationError("scenario: weighting.kind required");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "builtin") {
        const std::string name = j.value("name", "");
        if (name == "butterfly_sym") return WeightingFunction::butterfly_sym(opt_num(j, "b1", 1.0));
        if (name == "double_loop_same_orientation")
            return WeightingFunction::double_loop_same_orientation(opt_num(j, "b1", 1.0));
        if (name == "multiloop_sin") return WeightingFunction::multiloop_sin();
        throw ValidationError("scenario: unknown builtin weighting '" + name + "'");
    }
    if (kind == "piecewise_constant") {
        std::vector<WeightingFunction::Region> regions;
        for (const json& jr : j.at("regions")) {
            WeightingFunction::Region reg;
            reg.density = need_num(jr, "density");
            for (const json& jp : jr.at("polygon")) {
                if (!jp.is_array() || jp.size() != 2)
                    throw ValidationError("scenario: polygon vertices are [beta, alpha] pairs");
                reg.polygon.push_back({jp[0].get<double>(), jp[1].get<double>()});
            }
            if (reg.polygon.size() < 3) throw ValidationError("scenario: polygon needs >= 3 vertices");
            regions.push_back(std::move(reg));
        }
        return WeightingFunction::piecewise_constant(std::move(regions));
    }
    if (kind == "grid") {
        const json& js = j.at("support");
        Rect support{js.at("beta")[0].get<double>(), js.at("beta")[1].get<double>(),
                     js.at("alpha")[0].get<double>(), js.at("alpha")[1].get<double>()};
        const int n = j.at("n").get<int>();
        std::vector<double> samples = j.at("samples").get<std::vector<double>>();
        const std::string interp = j.value("interp", "bilinear");
        return WeightingFunction::sampled_grid(
            support, n, std::move(samples),
            interp == "piecewise_constant" ? GridInterp::piecewise_constant : GridInterp::bilinear);
    }
    throw ValidationError("scenario: weighting.kind must be builtin|piecewise_constant|grid");
}

MemoryInterface parse_interface(const json& j) {
    if (!j.is_object() || !j.contains("kind")) return MemoryInterface::from_value(0.0);
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "value") return MemoryInterface::from_value(need_num(j, "value"));
    if (kind == "staircase") {
        std::vector<PlanePoint> corners;
        for (const json& jp : j.at("corners")) {
            if (!jp.is_array() || jp.size() != 2)
                throw ValidationError("scenario: staircase corners are [alpha, beta] pairs");
            corners.push_back({jp[0].get<double>(), jp[1].get<double>()});
        }
        return MemoryInterface::from_corners(corners);
    }
    if (kind == "named") {
        const std::string name = j.value("name", "");
        if (name == "deep_min_staircase") {
            const PlanePoint corners[] = {{1.0, -0.9}, {0.0, -0.9}, {0.0, 0.0}};
            return MemoryInterface::from_corners(corners);
        }
        throw ValidationError("scenario: unknown named interface '" + name + "'");
    }
    throw ValidationError("scenario: interface.kind must be value|staircase|named");
}

LtiSystem parse_plant(const json& j) {
    LtiSystem sys;
    const auto A = j.at("A").get<std::vector<std::vector<double>>>();
    const auto B = j.at("B").get<std::vector<double>>();
    const auto C = j.at("C").get<std::vector<double>>();
    const int n = static_cast<int>(A.size());
    sys.A.resize(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(A[i].size()) != n) throw ValidationError("scenario: plant.A must be square");
        for (int k = 0; k < n; ++k) sys.A(i, k) = A[i][k];
    }
    sys.B = Eigen::Map<const Eigen::VectorXd>(B.data(), static_cast<Eigen::Index>(B.size()));
    sys.C = Eigen::Map<const Eigen::RowVectorXd>(C.data(), static_cast<Eigen::Index>(C.size()));
    sys.validate();
    return sys;
}

// ---------------------------------------------------------------------------
// trace writing

void write_csv_header(std::ofstream& f, int n_states) {
    f << "t,u,y";
    for (int i = 1; i <= n_states; ++i) f << ",x" << i;
    f << "\n";
}

void write_csv_row(std::ofstream& f, double t, double u, double y, const double* x = nullptr,
                   int n = 0) {
    f << fmt_double(t) << "," << fmt_double(u) << "," << fmt_double(y);
    for (int i = 0; i < n; ++i) f << "," << fmt_double(x[i]);
    f << "\n";
}

void write_loop_trace(const fs::path& p, const HysteresisLoop& loop) {
    std::ofstream f(p);
    write_csv_header(f, 0);
    const std::size_t na = loop.ascending.size();
    for (std::size_t i = 0; i < na; ++i)
        write_csv_row(f, static_cast<double>(i) / (na - 1), loop.ascending[i].first,
                      loop.ascending[i].second);
    const std::size_t nd = loop.descending.size();
    for (std::size_t i = 1; i < nd; ++i)
        write_csv_row(f, 1.0 + static_cast<double>(i) / (nd - 1), loop.descending[i].first,
                      loop.descending[i].second);
}

void emit_crossovers(JsonOut& w, const CrossoverSet& cs) {
    w.open_arr("crossover_points");
    for (const auto& [u, y] : cs.points) w.elem_pair(u, y);
    w.close_arr();
    w.open_arr("coincidence_segments");
    for (const auto& [lo, hi] : cs.segments) w.elem_pair(lo, hi);
    w.close_arr();
    w.field("maximal_components", cs.maximal_components);
}

const char* kind_name(LoopKind k) {
    switch (k) {
        case LoopKind::simple_cw: return "simple_cw";
        case LoopKind::simple_ccw: return "simple_ccw";
        case LoopKind::butterfly: return "butterfly";
        case LoopKind::multi_loop: return "multi_loop";
        case LoopKind::degenerate_line: return "degenerate_line";
    }
    return "?";
}

void emit_spr(JsonOut& w, const StabilityReport& rep) {
    w.open_obj("spr");
    w.field("lambda_m", rep.lambda_m);
    w.field("lambda_M", rep.lambda_M);
    w.field("spr_ok", rep.spr_ok);
    w.field("min_real_part", rep.min_real_part);
    w.field("min_real_omega", rep.min_real_omega);
    w.field("limit_at_infinity", rep.limit_at_infinity);
    w.field("omega_grid", rep.omega_grid);
    w.open_obj("hypothesis_flags");
    w.field("controllable", rep.hypothesis.controllable);
    w.field("observable", rep.hypothesis.observable);
    w.field("lambda_M_positive", rep.hypothesis.lambda_M_positive);
    w.field("lambda_m_negative", rep.hypothesis.lambda_m_negative);
    w.field("poles_stable", rep.hypothesis.poles_stable);
    w.close_obj();
    w.close_obj();
}

}  // namespace

void print_builtins() {
    std::printf("weighting builtins:\n");
    std::printf("  butterfly_sym                 b1=1.0   -1 where alpha <= -beta, +1 elsewhere on the triangle {-b1 < beta < alpha < b1}\n");
    std::printf("  double_loop_same_orientation  b1=1.0   +1 on the triangle {-b1 < beta < alpha < b1} except -1 on the lens {-b1 < beta < 0, 0 < alpha < beta + b1}\n");
    std::printf("  multiloop_sin                 (none)   sin(2*pi*(alpha-beta)) + sin(2*pi*(alpha+beta)) on {-1 < beta < alpha < 1}\n");
    std::printf("named interfaces:\n");
    std::printf("  deep_min_staircase            corners (1,-0.9) -> (0,-0.9) -> (0,0): prior maximum 1, running minimum -0.9, input back at 0\n");
    std::printf("scenario interface kinds: value {\"value\": v} | staircase {\"corners\": [[alpha,beta],...]} | named {\"name\": ...}\n");
}

int run_scenario(const std::string& path, const std::string& out_override) {
    const auto t_start = std::chrono::steady_clock::now();
    json j;
    std::string name, task;
    fs::path out_dir;
    try {
        std::ifstream f(path);
        if (!f) throw ValidationError("cannot open scenario file");
        f >> j;
        name = j.value("name", fs::path(path).stem().string());
        if (!j.contains("task")) throw ValidationError("scenario: 'task' required");
        task = j["task"].get<std::string>();
        out_dir = !out_override.empty() ? fs::path(out_override)
                                        : (j.contains("out") ? fs::path(j["out"].get<std::string>())
                                                             : fs::path(path).parent_path() /
                                                                   (fs::path(path).stem().string() + "_out"));
        fs::create_directories(out_dir);
    } catch (const std::exception& e) {
        std::cerr << path << ": validation error: " << e.what() << "\n";
        return 2;
    }

    JsonOut w;
    w.os << "{";
    ++w.indent;
    w.field("name", name);
    w.field("task", task);
    w.field("tool_version", std::string(kVersion));
    int rc = 0;
    try {
        // scenario echo: the parsed document re-serialized canonically
        // (alphabetical keys, shortest round-trip reals)
        w.sep();
        w.os << "\"scenario\": " << j.dump();

        w.open_obj("results");
        const fs::path trace = out_dir / "trace.csv";

        if (task == "eval") {
            auto mu = parse_weighting(j.at("weighting"));
            auto L0 = parse_interface(j.value("interface", json::object()));
            const json& ji = j.at("params").at("input");
            auto u = make_signal(ji.at("times").get<std::vector<double>>(),
                                 ji.at("values").get<std::vector<double>>());
            L0.update(u.values.front());  // pin the terminal to u(0)
            EvalOptions opts;
            opts.max_swept_area = opt_num(j.at("params"), "max_swept_area",
                                          mu.support().area() / 1024.0);
            auto [y, st] = preisach_eval(PreisachState(mu, L0), u, opts);
            std::ofstream f(trace);
            write_csv_header(f, 0);
            for (std::size_t i = 0; i < y.size(); ++i)
                write_csv_row(f, y.times[i], u.value_at(y.times[i]), y.values[i]);
            w.field("final_output", st.output());
            w.field("samples", static_cast<int>(y.size()));
        } else if (task == "loop" || task == "crossover" || task == "classify") {
            auto mu = parse_weighting(j.at("weighting"));
            const json& jp = j.at("params");
            const double u_min = need_num(jp, "u_min");
            const double u_max = need_num(jp, "u_max");
            const int spb = static_cast<int>(opt_num(jp, "samples_per_branch", 512));
            auto loop =
                run_periodic(PreisachState(mu, MemoryInterface::from_value(u_min)), u_min, u_max, spb);
            write_loop_trace(trace, loop);
            w.field("u_min", u_min);
            w.field("u_max", u_max);
            w.field("signed_area", signed_area(loop));
            if (task == "crossover") {
                auto cs = find_crossovers(mu, u_min, u_max, static_cast<int>(opt_num(jp, "scan_n", 256)),
                                          opt_num(jp, "tol", 1e-9));
                emit_crossovers(w, cs);
            } else if (task == "classify") {
                ClassifyOptions opts;
                opts.scan_n = static_cast<int>(opt_num(jp, "scan_n", 256));
                opts.tol = opt_num(jp, "tol", 1e-9);
                opts.area_tol = opt_num(jp, "area_tol", 0.0);
                opts.samples_per_branch = spb;
                auto cls = classify(mu, u_min, u_max, opts);
                w.field("classification", std::string(kind_name(cls.kind)));
                w.field("subloop_count", cls.subloop_count);
                w.open_arr("subloop_areas");
                for (double a : cls.subloop_areas) w.elem(a);
                w.close_arr();
                w.field("total_area", cls.total_area);
                emit_crossovers(w, cls.crossovers);
            }
        } else if (task == "design") {
            auto mu = parse_weighting(j.at("weighting"));
            const json& jp = j.at("params");
            const auto [lo, hi] = design_zero_area_input(mu, need_num(jp, "alpha1"), need_num(jp, "beta1"),
                                                         opt_num(jp, "tol", 1e-9));
            auto loop = run_periodic(PreisachState(mu, MemoryInterface::from_value(lo)), lo, hi,
                                     static_cast<int>(opt_num(jp, "samples_per_branch", 512)));
            write_loop_trace(trace, loop);
            w.field("u_min", lo);
            w.field("u_max", hi);
            w.field("signed_area", signed_area(loop));
        } else if (task == "bounds") {
            auto mu = parse_weighting(j.at("weighting"));
            const int grid_n = static_cast<int>(opt_num(j.value("params", json::object()), "grid_n", 256));
            auto lb = lambda_bounds(mu, grid_n);
            std::ofstream f(trace);
            write_csv_header(f, 0);
            w.field("lambda_m", lb.lambda_m);
            w.field("lambda_M", lb.lambda_M);
            w.field("grid_n", grid_n);
        } else if (task == "spr" || task == "lure") {
            auto mu = parse_weighting(j.at("weighting"));
            const json& jp = j.at("params");
            LtiSystem sys = parse_plant(jp.at("plant"));
            double lm, lM;
            if (jp.contains("lambda_m") && jp.contains("lambda_M")) {
                lm = need_num(jp, "lambda_m");
                lM = need_num(jp, "lambda_M");
            } else {
                auto lb = lambda_bounds(mu, static_cast<int>(opt_num(jp, "bounds_grid_n", 256)));
                lm = lb.lambda_m;
                lM = lb.lambda_M;
            }
            // the criterion certifies the feedback loop, i.e. the transfer
            // function from operator output to operator input under w = -y
            auto rep = spr_check(loop_plant(sys), lm, lM, opt_num(jp, "omega_max", 1e3),
                                 static_cast<int>(opt_num(jp, "spr_grid_n", 2000)));
            emit_spr(w, rep);
            if (task == "spr") {
                std::ofstream f(trace);
                write_csv_header(f, 0);
            } else {
                const auto x0v = jp.at("x0").get<std::vector<double>>();
                const Eigen::VectorXd x0 =
                    Eigen::Map<const Eigen::VectorXd>(x0v.data(), static_cast<Eigen::Index>(x0v.size()));
                auto L0 = parse_interface(j.value("interface", json::object()));
                L0.update((sys.C * x0)(0));  // pin the terminal to u(0) = C x0
                auto traj = simulate_lure(sys, x0, mu, L0, opt_num(jp, "t_final", 50.0),
                                          opt_num(jp, "dt_max", 0.002));
                std::ofstream f(trace);
                const int n = sys.order();
                write_csv_header(f, n);
                for (std::size_t i = 0; i < traj.times.size(); ++i) {
                    const Eigen::VectorXd row = traj.states.row(static_cast<Eigen::Index>(i));
                    write_csv_row(f, traj.times[i], traj.u_trace[i], traj.y_trace[i], row.data(), n);
                }
                w.field("converged", traj.converged);
                w.field("convergence_time", traj.convergence_time);
                w.field("final_residual", traj.final_residual);
                w.field("final_input", traj.u_trace.back());
                w.field("final_output", traj.y_trace.back());
            }
        } else {
            throw ValidationError("scenario: unknown task '" + task + "'");
        }
        w.close_obj();
    } catch (const ValidationError& e) {
        std::cerr << path << ": validation error: " << e.what() << "\n";
        return 2;
    } catch (const NonMonotoneStaircase& e) {
        std::cerr << path << ": validation error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << path << ": validation error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << path << ": numerical failure: " << e.what() << "\n";
        rc = 3;
        w.field("error", std::string(e.what()));
    } catch (const std::exception& e) {
        std::cerr << path << ": failure: " << e.what() << "\n";
        rc = 3;
        w.field("error", std::string(e.what()));
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    w.field("wall_time_seconds", wall);
    --w.indent;
    w.os << "\n}\n";
    std::ofstream rf(out_dir / "report.json");
    rf << w.os.str();
    if (rc == 0) std::cout << name << ": ok, report in " << (out_dir / "report.json").string() << "\n";
    return rc;
}

}  // namespace hyst::cli
