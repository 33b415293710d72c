// Command-line front end: boundary-distance queries, Hardy constants,
// quotient evaluation/minimization, polytope generation, and a deterministic
// verification battery.
//
// Exit codes: 0 success, 2 I/O or usage errors, 3 domain errors
// (e.g. query point outside the polytope).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heis/constants.hpp"
#include "heis/core.hpp"
#include "heis/geodesics.hpp"
#include "heis/grid.hpp"
#include "heis/json_io.hpp"
#include "heis/plane_gauge.hpp"
#include "heis/polytope.hpp"
#include "heis/quotient.hpp"

using namespace heis;
using nlohmann::json;
using std::numbers::pi;

namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double unit() { return (eng() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    double log_uniform(double a, double b) { return std::pow(10.0, uniform(a, b)); }
};

Point parse_point(const std::string& s) {
    Point p;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf", &p.x1, &p.x2, &p.x3) != 3)
        throw CLI::ValidationError("--point expects x1,x2,x3");
    return p;
}

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

void emit(const json& j, const std::string& format) {
    if (format == "csv") {
        // lossy projection: top-level scalar fields as a single csv record
        std::string header, row;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!it->is_primitive()) continue;
            header += (header.empty() ? "" : ",") + it.key();
            row += (row.empty() ? "" : ",") + it->dump();
        }
        std::cout << header << "\n" << row << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

// --- verify battery -------------------------------------------------------

json check_sandwich(Rng& rng) {
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 5000; ++i) {
        Point z{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        double d = cc_distance_origin(z);
        if (d == 0.0) continue;
        double r = kaplan_gauge4(z) / (d * d * d * d);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    bool pass = lo >= 1.0 / (pi * pi) - 1e-9 && hi <= 1.0 + 1e-9;
    return {{"pass", pass}, {"ratio_min", lo}, {"ratio_max", hi}};
}

json check_roundtrip(Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
        GeodesicParams g;
        g.k = rng.log_uniform(-3, 1) * (rng.unit() < 0.5 ? -1 : 1);
        g.theta = rng.uniform(0, 2 * pi);
        g.t = rng.uniform(1e-3, 2 * pi / std::abs(g.k));
        double t = cc_distance_origin(geodesic_point(g));
        worst = std::max(worst, std::abs(t - g.t) / g.t);
    }
    return {{"pass", worst <= 1e-8}, {"max_rel_err", worst}};
}

json check_g_monotone() {
    double worst = -1e300;
    double prev = ratio_g(0.0);
    for (int i = 1; i <= 10000; ++i) {
        double cur = ratio_g(2.0 * pi * i / 10000);
        worst = std::max(worst, cur - prev);
        prev = cur;
    }
    double g_end = ratio_g(2.0 * pi);
    bool pass = worst <= 1e-12 && std::abs(g_end - 1.0 / (pi * pi)) <= 1e-12;
    return {{"pass", pass}, {"max_increase", worst}, {"g_at_2pi", g_end}};
}

json check_cardano(Rng& rng) {
    double worst_res = 0.0;
    bool bound_ok = true;
    for (int i = 0; i < 5000; ++i) {
        double p = rng.log_uniform(-6, 6);
        double q = rng.log_uniform(-6, 6) * (rng.unit() < 0.5 ? -1 : 1);
        double z = cardano_root({p, q});
        worst_res = std::max(worst_res,
                             std::abs(z * z * z + p * z - q) / std::max(1.0, std::abs(q)));
        bound_ok = bound_ok && cardano_lower_bound({p, q}) <= std::abs(z) * (1 + 1e-12);
    }
    return {{"pass", worst_res <= 1e-12 && bound_ok},
            {"max_residual", worst_res},
            {"lower_bound_ok", bound_ok}};
}

json check_prop52(Rng& rng, int samples) {
    int height = 0, radial = 0;
    bool ok16 = true, ok_alt = true;
    for (int i = 0; i < samples; ++i) {
        double n1, n2, n3, nn;
        do {
            n1 = rng.uniform(-1, 1);
            n2 = rng.uniform(-1, 1);
            n3 = rng.uniform(-1, 1);
            nn = std::sqrt(n1 * n1 + n2 * n2 + n3 * n3);
        } while (nn < 0.1 || std::abs(n3) / nn < 0.05);
        Plane pl{n1 / nn, n2 / nn, n3 / nn, rng.uniform(-2, 2)};
        Point x{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        PlaneCaseParams pc = reduced_to_horizontal(pl, x);
        if (pc.w == 0.0) continue;
        double a = rng.log_uniform(-2, 2);
        PropBound b = prop_lower_bound(pc, a);
        (b.kind == BoundCase::height ? height : radial)++;
        double bf = gauge_dist_to_plane_bruteforce(pl, x);
        double bf_alt = gauge_dist_to_plane_bruteforce(pl, x, 1.0 / 16.0);
        ok16 = ok16 && b.bound <= bf * bf + 1e-6;
        ok_alt = ok_alt && b.bound <= bf_alt * bf_alt + 1e-6;
    }
    return {{"pass", ok16},
            {"selected_normalization", "vertical coefficient 16"},
            {"bound_below_gauge16", ok16},
            {"bound_below_gauge1_16", ok_alt},
            {"height_cases", height},
            {"radial_cases", radial}};
}

json check_cm() {
    bool ok = true;
    double worst = 0.0;
    for (int m = 1; m <= 50; ++m) {
        CmSolution s = solve_cm(m);
        worst = std::max(worst, std::abs(s.residual));
        ok = ok && cm_upper_bound_check(s) && s.unique_bracket;
    }
    return {{"pass", ok && worst <= 1e-12}, {"max_residual", worst}};
}

json check_quotient_smoke() {
    Polytope cube = Polytope::cube(1.0);
    Grid g(cube, {20, 20, 20});
    WeightField wd = weight_field(g, WeightKind::d1d2);
    double trial = quotient(g, trial_sequence(g, 2), weight_field(g, WeightKind::delta_c));
    MinimizeResult r = minimize_quotient(g, wd, 200);
    bool pass = std::abs(trial - 1.0) <= 0.25 && r.value >= 0.15 && r.value <= 0.40;
    return {{"pass", pass}, {"trial_n2", trial}, {"min_d1d2", r.value}};
}

int cmd_verify(std::uint64_t seed, const std::string& only, const std::string& format) {
    std::vector<std::string> names;
    {
        std::stringstream ss(only);
        std::string tok;
        while (std::getline(ss, tok, ',')) names.push_back(tok);
    }
    auto selected = [&](const std::string& n) {
        if (names.empty()) return true;
        for (const auto& s : names)
            if (s == n) return true;
        return false;
    };
    json out;
    out["seed"] = seed;
    json checks;
    Rng rng(seed);
    if (selected("sandwich")) checks["sandwich"] = check_sandwich(rng);
    if (selected("roundtrip")) checks["roundtrip"] = check_roundtrip(rng);
    if (selected("g_monotone")) checks["g_monotone"] = check_g_monotone();
    if (selected("cardano")) checks["cardano"] = check_cardano(rng);
    if (selected("prop52")) checks["prop52"] = check_prop52(rng, 200);
    if (selected("cm")) checks["cm"] = check_cm();
    if (selected("quotient")) checks["quotient"] = check_quotient_smoke();
    bool all = true;
    for (const auto& [k, v] : checks.items()) all = all && v.at("pass").get<bool>();
    out["checks"] = checks;
    out["pass"] = all;
    emit(out, format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heisenberg-group boundary distances and Hardy quotient checks"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    // distance
    auto* dist = app.add_subcommand("distance", "boundary distances at a point");
    std::string dist_path, dist_point;
    dist->add_option("--polytope", dist_path)->required();
    dist->add_option("--point", dist_point)->required();

    // cm
    auto* cm = app.add_subcommand("cm", "face-count constant c_m");
    int cm_m = 1;
    cm->add_option("--m", cm_m)->required()->check(CLI::PositiveNumber);

    // constants
    auto* cons = app.add_subcommand("constants", "closed-form Hardy constants");
    std::string theorem;
    int cons_m = 1, cons_sides = 64;
    double cons_a = 0.0, cons_eps = 0.0;
    std::string cons_out;
    cons->add_option("--theorem", theorem)->required()->check(CLI::IsMember({"3.2", "6.2", "3.3"}));
    cons->add_option("--m", cons_m);
    cons->add_option("--a", cons_a);
    cons->add_option("--epsilon", cons_eps);
    cons->add_option("--sides", cons_sides);
    cons->add_option("--out", cons_out);

    // quotient
    auto* quot = app.add_subcommand("quotient", "Rayleigh quotient on a grid");
    std::string q_path, q_weight = "delta_c", q_origin = "0,0,0";
    int q_grid = 48, q_trial = 0, q_iters = 500;
    bool q_minimize = false;
    std::string q_sweep_n, q_sweep_grid;
    quot->add_option("--polytope", q_path)->required();
    quot->add_option("--weight", q_weight);
    quot->add_option("--grid", q_grid)->check(CLI::Range(16, 512));
    quot->add_flag("--minimize", q_minimize);
    quot->add_option("--trial", q_trial);
    quot->add_option("--iters", q_iters);
    quot->add_option("--origin", q_origin);
    quot->add_option("--sweep-n", q_sweep_n);
    quot->add_option("--sweep-grid", q_sweep_grid);

    // gen
    auto* gen = app.add_subcommand("gen", "generate polytope files");
    std::string g_shape = "cube", g_out;
    double g_size = 1.0, g_eps = 1.0;
    int g_sides = 64;
    std::uint64_t g_seed = 1;
    gen->add_option("--shape", g_shape)
        ->check(CLI::IsMember({"cube", "box", "simplex", "prism", "cylinder33"}));
    gen->add_option("--size", g_size);
    gen->add_option("--sides", g_sides);
    gen->add_option("--epsilon", g_eps);
    gen->add_option("--seed", g_seed);
    gen->add_option("--out", g_out);

    // verify
    auto* ver = app.add_subcommand("verify", "deterministic verification battery");
    std::uint64_t v_seed = 7;
    std::string v_only;
    ver->add_option("--seed", v_seed);
    ver->add_option("--only", v_only);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dist) {
            Polytope P = read_polytope(dist_path);
            Point x = parse_point(dist_point);
            if (!P.contains(x)) {
                std::cerr << "point not in interior\n";
                return 3;
            }
            double dk = P.delta_k(x);
            json out{{"delta_c", P.delta_c(x)},
                     {"delta_k", dk},
                     {"omega", P.omega(x)},
                     {"d1", P.d1(x)},
                     {"d2", P.d2(x)},
                     {"gauge_bracket", {dk, std::sqrt(pi) * dk}}};
            emit(out, format);
            return 0;
        }
        if (*cm) {
            CmSolution s = solve_cm(cm_m);
            json out{{"m", s.m},
                     {"c_m", s.c_m},
                     {"residual", s.residual},
                     {"bound_ok", cm_upper_bound_check(s)},
                     {"unique_bracket", s.unique_bracket}};
            emit(out, format);
            return 0;
        }
        if (*cons) {
            json out;
            if (theorem == "3.2") {
                HardyConstantReport r = hardy_constant_polytope(cons_m);
                out = {{"theorem", r.theorem},
                       {"m", cons_m},
                       {"c_m", solve_cm(cons_m).c_m},
                       {"constant", r.constant},
                       {"quotient_bound", r.quotient_bound}};
            } else if (theorem == "6.2") {
                if (!(cons_a > 0)) throw CLI::ValidationError("--a required for 6.2");
                HardyConstantReport r = hardy_constant_assumption(cons_a);
                out = {{"theorem", r.theorem},
                       {"a", cons_a},
                       {"constant", r.constant},
                       {"quotient_bound", r.quotient_bound}};
            } else {
                if (!(cons_eps > 0)) throw CLI::ValidationError("--epsilon required for 3.3");
                auto [dom, a] = construct_epsilon_domain(cons_eps, cons_sides);
                HardyConstantReport r = hardy_constant_assumption(a);
                // inscribed vs circumscribed polygon: nearest-approach parameter gap
                double cx = std::sqrt(a) + 1.0;
                double a_inscribed = (cx - 1.0) * (cx - 1.0);
                double rc = 1.0 / std::cos(pi / cons_sides);
                double a_circumscribed = (cx - rc) * (cx - rc);
                out = {{"theorem", "3.3"},
                       {"epsilon", cons_eps},
                       {"a", a},
                       {"sides", cons_sides},
                       {"constant", r.constant},
                       {"quotient_bound", r.quotient_bound},
                       {"target_bound", 1.0 / ((2.0 + cons_eps) * (2.0 + cons_eps))},
                       {"assumption_ok", check_assumption(dom, a, 50000)},
                       {"a_polygon_inscribed", a_inscribed},
                       {"a_polygon_circumscribed", a_circumscribed}};
                if (!cons_out.empty()) {
                    write_polytope(dom, cons_out);
                    out["polytope_file"] = cons_out;
                }
            }
            emit(out, format);
            return 0;
        }
        if (*quot) {
            Polytope P = read_polytope(q_path);
            WeightKind kind = weight_kind_from_name(q_weight);
            Point origin = parse_point(q_origin);
            std::vector<int> grids, trials;
            auto parse_list = [](const std::string& s, std::vector<int>& out) {
                std::stringstream ss(s);
                std::string tok;
                while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
            };
            if (!q_sweep_grid.empty()) parse_list(q_sweep_grid, grids);
            else grids.push_back(q_grid);
            if (!q_sweep_n.empty()) parse_list(q_sweep_n, trials);
            else if (q_trial > 0) trials.push_back(q_trial);

            json rows = json::array();
            for (int ng : grids) {
                Grid g(P, {ng, ng, ng});
                WeightField w = weight_field(g, kind, origin);
                double tol = ng >= 64 ? 0.05 : 0.10;
                if (trials.empty() || q_minimize) {
                    double t0 = now_seconds();
                    MinimizeResult r = minimize_quotient(g, w, q_iters);
                    json row{{"mode", "minimize"},
                             {"weight", q_weight},
                             {"grid", ng},
                             {"value", r.value},
                             {"bound", w.quotient_bound},
                             {"tol", tol},
                             {"pass", r.value >= w.quotient_bound * (1.0 - tol)},
                             {"converged", r.converged},
                             {"iterations", r.iterations},
                             {"runtime", now_seconds() - t0}};
                    rows.push_back(row);
                }
                for (int n : trials) {
                    double t0 = now_seconds();
                    double q = quotient(g, trial_sequence(g, n), w);
                    double target = (0.5 + 1.0 / n) * (0.5 + 1.0 / n);
                    rows.push_back({{"mode", "trial"},
                                    {"weight", q_weight},
                                    {"grid", ng},
                                    {"n", n},
                                    {"value", q},
                                    {"bound", target},
                                    {"tol", tol},
                                    {"pass", std::abs(q - target) <= tol * target},
                                    {"runtime", now_seconds() - t0}});
                }
            }
            if (format == "csv") {
                std::cout << "mode,weight,grid,n,value,bound,pass,runtime\n";
                for (const auto& r : rows) {
                    std::cout << r.value("mode", "") << "," << r.value("weight", "") << ","
                              << r.value("grid", 0) << "," << r.value("n", 0) << ","
                              << r.value("value", 0.0) << "," << r.value("bound", 0.0) << ","
                              << (r.value("pass", false) ? 1 : 0) << ","
                              << r.value("runtime", 0.0) << "\n";
                }
            } else {
                emit(rows.size() == 1 ? rows[0] : json{{"results", rows}}, format);
            }
            return 0;
        }
        if (*gen) {
            Polytope P = Polytope::cube(1.0);
            json extra;
            if (g_shape == "cube") {
                P = Polytope::cube(g_size);
            } else if (g_shape == "box") {
                P = Polytope::box({-g_size, -g_size, 0}, {g_size, g_size, 1});
            } else if (g_shape == "simplex") {
                Rng rng(g_seed);
                while (true) {
                    std::array<Point, 4> v;
                    for (auto& p : v)
                        p = Point{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                                  rng.uniform(-1.5, 1.5)};
                    Vec3 e1 = v[1].vec() - v[0].vec(), e2 = v[2].vec() - v[0].vec(),
                         e3 = v[3].vec() - v[0].vec();
                    if (std::abs(dot(cross(e1, e2), e3)) < 2.0) continue;
                    try {
                        Polytope s = Polytope::simplex(v);
                        if (!s.contains({0, 0, 0})) continue;
                        P = std::move(s);
                        break;
                    } catch (const std::invalid_argument&) {
                    }
                }
            } else if (g_shape == "prism") {
                P = Polytope::prism(g_sides, 0.0, 0.0, g_size, 0.0, 1.0);
            } else {
                auto [dom, a] = construct_epsilon_domain(g_eps, g_sides);
                P = std::move(dom);
                extra["a"] = a;
            }
            std::string text = polytope_to_json(P);
            if (!g_out.empty()) {
                std::ofstream f(g_out);
                if (!f) throw std::ios_base::failure("cannot open " + g_out);
                f << text << "\n";
                json out{{"written", g_out}, {"halfspaces", P.halfspaces().size()}};
                for (auto& [k, v] : extra.items()) out[k] = v;
                emit(out, format);
            } else {
                std::cout << text << "\n";
            }
            return 0;
        }
        if (*ver) return cmd_verify(v_seed, v_only, format);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "json error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
