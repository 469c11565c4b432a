#ifndef BARESIM_CLI_HPP
#define BARESIM_CLI_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "distributions.hpp"
#include "estimators.hpp"
#include "oracle.hpp"
#include "transforms.hpp"

namespace baresim::cli {

using json = nlohmann::json;

namespace detail {

inline void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw config_error(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw config_error(where + ": unknown key '" + it.key() + "'");
}

// relative paths inside a config resolve against the config's directory
inline std::filesystem::path& base_dir() {
    thread_local std::filesystem::path d;
    return d;
}

struct base_dir_scope {
    std::filesystem::path saved;
    explicit base_dir_scope(std::filesystem::path d) : saved(base_dir()) { base_dir() = std::move(d); }
    ~base_dir_scope() { base_dir() = saved; }
};

inline std::string resolve(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative() && !base_dir().empty()) p = base_dir() / p;
    return p.string();
}

inline std::string slurp(const std::string& path0) {
    const std::string path = resolve(path0);
    std::ifstream f(path);
    if (!f) throw io_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline vec parse_csv_row(const std::string& line, const std::string& where) {
    vec v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stod(cell, &pos));
            if (cell.find_first_not_of(" \t", pos) != std::string::npos) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw config_error(where + ": bad number '" + cell + "'");
        }
    }
    return v;
}

inline std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string l;
    while (std::getline(ss, l)) {
        if (!l.empty() && l.back() == '\r') l.pop_back();
        if (!l.empty()) out.push_back(l);
    }
    return out;
}

// inline array or a CSV path (one row)
inline vec read_vec(const json& j, const std::string& where) {
    if (j.is_array()) {
        vec v;
        for (const auto& x : j) {
            if (!x.is_number()) throw config_error(where + ": expected numbers");
            v.push_back(x.get<double>());
        }
        return v;
    }
    if (j.is_string()) {
        auto ls = lines_of(slurp(j.get<std::string>()));
        if (ls.size() != 1) throw config_error(where + ": CSV vector must have exactly one row");
        return parse_csv_row(ls[0], where);
    }
    throw config_error(where + ": expected an array or a CSV path");
}

inline std::vector<vec> read_mat(const json& j, const std::string& where) {
    std::vector<vec> m;
    if (j.is_array()) {
        for (const auto& r : j) m.push_back(read_vec(r, where));
        return m;
    }
    if (j.is_string()) {
        for (const auto& l : lines_of(slurp(j.get<std::string>()))) m.push_back(parse_csv_row(l, where));
        return m;
    }
    throw config_error(where + ": expected a matrix or a CSV path");
}

inline double num(const json& j, const std::string& where) {
    if (!j.is_number()) throw config_error(where + ": expected a number");
    return j.get<double>();
}

inline generator_spec parse_generator(const json& j) {
    only_keys(j, {"family", "gamma", "ctilde", "alpha", "beta", "beta1", "beta2", "z1", "z2"}, "generator");
    if (!j.contains("family")) throw config_error("generator: missing 'family'");
    generator_spec g;
    try {
        g.family = family_from_name(j.at("family").get<std::string>());
    } catch (const parameter_error& e) {
        throw config_error(e.what());
    }
    auto opt = [&](const char* k, double& dst) {
        if (j.contains(k)) dst = num(j.at(k), std::string("generator.") + k);
    };
    opt("gamma", g.gamma);
    opt("ctilde", g.ctilde);
    opt("alpha", g.alpha);
    opt("beta", g.beta);
    opt("beta1", g.beta1);
    opt("beta2", g.beta2);
    opt("z1", g.z1);
    opt("z2", g.z2);
    try {
        g.validate();
    } catch (const parameter_error& e) {
        throw config_error(std::string("generator: ") + e.what());
    }
    return g;
}

inline constraint_atom parse_atom(const json& j) {
    if (!j.is_object() || !j.contains("type")) throw config_error("constraint atom: missing 'type'");
    std::string t = j.at("type").get<std::string>();
    if (t == "box") {
        only_keys(j, {"type", "lo", "hi"}, "box");
        return box_atom{read_vec(j.at("lo"), "box.lo"), read_vec(j.at("hi"), "box.hi")};
    }
    if (t == "halfspace") {
        only_keys(j, {"type", "a", "b", "sense"}, "halfspace");
        halfspace_atom h;
        h.a = read_vec(j.at("a"), "halfspace.a");
        h.b = num(j.at("b"), "halfspace.b");
        std::string s = j.value("sense", std::string(">="));
        if (s == ">=")
            h.s = sense::ge;
        else if (s == "<=")
            h.s = sense::le;
        else
            throw config_error("halfspace.sense must be '>=' or '<='");
        return h;
    }
    if (t == "l2_ball") {
        only_keys(j, {"type", "center", "radius"}, "l2_ball");
        return l2_ball_atom{read_vec(j.at("center"), "l2_ball.center"), num(j.at("radius"), "l2_ball.radius")};
    }
    if (t == "regression_ball") {
        only_keys(j, {"type", "y", "x", "eps", "shift"}, "regression_ball");
        regression_ball_atom r;
        r.y = read_vec(j.at("y"), "regression_ball.y");
        r.x = read_mat(j.at("x"), "regression_ball.x");
        r.eps = num(j.at("eps"), "regression_ball.eps");
        if (j.contains("shift")) r.shift = read_vec(j.at("shift"), "regression_ball.shift");
        return r;
    }
    throw config_error("unknown constraint atom type '" + t + "'");
}

inline constraint_spec parse_constraints(const json& j) {
    only_keys(j, {"atoms", "simplex_scale", "tol", "interior_hint", "c1"}, "constraints");
    constraint_spec c;
    if (j.contains("atoms")) {
        if (!j.at("atoms").is_array()) throw config_error("constraints.atoms must be an array");
        for (const auto& a : j.at("atoms")) c.atoms.push_back(parse_atom(a));
    }
    if (j.contains("simplex_scale")) c.simplex_scale = num(j.at("simplex_scale"), "constraints.simplex_scale");
    if (j.contains("tol")) c.tol = num(j.at("tol"), "constraints.tol");
    if (j.contains("interior_hint")) c.hint = read_vec(j.at("interior_hint"), "constraints.interior_hint");
    if (j.contains("c1")) c.c1 = num(j.at("c1"), "constraints.c1");
    return c;
}

inline objective_spec parse_objective(const json& j, const vec& P, const std::optional<vec>& Qss, bool risk) {
    only_keys(j,
              {"kind", "generator", "ref", "ref2", "matrix", "r", "beta", "h", "constant", "linear", "quadratic",
               "weight"},
              "objective");
    if (!j.contains("kind")) throw config_error("objective: missing 'kind'");
    objective_spec o;
    o.kind = objective_from_name(j.at("kind").get<std::string>());
    if (j.contains("generator")) o.gen = parse_generator(j.at("generator"));
    auto named = [&](const json& v, const std::string& where) -> vec {
        if (v.is_string()) {
            std::string s = v.get<std::string>();
            if (s == "P") return P;
            if (s == "Qss") {
                if (!Qss) throw config_error(where + ": Qss not given");
                return *Qss;
            }
            if (s == "sample") {
                if (!risk) throw config_error(where + ": 'sample' reference needs risk mode");
                o.ref_from_sample = true;
                return {};
            }
        }
        return read_vec(v, where);
    };
    if (j.contains("ref"))
        o.ref = named(j.at("ref"), "objective.ref");
    else if (risk)
        o.ref_from_sample = true;
    else
        o.ref = P;
    if (j.contains("ref2")) o.ref2 = named(j.at("ref2"), "objective.ref2");
    if (j.contains("matrix")) o.matrix = read_mat(j.at("matrix"), "objective.matrix");
    if (j.contains("r")) o.r = num(j.at("r"), "objective.r");
    if (j.contains("beta")) o.beta = num(j.at("beta"), "objective.beta");
    if (j.contains("h")) {
        const auto& h = j.at("h");
        if (h.is_string()) {
            std::string s = h.get<std::string>();
            if (s == "identity")
                o.h.kind = entropy_h::identity;
            else if (s == "negation")
                o.h.kind = entropy_h::negation;
            else if (s == "log1p")
                o.h.kind = entropy_h::log1p;
            else
                throw config_error("objective.h: unknown composer '" + s + "'");
        } else {
            only_keys(h, {"affine"}, "objective.h");
            vec a = read_vec(h.at("affine"), "objective.h.affine");
            if (a.size() != 2) throw config_error("objective.h.affine needs [slope, intercept]");
            o.h.kind = entropy_h::affine;
            o.h.slope = a[0];
            o.h.intercept = a[1];
        }
    }
    if (j.contains("constant")) o.constant = num(j.at("constant"), "objective.constant");
    if (j.contains("linear")) o.linear = read_vec(j.at("linear"), "objective.linear");
    if (j.contains("quadratic")) o.quadratic = read_vec(j.at("quadratic"), "objective.quadratic");
    if (j.contains("weight")) o.weight = num(j.at("weight"), "objective.weight");
    return o;
}

} // namespace detail

struct run_config {
    estimate_request request;
    json oracle;  // oracle section (may be null)
    std::optional<std::string> contract;
};

inline std::vector<std::string> read_sample_file(const std::string& path) {
    return detail::lines_of(detail::slurp(path));
}

inline run_config parse_config(const json& j) {
    using namespace detail;
    only_keys(j,
              {"mode", "method", "direction", "base", "P", "Qss", "Qstar", "A", "target", "C", "objective",
               "constraints", "n", "L", "seed", "sample_file", "categories", "m", "lattice_exact", "oracle",
               "contract"},
              "config");
    run_config rc;
    estimate_request& q = rc.request;
    q.mode = mode_from_name(j.value("mode", std::string("full_space")));
    q.method = method_from_name(j.value("method", std::string("method1_naive")));
    std::string dir = j.value("direction", std::string("min"));
    if (dir == "min")
        q.dir = direction::min;
    else if (dir == "max")
        q.dir = direction::max;
    else
        throw config_error("direction must be 'min' or 'max'");
    if (!j.contains("base")) throw config_error("config: missing 'base' generator");
    q.base = parse_generator(j.at("base"));
    if (j.contains("P")) q.P = read_vec(j.at("P"), "P");
    if (j.contains("Qss")) q.Qss = read_vec(j.at("Qss"), "Qss");
    if (j.contains("Qstar")) q.Qstar = read_vec(j.at("Qstar"), "Qstar");
    if (j.contains("A")) q.A = num(j.at("A"), "A");
    if (j.contains("target")) {
        std::string t = j.at("target").get<std::string>();
        if (t == "casm")
            q.target = narrow_target::casm;
        else if (t == "sbd")
            q.target = narrow_target::sbd;
        else
            throw config_error("target must be 'casm' or 'sbd'");
    }
    if (j.contains("C")) q.C = num(j.at("C"), "C");
    if (j.contains("constraints")) q.omega = parse_constraints(j.at("constraints"));
    if (j.contains("n")) q.n = j.at("n").get<long>();
    if (j.contains("L")) q.L = static_cast<long>(num(j.at("L"), "L"));
    if (j.contains("seed")) q.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("m")) q.m = j.at("m").get<long>();
    if (j.contains("lattice_exact")) q.lattice_exact = j.at("lattice_exact").get<bool>();
    if (j.contains("contract")) {
        std::string c = j.at("contract").get<std::string>();
        if (c != "compact" && c != "lower_bound" && c != "upper_bound")
            throw config_error("contract must be 'compact', 'lower_bound' or 'upper_bound'");
        rc.contract = c;
    }
    const bool risk = q.mode == mode_kind::risk;
    if (risk) {
        if (!j.contains("sample_file")) throw config_error("risk mode needs 'sample_file'");
        auto labels = read_sample_file(j.at("sample_file").get<std::string>());
        std::vector<std::string> cats;
        if (j.contains("categories")) {
            for (const auto& c : j.at("categories")) cats.push_back(c.is_string() ? c.get<std::string>() : c.dump());
        } else {
            std::set<std::string> u(labels.begin(), labels.end());
            cats.assign(u.begin(), u.end());
        }
        std::map<std::string, int> idx;
        for (std::size_t k = 0; k < cats.size(); ++k) idx[cats[k]] = static_cast<int>(k);
        for (const auto& l : labels) {
            auto it = idx.find(l);
            if (it == idx.end()) throw config_error("sample label '" + l + "' is not a declared category");
            q.sample.push_back(it->second);
        }
        q.categories = cats.size();
        if (q.m < 1) throw config_error("risk mode needs 'm' >= 1");
    } else if (j.contains("sample_file") || j.contains("categories")) {
        throw config_error("'sample_file'/'categories' only apply to risk mode");
    }
    if (j.contains("objective"))
        q.objective = parse_objective(j.at("objective"), q.P, q.Qss, risk);
    else {
        q.objective.kind = objective_kind::casm;
        q.objective.gen = q.base;
        if (risk)
            q.objective.ref_from_sample = true;
        else
            q.objective.ref = q.P;
    }
    if (j.contains("oracle")) rc.oracle = j.at("oracle");
    // theorem preconditions
    if (q.method == method_kind::narrow_sense && q.mode != mode_kind::full_space &&
        q.base.family == generator_family::power && q.base.gamma > 1.0 && q.base.gamma < 2.0)
        throw config_error("narrow_sense simplex estimation requires gamma outside (1,2)");
    if (q.method == method_kind::importance_sampling && q.mode != mode_kind::full_space)
        throw config_error("importance_sampling requires full_space mode");
    if ((q.method == method_kind::speedup || q.method == method_kind::importance_sampling) && !q.Qstar &&
        !interior_hint(q.omega))
        throw config_error(method_name(q.method) + " requires an interior point Q* of the constraint set");
    if (q.method == method_kind::method2_naive && !q.Qss) throw config_error("method2_naive requires 'Qss'");
    return rc;
}

inline run_config load_config(const std::string& path) {
    std::string text = detail::slurp(path);
    detail::base_dir_scope scope(std::filesystem::path(detail::resolve(path)).parent_path());
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
    try {
        return parse_config(j);
    } catch (const json::exception& e) {
        // wrong JSON types surface here
        throw config_error(std::string("config: ") + e.what());
    }
}

inline json xreal_json(double v) {
    if (v == inf) return "inf";
    if (v == -inf) return "-inf";
    return v;
}

inline json result_json(const estimate_result& r) {
    json j;
    j["value"] = xreal_json(r.value.value());
    j["arg_candidate"] = r.arg_candidate ? json(*r.arg_candidate) : json(nullptr);
    j["hit_count"] = r.hit_count;
    j["replications"] = r.replications;
    j["n"] = r.n;
    j["method"] = r.method;
    j["mode"] = r.mode;
    j["seed"] = r.seed;
    json d = json::object();
    for (const auto& [k, v] : r.diagnostics) d[k] = xreal_json(v);
    d["log_mean_exp"] = xreal_json(r.log_mean_exp);
    if (r.arg_objective) d["arg_objective"] = xreal_json(*r.arg_objective);
    d["notes"] = r.notes;
    j["diagnostics"] = d;
    return j;
}

inline json run_estimate(const run_config& rc, unsigned workers) {
    estimate_request q = rc.request;
    q.workers = workers;
    auto r = estimate(q);
    if (rc.contract) r.notes.push_back("declared contract: " + *rc.contract);
    return result_json(r);
}

inline json run_oracle(const run_config& rc) {
    const estimate_request& q = rc.request;
    objective_spec o = q.objective;
    constraint_spec om = q.omega;
    std::size_t K = q.P.size();
    if (q.mode == mode_kind::risk) throw config_error("oracle needs a fixed reference vector (not risk mode)");
    if (q.mode == mode_kind::simplex && !om.simplex_scale) om.simplex_scale = q.A;
    double res = 1e-3;
    std::optional<std::vector<std::pair<double, double>>> bounds;
    if (!rc.oracle.is_null()) {
        detail::only_keys(rc.oracle, {"resolution", "bounds"}, "oracle");
        if (rc.oracle.contains("resolution")) res = detail::num(rc.oracle.at("resolution"), "oracle.resolution");
        if (rc.oracle.contains("bounds")) {
            std::vector<std::pair<double, double>> b;
            for (const auto& p : rc.oracle.at("bounds")) {
                vec v = detail::read_vec(p, "oracle.bounds");
                if (v.size() != 2) throw config_error("oracle.bounds entries need [lo, hi]");
                b.emplace_back(v[0], v[1]);
            }
            bounds = b;
        }
    }
    // narrow sense targets the base divergence itself
    objective_fn f;
    if (q.method == method_kind::narrow_sense) {
        if (q.target == narrow_target::sbd) {
            vec ref = q.P;
            for (auto& v : ref) v *= q.C;
            f = [&, ref](const vec& x) { return sbd(q.base, q.P, x, ref).value(); };
        } else {
            f = [&](const vec& x) { return casm_divergence(q.base, x, q.P).value(); };
        }
    } else {
        f = [&](const vec& x) { return objective_eval(o, x).value(); };
    }
    auto r = grid_optimize(f, om, K, res, q.dir, bounds);
    json j;
    j["value"] = xreal_json(r.value);
    j["arg"] = r.arg.empty() ? json(nullptr) : json(r.arg);
    j["method"] = oracle_method_name(r.method);
    j["resolution"] = r.resolution;
    j["evaluated"] = r.evaluated;
    return j;
}

// ---------------- property suites ----------------

struct check_options {
    double transform_perturbation = 0.0;  // mutation hook for the roundtrip suite
};

struct suite_report {
    std::string suite;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<std::string> details;
};

inline suite_report check_legendre() {
    suite_report rep{"legendre", 0.0, 1e-6, false, {}};
    struct pair_t {
        std::string name;
        generator_spec g;
        double M_P, lo, hi;
    };
    std::vector<pair_t> pairs = {
        {"power0", generator_spec::power(0.0, 1.0), 1.3, 0.2, 5.0},
        {"power0.5", generator_spec::power(0.5, 1.0), 1.3, 0.1, 5.0},
        {"power1", generator_spec::power(1.0, 1.0), 1.3, 0.1, 5.0},
        {"power2", generator_spec::power(2.0, 1.0), 1.3, -3.0, 5.0},
        {"two_gamma", generator_spec::two_gamma(0.5, 0.5, 1.0), 1.3, -3.0, 5.0},
        {"neg_binomial", generator_spec::jensen_shannon_nb(1.0), 1.3, 0.1, 5.0},
        {"two_point", generator_spec::two_point(-1.0, 2.0), 1.0, -0.95, 1.95},
        {"asym_laplace", generator_spec::asym_laplace(0.7, 0.4, 1.1, 1.2), 1.3, -3.0, 5.0},
    };
    for (const auto& p : pairs) {
        auto z = make_zeta(p.g, p.M_P);
        double e = 0.0;
        for (int i = 0; i < 100; ++i) {
            double t = p.lo + (p.hi - p.lo) * i / 99.0;
            e = std::max(e, std::abs(legendre_phi(z, t) - p.M_P * phi_eval(p.g, t).value()));
        }
        rep.details.push_back(p.name + " " + std::to_string(e));
        rep.max_error = std::max(rep.max_error, e);
    }
    rep.pass = rep.max_error <= rep.tolerance;
    return rep;
}

inline suite_report check_transforms(const check_options& opt = {}) {
    suite_report rep{"transforms", 0.0, 1e-10, false, {}};
    std::vector<transform_spec> specs;
    for (double g : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0})
        for (double A : {1.0, 1.5}) {
            specs.push_back(transform_spec::F(g, 1.0, A));
            specs.push_back(transform_spec::Fbreve(g, 1.0, A, 1.2, 0.8));
        }
    specs.push_back(transform_spec::Fbreve1(1.0, 1.3, 0.9));
    for (const auto& s : specs) {
        for (int i = 0; i < 200; ++i) {
            double x = 2.0 * i / 199.0;
            xreal z = F_apply(s, x);
            if (!z.is_finite()) continue;
            double back = F_invert(s, z.value()) + opt.transform_perturbation;
            rep.max_error = std::max(rep.max_error, std::abs(back - x) / std::max(1.0, std::abs(x)));
        }
    }
    rep.pass = rep.max_error <= rep.tolerance;
    return rep;
}

inline suite_report check_bounds() {
    suite_report rep{"bounds", 0.0, 0.0, false, {}};
    // max violation of lhs <= rhs (off t=1 strict)
    double worst = -inf;
    // t = 0 is skipped where the pair touches there (kl vs power: both 1/gamma)
    auto scan = [&](auto lhs, auto rhs, double lo, double hi, bool skip_zero = false) {
        for (int i = 0; i < 1000; ++i) {
            double t = lo + (hi - lo) * i / 999.0;
            if (t == 1.0 || (skip_zero && t == 0.0)) continue;
            worst = std::max(worst, lhs(t) - rhs(t));
        }
    };
    double touch = 0.0;
    for (double g : {1.5, 2.5, 3.0}) {
        double b = 0.5;
        auto lap = generator_spec::two_gamma(b, b, 1.0 / g);
        auto pw = generator_spec::power(g, 1.0);
        auto kl = generator_spec::power(1.0, 1.0 / g);
        scan([&](double t) { return phi_eval(lap, t).value(); }, [&](double t) { return phi_eval(pw, t).value(); },
             -5.0, 5.0);
        scan([&](double t) { return phi_eval(kl, t).value(); }, [&](double t) { return phi_eval(pw, t).value(); },
             0.0, 5.0, true);
        touch = std::max(touch, std::abs(phi_eval(kl, 0.0).value() - phi_eval(pw, 0.0).value()));
        scan([&](double t) { return phi_eval(lap, t).value(); }, [&](double t) { return phi_eval(kl, t).value(); },
             0.0, 5.0);
    }
    auto lap = generator_spec::two_gamma(0.5, 0.5, 1.0);
    scan([&](double t) { return phi_eval(lap, t).value(); }, [](double t) { return std::abs(t - 1.0); }, -5.0, 5.0);
    rep.max_error = std::max({0.0, worst, touch});
    rep.pass = worst < 0.0 && touch <= 1e-12;
    return rep;
}

inline suite_report check_coincide() {
    suite_report rep{"coincide", 0.0, 1e-10, false, {}};
    estimate_request q;
    q.base = generator_spec::power(2.0, 1.0);
    q.P = {1.0, 1.0};
    q.objective.kind = objective_kind::casm;
    q.objective.gen = q.base;
    q.objective.ref = q.P;
    q.omega.atoms.push_back(halfspace_atom{{1.0, 0.0}, 1.4, sense::ge});
    q.Qstar = vec{1.5, 1.0};
    q.n = 100;
    q.L = 1000;
    q.seed = 7;
    q.keep_terms = true;
    auto a = estimate_importance_sampling(q);
    auto b = estimate_speedup(q);
    for (std::size_t l = 0; l < a.terms.size(); ++l) {
        if (std::isinf(a.terms[l]) != std::isinf(b.terms[l])) {
            rep.max_error = inf;
            break;
        }
        if (!std::isinf(a.terms[l])) rep.max_error = std::max(rep.max_error, std::abs(a.terms[l] - b.terms[l]));
    }
    rep.pass = rep.max_error <= rep.tolerance;
    return rep;
}

inline suite_report check_oracle() {
    suite_report rep{"oracle", 0.0, 1e-8, false, {}};
    rng_stream r(12345, 0, 0);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (double g : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0})
        for (int i = 0; i < 10; ++i) {
            vec P(3), Q(3), S(3);
            for (int k = 0; k < 3; ++k) P[k] = u(r), Q[k] = u(r), S[k] = u(r);
            double c = innmin_sbd(g, 1.0, P, Q, S);
            double o = inner_m_minimize(g, 1.0, P, Q, S).value;
            rep.max_error = std::max(rep.max_error, std::abs(c - o));
        }
    rep.pass = rep.max_error <= rep.tolerance;
    return rep;
}

inline suite_report run_check_suite(const std::string& suite, const check_options& opt = {}) {
    if (suite == "legendre") return check_legendre();
    if (suite == "transforms") return check_transforms(opt);
    if (suite == "bounds") return check_bounds();
    if (suite == "coincide") return check_coincide();
    if (suite == "oracle") return check_oracle();
    throw config_error("unknown check suite '" + suite + "'");
}

inline json run_check(const std::vector<std::string>& suites, const check_options& opt = {}) {
    json j = json::array();
    for (const auto& s : suites) {
        auto r = run_check_suite(s, opt);
        json e;
        e["suite"] = r.suite;
        e["max_error"] = xreal_json(r.max_error);
        e["tolerance"] = r.tolerance;
        e["pass"] = r.pass;
        if (!r.details.empty()) e["details"] = r.details;
        j.push_back(e);
    }
    return j;
}

} // namespace baresim::cli

#endif
