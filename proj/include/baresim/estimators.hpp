#ifndef BARESIM_ESTIMATORS_HPP
#define BARESIM_ESTIMATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "constraints.hpp"
#include "divergences.hpp"
#include "engine.hpp"
#include "transforms.hpp"

namespace baresim {

enum class direction { min, max };
enum class method_kind { narrow_sense, method1_naive, method2_naive, speedup, importance_sampling };
enum class mode_kind { full_space, simplex, risk };
enum class narrow_target { casm, sbd };

inline std::string method_name(method_kind m) {
    switch (m) {
    case method_kind::narrow_sense: return "narrow_sense";
    case method_kind::method1_naive: return "method1_naive";
    case method_kind::method2_naive: return "method2_naive";
    case method_kind::speedup: return "speedup";
    case method_kind::importance_sampling: return "importance_sampling";
    }
    return "?";
}
inline std::string mode_name(mode_kind m) {
    switch (m) {
    case mode_kind::full_space: return "full_space";
    case mode_kind::simplex: return "simplex";
    case mode_kind::risk: return "risk";
    }
    return "?";
}
inline method_kind method_from_name(const std::string& s) {
    for (auto m : {method_kind::narrow_sense, method_kind::method1_naive, method_kind::method2_naive,
                   method_kind::speedup, method_kind::importance_sampling})
        if (method_name(m) == s) return m;
    throw config_error("unknown method '" + s + "'");
}
inline mode_kind mode_from_name(const std::string& s) {
    for (auto m : {mode_kind::full_space, mode_kind::simplex, mode_kind::risk})
        if (mode_name(m) == s) return m;
    throw config_error("unknown mode '" + s + "'");
}

struct estimate_request {
    objective_spec objective;
    direction dir = direction::min;
    method_kind method = method_kind::method1_naive;
    mode_kind mode = mode_kind::full_space;
    generator_spec base;
    vec P;                    // reference vector (or auxiliary vector in simplex/risk mode)
    std::optional<vec> Qss;   // method 2 reference
    std::optional<vec> Qstar; // speed-up / importance sampling centre
    double A = 1.0;           // simplex scale
    narrow_target target = narrow_target::casm;
    double C = 1.0;           // narrow sbd target uses Q** = C*P
    constraint_spec omega;
    long n = 100;
    long L = 10000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    // risk mode
    std::vector<int> sample;
    std::size_t categories = 0;  // 0: take from P or from the labels
    long m = 0;
    bool lattice_exact = false;
    bool keep_terms = false;  // copy per-replication exponents into the result
};

struct estimate_result {
    xreal value;
    std::optional<vec> arg_candidate;
    std::optional<double> arg_objective;
    long hit_count = 0;
    long replications = 0;
    long n = 0;
    double log_mean_exp = -inf;
    std::string method, mode;
    std::uint64_t seed = 0;
    std::map<std::string, double> diagnostics;
    std::vector<std::string> notes;
    vec terms;  // -inf for non-hits; filled when keep_terms
};

namespace detail {

struct sim_plan {
    block_partition part;
    zeta_spec zeta;
    vec taus;
    candidate_variant variant = candidate_variant::plain_W;
    double scale = 1.0;
    // returns (term, phi) for a hit; only called on hits
    std::function<std::pair<double, double>(const candidate_vector&)> eval;
    std::function<bool(const candidate_vector&)> hit;
};

struct sim_output {
    vec terms;  // -inf for non-hits
    vec phi;    // objective at hits, NaN elsewhere
    long hits = 0;
};

inline sim_output simulate(const sim_plan& plan, long L, std::uint64_t seed, unsigned workers) {
    if (L < 1) throw parameter_error("L must be >= 1");
    sim_output out;
    out.terms.assign(static_cast<std::size_t>(L), -inf);
    out.phi.assign(static_cast<std::size_t>(L), std::nan(""));
    std::vector<char> hit(static_cast<std::size_t>(L), 0);
    auto run = [&](long a, long b) {
        for (long l = a; l < b; ++l) {
            auto cv = draw_candidate(plan.part, plan.zeta, plan.taus, plan.variant, plan.scale, seed,
                                     static_cast<std::uint64_t>(l));
            if (!plan.hit(cv)) continue;
            auto [t, p] = plan.eval(cv);
            hit[static_cast<std::size_t>(l)] = 1;
            out.terms[static_cast<std::size_t>(l)] = t;
            out.phi[static_cast<std::size_t>(l)] = p;
        }
    };
    unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<long>(L, 1024))));
    if (w == 1) {
        run(0, L);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(w);
        long chunk = (L + w - 1) / w;
        for (unsigned i = 0; i < w; ++i) {
            long a = static_cast<long>(i) * chunk, b = std::min(L, a + chunk);
            pool.emplace_back([&, i, a, b] {
                try {
                    run(a, b);
                } catch (...) {
                    errs[i] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }
    for (char h : hit) out.hits += h;
    return out;
}

// smallest-index best hit; min or max of phi
inline long best_index(const sim_output& s, bool minimize) {
    long best = -1;
    for (std::size_t l = 0; l < s.phi.size(); ++l) {
        double v = s.phi[l];
        if (std::isnan(v)) continue;
        if (best < 0 || (minimize ? v < s.phi[static_cast<std::size_t>(best)] : v > s.phi[static_cast<std::size_t>(best)]))
            best = static_cast<long>(l);
    }
    return best;
}

inline double mass(const vec& v) { return pairwise_sum(v); }

inline void zero_hit_note(estimate_result& r, double n) {
    r.notes.push_back("no replication hit the constraint set; the hit rate behaves like exp(-n * optimum), "
                      "so retry with a smaller n (current n = " + std::to_string(static_cast<long>(n)) +
                      ") or a larger L");
}

inline void finish_common(estimate_result& r, const estimate_request& q, const sim_plan& plan,
                          const sim_output& s, bool minimize_phi) {
    r.replications = q.L;
    r.seed = q.seed;
    r.hit_count = s.hits;
    r.diagnostics["hit_rate"] = static_cast<double>(s.hits) / static_cast<double>(q.L);
    r.diagnostics["zeta_c"] = plan.zeta.c;
    if (q.keep_terms) r.terms = s.terms;
    long b = best_index(s, minimize_phi);
    if (b >= 0) {
        auto cv = draw_candidate(plan.part, plan.zeta, plan.taus, plan.variant, plan.scale, q.seed,
                                 static_cast<std::uint64_t>(b));
        r.arg_candidate = cv.values;
        r.arg_objective = s.phi[static_cast<std::size_t>(b)];
        r.diagnostics["arg_replication"] = static_cast<double>(b);
    }
}

inline std::string label(const zeta_spec& z) { return zeta_name(z.family); }

inline vec tilts_for(const generator_spec& base, const vec& P, const vec& Qref, double M_P) {
    if (Qref.size() != P.size()) throw config_error("reference vector dimension mismatch");
    vec t(P.size());
    for (std::size_t k = 0; k < P.size(); ++k) t[k] = tilt_param(base, M_P, Qref[k] / P[k]);
    return t;
}

inline void check_positive_P(const vec& P) {
    if (P.empty()) throw config_error("reference vector P is empty");
    for (double p : P)
        if (!(p > 0.0)) throw config_error("reference vector P must be strictly positive");
}

inline vec resolve_qstar(const estimate_request& q, estimate_result& r) {
    std::optional<vec> qs = q.Qstar ? q.Qstar : interior_hint(q.omega);
    if (!qs) throw config_error("speed-up / importance sampling needs an interior point Q* (none supplied or derivable)");
    if (!strictly_inside(q.omega, *qs))
        r.notes.push_back("Q* is not strictly inside the constraint set; the hit rate may not approach 1");
    return *qs;
}

// weighted value from exponents
inline void weighted_value(estimate_result& r, const sim_output& s, long L, double n, direction dir) {
    double lme = log_mean_exp(std::span<const double>(s.terms), static_cast<double>(L));
    r.log_mean_exp = lme;
    if (s.hits == 0) {
        r.value = dir == direction::min ? xreal::pos_infinity() : xreal::neg_infinity();
        zero_hit_note(r, n);
        return;
    }
    double v = lme / n;
    r.value = dir == direction::min ? -v : v;
}

} // namespace detail

// ---------------- full space ----------------

namespace detail {

inline estimate_result full_space(const estimate_request& q) {
    check_positive_P(q.P);
    const double MP = mass(q.P);
    const double nd = static_cast<double>(q.n);
    const bool mn = q.dir == direction::min;
    estimate_result r;
    r.method = method_name(q.method);
    r.mode = mode_name(q.mode);
    r.n = q.n;
    sim_plan plan;
    plan.part = make_partition(q.P, q.n);
    plan.zeta = make_zeta(q.base, MP);
    plan.scale = MP;
    plan.hit = [&q](const candidate_vector& c) { return contains(q.omega, c, q.omega.tol); };
    const objective_spec& phi = q.objective;
    auto combine = [nd, mn](double D, double f) {
        // min: n(D - Phi); max: n(D + Phi)
        return mn ? nd * (D - f) : nd * (D + f);
    };

    vec ref;  // SBD reference for method2/speedup
    switch (q.method) {
    case method_kind::narrow_sense:
        if (!mn) throw config_error("narrow_sense estimates minima only");
        plan.variant = candidate_variant::plain_W;
        plan.eval = [&](const candidate_vector& c) {
            return std::pair<double, double>{0.0, casm_divergence(q.base, c.values, q.P).value()};
        };
        break;
    case method_kind::method1_naive:
        plan.variant = candidate_variant::plain_W;
        plan.eval = [&](const candidate_vector& c) {
            double D = casm_divergence(q.base, c.values, q.P).value();
            double f = objective_eval(phi, c.values).value();
            return std::pair<double, double>{combine(D, f), f};
        };
        break;
    case method_kind::method2_naive:
    case method_kind::speedup:
        if (q.method == method_kind::method2_naive) {
            if (!q.Qss) throw config_error("method2_naive needs Q**");
            ref = *q.Qss;
        } else {
            ref = resolve_qstar(q, r);
        }
        plan.variant = candidate_variant::tilted_V;
        plan.taus = tilts_for(q.base, q.P, ref, MP);
        plan.eval = [&](const candidate_vector& c) {
            double D = sbd(q.base, q.P, c.values, ref).value();
            double f = objective_eval(phi, c.values).value();
            return std::pair<double, double>{combine(D, f), f};
        };
        break;
    case method_kind::importance_sampling: {
        ref = resolve_qstar(q, r);
        plan.variant = candidate_variant::tilted_V;
        plan.taus = tilts_for(q.base, q.P, ref, MP);
        vec corr(plan.taus.size());
        for (std::size_t k = 0; k < corr.size(); ++k)
            corr[k] = static_cast<double>(plan.part.sizes[k]) * cumulant(plan.zeta, plan.taus[k]).value();
        bool exact = true;
        for (std::size_t k = 0; k < corr.size(); ++k)
            exact = exact && std::abs(static_cast<double>(plan.part.sizes[k]) - nd * q.P[k] / MP) < 1e-9;
        if (!exact) r.notes.push_back("block sizes are not exactly n*p_k; importance sampling is then only approximate");
        plan.eval = [&, corr](const candidate_vector& c) {
            double D = casm_divergence(q.base, c.values, q.P).value();
            double f = objective_eval(phi, c.values).value();
            vec w(corr.size());
            for (std::size_t k = 0; k < w.size(); ++k) w[k] = corr[k] - plan.taus[k] * c.block_sums[k];
            return std::pair<double, double>{combine(D, f) + pairwise_sum(w), f};
        };
        break;
    }
    }
    auto s = simulate(plan, q.L, q.seed, q.workers);
    if (q.method == method_kind::narrow_sense) {
        r.log_mean_exp = s.hits ? std::log(static_cast<double>(s.hits) / static_cast<double>(q.L)) : -inf;
        if (s.hits == 0) {
            r.value = xreal::pos_infinity();
            zero_hit_note(r, nd);
        } else {
            r.value = -r.log_mean_exp / nd;
        }
        finish_common(r, q, plan, s, true);
    } else {
        weighted_value(r, s, q.L, nd, q.dir);
        finish_common(r, q, plan, s, mn);
    }
    r.diagnostics["M_P"] = MP;
    return r;
}

// ---------------- simplex ----------------

inline estimate_result simplex(const estimate_request& q0, const std::string& mode_label) {
    estimate_request q = q0;
    check_positive_P(q.P);
    if (q.base.family != generator_family::power)
        throw config_error("simplex estimators need a power-family base generator");
    const double g = q.base.gamma, ct = q.base.ctilde;
    if (g > 1.0 && g < 2.0)
        throw config_error("simplex estimators need gamma outside (1,2) (transform precondition)");
    if (!q.omega.simplex_scale) q.omega.simplex_scale = q.A;
    if (std::abs(*q.omega.simplex_scale - q.A) > 1e-12) throw config_error("constraint simplex_scale differs from A");
    const double MP = mass(q.P);
    const double nd = static_cast<double>(q.n);
    const bool mn = q.dir == direction::min;
    const double cb = ct * MP, Ab = q.A / MP;  // rescaled transform parameters
    estimate_result r;
    r.method = method_name(q.method);
    r.mode = mode_label;
    r.n = q.n;
    sim_plan plan;
    plan.part = make_partition(q.P, q.n);
    plan.zeta = make_zeta(q.base, MP);
    plan.scale = q.A;
    const constraint_spec& om = q.omega;
    plan.hit = [&om](const candidate_vector& c) { return contains(om, c, om.tol); };
    const objective_spec& phi = q.objective;

    if (q.method == method_kind::narrow_sense) {
        if (!mn) throw config_error("narrow_sense estimates minima only");
        transform_spec ts;
        vec ref;
        if (q.target == narrow_target::casm) {
            plan.variant = candidate_variant::normalized_W;
            ts = transform_spec::F(g, cb, Ab);
            plan.eval = [&](const candidate_vector& c) {
                return std::pair<double, double>{0.0, casm_divergence(q.base, c.values, q.P).value()};
            };
        } else {
            if (!(q.C > 0.0)) throw config_error("C must be > 0");
            ref = q.P;
            for (auto& v : ref) v *= q.C;
            plan.variant = candidate_variant::normalized_V;
            plan.taus = tilts_for(q.base, q.P, ref, MP);
            ts = g == 1.0 ? transform_spec::Fbreve1(ct, q.A, q.C * MP) : transform_spec::Fbreve(g, ct, q.A, MP, q.C);
            plan.eval = [&](const candidate_vector& c) {
                return std::pair<double, double>{0.0, sbd(q.base, q.P, c.values, ref).value()};
            };
        }
        auto s = simulate(plan, q.L, q.seed, q.workers);
        finish_common(r, q, plan, s, true);
        if (s.hits == 0) {
            r.value = xreal::pos_infinity();
            zero_hit_note(r, nd);
        } else {
            double y = -std::log(static_cast<double>(s.hits) / static_cast<double>(q.L)) / nd;
            r.log_mean_exp = -y * nd;
            r.diagnostics["raw_rate_exponent"] = y;
            try {
                r.value = F_invert(ts, y);
            } catch (const domain_error&) {
                r.value = xreal::pos_infinity();
                r.notes.push_back("hit-rate exponent lies outside the inverse transform domain; increase L or reduce n");
            }
        }
        r.diagnostics["M_P"] = MP;
        return r;
    }

    if (q.method == method_kind::importance_sampling)
        throw config_error("importance_sampling is available in full_space mode only");

    auto combine = [nd, mn](double B, double f) { return mn ? nd * (B - f) : nd * (B + f); };
    vec ref;
    if (q.method == method_kind::method1_naive) {
        plan.variant = candidate_variant::normalized_W;
        transform_spec ts = transform_spec::F(g, cb, Ab);
        plan.eval = [&, ts](const candidate_vector& c) {
            double D = casm_divergence(q.base, c.values, q.P).value();
            double B = F_apply(ts, D).value();
            double f = objective_eval(phi, c.values).value();
            return std::pair<double, double>{combine(B, f), f};
        };
    } else {
        if (q.method == method_kind::method2_naive) {
            if (!q.Qss) throw config_error("method2_naive needs Q**");
            ref = *q.Qss;
        } else {
            ref = resolve_qstar(q, r);
        }
        plan.variant = candidate_variant::normalized_V;
        plan.taus = tilts_for(q.base, q.P, ref, MP);
        plan.eval = [&](const candidate_vector& c) {
            double B = innmin_sbd(g, ct, q.P, c.values, ref);
            double f = objective_eval(phi, c.values).value();
            return std::pair<double, double>{combine(B, f), f};
        };
    }
    auto s = simulate(plan, q.L, q.seed, q.workers);
    weighted_value(r, s, q.L, nd, q.dir);
    finish_common(r, q, plan, s, mn);
    r.diagnostics["M_P"] = MP;
    return r;
}

} // namespace detail

inline estimate_result estimate_simplex_narrow(estimate_request q) {
    q.mode = mode_kind::simplex;
    q.method = method_kind::narrow_sense;
    return detail::simplex(q, "simplex");
}

inline estimate_result estimate_simplex_general(estimate_request q) {
    q.mode = mode_kind::simplex;
    if (q.method == method_kind::narrow_sense) q.method = method_kind::method1_naive;
    return detail::simplex(q, "simplex");
}

inline estimate_result estimate_risk(estimate_request q) {
    std::size_t K = q.categories ? q.categories : q.P.size();
    if (K == 0)
        for (int l : q.sample) K = std::max(K, static_cast<std::size_t>(l) + 1);
    auto rp = risk_partition(q.sample, K);
    if (!(q.m >= 1)) throw config_error("risk mode needs the inner level m >= 1");
    estimate_request s = q;
    s.P = rp.p_emp;
    if (s.objective.ref_from_sample) s.objective.ref = rp.p_emp;
    s.mode = mode_kind::simplex;
    estimate_result r;
    if (q.lattice_exact) {
        // m-fold blown-up empirical partition; exact blocks n_k = m * count_k
        auto bp = blow_up(rp, q.m);
        s.n = bp.n;
    } else {
        s.n = q.m;
    }
    r = detail::simplex(s, "risk");
    r.diagnostics["sample_size"] = static_cast<double>(rp.n);
    for (std::size_t k = 0; k < K; ++k) r.diagnostics["p_emp_" + std::to_string(k)] = rp.p_emp[k];
    return r;
}

inline estimate_result estimate_min_method1(estimate_request q) {
    q.mode = mode_kind::full_space;
    q.method = method_kind::method1_naive;
    q.dir = direction::min;
    return detail::full_space(q);
}

inline estimate_result estimate_max_method1(estimate_request q) {
    q.mode = mode_kind::full_space;
    q.method = method_kind::method1_naive;
    q.dir = direction::max;
    return detail::full_space(q);
}

inline estimate_result estimate_method2(estimate_request q) {
    q.mode = mode_kind::full_space;
    q.method = method_kind::method2_naive;
    return detail::full_space(q);
}

inline estimate_result estimate_speedup(estimate_request q) {
    q.mode = mode_kind::full_space;
    q.method = method_kind::speedup;
    return detail::full_space(q);
}

inline estimate_result estimate_importance_sampling(estimate_request q) {
    q.mode = mode_kind::full_space;
    q.method = method_kind::importance_sampling;
    return detail::full_space(q);
}

// dispatch on mode and method
inline estimate_result estimate(const estimate_request& q) {
    if (q.n < 1 && q.mode != mode_kind::risk) throw config_error("n must be >= 1");
    if (q.L < 1) throw config_error("L must be >= 1");
    switch (q.mode) {
    case mode_kind::full_space: return detail::full_space(q);
    case mode_kind::simplex: return detail::simplex(q, "simplex");
    case mode_kind::risk: return estimate_risk(q);
    }
    throw config_error("unknown mode");
}

} // namespace baresim

#endif
