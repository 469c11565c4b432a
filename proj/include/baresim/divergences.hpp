#ifndef BARESIM_DIVERGENCES_HPP
#define BARESIM_DIVERGENCES_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "generators.hpp"
#include "numeric.hpp"

namespace baresim {

using vec = std::vector<double>;

namespace detail {

inline void same_size(const vec& a, const vec& b, const char* who) {
    if (a.size() != b.size()) throw parameter_error(std::string(who) + ": dimension mismatch");
    if (a.empty()) throw parameter_error(std::string(who) + ": empty vector");
}

inline double sum(const vec& v) { return pairwise_sum(v); }

// p * phi(q/p) with the three zero conventions
inline xreal casm_term(const generator_spec& g, double q, double p) {
    if (p > 0.0) {
        xreal f = phi_eval(g, q / p);
        if (!f.is_finite()) return f;
        return p * f.value();
    }
    if (q == 0.0) return 0.0;
    auto d = gen_domain(g);
    if (q > 0.0) {
        if (d.b < inf) return xreal::pos_infinity();
        xreal s = phi_prime(g, inf);
        if (!s.is_finite()) return xreal::pos_infinity();
        return q * s.value();
    }
    if (d.a > -inf) return xreal::pos_infinity();
    xreal s = phi_prime(g, -inf);
    if (!s.is_finite()) return xreal::pos_infinity();
    return q * s.value();
}

inline xreal sum_terms(const std::vector<double>& t, bool infinite) {
    if (infinite) return xreal::pos_infinity();
    return pairwise_sum(t);
}

} // namespace detail

inline xreal casm_divergence(const generator_spec& g, const vec& Q, const vec& P) {
    detail::same_size(Q, P, "casm_divergence");
    g.validate();
    std::vector<double> t(Q.size());
    for (std::size_t k = 0; k < Q.size(); ++k) {
        if (P[k] < 0.0) throw parameter_error("casm_divergence: negative reference component");
        xreal v = detail::casm_term(g, Q[k], P[k]);
        if (!v.is_finite()) return xreal::pos_infinity();
        t[k] = v.value();
    }
    return std::max(0.0, pairwise_sum(t));
}

// Closed-form generalized power divergence, including the domain rows.
inline xreal power_divergence_closed(double gamma, double ctilde, const vec& Q, const vec& P) {
    detail::same_size(Q, P, "power_divergence_closed");
    if (!(ctilde > 0.0)) throw parameter_error("ctilde must be > 0");
    bool p_pos = true, p_nonneg = true, q_pos = true, q_nonneg = true;
    double psum = 0.0;
    for (std::size_t k = 0; k < Q.size(); ++k) {
        p_pos = p_pos && P[k] > 0.0;
        p_nonneg = p_nonneg && P[k] >= 0.0;
        q_pos = q_pos && Q[k] > 0.0;
        q_nonneg = q_nonneg && Q[k] >= 0.0;
        psum += P[k];
    }
    bool p_semi = p_nonneg && psum > 0.0;
    const double g = gamma;
    auto generic = [&](bool indicator) -> xreal {
        vec a(Q.size());
        for (std::size_t k = 0; k < Q.size(); ++k) {
            if (indicator && Q[k] < 0.0) {
                a[k] = 0.0;
                continue;
            }
            a[k] = (P[k] == 0.0) ? 0.0 : std::pow(Q[k], g) * std::pow(P[k], 1.0 - g);
        }
        double v = detail::sum(a) / (g * (g - 1.0)) - detail::sum(Q) / (g - 1.0) + detail::sum(P) / g;
        return std::max(0.0, ctilde * v);
    };
    if (g < 0.0) {
        if (p_semi && q_pos) return generic(false);
        return xreal::pos_infinity();
    }
    if (g == 0.0) {
        if (!(p_semi && q_pos)) return xreal::pos_infinity();
        vec a(Q.size());
        for (std::size_t k = 0; k < Q.size(); ++k) a[k] = P[k] == 0.0 ? 0.0 : P[k] * std::log(P[k] / Q[k]);
        return std::max(0.0, ctilde * (detail::sum(a) + detail::sum(Q) - detail::sum(P)));
    }
    if (g < 1.0) {
        if (p_semi && q_nonneg) return generic(false);
        return xreal::pos_infinity();
    }
    if (g == 1.0) {
        if (!(p_pos && q_nonneg)) return xreal::pos_infinity();
        vec a(Q.size());
        for (std::size_t k = 0; k < Q.size(); ++k) a[k] = Q[k] == 0.0 ? 0.0 : Q[k] * std::log(Q[k] / P[k]);
        return std::max(0.0, ctilde * (detail::sum(a) - detail::sum(Q) + detail::sum(P)));
    }
    if (!p_pos) return xreal::pos_infinity();
    if (g == 2.0) {
        vec a(Q.size());
        for (std::size_t k = 0; k < Q.size(); ++k) a[k] = (Q[k] - P[k]) * (Q[k] - P[k]) / (2.0 * P[k]);
        return ctilde * detail::sum(a);
    }
    return generic(true);
}

// Scaled Bregman distance sum_k p_k phi_k(q_k/p_k), t*_k = q**_k/p_k.
inline xreal sbd(const generator_spec& g, const vec& P, const vec& Q, const vec& Qss) {
    detail::same_size(Q, P, "sbd");
    detail::same_size(Qss, P, "sbd");
    g.validate();
    std::vector<double> t(Q.size());
    bool infinite = false;
    for (std::size_t k = 0; k < Q.size(); ++k) {
        if (!(P[k] > 0.0)) throw parameter_error("sbd: reference vector must be strictly positive");
        double ts = Qss[k] / P[k];
        if (!in_strict_convexity(g, ts))
            throw precondition_error("sbd: q**_k/p_k outside the strict convexity interval");
        xreal v = phi_k_eval(g, Q[k] / P[k], ts);
        if (!v.is_finite()) {
            infinite = true;
            continue;
        }
        t[k] = P[k] * v.value();
    }
    return detail::sum_terms(t, infinite);
}

inline xreal obd(const generator_spec& g, const vec& Q, const vec& Qss) {
    return sbd(g, vec(Q.size(), 1.0), Q, Qss);
}

inline double bregman_exponential(double beta, double ctilde, const vec& P, const vec& Q, const vec& Qss) {
    detail::same_size(Q, P, "bregman_exponential");
    detail::same_size(Qss, P, "bregman_exponential");
    if (beta == 0.0) throw parameter_error("beta must be nonzero");
    if (!(ctilde > 0.0)) throw parameter_error("ctilde must be > 0");
    vec a(Q.size());
    for (std::size_t k = 0; k < Q.size(); ++k) {
        if (!(P[k] > 0.0)) throw parameter_error("bregman_exponential: P must be > 0");
        double es = std::exp(beta * Qss[k] / P[k]);
        // p e^{b q/p} - (p + b(q-q**)) e^{b q**/p}, arranged around q**
        double d = beta * (Q[k] - Qss[k]) / P[k];
        a[k] = P[k] * es * (std::expm1(d) - d);
    }
    return 2.0 * ctilde / (beta * beta) * detail::sum(a);
}

// sum q^g p^{1-g}; for g > 1 (g != 2) negative q contribute nothing
inline xreal hellinger_integral(double g, const vec& Q, const vec& P) {
    detail::same_size(Q, P, "hellinger_integral");
    vec a(Q.size());
    for (std::size_t k = 0; k < Q.size(); ++k) {
        double q = Q[k], p = P[k];
        if (p < 0.0) throw parameter_error("hellinger_integral: negative reference component");
        if (g == 1.0) {
            a[k] = q;
        } else if (g == 2.0) {
            if (!(p > 0.0)) return xreal::pos_infinity();
            a[k] = q * q / p;
        } else if (g > 1.0) {
            if (!(p > 0.0)) return xreal::pos_infinity();
            a[k] = q >= 0.0 ? std::pow(q, g) * std::pow(p, 1.0 - g) : 0.0;
        } else {
            if (q < 0.0 || (q == 0.0 && g <= 0.0)) return xreal::pos_infinity();
            a[k] = p == 0.0 ? 0.0 : std::pow(q, g) * std::pow(p, 1.0 - g);
        }
    }
    return detail::sum(a);
}

inline double triple_power_sum(double g, const vec& Q, const vec& Qss, const vec& P) {
    detail::same_size(Q, P, "triple_power_sum");
    detail::same_size(Qss, P, "triple_power_sum");
    vec a(Q.size());
    for (std::size_t k = 0; k < Q.size(); ++k) {
        if (g == 1.0)
            a[k] = Q[k];
        else if (g == 2.0)
            a[k] = Q[k] * Qss[k] / P[k];
        else
            a[k] = Q[k] * std::pow(Qss[k], g - 1.0) * std::pow(P[k], 1.0 - g);
    }
    return detail::sum(a);
}

inline double modified_kl(const vec& Q, const vec& Qss) {
    detail::same_size(Q, Qss, "modified_kl");
    vec a(Q.size());
    for (std::size_t k = 0; k < Q.size(); ++k) a[k] = Q[k] == 0.0 ? 0.0 : Q[k] * std::log(Q[k] / Qss[k]);
    return detail::sum(a);
}

inline double log_triple_sum(const vec& Q, const vec& Qss, const vec& P) {
    detail::same_size(Q, P, "log_triple_sum");
    detail::same_size(Qss, P, "log_triple_sum");
    vec a(Q.size());
    for (std::size_t k = 0; k < Q.size(); ++k) a[k] = -P[k] * std::log(Q[k] / Qss[k]);
    return detail::sum(a);
}

namespace detail {

// f(m) = SBD(mQ, Q**) for the power family, minimized numerically over m > 0
inline double innmin_numeric(double g, double c, const vec& P, const vec& Q, const vec& Qss) {
    auto gen = generator_spec::power(g, c);
    auto f = [&](double u) {
        vec mq(Q.size());
        double m = std::exp(u);
        for (std::size_t k = 0; k < Q.size(); ++k) mq[k] = m * Q[k];
        return sbd(gen, P, mq, Qss).value();
    };
    double best_u = -40.0, best = f(best_u);
    for (double u = -40.0; u <= 40.0; u += 0.25) {
        double v = f(u);
        if (v < best) best = v, best_u = u;
    }
    auto r = boost::math::tools::brent_find_minima(f, best_u - 0.25, best_u + 0.25,
                                                   std::numeric_limits<double>::digits / 2);
    return std::min(best, r.second);
}

} // namespace detail

// inf over m of SBD(m Q, Q**) for the power family, in closed form
inline double innmin_sbd(double g, double c, const vec& P, const vec& Q, const vec& Qss) {
    detail::same_size(Q, P, "innmin_sbd");
    detail::same_size(Qss, P, "innmin_sbd");
    if (!(c > 0.0)) throw parameter_error("ctilde must be > 0");
    for (std::size_t k = 0; k < P.size(); ++k) {
        if (!(P[k] > 0.0)) throw precondition_error("innmin_sbd: P must be > 0");
        if (g != 2.0 && !(Qss[k] > 0.0)) throw precondition_error("innmin_sbd: Q** must be > 0");
        if (g <= 0.0 && !(Q[k] > 0.0)) throw precondition_error("innmin_sbd: Q must be > 0 for gamma <= 0");
        if (g > 0.0 && g <= 1.0 && Q[k] < 0.0) throw precondition_error("innmin_sbd: Q must be >= 0");
    }
    double A = detail::sum(Q);
    if (g == 1.0) {
        if (!(A > 0.0)) throw precondition_error("innmin_sbd: total mass of Q must be > 0");
        double I = modified_kl(Q, Qss);
        return std::max(0.0, c * (detail::sum(Qss) - A * std::exp(-I / A)));
    }
    if (g == 0.0) {
        double MP = detail::sum(P);
        vec a(Q.size());
        for (std::size_t k = 0; k < Q.size(); ++k) a[k] = Q[k] * P[k] / Qss[k];
        double T0 = detail::sum(a);
        double Tb = log_triple_sum(Q, Qss, P);
        return std::max(0.0, c * (MP * std::log(T0) + Tb - MP * std::log(MP)));
    }
    double H = hellinger_integral(g, Q, P).value();
    double Hss = hellinger_integral(g, Qss, P).value();
    double T = triple_power_sum(g, Q, Qss, P);
    if (g == 2.0) {
        if (!(H > 0.0)) return c / 2.0 * Hss;
        return std::max(0.0, c / 2.0 * (Hss - T * T / H));
    }
    if (g > 1.0 && !(T > 0.0)) return detail::innmin_numeric(g, c, P, Q, Qss);
    double v = Hss - std::exp(g / (g - 1.0) * std::log(T) - std::log(H) / (g - 1.0));
    return std::max(0.0, c / g * v);
}

inline double weighted_lr(double r, const vec& M, const vec& Q, const vec& P) {
    detail::same_size(Q, P, "weighted_lr");
    detail::same_size(M, P, "weighted_lr");
    if (!(r > 0.0)) throw parameter_error("weighted_lr: r must be > 0");
    vec a(Q.size());
    for (std::size_t k = 0; k < Q.size(); ++k) {
        if (!(M[k] > 0.0)) throw parameter_error("weighted_lr: weights must be > 0");
        a[k] = std::pow(std::abs(Q[k] - P[k]), r) / M[k];
    }
    return std::pow(detail::sum(a), 1.0 / r);
}

// squared Mahalanobis distance; Amat row-major K x K
inline double mahalanobis(const std::vector<vec>& Amat, const vec& Q, const vec& P) {
    detail::same_size(Q, P, "mahalanobis");
    if (Amat.size() != Q.size()) throw parameter_error("mahalanobis: matrix dimension mismatch");
    vec a(Q.size());
    for (std::size_t i = 0; i < Q.size(); ++i) {
        if (Amat[i].size() != Q.size()) throw parameter_error("mahalanobis: matrix dimension mismatch");
        vec row(Q.size());
        for (std::size_t j = 0; j < Q.size(); ++j) row[j] = Amat[i][j] * (Q[j] - P[j]);
        a[i] = (Q[i] - P[i]) * detail::sum(row);
    }
    return detail::sum(a);
}

inline xreal burbea_rao(const generator_spec& g, double beta, const vec& Q, const vec& P) {
    detail::same_size(Q, P, "burbea_rao");
    if (!(beta > 0.0 && beta < 1.0)) throw parameter_error("burbea_rao: beta must lie in (0,1)");
    vec a(Q.size());
    for (std::size_t k = 0; k < Q.size(); ++k) {
        xreal fq = phi_eval(g, Q[k]), fp = phi_eval(g, P[k]);
        xreal fm = phi_eval(g, beta * Q[k] + (1.0 - beta) * P[k]);
        if (!fq.is_finite() || !fp.is_finite()) return xreal::pos_infinity();
        a[k] = beta * fq.value() + (1.0 - beta) * fp.value() - fm.value();
    }
    return std::max(0.0, detail::sum(a));
}

enum class entropy_h { identity, negation, log1p, affine };

struct entropy_composer {
    entropy_h kind = entropy_h::identity;
    double slope = 1.0, intercept = 0.0;  // affine only
    double operator()(double s) const {
        switch (kind) {
        case entropy_h::identity: return s;
        case entropy_h::negation: return -s;
        case entropy_h::log1p: return std::log1p(s);
        case entropy_h::affine: return slope * s + intercept;
        }
        return s;
    }
};

inline xreal phi_entropy(const generator_spec& g, const entropy_composer& h, const vec& Q) {
    vec a(Q.size());
    for (std::size_t k = 0; k < Q.size(); ++k) {
        xreal v = phi_eval(g, Q[k]);
        if (!v.is_finite()) return h.kind == entropy_h::negation ? xreal::neg_infinity() : xreal::pos_infinity();
        a[k] = v.value();
    }
    return h(detail::sum(a));
}

enum class objective_kind {
    casm,
    sbd,
    obd,
    innmin_sbd,
    weighted_lr,
    mahalanobis,
    burbea_rao,
    phi_entropy,
    custom_table
};

inline std::string objective_name(objective_kind k) {
    switch (k) {
    case objective_kind::casm: return "casm";
    case objective_kind::sbd: return "sbd";
    case objective_kind::obd: return "obd";
    case objective_kind::innmin_sbd: return "innmin_sbd";
    case objective_kind::weighted_lr: return "weighted_lr";
    case objective_kind::mahalanobis: return "mahalanobis";
    case objective_kind::burbea_rao: return "burbea_rao";
    case objective_kind::phi_entropy: return "phi_entropy";
    case objective_kind::custom_table: return "custom_table";
    }
    return "?";
}

inline objective_kind objective_from_name(const std::string& s) {
    for (auto k : {objective_kind::casm, objective_kind::sbd, objective_kind::obd, objective_kind::innmin_sbd,
                   objective_kind::weighted_lr, objective_kind::mahalanobis, objective_kind::burbea_rao,
                   objective_kind::phi_entropy, objective_kind::custom_table})
        if (objective_name(k) == s) return k;
    throw config_error("unknown objective kind '" + s + "'");
}

// Phi(Q) = weight * base(Q).
//   casm: D(Q, ref); sbd: SBD_ref(Q, ref2); obd: OBD(Q, ref); innmin_sbd: (gen.gamma, gen.ctilde, P=ref, Q** = ref2)
//   weighted_lr: (r, M=ref2, P=ref); mahalanobis: (matrix, P=ref); burbea_rao: (gen, beta, P=ref)
//   phi_entropy: (gen, h); custom_table: constant + linear.q + quadratic.q^2, or callback if set
struct objective_spec {
    objective_kind kind = objective_kind::casm;
    generator_spec gen;
    vec ref, ref2;
    std::vector<vec> matrix;
    double r = 2.0;
    double beta = 0.5;
    entropy_composer h;
    double constant = 0.0;
    vec linear, quadratic;
    std::function<double(const vec&)> callback;
    double weight = 1.0;
    bool ref_from_sample = false;  // risk mode swaps in the empirical vector

    objective_spec negated() const {
        objective_spec o = *this;
        o.weight = -weight;
        return o;
    }
};

inline xreal objective_eval(const objective_spec& o, const vec& Q) {
    auto base = [&]() -> xreal {
        switch (o.kind) {
        case objective_kind::casm: return casm_divergence(o.gen, Q, o.ref);
        case objective_kind::sbd: return sbd(o.gen, o.ref, Q, o.ref2);
        case objective_kind::obd: return obd(o.gen, Q, o.ref);
        case objective_kind::innmin_sbd: return innmin_sbd(o.gen.gamma, o.gen.ctilde, o.ref, Q, o.ref2);
        case objective_kind::weighted_lr:
            return weighted_lr(o.r, o.ref2.empty() ? vec(Q.size(), 1.0) : o.ref2, Q, o.ref);
        case objective_kind::mahalanobis: return mahalanobis(o.matrix, Q, o.ref);
        case objective_kind::burbea_rao: return burbea_rao(o.gen, o.beta, Q, o.ref);
        case objective_kind::phi_entropy: return phi_entropy(o.gen, o.h, Q);
        case objective_kind::custom_table: {
            if (o.callback) return o.callback(Q);
            double v = o.constant;
            for (std::size_t k = 0; k < Q.size(); ++k) {
                if (k < o.linear.size()) v += o.linear[k] * Q[k];
                if (k < o.quadratic.size()) v += o.quadratic[k] * Q[k] * Q[k];
            }
            return v;
        }
        }
        return 0.0;
    }();
    if (o.weight == 1.0) return base;
    if (base.is_finite()) return o.weight * base.value();
    if (o.weight == 0.0) return 0.0;
    return o.weight > 0 ? base : -base;
}

} // namespace baresim

#endif
