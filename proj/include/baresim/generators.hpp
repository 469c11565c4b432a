#ifndef BARESIM_GENERATORS_HPP
#define BARESIM_GENERATORS_HPP

#include <cmath>
#include <string>

#include "xreal.hpp"

namespace baresim {

enum class generator_family {
    power,
    tv,
    two_gamma,
    asym_laplace,
    bregman_exp,
    two_point,
    jensen_shannon_nb,
    modified_dampened
};

inline std::string family_name(generator_family f) {
    switch (f) {
    case generator_family::power: return "power";
    case generator_family::tv: return "tv";
    case generator_family::two_gamma: return "two_gamma";
    case generator_family::asym_laplace: return "asym_laplace";
    case generator_family::bregman_exp: return "bregman_exp";
    case generator_family::two_point: return "two_point";
    case generator_family::jensen_shannon_nb: return "jensen_shannon_nb";
    case generator_family::modified_dampened: return "modified_dampened";
    }
    return "?";
}

inline generator_family family_from_name(const std::string& s) {
    for (auto f : {generator_family::power, generator_family::tv, generator_family::two_gamma,
                   generator_family::asym_laplace, generator_family::bregman_exp,
                   generator_family::two_point, generator_family::jensen_shannon_nb,
                   generator_family::modified_dampened})
        if (family_name(f) == s) return f;
    throw parameter_error("unknown generator family '" + s + "'");
}

// Unused parameters are ignored for a given family.
// two_gamma uses alpha, beta; asym_laplace uses alpha, beta1, beta2;
// bregman_exp and modified_dampened use beta.
struct generator_spec {
    generator_family family = generator_family::power;
    double gamma = 1.0;
    double ctilde = 1.0;
    double alpha = 0.5;
    double beta = 0.5;
    double beta1 = 0.5;
    double beta2 = 0.5;
    double z1 = -1.0;
    double z2 = 2.0;

    static generator_spec power(double g, double c = 1.0) {
        generator_spec s;
        s.family = generator_family::power;
        s.gamma = g;
        s.ctilde = c;
        return s;
    }
    static generator_spec tv(double c = 1.0) {
        generator_spec s;
        s.family = generator_family::tv;
        s.ctilde = c;
        return s;
    }
    static generator_spec two_gamma(double a, double b, double c) {
        generator_spec s;
        s.family = generator_family::two_gamma;
        s.alpha = a;
        s.beta = b;
        s.ctilde = c;
        return s;
    }
    static generator_spec asym_laplace(double a, double b1, double b2, double c) {
        generator_spec s;
        s.family = generator_family::asym_laplace;
        s.alpha = a;
        s.beta1 = b1;
        s.beta2 = b2;
        s.ctilde = c;
        return s;
    }
    static generator_spec bregman_exp(double b, double c) {
        generator_spec s;
        s.family = generator_family::bregman_exp;
        s.beta = b;
        s.ctilde = c;
        return s;
    }
    static generator_spec two_point(double a, double b) {
        generator_spec s;
        s.family = generator_family::two_point;
        s.z1 = a;
        s.z2 = b;
        s.ctilde = 1.0;
        return s;
    }
    static generator_spec jensen_shannon_nb(double c) {
        generator_spec s;
        s.family = generator_family::jensen_shannon_nb;
        s.ctilde = c;
        return s;
    }
    static generator_spec modified_dampened(double b, double c) {
        generator_spec s;
        s.family = generator_family::modified_dampened;
        s.beta = b;
        s.ctilde = c;
        return s;
    }

    // two_gamma is the symmetric asym_laplace
    double b1() const { return family == generator_family::two_gamma ? beta : beta1; }
    double b2() const { return family == generator_family::two_gamma ? beta : beta2; }

    void validate() const {
        auto pos = [](double v, const char* what) {
            if (!(v > 0.0) || !std::isfinite(v)) throw parameter_error(std::string(what) + " must be > 0");
        };
        switch (family) {
        case generator_family::power:
            if (!std::isfinite(gamma)) throw parameter_error("gamma must be finite");
            pos(ctilde, "ctilde");
            break;
        case generator_family::tv: pos(ctilde, "ctilde"); break;
        case generator_family::two_gamma:
            pos(alpha, "alpha");
            pos(beta, "beta");
            pos(ctilde, "ctilde");
            break;
        case generator_family::asym_laplace:
            pos(alpha, "alpha");
            pos(beta1, "beta1");
            pos(beta2, "beta2");
            pos(ctilde, "ctilde");
            break;
        case generator_family::bregman_exp:
            if (beta == 0.0 || !std::isfinite(beta)) throw parameter_error("beta must be nonzero");
            pos(ctilde, "ctilde");
            break;
        case generator_family::two_point:
            if (!(z1 < 1.0 && 1.0 < z2) || !std::isfinite(z1) || !std::isfinite(z2))
                throw parameter_error("two_point needs z1 < 1 < z2");
            break;
        case generator_family::jensen_shannon_nb: pos(ctilde, "ctilde"); break;
        case generator_family::modified_dampened:
            if (!(beta > 0.0 && beta <= 1.0)) throw parameter_error("beta must lie in (0,1]");
            pos(ctilde, "ctilde");
            break;
        }
    }
};

struct generator_domain {
    double a, b;          // effective domain (a,b)
    double sc_lo, sc_hi;  // strict convexity interval
};

inline generator_domain gen_domain(const generator_spec& g) {
    g.validate();
    switch (g.family) {
    case generator_family::power:
        if (g.gamma == 2.0) return {-inf, inf, -inf, inf};
        if (g.gamma > 1.0) return {-inf, inf, 0.0, inf};
        return {0.0, inf, 0.0, inf};
    case generator_family::tv: return {-inf, inf, 1.0, 1.0};
    case generator_family::two_gamma:
    case generator_family::asym_laplace:
    case generator_family::bregman_exp: return {-inf, inf, -inf, inf};
    case generator_family::two_point: return {g.z1, g.z2, g.z1, g.z2};
    case generator_family::jensen_shannon_nb: return {0.0, inf, 0.0, inf};
    case generator_family::modified_dampened: {
        double a = (g.beta - 1.0) / g.beta;
        return {a, inf, a, inf};
    }
    }
    return {-inf, inf, -inf, inf};
}

namespace detail {

// maximiser u* in (-b2, b1) of -u g + log(1-u/b1) + log(1+u/b2)
inline double laplace_ustar(double g, double b1, double b2) {
    double s = std::sqrt(4.0 + g * g * (b1 + b2) * (b1 + b2));
    return 2.0 * ((b1 - b2) - g * b1 * b2) / (g * (b1 - b2) + 2.0 + s);
}

inline double laplace_phi(const generator_spec& gen, double t) {
    double a = gen.alpha, b1 = gen.b1(), b2 = gen.b2();
    double theta = 1.0 + a * (1.0 / b2 - 1.0 / b1);
    double g = (theta - t) / a;
    double u = laplace_ustar(g, b1, b2);
    double v = -u * g + std::log1p(-u / b1) + std::log1p(u / b2);
    return gen.ctilde * a * std::max(v, 0.0);
}

inline double two_point_p(const generator_spec& g) { return (g.z2 - 1.0) / (g.z2 - g.z1); }

} // namespace detail

inline xreal phi_eval(const generator_spec& g, double t) {
    g.validate();
    if (std::isnan(t)) throw domain_error("phi_eval: NaN argument");
    const double c = g.ctilde;
    switch (g.family) {
    case generator_family::power: {
        const double ga = g.gamma;
        if (ga == 2.0) {
            if (!std::isfinite(t)) return xreal::pos_infinity();
            return c * (t - 1.0) * (t - 1.0) / 2.0;
        }
        if (ga > 1.0) {
            if (!std::isfinite(t)) return xreal::pos_infinity();
            if (t <= 0.0) return c * (1.0 / ga - t / (ga - 1.0));
            return c * (std::pow(t, ga) - ga * t + ga - 1.0) / (ga * (ga - 1.0));
        }
        if (t < 0.0 || t == inf) return xreal::pos_infinity();
        if (ga == 1.0) {
            if (t == 0.0) return c;
            return c * (t * std::log(t) + 1.0 - t);
        }
        if (ga == 0.0) {
            if (t == 0.0) return xreal::pos_infinity();
            return c * (-std::log(t) + t - 1.0);
        }
        if (t == 0.0) {
            if (ga < 0.0) return xreal::pos_infinity();
            return c / ga;
        }
        return c * (std::pow(t, ga) - ga * t + ga - 1.0) / (ga * (ga - 1.0));
    }
    case generator_family::tv:
        if (!std::isfinite(t)) return xreal::pos_infinity();
        return c * std::abs(t - 1.0);
    case generator_family::two_gamma:
    case generator_family::asym_laplace:
        if (!std::isfinite(t)) return xreal::pos_infinity();
        return detail::laplace_phi(g, t);
    case generator_family::bregman_exp: {
        if (!std::isfinite(t)) return xreal::pos_infinity();
        const double b = g.beta, eb = std::exp(b);
        // e^{bt} - e^b(1 + b(t-1)) written to keep cancellation small near t=1
        double d = b * (t - 1.0);
        double v = eb * (std::expm1(d) - d);
        v = 2.0 * c / (b * b) * v;
        if (std::isinf(v)) return xreal::pos_infinity();
        return v;
    }
    case generator_family::two_point: {
        if (t < g.z1 || t > g.z2) return xreal::pos_infinity();
        double p = detail::two_point_p(g);
        double s = (t - g.z1) / (g.z2 - g.z1);
        auto xlogy = [](double x, double y) { return x == 0.0 ? 0.0 : x * std::log(x / y); };
        return xlogy(s, 1.0 - p) + xlogy(1.0 - s, p);
    }
    case generator_family::jensen_shannon_nb: {
        if (t < 0.0 || t == inf) return xreal::pos_infinity();
        if (t == 0.0) return c * std::log(2.0);
        return c * (t * std::log(t) + (t + 1.0) * std::log(2.0 / (t + 1.0)));
    }
    case generator_family::modified_dampened: {
        if (!std::isfinite(t)) return xreal::pos_infinity();
        double den = g.beta * t + 1.0 - g.beta;
        if (den <= 0.0) return xreal::pos_infinity();
        return c * (t - 1.0) * (t - 1.0) / (2.0 * den);
    }
    }
    return xreal::pos_infinity();
}

// Derivative. Accepts +-inf and domain endpoints (returns the limits there).
// tv: sign(t-1), 0 at t=1; see phi_is_kink.
inline xreal phi_prime(const generator_spec& g, double t) {
    g.validate();
    if (std::isnan(t)) throw domain_error("phi_prime: NaN argument");
    auto dom = gen_domain(g);
    if (t < dom.a || t > dom.b) throw domain_error("phi_prime: t outside the closed domain");
    const double c = g.ctilde;
    switch (g.family) {
    case generator_family::power: {
        const double ga = g.gamma;
        if (ga == 2.0) return c * (t - 1.0);
        if (ga > 1.0) {
            if (t <= 0.0) return -c / (ga - 1.0);
            if (t == inf) return xreal::pos_infinity();
            return c * (std::pow(t, ga - 1.0) - 1.0) / (ga - 1.0);
        }
        if (t == 0.0) return xreal::neg_infinity();
        if (ga == 1.0) {
            if (t == inf) return xreal::pos_infinity();
            return c * std::log(t);
        }
        if (ga == 0.0) {
            if (t == inf) return c;
            return c * (1.0 - 1.0 / t);
        }
        if (t == inf) return c / (1.0 - ga);
        return c * (std::pow(t, ga - 1.0) - 1.0) / (ga - 1.0);
    }
    case generator_family::tv:
        if (t > 1.0) return c;
        if (t < 1.0) return -c;
        return 0.0;
    case generator_family::two_gamma:
    case generator_family::asym_laplace: {
        if (t == inf) return c * g.b1();
        if (t == -inf) return -c * g.b2();
        double theta = 1.0 + g.alpha * (1.0 / g.b2() - 1.0 / g.b1());
        return c * detail::laplace_ustar((theta - t) / g.alpha, g.b1(), g.b2());
    }
    case generator_family::bregman_exp: {
        const double b = g.beta, eb = std::exp(b);
        if (t == inf) return b > 0 ? xreal::pos_infinity() : xreal(-2.0 * c * eb / b);
        if (t == -inf) return b > 0 ? xreal(-2.0 * c * eb / b) : xreal::neg_infinity();
        double v = 2.0 * c / b * eb * std::expm1(b * (t - 1.0));
        if (std::isinf(v)) return v > 0 ? xreal::pos_infinity() : xreal::neg_infinity();
        return v;
    }
    case generator_family::two_point: {
        if (t == g.z1) return xreal::neg_infinity();
        if (t == g.z2) return xreal::pos_infinity();
        double p = detail::two_point_p(g);
        double s = (t - g.z1) / (g.z2 - g.z1);
        return (std::log(s / (1.0 - s)) + std::log(p / (1.0 - p))) / (g.z2 - g.z1);
    }
    case generator_family::jensen_shannon_nb:
        if (t == 0.0) return xreal::neg_infinity();
        if (t == inf) return c * std::log(2.0);
        return c * std::log(2.0 * t / (t + 1.0));
    case generator_family::modified_dampened: {
        if (t == inf) return c / (2.0 * g.beta);
        double den = g.beta * t + 1.0 - g.beta;
        if (den <= 0.0) return xreal::neg_infinity();
        return c * (t - 1.0) * (g.beta * t + 2.0 - g.beta) / (2.0 * den * den);
    }
    }
    return 0.0;
}

inline bool phi_is_kink(const generator_spec& g, double t) {
    return g.family == generator_family::tv && t == 1.0;
}

inline bool in_strict_convexity(const generator_spec& g, double t) {
    auto d = gen_domain(g);
    return t > d.sc_lo && t < d.sc_hi;
}

// phi(t) - phi(t*) - phi'(t*)(t - t*)
inline xreal phi_k_eval(const generator_spec& g, double t, double t_star) {
    if (!in_strict_convexity(g, t_star))
        throw precondition_error("phi_k_eval: t_star outside the strict convexity interval");
    xreal f = phi_eval(g, t);
    if (!f.is_finite()) return f;
    if (t == t_star) return 0.0;
    double v = f.value() - phi_eval(g, t_star).value() - phi_prime(g, t_star).value() * (t - t_star);
    return std::max(v, 0.0);
}

} // namespace baresim

#endif
