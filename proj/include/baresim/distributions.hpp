#ifndef BARESIM_DISTRIBUTIONS_HPP
#define BARESIM_DISTRIBUTIONS_HPP

#include <cmath>
#include <random>
#include <string>

#include "generators.hpp"
#include "numeric.hpp"
#include "rng.hpp"

namespace baresim {

enum class zeta_family {
    gamma_gamma,
    scaled_poisson,
    normal,
    compound_poi_gamma,
    neg_binomial_scaled,
    two_point,
    asym_laplace_diff,
    power_stable,    // cumulant only
    bregman_stable   // cumulant only
};

inline std::string zeta_name(zeta_family f) {
    switch (f) {
    case zeta_family::gamma_gamma: return "gamma_gamma";
    case zeta_family::scaled_poisson: return "scaled_poisson";
    case zeta_family::normal: return "normal";
    case zeta_family::compound_poi_gamma: return "compound_poi_gamma";
    case zeta_family::neg_binomial_scaled: return "neg_binomial_scaled";
    case zeta_family::two_point: return "two_point";
    case zeta_family::asym_laplace_diff: return "asym_laplace_diff";
    case zeta_family::power_stable: return "power_stable";
    case zeta_family::bregman_stable: return "bregman_stable";
    }
    return "?";
}

// c is the effective multiplier ctilde * M_P
struct zeta_spec {
    zeta_family family = zeta_family::normal;
    double c = 1.0;
    double gamma = 2.0;
    double alpha = 0.5, beta1 = 0.5, beta2 = 0.5;
    double z1 = -1.0, z2 = 2.0;
    double beta = 1.0;  // bregman_stable

    double theta() const { return 1.0 + alpha * (1.0 / beta2 - 1.0 / beta1); }
    double p_low() const { return (z2 - 1.0) / (z2 - z1); }
    bool samplable() const {
        return family != zeta_family::power_stable && family != zeta_family::bregman_stable;
    }
};

// law whose cumulant is Legendre-paired with M_P * phi
inline zeta_spec make_zeta(const generator_spec& g, double M_P) {
    g.validate();
    if (!(M_P > 0.0)) throw parameter_error("M_P must be > 0");
    zeta_spec z;
    z.c = g.ctilde * M_P;
    switch (g.family) {
    case generator_family::power:
        z.gamma = g.gamma;
        if (g.gamma == 0.0)
            z.family = zeta_family::gamma_gamma;
        else if (g.gamma == 1.0)
            z.family = zeta_family::scaled_poisson;
        else if (g.gamma == 2.0)
            z.family = zeta_family::normal;
        else if (g.gamma > 0.0 && g.gamma < 1.0)
            z.family = zeta_family::compound_poi_gamma;
        else
            z.family = zeta_family::power_stable;
        return z;
    case generator_family::two_gamma:
    case generator_family::asym_laplace:
        z.family = zeta_family::asym_laplace_diff;
        z.alpha = g.alpha;
        z.beta1 = g.b1();
        z.beta2 = g.b2();
        return z;
    case generator_family::bregman_exp:
        z.family = zeta_family::bregman_stable;
        z.beta = g.beta;
        return z;
    case generator_family::two_point:
        if (M_P != 1.0) throw unsupported_family("two_point simulation needs M_P = 1");
        z.family = zeta_family::two_point;
        z.c = 1.0;
        z.z1 = g.z1;
        z.z2 = g.z2;
        return z;
    case generator_family::jensen_shannon_nb:
        z.family = zeta_family::neg_binomial_scaled;
        return z;
    case generator_family::tv: throw unsupported_family("tv has no simulation law");
    case generator_family::modified_dampened:
        throw unsupported_family("modified_dampened is evaluation only");
    }
    throw unsupported_family("no simulation law");
}

// open interval where the cumulant is finite
struct cumulant_domain {
    double lo, hi;
};

inline cumulant_domain cumulant_dom(const zeta_spec& z) {
    const double c = z.c;
    switch (z.family) {
    case zeta_family::gamma_gamma: return {-inf, c};
    case zeta_family::scaled_poisson:
    case zeta_family::normal:
    case zeta_family::two_point: return {-inf, inf};
    case zeta_family::compound_poi_gamma: return {-inf, c / (1.0 - z.gamma)};
    case zeta_family::neg_binomial_scaled: return {-inf, c * std::log(2.0)};
    case zeta_family::asym_laplace_diff: return {-c * z.beta2, c * z.beta1};
    case zeta_family::power_stable:
        if (z.gamma > 1.0) return {-c / (z.gamma - 1.0), inf};
        return {-inf, c / (1.0 - z.gamma)};
    case zeta_family::bregman_stable: {
        double e = -2.0 * c * std::exp(z.beta) / z.beta;
        return z.beta > 0 ? cumulant_domain{e, inf} : cumulant_domain{-inf, e};
    }
    }
    return {-inf, inf};
}

inline xreal cumulant(const zeta_spec& z, double x) {
    auto d = cumulant_dom(z);
    if (x == 0.0) return 0.0;
    if (!(x > d.lo && x < d.hi)) {
        // closed endpoints where the cumulant stays finite
        if (z.family == zeta_family::power_stable && x == (z.gamma > 1.0 ? d.lo : d.hi))
            return -z.c / z.gamma;
        if (z.family == zeta_family::bregman_stable && x == (z.beta > 0 ? d.lo : d.hi))
            return -x / z.beta - 2.0 * z.c * std::exp(z.beta) / z.beta;
        return xreal::pos_infinity();
    }
    const double c = z.c;
    switch (z.family) {
    case zeta_family::gamma_gamma: return -c * std::log1p(-x / c);
    case zeta_family::scaled_poisson: return c * std::expm1(x / c);
    case zeta_family::normal: return x + x * x / (2.0 * c);
    case zeta_family::compound_poi_gamma: {
        double g = z.gamma;
        return c / g * std::expm1(-g / (1.0 - g) * std::log1p(-x * (1.0 - g) / c));
    }
    case zeta_family::neg_binomial_scaled: return -c * std::log(2.0 - std::exp(x / c));
    case zeta_family::two_point: {
        double p = z.p_low();
        return log_sum_exp2(std::log(p) + x * z.z1, std::log1p(-p) + x * z.z2);
    }
    case zeta_family::asym_laplace_diff:
        return z.theta() * x - c * z.alpha * std::log1p(-x / (c * z.beta1)) -
               c * z.alpha * std::log1p(x / (c * z.beta2));
    case zeta_family::power_stable: {
        double g = z.gamma;
        return c / g * std::expm1(g / (g - 1.0) * std::log1p(x * (g - 1.0) / c));
    }
    case zeta_family::bregman_stable: {
        double b = z.beta, eb = std::exp(b);
        double u = b * x / (2.0 * c) + eb;
        return 2.0 * c / (b * b) * u * std::log(u) - x / b - 2.0 * c * eb / b;
    }
    }
    return xreal::pos_infinity();
}

// derivative of the cumulant on the interior of its domain
inline double cumulant_prime(const zeta_spec& z, double x) {
    const double c = z.c;
    switch (z.family) {
    case zeta_family::gamma_gamma: return 1.0 / (1.0 - x / c);
    case zeta_family::scaled_poisson: return std::exp(x / c);
    case zeta_family::normal: return 1.0 + x / c;
    case zeta_family::compound_poi_gamma: {
        double g = z.gamma;
        return std::pow(1.0 - x * (1.0 - g) / c, -1.0 / (1.0 - g));
    }
    case zeta_family::neg_binomial_scaled: {
        double e = std::exp(x / c);
        return e / (2.0 - e);
    }
    case zeta_family::two_point: {
        double p = z.p_low();
        double a = std::log(p) + x * z.z1, b = std::log1p(-p) + x * z.z2;
        double w2 = 1.0 / (1.0 + std::exp(a - b));
        return z.z1 * (1.0 - w2) + z.z2 * w2;
    }
    case zeta_family::asym_laplace_diff:
        return z.theta() + z.alpha / (z.beta1 - x / c) - z.alpha / (z.beta2 + x / c);
    case zeta_family::power_stable: {
        double g = z.gamma;
        return std::pow(1.0 + x * (g - 1.0) / c, 1.0 / (g - 1.0));
    }
    case zeta_family::bregman_stable: {
        double b = z.beta;
        return std::log(b * x / (2.0 * c) + std::exp(b)) / b;
    }
    }
    return 0.0;
}

namespace detail {

// sup_z (z t - L(z)) for a convex L with increasing derivative dL on (lo, hi)
template <class L, class DL>
double legendre_sup(L&& lam, DL&& dlam, double lo, double hi, double t) {
    // bracket a root of dL(z) = t
    double a = 0.0, b = 0.0;
    double d0 = dlam(0.0);
    if (d0 == t) return -lam(0.0);
    auto step_toward = [](double cur, double end, double step) {
        if (std::isfinite(end)) return cur + (end - cur) / 2.0;
        return cur + step;
    };
    double step = 1.0;
    int iters = 0;
    if (d0 < t) {
        b = step_toward(0.0, hi, step);
        while (dlam(b) < t) {
            a = b;
            step *= 2.0;
            b = step_toward(b, hi, step);
            if (++iters > 2000 || !(b < hi)) throw numeric_error("legendre: cannot bracket (t beyond range)");
        }
    } else {
        a = step_toward(0.0, lo, -step);
        while (dlam(a) > t) {
            b = a;
            step *= 2.0;
            a = step_toward(a, lo, -step);
            if (++iters > 2000 || !(a > lo)) throw numeric_error("legendre: cannot bracket (t beyond range)");
        }
    }
    for (int i = 0; i < 80 && b - a > 1e-12 * (1.0 + std::abs(a)); ++i) {
        double m = 0.5 * (a + b);
        if (dlam(m) < t)
            a = m;
        else
            b = m;
    }
    // the sup is flat at the root; take the better end
    return std::max(a * t - lam(a), b * t - lam(b));
}

} // namespace detail

// sup_z (z t - cumulant(z)); bisection on cumulant'(z) = t
inline double legendre_phi(const zeta_spec& z, double t) {
    auto d = cumulant_dom(z);
    auto lam = [&](double x) { return cumulant(z, x).value(); };
    auto dl = [&](double x) { return cumulant_prime(z, x); };
    return detail::legendre_sup(lam, dl, d.lo, d.hi, t);
}

// same with the shifted cumulant L(z + tau) - L(tau)
inline double legendre_phi_shifted(const zeta_spec& z, double tau, double t) {
    auto d = cumulant_dom(z);
    double lt = cumulant(z, tau).value();
    auto lam = [&](double x) { return cumulant(z, x + tau).value() - lt; };
    auto dl = [&](double x) { return cumulant_prime(z, x + tau); };
    return detail::legendre_sup(lam, dl, d.lo - tau, d.hi - tau, t);
}

inline double tilt_param(const generator_spec& g, double M_P, double t_star) {
    if (!in_strict_convexity(g, t_star))
        throw precondition_error("tilt_param: t_star outside the strict convexity interval");
    return M_P * phi_prime(g, t_star).value();
}

struct tilted_block_spec {
    zeta_spec zeta;
    double tau = 0.0;
    long n_k = 1;

    // compound case: Poisson intensity of the tilted law
    double theta_breve() const {
        double g = zeta.gamma, c = zeta.c;
        return c / g * std::pow(1.0 - tau * (1.0 - g) / c, -g / (1.0 - g));
    }
};

namespace detail {

inline void check_tilt(const tilted_block_spec& tb) {
    if (!tb.zeta.samplable())
        throw unsupported_family("sampling not available for " + zeta_name(tb.zeta.family));
    auto d = cumulant_dom(tb.zeta);
    if (!(tb.tau > d.lo && tb.tau < d.hi)) throw precondition_error("tilt outside the cumulant domain");
    if (tb.n_k < 1) throw precondition_error("block size must be >= 1");
}

inline double gamma_draw(double shape, double rate, rng_stream& r) {
    if (shape <= 0.0) return 0.0;
    std::gamma_distribution<double> d(shape, 1.0 / rate);
    return d(r);
}

inline double poisson_draw(double mean, rng_stream& r) {
    if (mean <= 0.0) return 0.0;
    std::poisson_distribution<long long> d(mean);
    return static_cast<double>(d(r));
}

// sum of m iid draws of the tilted law, m >= 1
inline double tilted_sum(const tilted_block_spec& tb, double m, rng_stream& r) {
    const zeta_spec& z = tb.zeta;
    const double c = z.c, tau = tb.tau;
    switch (z.family) {
    case zeta_family::gamma_gamma: return gamma_draw(m * c, c - tau, r);
    case zeta_family::scaled_poisson: return poisson_draw(m * c * std::exp(tau / c), r) / c;
    case zeta_family::normal: {
        std::normal_distribution<double> d(m * (1.0 + tau / c), std::sqrt(m / c));
        return d(r);
    }
    case zeta_family::compound_poi_gamma: {
        double g = z.gamma;
        double N = poisson_draw(m * tb.theta_breve(), r);
        return gamma_draw(N * g / (1.0 - g), c / (1.0 - g) - tau, r);
    }
    case zeta_family::neg_binomial_scaled: {
        double q = 0.5 * std::exp(tau / c);  // failure probability
        double lam = gamma_draw(m * c, (1.0 - q) / q, r);
        return poisson_draw(lam, r) / c;
    }
    case zeta_family::two_point: {
        double p = z.p_low();
        double a = std::log(p) + tau * z.z1, b = std::log1p(-p) + tau * z.z2;
        double p2 = 1.0 / (1.0 + std::exp(a - b));
        std::binomial_distribution<long long> d(static_cast<long long>(m), p2);
        return m * z.z1 + (z.z2 - z.z1) * static_cast<double>(d(r));
    }
    case zeta_family::asym_laplace_diff: {
        double s = m * c * z.alpha;
        double g1 = gamma_draw(s, c * z.beta1 - tau, r);
        double g2 = gamma_draw(s, c * z.beta2 + tau, r);
        return m * z.theta() + g1 - g2;
    }
    default: break;
    }
    throw unsupported_family("sampling not available for " + zeta_name(z.family));
}

} // namespace detail

// one draw of the block sum over n_k tilted variables
inline double sample_block_sum(const tilted_block_spec& tb, rng_stream& r) {
    detail::check_tilt(tb);
    return detail::tilted_sum(tb, static_cast<double>(tb.n_k), r);
}

// one tilted variable
inline double sample_tilted(const tilted_block_spec& tb, rng_stream& r) {
    tilted_block_spec one = tb;
    one.n_k = 1;
    detail::check_tilt(one);
    return detail::tilted_sum(one, 1.0, r);
}

inline double sample_zeta(const zeta_spec& z, rng_stream& r) {
    return sample_tilted(tilted_block_spec{z, 0.0, 1}, r);
}

// mean of one tilted variable
inline double tilted_mean(const tilted_block_spec& tb) { return cumulant_prime(tb.zeta, tb.tau); }

} // namespace baresim

#endif
