#ifndef BARESIM_TRANSFORMS_HPP
#define BARESIM_TRANSFORMS_HPP

#include <cmath>

#include "xreal.hpp"

namespace baresim {

enum class transform_kind { F, Fbreve, Fbreve1 };

// F: gamma, ctilde, A.  Fbreve: + M_P, C (gamma = 1 is routed to Fbreve1 with M** = C*M_P).
// Fbreve1: ctilde, A, M_ss.
struct transform_spec {
    transform_kind kind = transform_kind::F;
    double gamma = 1.0;
    double ctilde = 1.0;
    double A = 1.0;
    double M_P = 1.0;
    double C = 1.0;
    double M_ss = 1.0;

    static transform_spec F(double g, double c, double A) {
        transform_spec s;
        s.kind = transform_kind::F;
        s.gamma = g;
        s.ctilde = c;
        s.A = A;
        return s;
    }
    static transform_spec Fbreve(double g, double c, double A, double M_P, double C) {
        transform_spec s;
        s.kind = transform_kind::Fbreve;
        s.gamma = g;
        s.ctilde = c;
        s.A = A;
        s.M_P = M_P;
        s.C = C;
        return s;
    }
    static transform_spec Fbreve1(double c, double A, double M_ss) {
        transform_spec s;
        s.kind = transform_kind::Fbreve1;
        s.gamma = 1.0;
        s.ctilde = c;
        s.A = A;
        s.M_ss = M_ss;
        return s;
    }

    void validate() const {
        if (!(ctilde > 0.0)) throw parameter_error("transform: ctilde must be > 0");
        if (!std::isfinite(gamma)) throw parameter_error("transform: gamma must be finite");
        if (A == 0.0 || !std::isfinite(A)) throw parameter_error("transform: A must be nonzero");
        if (A < 0.0 && !(gamma == 2.0 && kind != transform_kind::Fbreve1))
            throw parameter_error("transform: negative A is allowed only for gamma = 2");
        if (kind == transform_kind::Fbreve) {
            if (!(M_P > 0.0)) throw parameter_error("transform: M_P must be > 0");
            if (!(C > 0.0)) throw parameter_error("transform: C must be > 0");
        }
        if (kind == transform_kind::Fbreve1 && !(M_ss > 0.0)) throw parameter_error("transform: M** must be > 0");
    }
};

namespace detail {

inline double powi(double a, double g) { return g == 2.0 ? a * a : std::pow(a, g); }

// scale * (lead - A^{g/(g-1)} * base^{-1/(g-1)}), +inf where base is inadmissible
inline xreal power_branch(double g, double scale, double lead, double A, double base) {
    if (g > 1.0 ? !(base > 0.0) : !(base >= 0.0)) return xreal::pos_infinity();
    double ag = g == 2.0 ? A * A : std::pow(A, g / (g - 1.0));
    double w;
    if (base < 1e-12) {
        // log space near the singular base
        if (base == 0.0)
            w = 0.0;  // g < 1 here: exponent -1/(g-1) > 0
        else
            w = ag * std::exp(-std::log(base) / (g - 1.0));
    } else {
        w = ag * std::pow(base, -1.0 / (g - 1.0));
    }
    return scale * (lead - w);
}

} // namespace detail

inline xreal F_apply(const transform_spec& s, double x) {
    s.validate();
    const double g = s.gamma, c = s.ctilde, A = s.A;
    if (s.kind == transform_kind::F) {
        if (g == 0.0) return c * (1.0 - A + std::log(A)) + x;
        if (g == 1.0) return c * (1.0 - A * std::exp(1.0 / A - 1.0 - x / (A * c)));
        double base = 1.0 + g * (A - 1.0) + g * (g - 1.0) * x / c;
        return detail::power_branch(g, c / g, 1.0, A, base);
    }
    if (s.kind == transform_kind::Fbreve1 || (s.kind == transform_kind::Fbreve && g == 1.0)) {
        double Mss = s.kind == transform_kind::Fbreve1 ? s.M_ss : s.C * s.M_P;
        return c * (Mss - A * std::exp(Mss / A - 1.0 - x / (A * c)));
    }
    const double C = s.C, MP = s.M_P;
    if (g == 0.0) return c * (MP - A / C + MP * std::log(A / C) - MP * std::log(MP)) + x;
    double Cg = detail::powi(C, g);
    double base = Cg * MP + g * std::pow(C, g - 1.0) * (A - C * MP) + g * (g - 1.0) * x / c;
    return detail::power_branch(g, c * Cg / g, MP, A, base);
}

inline double F_invert(const transform_spec& s, double z) {
    s.validate();
    const double g = s.gamma, c = s.ctilde, A = s.A;
    if (std::isnan(z)) throw domain_error("F_invert: NaN");
    if (s.kind == transform_kind::F) {
        if (g == 0.0) return z - c * (1.0 - A + std::log(A));
        if (g == 1.0) {
            if (!(z < c)) throw domain_error("F_invert: z must be < ctilde");
            return c * (1.0 - A - A * (std::log1p(-z / c) - std::log(A)));
        }
        double w = 1.0 - g * z / c;
        if (g > 1.0 ? !(w > 0.0) : !(w >= 0.0)) throw domain_error("F_invert: z outside the inverse domain");
        double t = detail::powi(A, g) * std::pow(w, -(g - 1.0));
        return c / (g * (g - 1.0)) * (t - 1.0 - g * (A - 1.0));
    }
    if (s.kind == transform_kind::Fbreve1 || (s.kind == transform_kind::Fbreve && g == 1.0)) {
        double Mss = s.kind == transform_kind::Fbreve1 ? s.M_ss : s.C * s.M_P;
        if (!(z < c * Mss)) throw domain_error("F_invert: z must be < ctilde * M**");
        return c * (Mss - A - A * (std::log(Mss - z / c) - std::log(A)));
    }
    const double C = s.C, MP = s.M_P;
    if (g == 0.0) return z - c * (MP - A / C + MP * std::log(A / C) - MP * std::log(MP));
    double Cg = detail::powi(C, g);
    double w = MP - g * z / (c * Cg);
    if (g > 1.0 ? !(w > 0.0) : !(w >= 0.0)) throw domain_error("F_invert: z outside the inverse domain");
    double t = detail::powi(A, g) * std::pow(w, -(g - 1.0));
    return c / (g * (g - 1.0)) * (t - Cg * MP - g * std::pow(C, g - 1.0) * (A - C * MP));
}

// F^{-1}(-(1/n) log(hits/L)); +inf for an infinite argument
inline xreal divergence_from_hitrate(const transform_spec& s, double neg_log_hitrate_over_n) {
    if (neg_log_hitrate_over_n == inf) return xreal::pos_infinity();
    return F_invert(s, neg_log_hitrate_over_n);
}

} // namespace baresim

#endif
