#ifndef BARESIM_CONSTRAINTS_HPP
#define BARESIM_CONSTRAINTS_HPP

#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "engine.hpp"

namespace baresim {

struct box_atom {
    vec lo, hi;
};
enum class sense { ge, le };
struct halfspace_atom {
    vec a;
    double b = 0.0;
    sense s = sense::ge;  // a.q >= b or a.q <= b
};
struct l2_ball_atom {
    vec center;
    double radius = 1.0;
};
// sum_i (y_i + sum_k x_ik s_k - sum_k x_ik q_k)^2 <= eps; shift s defaults to all ones
struct regression_ball_atom {
    vec y;
    std::vector<vec> x;  // rows i, columns k
    double eps = 0.0;
    std::optional<vec> shift;
};

using constraint_atom = std::variant<box_atom, halfspace_atom, l2_ball_atom, regression_ball_atom>;

struct constraint_spec {
    std::vector<constraint_atom> atoms;  // intersection
    std::optional<double> simplex_scale;
    std::optional<vec> hint;  // user supplied interior point
    double tol = 1e-12;
    double c1 = 0.0;          // declared bound constant, informational only
};

namespace detail {

inline void dim_check(std::size_t a, std::size_t b) {
    if (a != b) throw parameter_error("constraint: dimension mismatch");
}

inline double regression_residual(const regression_ball_atom& r, const vec& q) {
    vec terms(r.y.size());
    for (std::size_t i = 0; i < r.y.size(); ++i) {
        dim_check(r.x[i].size(), q.size());
        double v = r.y[i];
        for (std::size_t k = 0; k < q.size(); ++k) {
            double s = r.shift ? (*r.shift)[k] : 1.0;
            v += r.x[i][k] * s - r.x[i][k] * q[k];
        }
        terms[i] = v * v;
    }
    return pairwise_sum(terms);
}

// signed slack, >= 0 inside
struct atom_slack {
    const vec& q;
    double operator()(const box_atom& b) const {
        dim_check(b.lo.size(), q.size());
        dim_check(b.hi.size(), q.size());
        double s = inf;
        for (std::size_t k = 0; k < q.size(); ++k) s = std::min({s, q[k] - b.lo[k], b.hi[k] - q[k]});
        return s;
    }
    double operator()(const halfspace_atom& h) const {
        dim_check(h.a.size(), q.size());
        vec t(q.size());
        for (std::size_t k = 0; k < q.size(); ++k) t[k] = h.a[k] * q[k];
        double v = pairwise_sum(t);
        return h.s == sense::ge ? v - h.b : h.b - v;
    }
    double operator()(const l2_ball_atom& b) const {
        dim_check(b.center.size(), q.size());
        vec t(q.size());
        for (std::size_t k = 0; k < q.size(); ++k) t[k] = (q[k] - b.center[k]) * (q[k] - b.center[k]);
        return b.radius - std::sqrt(pairwise_sum(t));
    }
    double operator()(const regression_ball_atom& r) const {
        if (r.x.size() != r.y.size()) throw parameter_error("regression_ball: x rows must match y");
        return r.eps - regression_residual(r, q);
    }
};

} // namespace detail

inline bool contains(const constraint_spec& spec, const vec& q, double tol) {
    for (double v : q)
        if (!std::isfinite(v)) return false;
    for (const auto& a : spec.atoms)
        if (std::visit(detail::atom_slack{q}, a) < -tol) return false;
    if (spec.simplex_scale) {
        double s = pairwise_sum(q);
        if (std::abs(s - *spec.simplex_scale) > tol) return false;
        for (double v : q)
            if (v < -tol) return false;
    }
    return true;
}

inline bool contains(const constraint_spec& spec, const vec& q) { return contains(spec, q, spec.tol); }

inline bool contains(const constraint_spec& spec, const candidate_vector& c, double tol) {
    if (c.sentinel) return false;
    return contains(spec, c.values, tol);
}

// strictly inside every atom (simplex scale checked with tol)
inline bool strictly_inside(const constraint_spec& spec, const vec& q) {
    for (const auto& a : spec.atoms)
        if (!(std::visit(detail::atom_slack{q}, a) > 0.0)) return false;
    if (spec.simplex_scale) {
        if (std::abs(pairwise_sum(q) - *spec.simplex_scale) > spec.tol) return false;
        for (double v : q)
            if (!(v > 0.0)) return false;
    }
    return true;
}

// user hint, else the first box/ball centre lying strictly inside all atoms
inline std::optional<vec> interior_hint(const constraint_spec& spec) {
    if (spec.hint) return spec.hint;
    for (const auto& a : spec.atoms) {
        std::optional<vec> c;
        if (auto b = std::get_if<box_atom>(&a)) {
            vec m(b->lo.size());
            for (std::size_t k = 0; k < m.size(); ++k) m[k] = 0.5 * (b->lo[k] + b->hi[k]);
            c = m;
        } else if (auto l = std::get_if<l2_ball_atom>(&a)) {
            c = l->center;
        }
        if (c && strictly_inside(spec, *c)) return c;
    }
    return std::nullopt;
}

} // namespace baresim

#endif
