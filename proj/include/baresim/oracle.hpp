#ifndef BARESIM_ORACLE_HPP
#define BARESIM_ORACLE_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "constraints.hpp"
#include "divergences.hpp"
#include "estimators.hpp"

namespace baresim {

enum class oracle_method { grid, line_search, boundary_projection };

inline std::string oracle_method_name(oracle_method m) {
    switch (m) {
    case oracle_method::grid: return "grid";
    case oracle_method::line_search: return "line_search";
    case oracle_method::boundary_projection: return "boundary_projection";
    }
    return "?";
}

struct oracle_result {
    double value = inf;
    vec arg;
    oracle_method method = oracle_method::grid;
    double resolution = 0.0;
    long evaluated = 0;
};

using objective_fn = std::function<double(const vec&)>;

// Exhaustive grid. Simplex-scaled constraints use a barycentric grid with step
// resolution*A; otherwise an axis grid over `bounds` (or the first box atom).
inline oracle_result grid_optimize(const objective_fn& phi, const constraint_spec& omega, std::size_t K,
                                   double resolution, direction dir,
                                   std::optional<std::vector<std::pair<double, double>>> bounds = std::nullopt) {
    if (K < 1 || K > 3) throw parameter_error("grid_optimize: K must be 1, 2 or 3");
    if (!(resolution > 0.0)) throw parameter_error("grid_optimize: resolution must be > 0");
    const bool mn = dir == direction::min;
    oracle_result res;
    res.resolution = resolution;
    res.value = mn ? inf : -inf;
    auto visit = [&](const vec& q) {
        if (!contains(omega, q, omega.tol)) return;
        double v = phi(q);
        ++res.evaluated;
        if (std::isnan(v)) return;
        if (res.arg.empty() || (mn ? v < res.value : v > res.value)) {
            res.value = v;
            res.arg = q;
        }
    };
    if (omega.simplex_scale) {
        const double A = *omega.simplex_scale;
        const long N = std::lround(1.0 / resolution);
        if (N < 1) throw parameter_error("grid_optimize: resolution too coarse");
        vec q(K);
        if (K == 1) {
            q[0] = A;
            visit(q);
        } else if (K == 2) {
            for (long i = 0; i <= N; ++i) {
                q[0] = A * static_cast<double>(i) / static_cast<double>(N);
                q[1] = A * static_cast<double>(N - i) / static_cast<double>(N);
                visit(q);
            }
        } else {
            for (long i = 0; i <= N; ++i)
                for (long j = 0; i + j <= N; ++j) {
                    q[0] = A * static_cast<double>(i) / static_cast<double>(N);
                    q[1] = A * static_cast<double>(j) / static_cast<double>(N);
                    q[2] = A * static_cast<double>(N - i - j) / static_cast<double>(N);
                    visit(q);
                }
        }
        return res;
    }
    if (!bounds) {
        for (const auto& a : omega.atoms)
            if (auto b = std::get_if<box_atom>(&a)) {
                std::vector<std::pair<double, double>> bb;
                for (std::size_t k = 0; k < b->lo.size(); ++k) bb.emplace_back(b->lo[k], b->hi[k]);
                bounds = bb;
                break;
            }
    }
    if (!bounds || bounds->size() != K) throw parameter_error("grid_optimize: bounding box needed");
    std::vector<long> cnt(K);
    for (std::size_t k = 0; k < K; ++k) {
        double w = (*bounds)[k].second - (*bounds)[k].first;
        if (!(w >= 0.0) || !std::isfinite(w)) throw parameter_error("grid_optimize: bad bounds");
        cnt[k] = static_cast<long>(std::floor(w / resolution + 1e-9));
    }
    vec q(K);
    std::vector<long> idx(K, 0);
    while (true) {
        for (std::size_t k = 0; k < K; ++k)
            q[k] = (*bounds)[k].first + static_cast<double>(idx[k]) * resolution;
        visit(q);
        std::size_t k = 0;
        while (k < K && ++idx[k] > cnt[k]) idx[k++] = 0;
        if (k == K) break;
    }
    return res;
}

// inf over m of SBD(m Q, Q**) for the power family by scan + golden section.
// m ranges over (0, inf), or over the whole line for gamma = 2.
inline oracle_result inner_m_minimize(double g, double c, const vec& P, const vec& Q, const vec& Qss) {
    auto gen = generator_spec::power(g, c);
    auto f_m = [&](double m) {
        vec mq(Q.size());
        for (std::size_t k = 0; k < Q.size(); ++k) mq[k] = m * Q[k];
        return sbd(gen, P, mq, Qss).value();
    };
    const bool line = g == 2.0;
    // map x -> m: exp(x) on the half line, sinh(x) on the whole line
    auto to_m = [line](double x) { return line ? std::sinh(x) : std::exp(x); };
    auto f = [&](double x) { return f_m(to_m(x)); };
    const double lo = -40.0, hi = 40.0, h = 0.05;
    double bx = lo, bv = f(lo);
    for (long i = 1; lo + static_cast<double>(i) * h <= hi; ++i) {
        double x = lo + static_cast<double>(i) * h;
        double v = f(x);
        if (v < bv) bv = v, bx = x;
    }
    double a = bx - h, b = bx + h;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 300 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    oracle_result res;
    res.method = oracle_method::line_search;
    double xm = f1 <= f2 ? x1 : x2;
    double vm = std::min(f1, f2);
    if (bv < vm) vm = bv, xm = bx;
    res.value = vm;
    res.arg = {to_m(xm)};
    res.resolution = b - a;
    return res;
}

// min of ctilde * sum (q-p)^2/(2p) over the halfspace a.q >= b (or <=), closed form
inline oracle_result boundary_projection_power2(double ctilde, const vec& P, const halfspace_atom& h) {
    vec t(P.size()), w(P.size());
    for (std::size_t k = 0; k < P.size(); ++k) {
        t[k] = h.a[k] * P[k];
        w[k] = h.a[k] * h.a[k] * P[k];
    }
    double ap = pairwise_sum(t), aa = pairwise_sum(w);
    oracle_result res;
    res.method = oracle_method::boundary_projection;
    double gap = h.b - ap;
    bool inside = h.s == sense::ge ? gap <= 0.0 : gap >= 0.0;
    if (inside || aa == 0.0) {
        res.value = 0.0;
        res.arg = P;
        return res;
    }
    // q = P + lambda * diag(P) a, lambda = gap / aa
    double lam = gap / aa;
    res.arg.resize(P.size());
    for (std::size_t k = 0; k < P.size(); ++k) res.arg[k] = P[k] + lam * P[k] * h.a[k];
    res.value = ctilde * lam * lam * aa / 2.0;
    return res;
}

} // namespace baresim

#endif
