#ifndef BARESIM_NUMERIC_HPP
#define BARESIM_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "xreal.hpp"

namespace baresim {

namespace detail {
inline double pairwise(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise(x, h) + pairwise(x + h, n - h);
}
} // namespace detail

inline double pairwise_sum(std::span<const double> x) {
    return detail::pairwise(x.data(), x.size());
}

// log((1/count) * sum exp(x_i)); -inf entries contribute nothing.
// count defaults to terms.size(); callers pass L when non-hits were dropped.
inline double log_mean_exp(std::span<const double> terms, double count) {
    double m = -inf;
    for (double t : terms) {
        if (std::isnan(t)) throw numeric_error("log_mean_exp: NaN term");
        if (t == inf) return inf;
        m = std::max(m, t);
    }
    if (m == -inf || count <= 0) return -inf;
    std::vector<double> e(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) e[i] = std::exp(terms[i] - m);
    return m + std::log(pairwise_sum(e)) - std::log(count);
}

inline double log_mean_exp(std::span<const double> terms) {
    return log_mean_exp(terms, static_cast<double>(terms.size()));
}

inline double log_mean_exp(const std::vector<double>& terms) {
    return log_mean_exp(std::span<const double>(terms));
}

inline double log_sum_exp2(double a, double b) {
    double m = std::max(a, b);
    if (m == -inf) return -inf;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

} // namespace baresim

#endif
