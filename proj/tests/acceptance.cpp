// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "baresim.hpp"
#include "baresim/cli.hpp"
#include "oracles.hpp"

using namespace baresim;

namespace {

struct outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s | %s | %.1fs\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char b[128];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

const double kl_bench = 0.6 * std::log(2.0) + 0.4 * std::log(4.0 / 7.0);

estimate_request kl_simplex(long n, long L, std::uint64_t seed) {
    estimate_request q;
    q.mode = mode_kind::simplex;
    q.method = method_kind::narrow_sense;
    q.base = generator_spec::power(1.0, 1.0);
    q.P = {0.3, 0.7};
    q.omega.atoms.push_back(halfspace_atom{{1.0, 0.0}, 0.6, sense::ge});
    q.omega.simplex_scale = 1.0;
    q.n = n;
    q.L = L;
    q.seed = seed;
    return q;
}

estimate_request halfspace2(double b, long n, long L, std::uint64_t seed) {
    estimate_request q;
    q.base = generator_spec::power(2.0, 1.0);
    q.P = {1.0, 1.0};
    q.objective.kind = objective_kind::casm;
    q.objective.gen = q.base;
    q.objective.ref = q.P;
    q.omega.atoms.push_back(halfspace_atom{{1.0, 0.0}, b, sense::ge});
    q.n = n;
    q.L = L;
    q.seed = seed;
    return q;
}

// exact P(block-sum share of category 1 >= 0.6) for Poisson blocks of sizes (12, 28)
double exact_kl_hit_probability() {
    const double l1 = 12, l2 = 28, lt = l1 + l2;
    double total = 0;
    for (int N = 1; N < 400; ++N) {
        double logpn = -lt + N * std::log(lt) - std::lgamma(N + 1.0);
        double s = 0;
        for (int k = 0; k <= N; ++k) {
            if (10 * k < 6 * N) continue;
            s += std::exp(std::lgamma(N + 1.0) - std::lgamma(k + 1.0) - std::lgamma(N - k + 1.0) + k * std::log(0.3) +
                          (N - k) * std::log(0.7));
        }
        total += std::exp(logpn) * s;
    }
    return total;
}

} // namespace

int main() {
    // 1. Legendre representability, plain and shifted
    criterion(1, "Legendre representability", [] {
        struct pc {
            generator_spec g;
            double MP, lo, hi;
        };
        std::vector<pc> pairs = {{generator_spec::power(0.0, 1.0), 1.4, 0.1, 5.0},
                                 {generator_spec::power(0.5, 1.0), 1.4, 0.05, 5.0},
                                 {generator_spec::power(1.0, 1.0), 1.4, 0.05, 5.0},
                                 {generator_spec::power(2.0, 1.0), 1.4, -3.0, 5.0},
                                 {generator_spec::two_gamma(0.5, 0.5, 1.0), 1.4, -3.0, 5.0},
                                 {generator_spec::jensen_shannon_nb(1.0), 1.4, 0.05, 5.0},
                                 {generator_spec::two_point(-1.0, 2.0), 1.0, -0.95, 1.95},
                                 {generator_spec::asym_laplace(0.7, 0.4, 1.1, 1.2), 1.4, -3.0, 5.0}};
        std::mt19937_64 rng(1);
        double worst = 0, worst_shift = 0;
        for (const auto& p : pairs) {
            auto z = make_zeta(p.g, p.MP);
            for (int i = 0; i < 100; ++i) {
                double t = p.lo + (p.hi - p.lo) * i / 99.0;
                double ref;
                if (p.g.family == generator_family::power)
                    ref = oracle::power_phi(p.g.gamma, p.g.ctilde, t);
                else if (p.g.family == generator_family::two_gamma)
                    ref = oracle::two_gamma_phi(p.g.alpha, p.g.beta, p.g.ctilde, t);
                else if (p.g.family == generator_family::asym_laplace)
                    ref = oracle::asym_laplace_phi(p.g.alpha, p.g.beta1, p.g.beta2, p.g.ctilde, t);
                else
                    ref = phi_eval(p.g, t).value();
                worst = std::max(worst, std::abs(legendre_phi(z, t) - p.MP * ref));
            }
            double slo = std::max(p.lo, 0.3), shi = std::min(p.hi, 1.8);
            std::uniform_real_distribution<double> U(slo, shi);
            for (int r = 0; r < 5; ++r) {
                double ts = U(rng);
                double tau = tilt_param(p.g, p.MP, ts);
                for (int i = 0; i < 100; ++i) {
                    double t = p.lo + (p.hi - p.lo) * i / 99.0;
                    double ref = p.MP * phi_k_eval(p.g, t, ts).value();
                    worst_shift = std::max(worst_shift, std::abs(legendre_phi_shifted(z, tau, t) - ref));
                }
            }
        }
        bool ok = worst <= 1e-6 && worst_shift <= 1e-6;
        return outcome{ok, fmt("max |sup - M_P phi| = %.2e", worst) + fmt(", shifted %.2e (tol 1e-6)", worst_shift)};
    });

    // 2. Transform roundtrips
    criterion(2, "Transform roundtrips", [] {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> U(0, 1);
        const double gs[] = {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0, 2.5};
        double worst = 0, collapse = 0;
        long evaluated = 0;
        for (int tup = 0; tup < 20; ++tup) {
            double g = gs[tup % 7], c = 0.5 + 2 * U(rng), A = 0.6 + 1.2 * U(rng);
            double MP = 0.5 + U(rng), C = 0.5 + U(rng);
            std::vector<transform_spec> specs = {transform_spec::F(g, c, A), transform_spec::Fbreve(g, c, A, MP, C),
                                                 transform_spec::Fbreve1(c, A, 0.5 + 2 * U(rng))};
            for (const auto& s : specs)
                for (int i = 0; i < 500; ++i) {
                    double x = 3.0 * i / 499.0;
                    auto y = F_apply(s, x);
                    if (!y.is_finite()) continue;
                    ++evaluated;
                    worst = std::max(worst, std::abs(F_invert(s, y.value()) - x) / std::max(1.0, std::abs(x)));
                }
            auto f = transform_spec::F(g, c, A), fb = transform_spec::Fbreve(g, c, A, 1.0, 1.0);
            for (int i = 0; i < 500; ++i) {
                double x = 3.0 * i / 499.0;
                auto a = F_apply(f, x), b = F_apply(fb, x);
                if (a.is_finite() != b.is_finite()) collapse = inf;
                if (a.is_finite() && b.is_finite()) collapse = std::max(collapse, std::abs(a.value() - b.value()));
            }
        }
        bool ok = worst <= 1e-10 && collapse <= 1e-12 && evaluated > 10000;
        return outcome{ok, fmt("roundtrip max %.2e (tol 1e-10)", worst) + fmt(", Fbreve vs F %.2e (tol 1e-12)", collapse) +
                               ", " + std::to_string(evaluated) + " finite points"};
    });

    // 3. innmin closed forms vs golden-section oracle
    criterion(3, "innmin-SBD closed forms vs 1-D oracle", [] {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> U(0.2, 1.5);
        double worst = 0;
        for (double g : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0})
            for (int i = 0; i < 50; ++i) {
                std::size_t K = 2 + i % 3;
                vec P(K), Q(K), S(K);
                double sq = 0;
                for (std::size_t k = 0; k < K; ++k) P[k] = U(rng), sq += Q[k] = U(rng), S[k] = U(rng);
                for (auto& v : Q) v /= sq;
                double c = 0.5 + (i % 4) * 0.5;
                double closed = innmin_sbd(g, c, P, Q, S);
                double num = oracle::inner_min_golden(g, c, P, Q, S);
                worst = std::max(worst, std::abs(closed - num) / std::max(1.0, std::abs(num)));
            }
        return outcome{worst <= 1e-8, fmt("max |closed - oracle| = %.2e (tol 1e-8)", worst)};
    });

    // 4. inequality grids
    criterion(4, "Generator inequality grids", [] {
        double worst = -inf, at_one = 0;
        auto grid = [&](auto lhs, auto rhs, double lo, double hi, bool touch_zero) {
            for (int i = 0; i < 1000; ++i) {
                double t = lo + (hi - lo) * i / 999.0;
                double d = lhs(t) - rhs(t);
                if (std::abs(t - 1.0) < 1e-12 || (touch_zero && t == 0.0)) {
                    at_one = std::max(at_one, std::abs(d));
                    continue;
                }
                worst = std::max(worst, d);
            }
            at_one = std::max(at_one, std::abs(lhs(1.0) - rhs(1.0)));
        };
        for (double g : {1.5, 2.0, 3.0}) {
            const double c = 1.0;
            // boundPOWdivmiss on the whole line, beta in (0,1)
            for (double b : {0.3, 0.9})
                grid([&](double t) { return oracle::two_gamma_phi(b, b, c / g, t); },
                     [&](double t) { return oracle::power_phi(g, c, t); }, -5.0, 5.0, false);
            // altern1 on t >= 0; both sides equal 1/gamma at t = 0
            grid([&](double t) { return oracle::power_phi(1.0, c / g, t); },
                 [&](double t) { return oracle::power_phi(g, c, t); }, 0.0, 5.0, true);
            // altern2 on t >= 0, beta up to 8/5
            for (double b : {0.5, 1.0, 1.6})
                grid([&](double t) { return oracle::two_gamma_phi(b, b, c / g, t); },
                     [&](double t) { return oracle::power_phi(1.0, c / g, t); }, 0.0, 5.0, false);
        }
        // TV domination for ctilde * beta < 1
        for (double b : {0.5, 0.9})
            grid([&](double t) { return oracle::two_gamma_phi(b, b, 1.0, t); }, [](double t) { return std::abs(t - 1.0); },
                 -5.0, 5.0, false);
        bool ok = worst < 0.0 && at_one <= 1e-12;
        return outcome{ok, fmt("max (lhs - rhs) off t=1 is %.3e (must be < 0)", worst) +
                               fmt(", |lhs - rhs| at touch points %.1e", at_one)};
    });

    // 5. narrow-sense simplex KL benchmark
    criterion(5, "Narrow-sense simplex KL benchmark", [] {
        vec est;
        for (std::uint64_t s = 1; s <= 5; ++s) est.push_back(estimate_simplex_narrow(kl_simplex(40, 2000000, s)).value.value());
        double med = oracle::median(est);
        double p = exact_kl_hit_probability();
        double exact = F_invert(transform_spec::F(1.0, 1.0, 1.0), -std::log(p) / 40.0);
        bool ok = std::abs(med - kl_bench) <= 0.05;
        return outcome{ok, fmt("median %.5f", med) + fmt(" vs oracle %.6f (tol 0.05)", kl_bench) +
                               fmt("; exact n=40 limit of this estimator %.5f", exact)};
    });

    // 6. zero-divergence anchor
    criterion(6, "Zero-divergence anchor", [] {
        std::vector<std::pair<std::string, double>> vals;
        {
            auto q = halfspace2(0.0, 100, 100000, 61);
            q.omega.atoms[0] = l2_ball_atom{{1.0, 1.0}, 0.3};
            vals.emplace_back("method1", estimate_min_method1(q).value.value());
            q.Qss = vec{1.05, 1.0};
            vals.emplace_back("method2", estimate_method2(q).value.value());
            q.Qstar = q.P;
            vals.emplace_back("speedup", estimate_speedup(q).value.value());
            q.Qstar = vec{1.05, 1.0};
            vals.emplace_back("importance_sampling", estimate_importance_sampling(q).value.value());
        }
        {
            auto q = kl_simplex(100, 100000, 62);
            q.omega.atoms[0] = halfspace_atom{{1.0, 0.0}, 0.2, sense::ge};
            vals.emplace_back("simplex narrow", estimate_simplex_narrow(q).value.value());
            auto qs = q;
            qs.target = narrow_target::sbd;
            vals.emplace_back("simplex narrow sbd", estimate_simplex_narrow(qs).value.value());
            q.objective.kind = objective_kind::casm;
            q.objective.gen = q.base;
            q.objective.ref = q.P;
            q.method = method_kind::method1_naive;
            vals.emplace_back("simplex method1", estimate_simplex_general(q).value.value());
            q.method = method_kind::method2_naive;
            q.Qss = vec{0.35, 0.65};
            vals.emplace_back("simplex method2", estimate_simplex_general(q).value.value());
            q.method = method_kind::speedup;
            q.Qstar = q.P;
            vals.emplace_back("simplex speedup", estimate_simplex_general(q).value.value());
            auto r = kl_simplex(0, 100000, 63);
            r.mode = mode_kind::risk;
            r.P.clear();
            r.omega.atoms[0] = halfspace_atom{{1.0, 0.0}, 0.2, sense::ge};
            for (int i = 0; i < 100; ++i) r.sample.push_back(i < 30 ? 0 : 1);
            r.categories = 2;
            r.m = 100;
            vals.emplace_back("risk narrow", estimate(r).value.value());
        }
        bool ok = true;
        double worst = 0;
        std::string d;
        for (const auto& [k, v] : vals) {
            ok = ok && v <= 0.02;
            worst = std::max(worst, v);
            d += k + "=" + fmt("%.4f ", v);
        }
        return outcome{ok, fmt("max %.4f (tol 0.02); ", worst) + d};
    });

    // 7. IS vs speed-up per replication
    criterion(7, "Importance sampling vs method 2 at Q*", [] {
        auto q = halfspace2(1.4, 100, 1000, 71);
        q.Qstar = vec{1.6, 1.0};
        q.keep_terms = true;
        auto a = estimate_importance_sampling(q);
        auto b = estimate_speedup(q);
        double worst = 0;
        long hits = 0;
        bool same_hits = a.terms.size() == b.terms.size();
        for (std::size_t l = 0; same_hits && l < a.terms.size(); ++l) {
            if (std::isinf(a.terms[l]) || std::isinf(b.terms[l])) {
                same_hits = same_hits && a.terms[l] == b.terms[l];
                continue;
            }
            ++hits;
            worst = std::max(worst, std::abs(a.terms[l] - b.terms[l]));
        }
        bool ok = same_hits && worst <= 1e-10 && hits > 0;
        return outcome{ok, fmt("max per-replication difference %.2e (tol 1e-10)", worst) + ", " +
                               std::to_string(hits) + " hits"};
    });

    // 8. arg-optimizer sandwich
    criterion(8, "Arg-optimizer sandwich", [] {
        const double oracle_min = (1.4 - 1.0) * (1.4 - 1.0) / 2.0;
        vec phis, vals;
        bool inside = true;
        for (std::uint64_t s = 1; s <= 5; ++s) {
            auto q = halfspace2(1.4, 200, 100000, 80 + s);
            q.Qss = vec{1.5, 1.0};
            auto r = estimate_method2(q);
            if (!r.arg_candidate) return outcome{false, "no hits"};
            inside = inside && contains(q.omega, *r.arg_candidate);
            const auto& a = *r.arg_candidate;
            phis.push_back(((a[0] - 1) * (a[0] - 1) + (a[1] - 1) * (a[1] - 1)) / 2.0);
            vals.push_back(r.value.value());
        }
        double med = oracle::median(phis);
        bool ok = inside && med >= oracle_min - 1e-12 && med <= oracle_min + 0.02;
        return outcome{ok, fmt("median Phi(arg) %.5f", med) + fmt(" in [%.2f, +0.02]", oracle_min) +
                               fmt("; median value %.5f", oracle::median(vals))};
    });

    // 9. duality and determinism
    criterion(9, "Min/max duality and determinism", [] {
        bool dual = true;
        for (auto m : {method_kind::method1_naive, method_kind::method2_naive, method_kind::speedup}) {
            auto q = halfspace2(1.1, 200, 20000, 91);
            q.method = m;
            q.Qss = vec{1.2, 1.0};
            q.Qstar = vec{1.2, 1.0};
            auto mn = estimate(q);
            q.dir = direction::max;
            q.objective = q.objective.negated();
            auto mx = estimate(q);
            dual = dual && mx.value.value() == -mn.value.value();
        }
        {
            auto q = kl_simplex(60, 20000, 92);
            q.method = method_kind::speedup;
            q.Qstar = vec{0.7, 0.3};
            q.objective.kind = objective_kind::casm;
            q.objective.gen = generator_spec::tv();
            q.objective.ref = q.P;
            auto mn = estimate(q);
            q.dir = direction::max;
            q.objective = q.objective.negated();
            auto mx = estimate(q);
            dual = dual && mx.value.value() == -mn.value.value();
        }
        bool det = true;
        for (int which = 0; which < 2; ++which) {
            auto q = which ? kl_simplex(40, 50000, 93) : halfspace2(1.4, 200, 50000, 93);
            if (!which) {
                q.method = method_kind::speedup;
                q.Qstar = vec{1.5, 1.0};
            }
            std::string first;
            for (unsigned w : {1u, 4u, 8u}) {
                q.workers = w;
                auto text = cli::result_json(estimate(q)).dump(2);
                if (first.empty())
                    first = text;
                else
                    det = det && text == first;
            }
        }
        return outcome{dual && det, std::string("duality ") + (dual ? "bit-exact" : "BROKEN") +
                                         ", JSON across workers {1,4,8} " + (det ? "identical" : "DIFFERENT")};
    });

    // 10. risk mode
    criterion(10, "Risk mode KL benchmark", [] {
        vec est;
        std::string pe;
        for (std::uint64_t s = 1; s <= 5; ++s) {
            std::mt19937_64 g(1000 + s);
            std::bernoulli_distribution b(0.3);
            auto q = kl_simplex(0, 2000000, 100 + s);
            q.mode = mode_kind::risk;
            q.P.clear();
            for (int i = 0; i < 5000; ++i) q.sample.push_back(b(g) ? 0 : 1);
            q.categories = 2;
            q.m = 40;
            auto r = estimate(q);
            est.push_back(r.value.value());
            pe += fmt("%.4f/", r.diagnostics.at("p_emp_0")) + fmt("%.4f ", r.value.value());
        }
        double med = oracle::median(est);
        bool ok = std::abs(med - kl_bench) <= 0.06;
        return outcome{ok, fmt("median %.5f", med) + fmt(" vs %.6f (tol 0.06); p_emp/estimate: ", kl_bench) + pe};
    });

    // 11. tilted block-sum means
    criterion(11, "Tilted block-sum statistics", [] {
        struct fam {
            std::string name;
            zeta_spec z;
            double tau;
            std::function<double(double)> mean1;  // closed-form mean of one tilted variable
        };
        const long nk = 5;
        auto gg = make_zeta(generator_spec::power(0.0, 1.0), 1.5);
        auto po = make_zeta(generator_spec::power(1.0, 1.0), 1.5);
        auto no = make_zeta(generator_spec::power(2.0, 1.0), 1.5);
        auto cp = make_zeta(generator_spec::power(0.5, 1.0), 1.5);
        auto nb = make_zeta(generator_spec::jensen_shannon_nb(1.0), 1.5);
        auto tp = make_zeta(generator_spec::two_point(-1.0, 2.0), 1.0);
        auto al = make_zeta(generator_spec::asym_laplace(0.7, 0.4, 1.1, 1.2), 1.5);
        const double c = 1.5;
        std::vector<fam> fams = {
            {"gamma", gg, 0.5, [c](double t) { return c / (c - t); }},
            {"poisson", po, 0.4, [c](double t) { return std::exp(t / c); }},
            {"normal", no, -0.6, [c](double t) { return 1 + t / c; }},
            {"compound", cp, 0.3, [c](double t) { return std::pow(1 - t * 0.5 / c, -2.0); }},
            {"neg_binomial", nb, 0.2,
             [c](double t) {
                 double e = std::exp(t / c);
                 return e / (2 - e);
             }},
            {"two_point", tp, 0.3,
             [](double t) {
                 double p = 1.0 / 3.0;
                 double a = p * std::exp(-t), b = (1 - p) * std::exp(2 * t);
                 return (-a + 2 * b) / (a + b);
             }},
            {"asym_laplace", al, 0.2,
             [c](double t) {
                 double ca = 1.2 * c;  // ctilde * M_P
                 double theta = 1 + 0.7 * (1 / 1.1 - 1 / 0.4);
                 return theta + 0.7 / (0.4 - t / ca) - 0.7 / (1.1 + t / ca);
             }}};
        bool ok = true;
        std::string d;
        for (std::size_t f = 0; f < fams.size(); ++f) {
            tilted_block_spec tb{fams[f].z, fams[f].tau, nk};
            rng_stream r(1100, 0, f);
            vec v(100000);
            for (auto& x : v) x = sample_block_sum(tb, r);
            double target = nk * fams[f].mean1(fams[f].tau);
            double zs = (oracle::mean(v) - target) / oracle::stderr_of_mean(v);
            ok = ok && std::abs(zs) <= 4.0;
            d += fams[f].name + fmt("=%.2f ", zs);
        }
        return outcome{ok, "z-scores " + d + "(|z| <= 4)"};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
