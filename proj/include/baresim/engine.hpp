#ifndef BARESIM_ENGINE_HPP
#define BARESIM_ENGINE_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "distributions.hpp"
#include "divergences.hpp"

namespace baresim {

enum class partition_source { deterministic_from_P, empirical_from_sample };

struct block_partition {
    long n = 0;
    std::vector<long> sizes;
    partition_source source = partition_source::deterministic_from_P;
    vec p_emp;  // empirical case only

    std::size_t K() const { return sizes.size(); }
};

inline block_partition make_partition(const vec& P, long n) {
    if (P.empty()) throw parameter_error("make_partition: empty reference vector");
    double M = 0.0;
    for (double p : P) {
        if (!(p > 0.0)) throw parameter_error("make_partition: reference components must be > 0");
        M += p;
    }
    double need = 0.0;
    for (double p : P) need = std::max(need, M / p);
    if (static_cast<double>(n) < need)
        throw precondition_error("make_partition: n = " + std::to_string(n) + " is below max_k 1/p_k = " +
                                 std::to_string(need));
    block_partition b;
    b.n = n;
    b.sizes.resize(P.size());
    long used = 0;
    for (std::size_t k = 0; k + 1 < P.size(); ++k) {
        // tiny slack so exact products like 40*0.3 do not floor to 11
        b.sizes[k] = static_cast<long>(std::floor(static_cast<double>(n) * (P[k] / M) * (1.0 + 1e-14)));
        used += b.sizes[k];
    }
    b.sizes.back() = n - used;
    for (long s : b.sizes)
        if (s < 1) throw precondition_error("make_partition: a block came out empty; increase n");
    return b;
}

// labels are category indices 0..K-1
inline block_partition risk_partition(const std::vector<int>& labels, std::size_t K) {
    if (labels.empty()) throw precondition_error("risk_partition: empty sample");
    if (K == 0) throw parameter_error("risk_partition: no categories");
    block_partition b;
    b.source = partition_source::empirical_from_sample;
    b.sizes.assign(K, 0);
    for (int l : labels) {
        if (l < 0 || static_cast<std::size_t>(l) >= K) throw parameter_error("risk_partition: label out of range");
        ++b.sizes[static_cast<std::size_t>(l)];
    }
    b.n = static_cast<long>(labels.size());
    for (std::size_t k = 0; k < K; ++k)
        if (b.sizes[k] == 0) throw precondition_error("risk_partition: category " + std::to_string(k) + " unobserved");
    b.p_emp.resize(K);
    for (std::size_t k = 0; k < K; ++k) b.p_emp[k] = static_cast<double>(b.sizes[k]) / static_cast<double>(b.n);
    return b;
}

// string labels matched against the ordered category list
inline block_partition risk_partition(const std::vector<std::string>& labels, const std::vector<std::string>& categories) {
    std::map<std::string, int> idx;
    for (std::size_t k = 0; k < categories.size(); ++k) idx[categories[k]] = static_cast<int>(k);
    std::vector<int> ix;
    ix.reserve(labels.size());
    for (const auto& l : labels) {
        auto it = idx.find(l);
        if (it == idx.end()) throw parameter_error("risk_partition: unknown label '" + l + "'");
        ix.push_back(it->second);
    }
    return risk_partition(ix, categories.size());
}

inline block_partition blow_up(const block_partition& b, long m) {
    if (m < 1) throw parameter_error("blow_up: m must be >= 1");
    block_partition r = b;
    r.n = b.n * m;
    for (auto& s : r.sizes) s *= m;
    return r;
}

enum class candidate_variant { plain_W, normalized_W, tilted_V, normalized_V };

struct candidate_vector {
    vec values;
    bool sentinel = false;  // normalized variant with zero total
    candidate_variant variant = candidate_variant::plain_W;
    double scale = 1.0;
    vec block_sums;  // raw S_k
};

// One candidate for replication `rep`. Block k draws from stream (seed, rep, k).
// taus empty means untilted (plain/normalized_W).
inline candidate_vector draw_candidate(const block_partition& part, const zeta_spec& zeta, const vec& taus,
                                       candidate_variant variant, double scale, std::uint64_t seed,
                                       std::uint64_t rep) {
    const std::size_t K = part.K();
    bool tilted = variant == candidate_variant::tilted_V || variant == candidate_variant::normalized_V;
    if (tilted && taus.size() != K) throw parameter_error("draw_candidate: need one tilt per block");
    if (!tilted && !taus.empty()) throw parameter_error("draw_candidate: untilted variant takes no tilts");
    candidate_vector cv;
    cv.variant = variant;
    cv.scale = scale;
    cv.block_sums.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        rng_stream r(seed, rep, k);
        tilted_block_spec tb{zeta, tilted ? taus[k] : 0.0, part.sizes[k]};
        cv.block_sums[k] = sample_block_sum(tb, r);
    }
    cv.values.resize(K);
    if (variant == candidate_variant::plain_W || variant == candidate_variant::tilted_V) {
        for (std::size_t k = 0; k < K; ++k) cv.values[k] = scale * (cv.block_sums[k] / static_cast<double>(part.n));
        return cv;
    }
    double tot = pairwise_sum(cv.block_sums);
    if (tot == 0.0) {
        cv.sentinel = true;
        return cv;
    }
    for (std::size_t k = 0; k < K; ++k) cv.values[k] = cv.block_sums[k] / tot;
    double s = pairwise_sum(cv.values);
    for (std::size_t k = 0; k < K; ++k) cv.values[k] = scale * (cv.values[k] / s);
    return cv;
}

} // namespace baresim

#endif
