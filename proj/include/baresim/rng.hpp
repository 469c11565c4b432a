#ifndef BARESIM_RNG_HPP
#define BARESIM_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace baresim {

// Philox4x32-10 keyed by the seed; counter = (draw, block, replication lo/hi).
// Every (seed, replication, block) triple owns an independent stream.
class rng_stream {
public:
    using result_type = std::uint32_t;

    rng_stream(std::uint64_t seed, std::uint64_t replication, std::uint64_t block)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          ctr_{0u, static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(replication),
               static_cast<std::uint32_t>(replication >> 32)} {
        // blocks beyond 2^32 would alias; K is far below that
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (pos_ == 4) {
            buf_ = philox(ctr_, key_);
            ++ctr_[0];
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> c,
                                               std::array<std::uint32_t, 2> k) {
        constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
        constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
        for (int r = 0; r < 10; ++r) {
            std::uint64_t p0 = static_cast<std::uint64_t>(m0) * c[0];
            std::uint64_t p1 = static_cast<std::uint64_t>(m1) * c[2];
            std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
            std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
            c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
            k[0] += w0;
            k[1] += w1;
        }
        return c;
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

} // namespace baresim

#endif
