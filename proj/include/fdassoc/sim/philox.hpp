#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every
// (key, stream, replication) triple addresses an independent sequence, so a
// replication's draws do not depend on which thread runs it.

#include <array>
#include <cstdint>
#include <limits>

namespace fdassoc::sim {

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

inline PhiloxBlock philox4x32_10(PhiloxBlock ctr, PhiloxKey key) {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

/// UniformRandomBitGenerator over one (seed, stream, replication) sequence.
class Philox {
public:
    using result_type = std::uint32_t;

    Philox(std::uint64_t seed, std::uint32_t stream, std::uint64_t replication)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          ctr_{0u, stream, static_cast<std::uint32_t>(replication),
               static_cast<std::uint32_t>(replication >> 32)} {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (used_ == 4) {
            block_ = philox4x32_10(ctr_, key_);
            ++ctr_[0];
            used_ = 0;
        }
        return block_[used_++];
    }

    /// Uniform on (0, 1) with 53 random bits; never returns 0.
    double uniform() {
        const std::uint32_t hi = (*this)();
        return to_unit(hi, (*this)());
    }

    /// Random access: the two uniforms of block `index`, leaving the
    /// sequential position untouched.
    std::array<double, 2> uniforms_at(std::uint32_t index) const {
        PhiloxBlock c = ctr_;
        c[0] = index;
        const PhiloxBlock b = philox4x32_10(c, key_);
        return {to_unit(b[0], b[1]), to_unit(b[2], b[3])};
    }

    static double to_unit(std::uint32_t a, std::uint32_t b) {
        const std::uint64_t hi = a >> 5;
        const std::uint64_t lo = b >> 6;
        return (static_cast<double>(hi * 67108864u + lo) + 0.5) * 0x1.0p-53;
    }

private:
    PhiloxKey key_;
    PhiloxBlock ctr_;
    PhiloxBlock block_{};
    int used_ = 4;
};

}  // namespace fdassoc::sim
