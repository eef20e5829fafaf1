#pragma once

#include <array>
#include <cstdint>

namespace ehoi {

/// Philox4x32-10 block function (Salmon et al. counter-based generator).
/// Pure: output depends only on (counter, key).
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

/// One independent random stream, keyed by (seed, stream, tag).
///
/// Streams with distinct (stream, tag) pairs never overlap no matter how
/// many values are drawn, which is what makes scene generation order- and
/// worker-count-independent: every randomizer of every iteration owns its
/// own stream.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint32_t stream, std::uint32_t tag);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform();
    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n), n >= 1.
    std::uint64_t uniform_int(std::uint64_t n);
    bool bernoulli(double p);

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t block_counter_ = 0;
    std::uint32_t stream_ = 0;
    std::uint32_t tag_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffered_ = 0;
};

}  // namespace ehoi
