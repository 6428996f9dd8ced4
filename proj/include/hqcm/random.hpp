#pragma once

#include <cstdint>
#include <random>

namespace hqcm {

/// Deterministic random stream keyed by (seed, stream). Each shot of a
/// simulation owns its own stream, so shots can run in any order and still
/// reproduce. std::mt19937_64 has a fully specified output sequence and the
/// conversion to doubles below avoids the implementation-defined standard
/// distributions, so sequences are identical across platforms.
class RandomSource {
public:
    RandomSource(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);
    int bit() { return static_cast<int>(next_u64() >> 63); }
    /// Standard normal via Box-Muller (deterministic, unlike std::normal_distribution).
    double normal();

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to decorrelate (seed, stream) pairs.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace hqcm
