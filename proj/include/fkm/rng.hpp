#ifndef FKM_RNG_HPP
#define FKM_RNG_HPP

#include <cstdint>

namespace fkm {

__extension__ typedef unsigned __int128 uint128;

/**
 * SplitMix64 (Steele, Lea, Flood 2014). All randomness in the library is
 * drawn from this generator so that runs are reproducible across
 * platforms and language ports:
 *
 *     state += 0x9E3779B97F4A7C15
 *     z = state
 *     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
 *     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
 *     return z ^ (z >> 31)
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform index in [0, n) by multiply-shift; n > 0.
    std::uint64_t below(std::uint64_t n) noexcept {
        return static_cast<std::uint64_t>((static_cast<uint128>(next()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

}  // namespace fkm

#endif  // FKM_RNG_HPP
