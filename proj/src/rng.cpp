#include "formtrack/rng.hpp"

#include <cmath>
#include <numbers>

namespace formtrack {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

inline void round_once(std::array<std::uint64_t, 4>& ctr, const std::array<std::uint64_t, 2>& key) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key) {
    round_once(counter, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
        round_once(counter, key);
    }
    return counter;
}

double uniform_from_bits(std::uint64_t word) {
    return static_cast<double>((word >> 11) + 1) * 0x1.0p-53;
}

GaussianPair gaussian_pair(std::uint64_t seed, std::uint32_t agent, NoisePurpose purpose,
                           std::uint16_t sub, std::uint64_t step, std::uint64_t substep) {
    const std::uint64_t label = (static_cast<std::uint64_t>(agent) << 32) |
                                (static_cast<std::uint64_t>(purpose) << 16) |
                                static_cast<std::uint64_t>(sub);
    const auto words = philox4x64({step, substep, 0, 0}, {seed, label});
    const double u1 = uniform_from_bits(words[0]);
    const double u2 = uniform_from_bits(words[1]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi_v<double> * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace formtrack
