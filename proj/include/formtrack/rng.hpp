#pragma once

#include <array>
#include <cstdint>

namespace formtrack {

/// Philox4x64 with 10 rounds, the counter-based generator used throughout.
/// Stateless: output depends only on (counter, key), so every noise draw is
/// addressable and replays are exact regardless of evaluation order.
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key);

/// Map a 64-bit word to (0, 1]: top 53 bits, then shifted off zero so the
/// Box-Muller log never sees 0.
double uniform_from_bits(std::uint64_t word);

/// Substream labels. Each (agent, purpose, sub) triple owns an independent
/// stream; sub disambiguates multiple draws of one purpose (e.g. one per
/// neighbor edge).
enum class NoisePurpose : std::uint16_t {
    TargetVelocity = 0,
    TargetRange = 1,
    NeighborRange = 2,
};

struct GaussianPair {
    double a = 0.0;
    double b = 0.0;
};

/// Two independent standard normal draws for one labeled substream at one
/// (step, substep). Key = {seed, agent<<32 | purpose<<16 | sub}, counter =
/// {step, substep, 0, 0}; Box-Muller on the first two output words.
GaussianPair gaussian_pair(std::uint64_t seed, std::uint32_t agent, NoisePurpose purpose,
                           std::uint16_t sub, std::uint64_t step, std::uint64_t substep);

}  // namespace formtrack
