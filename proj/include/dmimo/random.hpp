#pragma once

#include <cstdint>

#include "dmimo/types.hpp"

namespace dmimo {

// SplitMix64 finalizer. A bijection on 64-bit words with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives the seed of child stream `index` from `parent`. For a fixed parent
/// the map index -> seed is injective (composition of bijections), so drop
/// streams never collide within a campaign.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept
{
    return mix64(parent ^ mix64(index ^ 0xD1B54A32D192ED03ULL));
}

// Independent per-stage streams inside one drop. Keeping stages on separate
// streams means e.g. switching CSI mode does not perturb the fading draws.
enum class Stage : std::uint64_t {
    Positions = 1,
    Channel = 2,
    Impulsive = 3,
    Estimation = 4,
};

inline Rng make_stream(std::uint64_t drop_seed, Stage stage)
{
    return Rng(derive_seed(drop_seed, static_cast<std::uint64_t>(stage)));
}

// Distribution transforms are written out rather than taken from <random> so
// that a seed yields the same samples under every standard library.

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Standard normal by the Marsaglia polar method; caches the second variate.
class StandardNormal
{
  public:
    double operator()(Rng& rng)
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        double v = 0.0;
        double s = 0.0;
        do
        {
            u = 2.0 * uniform01(rng) - 1.0;
            v = 2.0 * uniform01(rng) - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * scale;
        has_spare_ = true;
        return u * scale;
    }

  private:
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Circularly-symmetric complex normal with unit variance (each part N(0, 1/2)).
class ComplexNormal
{
  public:
    Complex operator()(Rng& rng)
    {
        const double re = normal_(rng);
        const double im = normal_(rng);
        return {M_SQRT1_2 * re, M_SQRT1_2 * im};
    }

  private:
    StandardNormal normal_;
};

} // namespace dmimo
