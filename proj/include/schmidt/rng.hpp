#pragma once

// Seedable generator with reproducible output on every platform.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the standard.
// Uniform doubles take the top 53 bits of one draw; normals use the polar
// Box-Muller method.  Distribution objects from <random> are avoided since
// their algorithms are implementation-defined.
//
// Stream splitting: stream k of seed s is seeded with
//   splitmix64(splitmix64(s) ^ splitmix64(k + 0x9e3779b97f4a7c15)).

#include <cstdint>
#include <optional>
#include <random>

namespace schmidt {

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x9e3779b97f4a7c15ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(stream_seed(seed, stream))
    {
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open0() { return 1.0 - uniform(); }

    double normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

}  // namespace schmidt
