#pragma once

#include <cstdint>
#include <random>

namespace randq {

/// Seeded random stream. Every simulation run owns one; child streams are
/// derived with split() so parallel tasks never share state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound).
    std::uint64_t uniform_index(std::uint64_t bound)
    {
        std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
        return dist(engine_);
    }

    double normal()
    {
        std::normal_distribution<double> dist(0.0, 1.0);
        return dist(engine_);
    }

    std::uint64_t next() { return engine_(); }

    /// Independent child stream; advances this stream by one draw.
    Rng split() { return Rng(mix(engine_() ^ 0x9e3779b97f4a7c15ULL)); }

    /// Child stream keyed by a label, without advancing this stream.
    Rng derive(std::uint64_t key) const { return Rng(mix(seed_ + mix(key + 0x632be59bd9b4e019ULL))); }

    static std::uint64_t mix(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace randq
