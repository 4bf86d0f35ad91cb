#pragma once

#include <cstdint>
#include <random>

namespace qbai {

// SplitMix64, used both as a cheap generator and as a seed scrambler for
// deriving independent child streams by counter splitting.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(scramble(seed)) {}

    // Independent stream derived from (master, stream_id). Streams with
    // distinct ids never share state, so trials can run in parallel.
    static Rng stream(std::uint64_t master, std::uint64_t stream_id) {
        SplitMix64 mix(master);
        std::uint64_t a = mix.next();
        SplitMix64 mix2(a ^ (stream_id * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
        return Rng(mix2.next());
    }

    Rng child(std::uint64_t id) {
        return Rng::stream(engine_(), id);
    }

    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

    // Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    static std::uint64_t scramble(std::uint64_t seed) {
        SplitMix64 mix(seed);
        return mix.next();
    }

    std::mt19937_64 engine_;
};

}  // namespace qbai
