#pragma once

#include <cstdint>
#include <span>

namespace secrecylab {

// Counter-based deterministic generator (SplitMix64 core). Streams are keyed
// by (seed, lane indices), so any worker can open its substream without
// coordination and every artifact records plain integer seeds. Output is
// identical across platforms: only uint64 arithmetic is involved.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : state_(key) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Derives a substream key from a seed and up to three lane indices.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t a = 0,
                                std::uint64_t b = 0, std::uint64_t c = 0) {
        std::uint64_t k = mix(seed);
        k = mix(k ^ (a + 0x632be59bd9b4e019ULL));
        k = mix(k ^ (b + 0x9e6c63d0a9de0149ULL));
        k = mix(k ^ (c + 0xc2b2ae3d27d4eb4fULL));
        return k;
    }

    static CounterRng at(std::uint64_t seed, std::uint64_t a = 0,
                         std::uint64_t b = 0, std::uint64_t c = 0) {
        return CounterRng(derive(seed, a, b, c));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Samples an index from a probability vector by CDF inversion. Indices
    // with zero mass are never returned.
    std::size_t next_categorical(std::span<const double> probs) {
        const double u = next_double();
        double cum = 0.0;
        std::size_t last_positive = 0;
        bool seen = false;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (probs[i] <= 0.0) continue;
            last_positive = i;
            seen = true;
            cum += probs[i];
            if (u < cum) return i;
        }
        (void)seen;
        return last_positive;  // u landed in the rounding gap below 1
    }

private:
    std::uint64_t state_;
};

}  // namespace secrecylab
