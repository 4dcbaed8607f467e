#pragma once

#include <cstdint>
#include <random>

namespace momdet {

// SplitMix64 finalizer; used to derive independent stream seeds from one root seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of stream `index` under `root`: counter-based, so shard i always sees the same
// stream no matter how many workers run the shards.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return splitmix64(splitmix64(root) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Uniform draws on the open interval (0, 1) with 53 random bits, identical on every platform.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    double next() {
        for (;;) {
            const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace momdet
