#pragma once

#include <cstdint>
#include <random>

namespace fragsim {

// Counter-based seed mixing, so run seeds can be derived independently of
// execution order.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s = a ^ (index + 0x9E3779B97F4A7C15ULL * (index + 1));
    return splitmix64(s);
}

// mt19937_64 stream with explicit u64 -> double conversion; the standard
// distributions are implementation-defined, this keeps output byte-stable
// across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

} // namespace fragsim
