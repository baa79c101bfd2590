#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace gpc {

// Deterministic random source for a single evolution run.
//
// All draws are derived from raw mt19937_64 output with fixed mapping
// code, so a given seed produces the same sequence on every platform
// and standard library. The std::uniform_* distributions are not used
// because their output is implementation-defined.
class RngState {
public:
    explicit RngState(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, n). n must be >= 1.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = engine_();
        while (x >= limit) {
            x = engine_();
        }
        return x % n;
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double uniform_real() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform_real(double lo, double hi) {
        return lo + uniform_real() * (hi - lo);
    }

    bool chance(double p) { return uniform_real() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace gpc
