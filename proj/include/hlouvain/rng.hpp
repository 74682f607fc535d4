// rng.hpp - deterministic random number generation
#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace hlouvain {

// xoshiro256++ generator. Every source of randomness in the library draws
// from a stream derived via Rng::stream(master, tag, index), so results are
// reproducible from a single master seed and independent of thread count.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    // Derives an independent stream from a master seed, a purpose tag and an
    // index. The stream layout is part of the reproducibility contract.
    static Rng stream(std::uint64_t master, std::string_view tag, std::uint64_t index = 0);

    std::uint64_t next_u64();

    // Uniform double in [0, 1), 53-bit resolution.
    double uniform();

    // Uniform integer in [0, bound); bound must be > 0.
    std::size_t uniform_below(std::size_t bound);

    // Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = uniform_below(i);
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::uint64_t state_[4];
};

}  // namespace hlouvain
