#include "hlouvain/rng.hpp"

#include <stdexcept>

namespace hlouvain {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
    // Expand the seed so that even seed 0 yields a well-mixed state.
    std::uint64_t x = seed;
    for (auto& word : state_) {
        word = splitmix64(x);
    }
}

Rng Rng::stream(std::uint64_t master, std::string_view tag, std::uint64_t index) {
    std::uint64_t x = master;
    std::uint64_t mixed = splitmix64(x);
    x ^= fnv1a(tag);
    mixed ^= splitmix64(x);
    x ^= index * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
    mixed ^= splitmix64(x);
    return Rng(mixed);
}

std::uint64_t Rng::next_u64() {
    std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_below(std::size_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("uniform_below: bound must be positive");
    }
    // Rejection sampling for an unbiased draw.
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    std::uint64_t draw;
    do {
        draw = next_u64();
    } while (draw > limit);
    return static_cast<std::size_t>(draw % bound);
}

}  // namespace hlouvain
