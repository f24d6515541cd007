#include "acmine/rng.hpp"

namespace acmine {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::bounded(std::uint64_t n) {
    if (n < 2) return 0;
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        std::uint64_t r = next();
        if (r >= threshold) return r % n;
    }
}

double SplitMix64::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    SplitMix64 g(a ^ (b * 0x9e3779b97f4a7c15ULL) ^ (c * 0xd1b54a32d192ed03ULL));
    g.next();
    return g.next();
}

}  // namespace acmine
