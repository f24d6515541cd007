#pragma once

#include <cstdint>

namespace acmine {

// splitmix64. Sequencing here is part of the reproducibility contract, so we
// avoid std distributions whose outputs are implementation-defined.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next();
    std::uint64_t bounded(std::uint64_t n);  // uniform in [0, n), rejection sampled
    double unit();                           // [0, 1)
};

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0);

}  // namespace acmine
