#pragma once

#include <cstdint>
#include <random>

namespace pulsemax {

// Deterministic random stream. The mt19937_64 core is pinned by the
// standard; the conversions and samplers below are fixed algorithms, so a
// given seed yields the same draw sequence on every platform. The
// distribution adaptors in <random> do not make that guarantee.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    // uniform on the open interval (0,1); never returns 0 or 1
    double uniform01();
    double uniform(double lo, double hi);

    // standard normal via the polar method; second deviate cached
    double normal();
    double normal(double mean, double sd);

    // Gamma(shape, 1) by the Marsaglia-Tsang squeeze; shape < 1 handled by
    // the boost X = Gamma(shape+1) * U^(1/shape)
    double gamma(double shape);

    // Beta(a, b) as the gamma ratio X/(X+Y)
    double beta(double a, double b);

    // Poisson(mean): product-of-uniforms below 30, transformed rejection
    // with squeeze (PTRS) above
    std::uint64_t poisson(double mean);

    // mean * standard exponential
    double exponential(double mean);

    // unit Frechet: -1/ln(U), CDF exp(-1/x) on x > 0
    double unit_frechet();

    std::uint64_t next_u64() { return gen_(); }

    // independent stream for parallel replicas; deterministic in (parent
    // state, tag)
    RandomStream split(std::uint64_t tag);

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace pulsemax
