#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace ecm {

using Rng = std::mt19937_64;

// independent stream per (master seed, index); never depends on thread scheduling
inline Rng stream_for(std::uint64_t master, std::uint64_t index)
{
    std::seed_seq seq{std::uint32_t(master), std::uint32_t(master >> 32), std::uint32_t(index),
                      std::uint32_t(index >> 32), 0x9e3779b9u};
    return Rng(seq);
}

inline double uniform_phase(Rng& rng)
{
    std::uniform_real_distribution<double> u(0.0, 6.283185307179586);
    return u(rng);
}

// circular complex Gaussian with E|z|^2 = power
inline std::complex<double> complex_gaussian(Rng& rng, double power)
{
    std::normal_distribution<double> n(0.0, 1.0);
    double s = std::sqrt(power / 2.0);
    double re = n(rng);
    double im = n(rng);
    return {s * re, s * im};
}

}  // namespace ecm
