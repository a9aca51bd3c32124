#pragma once

// Seedable, splittable generator (xoshiro256++ seeded through splitmix64).
// Sampling algorithms are spelled out here rather than taken from
// <random> distributions so streams are identical across standard libraries.

#include <cmath>
#include <cstdint>

namespace sfkit {

class Rng {
public:
    explicit Rng(std::uint64_t seed) { reseed(seed); }

    // Independent stream derived from (seed, index); streams are pairwise
    // distinct for any practical index range.
    static Rng split(std::uint64_t seed, std::uint64_t index) {
        return Rng(splitmix(seed + 0x9E3779B97F4A7C15ULL * (index + 1)));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, bound) by rejection (unbiased).
    std::uint64_t uniform_index(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Marsaglia polar method; caches the spare deviate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    double exponential(double rate) { return -std::log(1.0 - uniform01()) / rate; }

    // Pareto with survival (x/x_min)^(-alpha): inverse CDF.
    double pareto(double alpha, double x_min) {
        return x_min * std::pow(1.0 - uniform01(), -1.0 / alpha);
    }

    // Marsaglia-Tsang for shape >= 1; boosted for shape < 1. Exact sampler.
    double gamma(double shape, double scale) {
        if (shape < 1.0) {
            const double u = uniform01();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

    double chi_square(double dof) { return gamma(0.5 * dof, 2.0); }

    // Ratio of a normal to sqrt(chi2/dof).
    double student_t(double dof) { return normal() / std::sqrt(chi_square(dof) / dof); }

private:
    static constexpr std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    static std::uint64_t splitmix(std::uint64_t& state) {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t splitmix(std::uint64_t&& seed) {
        std::uint64_t s = seed;
        return splitmix(s);
    }

    void reseed(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : s_) word = splitmix(s);
        has_spare_ = false;
    }

    std::uint64_t s_[4] = {};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace sfkit
