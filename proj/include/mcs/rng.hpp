#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace mcs {

/// splitmix64 finalizer; avalanches all input bits.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for the k-th parallel stream of a run. Streams can be generated in
/// any order on any number of workers and still match a serial pass.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed + (stream + 1) * 0x9e3779b97f4a7c15ULL);
}

/// mt19937_64 with hand-rolled draws. The standard library distributions are
/// implementation-defined, so every distribution used here is spelled out to
/// keep output identical across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound), bound >= 1, by rejection sampling.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t umax = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t overflow = (umax % bound + 1) % bound;  // 2^64 mod bound
        const std::uint64_t accept_max = umax - overflow;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r <= accept_max) return r % bound;
        }
    }

    /// Uniform double in (0, 1] with 53-bit resolution. Never returns 0, so it
    /// is safe under log().
    double u01() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = u01();
        const double u2 = u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
    double gamma(double shape) {
        if (shape < 1.0) {
            const double u = u01();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = u01();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
        }
    }

    /// Student-t with nu degrees of freedom (unstandardized, variance nu/(nu-2)).
    double student_t(double nu) {
        const double z = normal();
        const double chi2 = 2.0 * gamma(0.5 * nu);
        return z / std::sqrt(chi2 / nu);
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mcs
