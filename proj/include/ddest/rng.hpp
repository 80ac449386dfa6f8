#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>

namespace ddest {

// xoshiro256** seeded through splitmix64. Self-contained so that streams
// are bit-identical across standard libraries and across runs; every trial
// of a sweep owns one stream keyed by (seed, snr index, trial index).
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64(s);
    }

    /// Mixes a base seed with a key path into an independent stream seed.
    static std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
        std::uint64_t s = seed;
        for (std::uint64_t k : keys) {
            s = splitmix64(s);
            std::uint64_t kk = k + 0x9E3779B97F4A7C15ull;
            s ^= splitmix64(kk);
        }
        return s;
    }

    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
        return Rng(derive(seed, keys));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform on (0, 1].
    double uniform_open0() { return 1.0 - uniform(); }

    /// Uniform integer on {lo, ..., hi} inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open0();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTau * u2);
        have_spare_ = true;
        return r * std::cos(kTau * u2);
    }

    /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> complex_normal(double variance) {
        const double s = std::sqrt(variance / 2.0);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }

private:
    static constexpr double kTau = 6.283185307179586476925286766559;

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ddest
