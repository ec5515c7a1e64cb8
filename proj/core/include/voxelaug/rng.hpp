#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace voxelaug {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Order-sensitive hash of a key tuple.
constexpr std::uint64_t hash_keys(std::initializer_list<std::uint64_t> keys) {
    std::uint64_t h = 0x6A09E667F3BCC909ull;
    for (std::uint64_t k : keys) {
        h = mix64(h ^ mix64(k));
    }
    return h;
}

/// Deterministic random stream identified by (seed, substream).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard; the conversions to real and normal variates are done here
/// because the standard distributions are implementation-defined.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t substream)
        : seed_(seed), substream_(substream), engine_(hash_keys({seed, substream})) {}

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] std::uint64_t substream() const { return substream_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi]; returns lo when lo == hi.
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        // Rejection keeps the draw unbiased.
        const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % n;
    }

    /// Standard normal variate (Marsaglia polar method).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    /// Bulk standard normals for noise fields. Polar method on two 32-bit
    /// uniforms per engine draw; independent of the normal() spare.
    template <typename Out>
    void fill_normal(Out first, std::size_t count) {
        std::size_t n = 0;
        while (n < count) {
            double u, v, s;
            do {
                const std::uint64_t bits = engine_();
                u = static_cast<double>(bits >> 32) * 0x1.0p-31 - 1.0;
                v = static_cast<double>(bits & 0xFFFFFFFFull) * 0x1.0p-31 - 1.0;
                s = u * u + v * v;
            } while (s >= 1.0 || s == 0.0);
            const double f = std::sqrt(-2.0 * std::log(s) / s);
            first[n++] = u * f;
            if (n < count) {
                first[n++] = v * f;
            }
        }
    }

    /// Child stream keyed on this stream's identity and `key`.
    [[nodiscard]] RngStream fork(std::uint64_t key) const {
        return RngStream(seed_, hash_keys({substream_, key}));
    }

private:
    std::uint64_t seed_;
    std::uint64_t substream_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace voxelaug
