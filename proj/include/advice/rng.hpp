#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace advice {

// SplitMix64 step; used for seeding and for deriving independent substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives a stream seed from a root seed and a stream tag so that the
// environment / agent / evaluation streams never overlap.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag) {
    std::uint64_t s = root ^ (0x9e3779b97f4a7c15ULL * (tag + 1));
    splitmix64(s);
    return splitmix64(s);
}

// xoshiro256++ (Blackman & Vigna). Deterministic across platforms, fast
// enough to regenerate full noisy-layer noise every step.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
        cached_valid_ = false;
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

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

    bool bernoulli(double p) { return uniform() < p; }

    // Standard normal via Box-Muller, one cached value per pair.
    double normal() {
        if (cached_valid_) {
            cached_valid_ = false;
            return cached_;
        }
        double u1 = 0.0;
        do { u1 = uniform(); } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(a);
        cached_valid_ = true;
        return r * std::cos(a);
    }

    template <typename T>
    void fill_normal(T* out, long n) {
        for (long i = 0; i < n; ++i) out[i] = static_cast<T>(normal());
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4] = {};
    double cached_ = 0.0;
    bool cached_valid_ = false;
};

// FNV-1a over raw bytes; used to assert parameter immutability in tests.
inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace advice
