#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "advice/rng.hpp"

namespace advice::nn {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using Arr = Eigen::Array<T, Eigen::Dynamic, 1>;

// Vectorised Box-Muller; raw uniforms come from the xoshiro stream so the
// same seed reproduces the same noise bit-for-bit.
template <typename T>
void fill_normal(Rng& rng, T* out, long n) {
    if (n <= 0) return;
    const long half = (n + 1) / 2;
    Arr<T> u1(half), u2(half);
    for (long i = 0; i < half; ++i) {
        const std::uint64_t bits = rng.next_u64();
        // high 24 bits -> (0,1], low 24 bits of the upper word -> [0,1)
        u1[i] = static_cast<T>(((bits >> 40) + 1) * 0x1.0p-24);
        u2[i] = static_cast<T>(((bits >> 16) & 0xffffffULL) * 0x1.0p-24);
    }
    const Arr<T> r = (T(-2) * u1.log()).sqrt();
    const Arr<T> a = T(2) * T(std::numbers::pi) * u2;
    const Arr<T> z0 = r * a.cos();
    const Arr<T> z1 = r * a.sin();
    for (long i = 0; i < n / 2; ++i) {
        out[2 * i] = z0[i];
        out[2 * i + 1] = z1[i];
    }
    if (n % 2 != 0) out[n - 1] = z0[half - 1];
}

template <typename T>
void fill_uniform(Rng& rng, T* out, long n, T lo, T hi) {
    for (long i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<T>(rng.uniform());
}

// Argmax with ties broken toward the lowest index.
template <typename Derived>
int argmax_lowest(const Eigen::MatrixBase<Derived>& v) {
    int best = 0;
    for (int i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

template <typename T>
std::uint64_t hash_tensor(const Mat<T>& m, std::uint64_t h = 0xcbf29ce484222325ULL) {
    return fnv1a(m.data(), sizeof(T) * static_cast<std::size_t>(m.size()), h);
}
template <typename T>
std::uint64_t hash_tensor(const Vec<T>& v, std::uint64_t h = 0xcbf29ce484222325ULL) {
    return fnv1a(v.data(), sizeof(T) * static_cast<std::size_t>(v.size()), h);
}

} // namespace advice::nn
