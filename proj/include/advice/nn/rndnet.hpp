#pragma once

#include "advice/nn/qnet.hpp"

namespace advice::nn {

// Embedding network used for random network distillation: the shared
// conv+dense body with a plain linear output head. Entirely noise-free.
template <typename T>
struct RndNetwork {
    Conv3x3<T> conv;
    Dense<T> hidden;
    Dense<T> out;
    int embedding_dim = 0;

    static RndNetwork make(Rng& rng, int in_c, int in_h, int in_w, int embedding_dim) {
        RndNetwork net;
        net.embedding_dim = embedding_dim;
        net.conv = Conv3x3<T>::make(rng, in_c, in_h, in_w, QNetwork<T>::kFilters);
        net.hidden = Dense<T>::make(rng, net.conv.out_cells(), QNetwork<T>::kHiddenUnits, false);
        net.out = Dense<T>::make(rng, QNetwork<T>::kHiddenUnits, embedding_dim, false);
        return net;
    }
};

template <typename T>
struct RndForwardCache {
    Mat<T> x;
    Mat<T> conv_a;
    Mat<T> hidden_a;
    Mat<T> embedding;
};

template <typename T>
RndForwardCache<T> forward_rnd(const RndNetwork<T>& net, const Mat<T>& x) {
    static const LayerNoise<T> no_noise;
    RndForwardCache<T> cache;
    cache.x = x;
    cache.conv_a = net.conv.forward(x);
    relu_inplace(cache.conv_a);
    cache.hidden_a = dense_forward(net.hidden, no_noise, cache.conv_a);
    relu_inplace(cache.hidden_a);
    cache.embedding = dense_forward(net.out, no_noise, cache.hidden_a);
    return cache;
}

// Embedding only, no cache kept.
template <typename T>
Vec<T> rnd_embed(const RndNetwork<T>& net, const Vec<T>& x) {
    return Vec<T>(forward_rnd(net, Mat<T>(x)).embedding.col(0));
}

template <typename T>
struct RndGrads {
    Mat<T> conv_w_t;
    Vec<T> conv_b;
    DenseGrads<T> hidden;
    DenseGrads<T> out;
};

template <typename T>
RndGrads<T> backward_rnd(const RndNetwork<T>& net, const RndForwardCache<T>& cache,
                         const Mat<T>& d_embedding) {
    static const LayerNoise<T> no_noise;
    RndGrads<T> grads;
    Mat<T> d_hidden = dense_backward(net.out, no_noise, net.out.mu_w, cache.hidden_a, d_embedding, grads.out);
    relu_backward_inplace(cache.hidden_a, d_hidden);
    Mat<T> d_conv = dense_backward(net.hidden, no_noise, net.hidden.mu_w, cache.conv_a, d_hidden, grads.hidden);
    relu_backward_inplace(cache.conv_a, d_conv);
    net.conv.backward(cache.x, d_conv, grads.conv_w_t, grads.conv_b);
    return grads;
}

template <typename T>
std::vector<NamedTensor<T>> named_tensors(RndNetwork<T>& net) {
    std::vector<NamedTensor<T>> out;
    out.push_back({"conv.w", net.conv.w_t.data(), net.conv.w_t.size()});
    out.push_back({"conv.b", net.conv.b.data(), net.conv.b.size()});
    detail::append_dense_tensors(out, "hidden", net.hidden);
    detail::append_dense_tensors(out, "out", net.out);
    return out;
}

template <typename T>
std::vector<NamedTensor<T>> named_tensors(RndGrads<T>& grads) {
    std::vector<NamedTensor<T>> out;
    out.push_back({"conv.w", grads.conv_w_t.data(), grads.conv_w_t.size()});
    out.push_back({"conv.b", grads.conv_b.data(), grads.conv_b.size()});
    detail::append_dense_tensors(out, "hidden", grads.hidden);
    detail::append_dense_tensors(out, "out", grads.out);
    return out;
}

template <typename T>
std::uint64_t params_hash(const RndNetwork<T>& net) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto tensors = named_tensors(const_cast<RndNetwork<T>&>(net));
    for (const auto& t : tensors) h = fnv1a(t.data, sizeof(T) * static_cast<std::size_t>(t.size), h);
    return h;
}

} // namespace advice::nn
