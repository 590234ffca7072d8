#pragma once

#include "advice/nn/layers.hpp"

namespace advice::nn {

template <typename T>
struct NamedTensor {
    std::string name;
    T* data = nullptr;
    long size = 0;
};

// Dueling Q-network: conv (16 3x3 filters, stride 1) -> ReLU -> dense 128
// -> ReLU -> value head (1) + advantage head (num_actions). The dense layers
// are noisy for students and plain for teachers and RND networks.
template <typename T>
struct QNetwork {
    Conv3x3<T> conv;
    Dense<T> hidden;
    Dense<T> value;
    Dense<T> advantage;
    int num_actions = 0;
    bool noisy = false;

    static constexpr int kFilters = 16;
    static constexpr int kHiddenUnits = 128;

    static QNetwork make(Rng& rng, int in_c, int in_h, int in_w, int num_actions, bool noisy) {
        QNetwork net;
        net.num_actions = num_actions;
        net.noisy = noisy;
        net.conv = Conv3x3<T>::make(rng, in_c, in_h, in_w, kFilters);
        net.hidden = Dense<T>::make(rng, net.conv.out_cells(), kHiddenUnits, noisy);
        net.value = Dense<T>::make(rng, kHiddenUnits, 1, noisy);
        net.advantage = Dense<T>::make(rng, kHiddenUnits, num_actions, noisy);
        return net;
    }

    long param_count() const {
        const auto dense_count = [](const Dense<T>& d) {
            return d.mu_w.size() + d.mu_b.size() + d.sigma_w.size() + d.sigma_b.size();
        };
        return conv.w_t.size() + conv.b.size() + dense_count(hidden) + dense_count(value) +
               dense_count(advantage);
    }
};

template <typename T>
struct QNoise {
    LayerNoise<T> hidden;
    LayerNoise<T> value;
    LayerNoise<T> advantage;

    static QNoise zeros() { return {}; }

    static QNoise gaussian(Rng& rng, const QNetwork<T>& net) {
        QNoise n;
        n.regenerate(rng, net);
        return n;
    }

    void regenerate(Rng& rng, const QNetwork<T>& net) {
        if (!net.noisy) return;
        hidden.regenerate(rng, net.hidden.in_dim(), net.hidden.out_dim());
        value.regenerate(rng, net.value.in_dim(), net.value.out_dim());
        advantage.regenerate(rng, net.advantage.in_dim(), net.advantage.out_dim());
    }
};

template <typename T>
struct QForwardCache {
    Mat<T> x;       // input batch
    Mat<T> conv_a;  // post-ReLU conv features
    Mat<T> phi;     // post-ReLU hidden features (input of the heads)
    Mat<T> w_hidden, w_value, w_adv; // effective weights used
    Mat<T> value_out;
    Mat<T> adv_out;
    Mat<T> q;
};

// q(a) = V + Adv(a) - mean_a' Adv(a').
template <typename T>
void dueling_combine(const Mat<T>& value_out, const Mat<T>& adv_out, Mat<T>& q) {
    q = adv_out;
    const auto adv_mean = adv_out.colwise().mean();
    q.rowwise() -= adv_mean;
    q.rowwise() += value_out.row(0);
}

template <typename T>
QForwardCache<T> forward_q(const QNetwork<T>& net, const QNoise<T>& noise, const Mat<T>& x) {
    QForwardCache<T> cache;
    cache.x = x;
    cache.conv_a = net.conv.forward(x);
    relu_inplace(cache.conv_a);

    Vec<T> b_eff;
    net.hidden.effective(noise.hidden, cache.w_hidden, b_eff);
    cache.phi.noalias() = cache.w_hidden * cache.conv_a;
    cache.phi.colwise() += b_eff;
    relu_inplace(cache.phi);

    net.value.effective(noise.value, cache.w_value, b_eff);
    cache.value_out.noalias() = cache.w_value * cache.phi;
    cache.value_out.colwise() += b_eff;

    net.advantage.effective(noise.advantage, cache.w_adv, b_eff);
    cache.adv_out.noalias() = cache.w_adv * cache.phi;
    cache.adv_out.colwise() += b_eff;

    dueling_combine(cache.value_out, cache.adv_out, cache.q);
    return cache;
}

// Single-observation forward; returns (q, phi).
template <typename T>
std::pair<Vec<T>, Vec<T>> forward_q_single(const QNetwork<T>& net, const QNoise<T>& noise,
                                           const Vec<T>& x) {
    const QForwardCache<T> cache = forward_q(net, noise, Mat<T>(x));
    return {Vec<T>(cache.q.col(0)), Vec<T>(cache.phi.col(0))};
}

template <typename T>
struct QGrads {
    Mat<T> conv_w_t;
    Vec<T> conv_b;
    DenseGrads<T> hidden;
    DenseGrads<T> value;
    DenseGrads<T> advantage;
};

// Backward from dL/dQ. Noise tensors are constants; sigma gradients are
// produced only for noisy layers.
template <typename T>
QGrads<T> backward_q(const QNetwork<T>& net, const QNoise<T>& noise, const QForwardCache<T>& cache,
                     const Mat<T>& d_q) {
    QGrads<T> grads;

    // Dueling split: dV = sum_a dQ_a, dAdv = dQ - mean_a dQ.
    const Mat<T> d_value = d_q.colwise().sum();
    Mat<T> d_adv = d_q;
    d_adv.rowwise() -= d_q.colwise().mean();

    Mat<T> d_phi = dense_backward(net.value, noise.value, cache.w_value, cache.phi, d_value, grads.value);
    d_phi += dense_backward(net.advantage, noise.advantage, cache.w_adv, cache.phi, d_adv, grads.advantage);
    relu_backward_inplace(cache.phi, d_phi);

    Mat<T> d_conv = dense_backward(net.hidden, noise.hidden, cache.w_hidden, cache.conv_a, d_phi, grads.hidden);
    relu_backward_inplace(cache.conv_a, d_conv);

    net.conv.backward(cache.x, d_conv, grads.conv_w_t, grads.conv_b);
    return grads;
}

namespace detail {
template <typename T, typename DenseLike>
void append_dense_tensors(std::vector<NamedTensor<T>>& out, const std::string& prefix, DenseLike& d) {
    out.push_back({prefix + ".mu_w", const_cast<T*>(d.mu_w.data()), d.mu_w.size()});
    out.push_back({prefix + ".mu_b", const_cast<T*>(d.mu_b.data()), d.mu_b.size()});
    if (d.sigma_w.size() > 0) {
        out.push_back({prefix + ".sigma_w", const_cast<T*>(d.sigma_w.data()), d.sigma_w.size()});
        out.push_back({prefix + ".sigma_b", const_cast<T*>(d.sigma_b.data()), d.sigma_b.size()});
    }
}
} // namespace detail

// Stable parameter enumeration used by the optimizer, checkpoints and hashes.
template <typename T>
std::vector<NamedTensor<T>> named_tensors(QNetwork<T>& net) {
    std::vector<NamedTensor<T>> out;
    out.push_back({"conv.w", net.conv.w_t.data(), net.conv.w_t.size()});
    out.push_back({"conv.b", net.conv.b.data(), net.conv.b.size()});
    detail::append_dense_tensors(out, "hidden", net.hidden);
    detail::append_dense_tensors(out, "value", net.value);
    detail::append_dense_tensors(out, "advantage", net.advantage);
    return out;
}

template <typename T>
std::vector<NamedTensor<T>> named_tensors(QGrads<T>& grads, const QNetwork<T>& net) {
    std::vector<NamedTensor<T>> out;
    out.push_back({"conv.w", grads.conv_w_t.data(), grads.conv_w_t.size()});
    out.push_back({"conv.b", grads.conv_b.data(), grads.conv_b.size()});
    detail::append_dense_tensors(out, "hidden", grads.hidden);
    detail::append_dense_tensors(out, "value", grads.value);
    detail::append_dense_tensors(out, "advantage", grads.advantage);
    (void)net;
    return out;
}

template <typename T>
std::uint64_t params_hash(const QNetwork<T>& net) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto tensors = named_tensors(const_cast<QNetwork<T>&>(net));
    for (const auto& t : tensors) h = fnv1a(t.data, sizeof(T) * static_cast<std::size_t>(t.size), h);
    return h;
}

} // namespace advice::nn
