#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "advice/nn/core.hpp"

namespace advice::nn {

// Per-layer noise tensors (epsilon in y = (mu_w + sigma_w.*eps_w) x + mu_b + sigma_b.*eps_b).
// Empty tensors stand for the deterministic all-zeros sample.
template <typename T>
struct LayerNoise {
    Mat<T> eps_w;
    Vec<T> eps_b;

    bool zero() const { return eps_w.size() == 0; }

    static LayerNoise zeros() { return {}; }

    static LayerNoise gaussian(Rng& rng, int in_dim, int out_dim) {
        LayerNoise n;
        n.eps_w.resize(out_dim, in_dim);
        n.eps_b.resize(out_dim);
        fill_normal(rng, n.eps_w.data(), n.eps_w.size());
        fill_normal(rng, n.eps_b.data(), n.eps_b.size());
        return n;
    }

    void regenerate(Rng& rng, int in_dim, int out_dim) {
        eps_w.resize(out_dim, in_dim);
        eps_b.resize(out_dim);
        fill_normal(rng, eps_w.data(), eps_w.size());
        fill_normal(rng, eps_b.data(), eps_b.size());
    }
};

// Fully connected layer. When `sigma_w`/`sigma_b` are present the layer is a
// noisy linear layer; plain layers have no sigma tensors at all so networks
// without exploration noise are structurally noise-free.
template <typename T>
struct Dense {
    Mat<T> mu_w;
    Vec<T> mu_b;
    Mat<T> sigma_w; // empty for plain layers
    Vec<T> sigma_b;

    int in_dim() const { return static_cast<int>(mu_w.cols()); }
    int out_dim() const { return static_cast<int>(mu_w.rows()); }
    bool noisy() const { return sigma_w.size() > 0; }

    static Dense make(Rng& rng, int in_dim, int out_dim, bool noisy) {
        Dense d;
        d.mu_w.resize(out_dim, in_dim);
        d.mu_b.resize(out_dim);
        const T bound = T(1) / std::sqrt(static_cast<T>(in_dim));
        fill_uniform(rng, d.mu_w.data(), d.mu_w.size(), -bound, bound);
        fill_uniform(rng, d.mu_b.data(), d.mu_b.size(), -bound, bound);
        if (noisy) {
            const T sigma0 = T(0.5) / std::sqrt(static_cast<T>(in_dim));
            d.sigma_w = Mat<T>::Constant(out_dim, in_dim, sigma0);
            d.sigma_b = Vec<T>::Constant(out_dim, sigma0);
        }
        return d;
    }

    // Effective weights for a given noise sample.
    void effective(const LayerNoise<T>& noise, Mat<T>& w_eff, Vec<T>& b_eff) const {
        if (!noisy() || noise.zero()) {
            w_eff = mu_w;
            b_eff = mu_b;
            return;
        }
        if (noise.eps_w.rows() != mu_w.rows() || noise.eps_w.cols() != mu_w.cols())
            throw std::invalid_argument("Dense: noise shape mismatch");
        w_eff = mu_w + sigma_w.cwiseProduct(noise.eps_w);
        b_eff = mu_b + sigma_b.cwiseProduct(noise.eps_b);
    }
};

// y = (mu_w + sigma_w.*eps_w) x + mu_b + sigma_b.*eps_b, batched column-wise.
template <typename T>
Mat<T> dense_forward(const Dense<T>& layer, const LayerNoise<T>& noise, const Mat<T>& x) {
    if (x.rows() != layer.in_dim())
        throw std::invalid_argument("dense_forward: input dimension mismatch");
    Mat<T> w_eff;
    Vec<T> b_eff;
    layer.effective(noise, w_eff, b_eff);
    Mat<T> y = w_eff * x;
    y.colwise() += b_eff;
    return y;
}

template <typename T>
Vec<T> dense_forward(const Dense<T>& layer, const LayerNoise<T>& noise, const Vec<T>& x) {
    return Vec<T>(dense_forward(layer, noise, Mat<T>(x)));
}

template <typename T>
struct DenseGrads {
    Mat<T> mu_w;
    Vec<T> mu_b;
    Mat<T> sigma_w;
    Vec<T> sigma_b;
};

// Backward pass given dL/dy; noise tensors are treated as constants.
// Returns dL/dx; fills parameter gradients.
template <typename T>
Mat<T> dense_backward(const Dense<T>& layer, const LayerNoise<T>& noise, const Mat<T>& w_eff,
                      const Mat<T>& x, const Mat<T>& dy, DenseGrads<T>& grads) {
    grads.mu_w.noalias() = dy * x.transpose();
    grads.mu_b = dy.rowwise().sum();
    if (layer.noisy()) {
        if (noise.zero()) {
            grads.sigma_w = Mat<T>::Zero(layer.out_dim(), layer.in_dim());
            grads.sigma_b = Vec<T>::Zero(layer.out_dim());
        } else {
            grads.sigma_w = grads.mu_w.cwiseProduct(noise.eps_w);
            grads.sigma_b = grads.mu_b.cwiseProduct(noise.eps_b);
        }
    } else {
        grads.sigma_w.resize(0, 0);
        grads.sigma_b.resize(0);
    }
    return w_eff.transpose() * dy;
}

// 3x3 valid convolution with stride 1. Weights are stored transposed
// (patch_dim x filters) so the per-sample GEMM writes the channel-major
// flattened feature map directly.
template <typename T>
struct Conv3x3 {
    int in_c = 0, in_h = 0, in_w = 0;
    int filters = 0;
    Mat<T> w_t; // (in_c*9) x filters
    Vec<T> b;   // filters

    int out_h() const { return in_h - 2; }
    int out_w() const { return in_w - 2; }
    int out_positions() const { return out_h() * out_w(); }
    int out_cells() const { return filters * out_positions(); }
    int patch_dim() const { return in_c * 9; }
    int in_cells() const { return in_c * in_h * in_w; }

    static Conv3x3 make(Rng& rng, int in_c, int in_h, int in_w, int filters) {
        if (in_h < 3 || in_w < 3) throw std::invalid_argument("Conv3x3: input smaller than kernel");
        Conv3x3 conv;
        conv.in_c = in_c;
        conv.in_h = in_h;
        conv.in_w = in_w;
        conv.filters = filters;
        conv.w_t.resize(conv.patch_dim(), filters);
        conv.b = Vec<T>::Zero(filters);
        const T bound = T(1) / std::sqrt(static_cast<T>(conv.patch_dim()));
        fill_uniform(rng, conv.w_t.data(), conv.w_t.size(), -bound, bound);
        return conv;
    }

    // patches: out_positions() x patch_dim(), one row per output position.
    void im2col(const T* sample, Mat<T>& patches) const {
        const int ow = out_w();
        const int oh = out_h();
        patches.resize(oh * ow, patch_dim());
        for (int c = 0; c < in_c; ++c) {
            for (int kr = 0; kr < 3; ++kr) {
                for (int kc = 0; kc < 3; ++kc) {
                    const int k = (c * 3 + kr) * 3 + kc;
                    T* col = patches.data() + static_cast<std::size_t>(k) * oh * ow;
                    for (int r = 0; r < oh; ++r) {
                        const T* src = sample + (static_cast<std::size_t>(c) * in_h + r + kr) * in_w + kc;
                        std::copy(src, src + ow, col + static_cast<std::size_t>(r) * ow);
                    }
                }
            }
        }
    }

    // x: in_cells x batch; returns out_cells x batch (channel-major per column).
    Mat<T> forward(const Mat<T>& x) const {
        if (x.rows() != in_cells()) throw std::invalid_argument("Conv3x3: input shape mismatch");
        const int batch = static_cast<int>(x.cols());
        const int pos = out_positions();
        Mat<T> out(out_cells(), batch);
        Mat<T> patches;
        for (int i = 0; i < batch; ++i) {
            im2col(x.data() + static_cast<std::size_t>(i) * in_cells(), patches);
            Eigen::Map<Mat<T>> out_sample(out.data() + static_cast<std::size_t>(i) * out_cells(), pos, filters);
            out_sample.noalias() = patches * w_t;
            out_sample.rowwise() += b.transpose();
        }
        return out;
    }

    void backward(const Mat<T>& x, const Mat<T>& d_out, Mat<T>& grad_w_t, Vec<T>& grad_b) const {
        const int batch = static_cast<int>(x.cols());
        const int pos = out_positions();
        grad_w_t = Mat<T>::Zero(patch_dim(), filters);
        grad_b = Vec<T>::Zero(filters);
        Mat<T> patches;
        for (int i = 0; i < batch; ++i) {
            im2col(x.data() + static_cast<std::size_t>(i) * in_cells(), patches);
            Eigen::Map<const Mat<T>> d_sample(d_out.data() + static_cast<std::size_t>(i) * out_cells(), pos, filters);
            grad_w_t.noalias() += patches.transpose() * d_sample;
            grad_b += d_sample.colwise().sum().transpose();
        }
    }
};

template <typename T>
void relu_inplace(Mat<T>& x) {
    x = x.cwiseMax(T(0));
}

// dL/dz = dL/da where a > 0, else 0 (a is the post-activation value).
template <typename T>
void relu_backward_inplace(const Mat<T>& activated, Mat<T>& grad) {
    grad = (activated.array() > T(0)).select(grad, Mat<T>::Zero(grad.rows(), grad.cols()));
}

} // namespace advice::nn
