#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "advice/nn/qnet.hpp"

namespace advice::nn {

// Adaptive moment estimation with bias correction; moment state is kept per
// parameter tensor in the order of the first step() call.
template <typename T>
class Adam {
public:
    explicit Adam(T lr, T beta1 = T(0.9), T beta2 = T(0.999), T eps = T(1e-8))
        : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

    void step(const std::vector<NamedTensor<T>>& params, const std::vector<NamedTensor<T>>& grads) {
        if (params.size() != grads.size())
            throw std::invalid_argument("Adam: parameter/gradient count mismatch");
        if (m_.empty()) {
            m_.reserve(params.size());
            v_.reserve(params.size());
            for (const auto& p : params) {
                m_.emplace_back(Vec<T>::Zero(p.size));
                v_.emplace_back(Vec<T>::Zero(p.size));
            }
        }
        ++t_;
        const T correction1 = T(1) - std::pow(beta1_, static_cast<T>(t_));
        const T correction2 = T(1) - std::pow(beta2_, static_cast<T>(t_));
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (params[i].size != grads[i].size || params[i].size != m_[i].size())
                throw std::invalid_argument("Adam: tensor size changed between steps");
            Eigen::Map<Arr<T>> p(params[i].data, params[i].size);
            Eigen::Map<const Arr<T>> g(grads[i].data, grads[i].size);
            auto m = m_[i].array();
            auto v = v_[i].array();
            m = beta1_ * m + (T(1) - beta1_) * g;
            v = beta2_ * v + (T(1) - beta2_) * g.square();
            p -= lr_ * (m / correction1) / ((v / correction2).sqrt() + eps_);
        }
    }

    T learning_rate() const { return lr_; }
    long steps_taken() const { return t_; }

private:
    T lr_, beta1_, beta2_, eps_;
    long t_ = 0;
    std::vector<Vec<T>> m_, v_;
};

} // namespace advice::nn
