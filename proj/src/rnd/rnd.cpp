#include "advice/rnd/rnd.hpp"

#include <cmath>

namespace advice::rnd {

ObsNormalizer::ObsNormalizer(int dim, int warmup_target) : dim_(dim), target_(warmup_target) {
    sum_ = nn::Vec<double>::Zero(dim);
    sum_sq_ = nn::Vec<double>::Zero(dim);
    if (target_ <= 0) {
        mean_ = nn::Vec<float>::Zero(dim);
        std_ = nn::Vec<float>::Ones(dim);
        fitted_ = true;
    }
}

void ObsNormalizer::add(const float* data) {
    if (fitted_) return;
    for (int i = 0; i < dim_; ++i) {
        sum_[i] += data[i];
        sum_sq_[i] += static_cast<double>(data[i]) * data[i];
    }
    if (++count_ >= target_) finalize();
}

void ObsNormalizer::finalize() {
    mean_.resize(dim_);
    std_.resize(dim_);
    for (int i = 0; i < dim_; ++i) {
        const double m = sum_[i] / count_;
        const double var = std::max(0.0, sum_sq_[i] / count_ - m * m);
        mean_[i] = static_cast<float>(m);
        std_[i] = std::max(kStdFloor, static_cast<float>(std::sqrt(var)));
    }
    fitted_ = true;
}

void ObsNormalizer::normalize(const float* in, nn::Vec<float>& out) const {
    out.resize(dim_);
    if (!fitted_) {
        std::copy(in, in + dim_, out.data());
        return;
    }
    for (int i = 0; i < dim_; ++i) {
        const float z = (in[i] - mean_[i]) / std_[i];
        out[i] = std::clamp(z, -kClip, kClip);
    }
}

RndModule::RndModule(const env::EnvSpec& spec, int embedding_dim, float learning_rate,
                     int warmup_target, std::uint64_t seed)
    : adam_(learning_rate), normalizer_(spec.obs_cells(), warmup_target) {
    Rng target_rng(derive_seed(seed, 10));
    Rng predictor_rng(derive_seed(seed, 11));
    target_ = nn::RndNetwork<float>::make(target_rng, spec.channels, spec.height, spec.width,
                                          embedding_dim);
    predictor_ = nn::RndNetwork<float>::make(predictor_rng, spec.channels, spec.height, spec.width,
                                             embedding_dim);
}

double RndModule::novelty(const env::Observation& obs) const {
    if (!normalizer_.fitted()) return std::numeric_limits<double>::infinity();
    nn::Vec<float> z;
    normalizer_.normalize(obs.data.data(), z);
    const nn::Vec<float> g = nn::rnd_embed(target_, z);
    const nn::Vec<float> g_hat = nn::rnd_embed(predictor_, z);
    return static_cast<double>((g_hat - g).squaredNorm());
}

nn::Mat<float> RndModule::normalize_batch(const nn::Mat<float>& states) const {
    nn::Mat<float> z(states.rows(), states.cols());
    nn::Vec<float> col;
    for (int i = 0; i < states.cols(); ++i) {
        normalizer_.normalize(states.col(i).data(), col);
        z.col(i) = col;
    }
    return z;
}

float RndModule::step_on(const nn::Mat<float>& normalized) {
    const int batch = static_cast<int>(normalized.cols());
    auto cache = nn::forward_rnd(predictor_, normalized);
    const auto target_cache = nn::forward_rnd(target_, normalized);
    nn::Mat<float> diff = cache.embedding - target_cache.embedding;
    const float loss = diff.squaredNorm() / batch;
    nn::Mat<float> d_embedding = (2.0f / batch) * diff;
    auto grads = nn::backward_rnd(predictor_, cache, d_embedding);
    adam_.step(nn::named_tensors(predictor_), nn::named_tensors(grads));
    return loss;
}

float RndModule::update_single(const env::Observation& obs) {
    nn::Vec<float> z;
    normalizer_.normalize(obs.data.data(), z);
    step_on(nn::Mat<float>(z));
    const nn::Vec<float> g = nn::rnd_embed(target_, z);
    const nn::Vec<float> g_hat = nn::rnd_embed(predictor_, z);
    return (g_hat - g).squaredNorm();
}

float RndModule::update_batch(const nn::Mat<float>& states) {
    if (states.cols() == 0) throw std::invalid_argument("RndModule::update_batch: empty batch");
    return step_on(normalize_batch(states));
}

} // namespace advice::rnd
