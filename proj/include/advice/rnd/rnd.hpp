#pragma once

#include <limits>
#include <memory>

#include "advice/env/types.hpp"
#include "advice/nn/adam.hpp"
#include "advice/nn/rndnet.hpp"

namespace advice::rnd {

// Per-feature mean/std frozen from exactly the first `warmup_target`
// observations; identity pass-through until then. Normalized features are
// clipped to [-5, 5]. A warmup target of 0 fits immediately with mean 0 and
// std 1.
class ObsNormalizer {
public:
    ObsNormalizer(int dim, int warmup_target);

    void add(const float* data);
    void add(const env::Observation& obs) { add(obs.data.data()); }
    bool fitted() const { return fitted_; }
    int observed() const { return count_; }
    int warmup_target() const { return target_; }

    void normalize(const float* in, nn::Vec<float>& out) const;

    const nn::Vec<float>& mean() const { return mean_; }
    const nn::Vec<float>& stddev() const { return std_; }

    static constexpr float kStdFloor = 1e-8f;
    static constexpr float kClip = 5.0f;

private:
    void finalize();

    int dim_;
    int target_;
    int count_ = 0;
    bool fitted_ = false;
    nn::Vec<double> sum_;
    nn::Vec<double> sum_sq_;
    nn::Vec<float> mean_;
    nn::Vec<float> std_;
};

// Frozen random target network G and trainable predictor G_hat, initialized
// from different draws. Novelty of s is ||G_hat(s) - G(s)||^2 over the
// embedding (squared L2, not per-dimension mean). Until the observation
// normalizer is fitted, novelty queries report +infinity so threshold gating
// clips to probability 1.
class RndModule {
public:
    RndModule(const env::EnvSpec& spec, int embedding_dim, float learning_rate, int warmup_target,
              std::uint64_t seed);

    void observe_for_warmup(const env::Observation& obs) { normalizer_.add(obs); }
    bool normalizer_fitted() const { return normalizer_.fitted(); }

    double novelty(const env::Observation& obs) const;

    // One predictor gradient step on this single observation; the target
    // never changes. Returns the observation's novelty after the step.
    float update_single(const env::Observation& obs);

    // One predictor step on the mean squared embedding error over the batch
    // (raw binary observation columns). Returns the pre-step mean loss.
    float update_batch(const nn::Mat<float>& states);

    const nn::RndNetwork<float>& target_net() const { return target_; }
    const nn::RndNetwork<float>& predictor_net() const { return predictor_; }
    nn::RndNetwork<float>& predictor_net() { return predictor_; }

    ObsNormalizer& normalizer() { return normalizer_; }
    const ObsNormalizer& normalizer() const { return normalizer_; }

    std::uint64_t target_hash() const { return nn::params_hash(target_); }
    std::uint64_t predictor_hash() const { return nn::params_hash(predictor_); }

    float learning_rate() const { return adam_.learning_rate(); }
    int embedding_dim() const { return target_.embedding_dim; }

    static constexpr int kDefaultEmbeddingDim = 64;

private:
    nn::Mat<float> normalize_batch(const nn::Mat<float>& states) const;
    float step_on(const nn::Mat<float>& normalized);

    nn::RndNetwork<float> target_;
    nn::RndNetwork<float> predictor_;
    nn::Adam<float> adam_;
    ObsNormalizer normalizer_;
};

} // namespace advice::rnd
