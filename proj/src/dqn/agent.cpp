#include "advice/dqn/agent.hpp"

#include <cmath>
#include <stdexcept>

namespace advice::dqn {

namespace {
nn::Vec<float> obs_to_vec(const env::Observation& obs) {
    return Eigen::Map<const nn::Vec<float>>(obs.data.data(), obs.cells());
}
} // namespace

StudentAgent::StudentAgent(const env::EnvSpec& spec, const DqnHyperparams& hyper, std::uint64_t seed)
    : spec_(spec),
      hyper_(hyper),
      replay_(hyper.replay_capacity, spec.obs_cells()),
      adam_(hyper.learning_rate),
      sample_rng_(derive_seed(seed, 1)),
      noise_rng_(derive_seed(seed, 2)),
      noisy_(true) {
    Rng init_rng(derive_seed(seed, 0));
    online_ = nn::QNetwork<float>::make(init_rng, spec.channels, spec.height, spec.width,
                                        spec.num_actions, true);
    target_ = online_;
}

StudentAgent::StudentAgent(const env::EnvSpec& spec, const DqnHyperparams& hyper, std::uint64_t seed,
                           const EpsGreedySchedule& schedule)
    : spec_(spec),
      hyper_(hyper),
      replay_(hyper.replay_capacity, spec.obs_cells()),
      adam_(hyper.learning_rate),
      sample_rng_(derive_seed(seed, 1)),
      noise_rng_(derive_seed(seed, 2)),
      noisy_(false),
      eps_schedule_(schedule) {
    Rng init_rng(derive_seed(seed, 0));
    online_ = nn::QNetwork<float>::make(init_rng, spec.channels, spec.height, spec.width,
                                        spec.num_actions, false);
    target_ = online_;
}

int StudentAgent::act(const env::Observation& obs) {
    if (eps_schedule_) {
        const double eps = eps_schedule_->value(step_);
        if (sample_rng_.uniform() < eps) return sample_rng_.uniform_int(spec_.num_actions);
        return greedy_action(obs);
    }
    act_noise_.regenerate(noise_rng_, online_);
    const auto [q, phi] = nn::forward_q_single(online_, act_noise_, obs_to_vec(obs));
    return nn::argmax_lowest(q);
}

int StudentAgent::greedy_action(const env::Observation& obs) const {
    static const nn::QNoise<float> zero;
    const auto [q, phi] = nn::forward_q_single(online_, zero, obs_to_vec(obs));
    return nn::argmax_lowest(q);
}

StudentAgent::QEval StudentAgent::q_values_eval(const env::Observation& obs) const {
    static const nn::QNoise<float> zero;
    auto [q, phi] = nn::forward_q_single(online_, zero, obs_to_vec(obs));
    return {std::move(q), std::move(phi)};
}

void StudentAgent::observe(const Transition& t) {
    if (t.action < 0 || t.action >= spec_.num_actions)
        throw std::invalid_argument("StudentAgent::observe: action out of range");
    replay_.push(t);
}

std::optional<float> StudentAgent::train_tick() {
    ++step_;
    std::optional<float> loss;
    if (step_ % hyper_.train_period == 0 && replay_.size() >= hyper_.replay_start)
        loss = train_batch();
    if (step_ % hyper_.target_sync_period == 0) sync_target();
    return loss;
}

float StudentAgent::train_batch() {
    const int batch_size = hyper_.minibatch;
    replay_.sample(sample_rng_, batch_size, batch_);

    online_noise_.regenerate(noise_rng_, online_);
    target_noise_.regenerate(noise_rng_, target_);

    auto cache = nn::forward_q(online_, online_noise_, batch_.states);
    const auto target_cache = nn::forward_q(target_, target_noise_, batch_.next_states);

    nn::Vec<float> targets(batch_size);
    std::optional<nn::QForwardCache<float>> online_next;
    if (double_dqn_) online_next = nn::forward_q(online_, online_noise_, batch_.next_states);

    for (int i = 0; i < batch_size; ++i) {
        float bootstrap = 0.0f;
        if (!batch_.terminals[i]) {
            if (double_dqn_) {
                const int a_star = nn::argmax_lowest(online_next->q.col(i));
                bootstrap = target_cache.q(a_star, i);
            } else {
                bootstrap = target_cache.q.col(i).maxCoeff();
            }
        }
        targets[i] = batch_.rewards[i] + hyper_.discount * bootstrap;
    }

    if (target_debug_enabled_) {
        target_debug_.q_online_next = double_dqn_ ? online_next->q : nn::Mat<float>();
        target_debug_.q_target_next = target_cache.q;
        target_debug_.argmax_online.assign(batch_size, -1);
        if (double_dqn_)
            for (int i = 0; i < batch_size; ++i)
                target_debug_.argmax_online[i] = nn::argmax_lowest(online_next->q.col(i));
        target_debug_.targets = targets;
        target_debug_.rewards = batch_.rewards;
        target_debug_.terminals = batch_.terminals;
    }

    nn::Mat<float> d_q = nn::Mat<float>::Zero(spec_.num_actions, batch_size);
    float loss = 0.0f;
    for (int i = 0; i < batch_size; ++i) {
        const float diff = cache.q(batch_.actions[i], i) - targets[i];
        loss += diff * diff;
        d_q(batch_.actions[i], i) = 2.0f * diff / batch_size;
    }
    loss /= batch_size;
    if (!std::isfinite(loss))
        throw std::runtime_error("StudentAgent: non-finite TD loss (diverged parameters or rewards)");

    auto grads = nn::backward_q(online_, online_noise_, cache, d_q);
    adam_.step(nn::named_tensors(online_), nn::named_tensors(grads, online_));
    ++updates_;
    return loss;
}

} // namespace advice::dqn
