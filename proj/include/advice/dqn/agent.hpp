#pragma once

#include <optional>

#include "advice/dqn/replay.hpp"
#include "advice/nn/adam.hpp"
#include "advice/nn/qnet.hpp"

namespace advice::dqn {

struct DqnHyperparams {
    int replay_start = 1000;
    int replay_capacity = 10000;
    int target_sync_period = 250;
    int minibatch = 32;
    float learning_rate = 1e-4f;
    int train_period = 2;
    float discount = 0.99f;

    static DqnHyperparams gridworld_profile() { return {1000, 10000, 250, 32, 1e-4f, 2, 0.99f}; }
    static DqnHyperparams minatar_profile() { return {10000, 100000, 1000, 32, 1e-4f, 2, 0.99f}; }
};

// Linear anneal from eps_start to eps_end over the first anneal_steps steps.
struct EpsGreedySchedule {
    double eps_start = 1.0;
    double eps_end = 0.01;
    long anneal_steps = 1;

    double value(long step) const {
        if (step >= anneal_steps) return eps_end;
        return eps_start + (eps_end - eps_start) * static_cast<double>(step) / anneal_steps;
    }
};

// Per-batch instrumentation of the bootstrap target construction.
struct TargetDebug {
    nn::Mat<float> q_online_next;
    nn::Mat<float> q_target_next;
    std::vector<int> argmax_online;
    nn::Vec<float> targets;
    std::vector<float> rewards;
    std::vector<std::uint8_t> terminals;
};

// Double/dueling DQN student. Exploration is either NoisyNets (fresh noise
// per action selection and per training batch) or epsilon-greedy on a plain
// network, which is what teacher pretraining uses.
class StudentAgent {
public:
    StudentAgent(const env::EnvSpec& spec, const DqnHyperparams& hyper, std::uint64_t seed);
    StudentAgent(const env::EnvSpec& spec, const DqnHyperparams& hyper, std::uint64_t seed,
                 const EpsGreedySchedule& schedule);

    int act(const env::Observation& obs);

    void observe(const Transition& t);

    // Called once per environment step: trains every train_period steps once
    // replay_start transitions exist and syncs the target network every
    // target_sync_period steps. Returns the minibatch loss when trained.
    std::optional<float> train_tick();

    struct QEval {
        nn::Vec<float> q;
        nn::Vec<float> phi;
    };
    // Deterministic zero-noise forward of the online network.
    QEval q_values_eval(const env::Observation& obs) const;
    int greedy_action(const env::Observation& obs) const;

    const nn::QNetwork<float>& online() const { return online_; }
    nn::QNetwork<float>& online() { return online_; }
    const nn::QNetwork<float>& target() const { return target_; }
    ReplayMemory& replay() { return replay_; }
    const ReplayMemory& replay() const { return replay_; }
    const DqnHyperparams& hyper() const { return hyper_; }
    long step_count() const { return step_; }
    long updates_done() const { return updates_; }

    void set_double_dqn(bool enabled) { double_dqn_ = enabled; }
    bool double_dqn() const { return double_dqn_; }

    // States of the most recent training minibatch (raw binary observations);
    // the SNA hook trains its RND module on exactly these columns.
    const nn::Mat<float>& last_batch_states() const { return batch_.states; }

    void enable_target_debug(bool enabled) { target_debug_enabled_ = enabled; }
    const TargetDebug& last_target_debug() const { return target_debug_; }

    std::uint64_t online_hash() const { return nn::params_hash(online_); }
    std::uint64_t target_hash() const { return nn::params_hash(target_); }

private:
    float train_batch();
    void sync_target() { target_ = online_; }

    env::EnvSpec spec_;
    DqnHyperparams hyper_;
    nn::QNetwork<float> online_;
    nn::QNetwork<float> target_;
    ReplayMemory replay_;
    nn::Adam<float> adam_;
    Rng sample_rng_;
    Rng noise_rng_;
    nn::QNoise<float> act_noise_;
    nn::QNoise<float> online_noise_;
    nn::QNoise<float> target_noise_;
    Batch batch_;
    bool noisy_;
    std::optional<EpsGreedySchedule> eps_schedule_;
    bool double_dqn_ = true;
    long step_ = 0;
    long updates_ = 0;
    bool target_debug_enabled_ = false;
    TargetDebug target_debug_;
};

} // namespace advice::dqn
