#include "advice/harness/evaluate.hpp"

#include <stdexcept>

namespace advice::harness {

double evaluate_policy(const Policy& policy, const env::EnvSpec& spec,
                       const env::GridLayout* layout, std::uint64_t eval_stream_seed,
                       long eval_index, int n_episodes) {
    if (n_episodes < 1) throw std::invalid_argument("evaluate_policy: n_episodes must be >= 1");
    env::EpisodeStream stream(eval_stream_seed,
                              static_cast<std::uint64_t>(eval_index) * n_episodes);
    std::unique_ptr<env::Environment> environment =
        spec.id == env::GameId::GridWorld && layout != nullptr
            ? env::make_gridworld(stream, *layout)
            : env::make_env(spec.id, stream);
    double total = 0.0;
    for (int e = 0; e < n_episodes; ++e) {
        env::Observation obs = environment->reset();
        while (environment->episode_active()) {
            const env::StepResult result = environment->step(policy(obs));
            obs = result.observation;
        }
        total += environment->last_episode_eval_score();
    }
    return total / n_episodes;
}

double evaluate_greedy(const dqn::StudentAgent& agent, const env::EnvSpec& spec,
                       const env::GridLayout* layout, std::uint64_t eval_stream_seed,
                       long eval_index, int n_episodes) {
    return evaluate_policy([&agent](const env::Observation& obs) { return agent.greedy_action(obs); },
                           spec, layout, eval_stream_seed, eval_index, n_episodes);
}

} // namespace advice::harness
