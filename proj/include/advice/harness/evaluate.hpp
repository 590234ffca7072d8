#pragma once

#include <functional>

#include "advice/dqn/agent.hpp"
#include "advice/env/gridworld.hpp"

namespace advice::harness {

// All sessions evaluate on this stream so that the episodes seen at a given
// evaluation index are identical across modes and experiment seeds.
constexpr std::uint64_t kEvalStreamSeed = 0x45564c53545245ULL;

using Policy = std::function<int(const env::Observation&)>;

// Runs n_episodes with exploration and advising disabled on the evaluation
// stream (episodes eval_index*n .. eval_index*n + n - 1) and returns the mean
// per-episode evaluation score. `layout` may be null for the built-in games
// and the canonical GridWorld.
double evaluate_policy(const Policy& policy, const env::EnvSpec& spec,
                       const env::GridLayout* layout, std::uint64_t eval_stream_seed,
                       long eval_index, int n_episodes);

// Zero-noise greedy evaluation of the agent's online network.
double evaluate_greedy(const dqn::StudentAgent& agent, const env::EnvSpec& spec,
                       const env::GridLayout* layout, std::uint64_t eval_stream_seed,
                       long eval_index, int n_episodes);

} // namespace advice::harness
