#pragma once

#include <memory>

#include "advice/env/types.hpp"

namespace advice::env {

// Single-threaded mutable game state. Handles may be moved between threads
// but never shared; independent handles are fully independent.
class Environment {
public:
    virtual ~Environment() = default;

    virtual const EnvSpec& spec() const = 0;

    // Starts the next episode, drawing its event seed from the stream.
    virtual Observation reset() = 0;

    // Advances one tick. Throws std::logic_error when no episode is active
    // and std::invalid_argument when the action is out of range.
    virtual StepResult step(int action) = 0;

    virtual bool episode_active() const = 0;

    // Undiscounted return of the most recently finished episode.
    virtual double last_episode_return() const = 0;

    // Score used by periodic evaluation: shaped [0,1] score for GridWorld,
    // raw return for the minimal games.
    virtual double last_episode_eval_score() const = 0;
};

std::unique_ptr<Environment> make_env(const EnvSpec& spec, EpisodeStream stream);
std::unique_ptr<Environment> make_env(GameId id, EpisodeStream stream);

// GridWorld with a custom tile layout ('.' ground, '#' pit, 'G' goal, 'S' start).
std::unique_ptr<Environment> make_gridworld(EpisodeStream stream, const class GridLayout& layout);

} // namespace advice::env
