#pragma once

#include "advice/env/environment.hpp"
#include "advice/env/layout.hpp"

namespace advice::env {

// Action indices; also the teacher's tie-break order.
enum GridAction : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };

struct GridWorldOutcome {
    bool reached_goal = false;
    int steps_used = 0;
    Cell final_cell;
};

class GridWorld final : public Environment {
public:
    explicit GridWorld(EpisodeStream stream, GridLayout layout = GridLayout::canonical());

    const EnvSpec& spec() const override { return spec_; }
    Observation reset() override;
    StepResult step(int action) override;
    bool episode_active() const override { return active_; }
    double last_episode_return() const override { return last_return_; }
    double last_episode_eval_score() const override;

    const GridLayout& layout() const { return layout_; }
    const GridWorldOutcome& last_outcome() const { return outcome_; }
    Cell agent_cell() const { return agent_; }

    // Number of steps on which the random-slip branch was taken; exposed so
    // the seeded slip rate can be checked against its 0.1 probability.
    long slip_count() const { return slip_count_; }
    long total_steps() const { return total_steps_; }

private:
    Observation observe() const;
    void finish(bool reached_goal, double reward);

    EnvSpec spec_;
    GridLayout layout_;
    EpisodeStream stream_;
    Rng episode_rng_{0};
    Cell agent_;
    int steps_ = 0;
    bool active_ = false;
    double episode_return_ = 0.0;
    double last_return_ = 0.0;
    GridWorldOutcome outcome_;
    long slip_count_ = 0;
    long total_steps_ = 0;
};

// Shaped evaluation score in [0,1]: reaching the goal maps to
// 0.5 + 0.5 * remaining/max_steps, anything else to 0.5 * (1 - d/d0) where d
// is the pit-avoiding distance from the final cell to the goal and d0 the
// same distance from the start. A pit final cell is scored through its
// nearest walkable neighbour.
double gridworld_eval_score(const GridWorldOutcome& outcome, const GridLayout& layout,
                            int max_steps = 50);

} // namespace advice::env
