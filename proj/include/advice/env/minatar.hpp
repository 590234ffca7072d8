#pragma once

#include <array>

#include "advice/env/environment.hpp"

namespace advice::env {

// Shared 6-action space of the minimal games.
enum MiniAction : int { kNoop = 0, kMoveLeft = 1, kMoveUp = 2, kMoveRight = 3, kMoveDown = 4, kFire = 5 };

// Paddle on the bottom row, diagonally travelling ball, three rows of bricks
// that respawn once cleared. Channels: paddle, ball, ball trail, bricks.
class MiniBreakout final : public Environment {
public:
    explicit MiniBreakout(EpisodeStream stream);

    const EnvSpec& spec() const override { return spec_; }
    Observation reset() override;
    StepResult step(int action) override;
    bool episode_active() const override { return active_; }
    double last_episode_return() const override { return last_return_; }
    double last_episode_eval_score() const override { return last_return_; }

private:
    Observation observe() const;
    void spawn_ball();
    void finish();

    EnvSpec spec_;
    EpisodeStream stream_;
    Rng episode_rng_{0};
    int paddle_col_ = 0;
    int ball_row_ = 0, ball_col_ = 0;
    int prev_ball_row_ = 0, prev_ball_col_ = 0;
    int dir_row_ = 1, dir_col_ = 1;
    std::array<std::array<bool, 10>, 10> bricks_{};
    int steps_ = 0;
    bool active_ = false;
    double episode_return_ = 0.0;
    double last_return_ = 0.0;
};

// Chicken crossing eight lanes of wrapping cars. Car speed category s in 1..5
// means one cell of movement every s ticks; each category owns a trail
// channel so speed and direction are observable. Channels: chicken, car,
// trail x5.
class MiniFreeway final : public Environment {
public:
    explicit MiniFreeway(EpisodeStream stream);

    const EnvSpec& spec() const override { return spec_; }
    Observation reset() override;
    StepResult step(int action) override;
    bool episode_active() const override { return active_; }
    double last_episode_return() const override { return last_return_; }
    double last_episode_eval_score() const override { return last_return_; }

private:
    struct Car {
        int col = 0;
        int dir = 1;   // +1 right, -1 left
        int speed = 1; // ticks per move
        int phase = 0;
    };

    Observation observe() const;
    void randomize_cars();
    void finish();

    EnvSpec spec_;
    EpisodeStream stream_;
    Rng episode_rng_{0};
    int chicken_row_ = 9;
    std::array<Car, 8> cars_{}; // lanes are rows 1..8
    int steps_ = 0;
    bool active_ = false;
    double episode_return_ = 0.0;
    double last_return_ = 0.0;

    static constexpr int kChickenCol = 4;
};

} // namespace advice::env
