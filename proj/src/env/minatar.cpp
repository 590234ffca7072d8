#include "advice/env/minatar.hpp"

#include <stdexcept>

namespace advice::env {

namespace {
constexpr int kSize = 10;

void check_step_preconditions(bool active, int action, const EnvSpec& spec, const char* who) {
    if (!active) throw std::logic_error(std::string(who) + ": no active episode (call reset)");
    if (action < 0 || action >= spec.num_actions)
        throw std::invalid_argument(std::string(who) + ": action out of range");
}
} // namespace

// ---------------------------------------------------------------------------
// MiniBreakout

MiniBreakout::MiniBreakout(EpisodeStream stream) : stream_(stream) {
    spec_ = EnvSpec::for_game(GameId::MiniBreakout);
}

void MiniBreakout::spawn_ball() {
    ball_row_ = 4;
    ball_col_ = episode_rng_.uniform_int(kSize);
    dir_row_ = 1;
    dir_col_ = episode_rng_.uniform_int(2) == 0 ? -1 : 1;
    if (ball_col_ == 0) dir_col_ = 1;
    if (ball_col_ == kSize - 1) dir_col_ = -1;
    prev_ball_row_ = ball_row_;
    prev_ball_col_ = ball_col_;
}

Observation MiniBreakout::reset() {
    episode_rng_.reseed(stream_.next_episode_seed());
    paddle_col_ = kSize / 2;
    for (auto& row : bricks_) row.fill(false);
    for (int r = 1; r <= 3; ++r) bricks_[r].fill(true);
    spawn_ball();
    steps_ = 0;
    episode_return_ = 0.0;
    active_ = true;
    return observe();
}

Observation MiniBreakout::observe() const {
    Observation obs(spec_.height, spec_.width, spec_.channels);
    obs.at(0, kSize - 1, paddle_col_) = 1.0f;
    obs.at(1, ball_row_, ball_col_) = 1.0f;
    obs.at(2, prev_ball_row_, prev_ball_col_) = 1.0f;
    for (int r = 0; r < kSize; ++r)
        for (int c = 0; c < kSize; ++c)
            if (bricks_[r][c]) obs.at(3, r, c) = 1.0f;
    return obs;
}

void MiniBreakout::finish() {
    active_ = false;
    last_return_ = episode_return_;
}

StepResult MiniBreakout::step(int action) {
    check_step_preconditions(active_, action, spec_, "MiniBreakout::step");
    ++steps_;

    if (action == kMoveLeft) paddle_col_ = std::max(0, paddle_col_ - 1);
    if (action == kMoveRight) paddle_col_ = std::min(kSize - 1, paddle_col_ + 1);

    StepResult result;
    result.steps_elapsed = steps_;

    prev_ball_row_ = ball_row_;
    prev_ball_col_ = ball_col_;

    int next_col = ball_col_ + dir_col_;
    if (next_col < 0 || next_col >= kSize) {
        dir_col_ = -dir_col_;
        next_col = ball_col_ + dir_col_;
    }
    int next_row = ball_row_ + dir_row_;
    if (next_row < 0) {
        dir_row_ = 1;
        next_row = ball_row_ + dir_row_;
    }

    bool lost = false;
    if (bricks_[next_row][next_col]) {
        bricks_[next_row][next_col] = false;
        result.reward = 1.0;
        dir_row_ = -dir_row_;
        ball_col_ = next_col; // ball bounces back off the brick row
        bool any = false;
        for (const auto& row : bricks_)
            for (bool b : row) any = any || b;
        if (!any)
            for (int r = 1; r <= 3; ++r) bricks_[r].fill(true);
    } else if (next_row == kSize - 1) {
        ball_row_ = next_row;
        ball_col_ = next_col;
        if (next_col == paddle_col_) {
            dir_row_ = -1;
        } else {
            lost = true;
        }
    } else {
        ball_row_ = next_row;
        ball_col_ = next_col;
    }

    episode_return_ += result.reward;
    if (lost || steps_ >= spec_.max_episode_steps) {
        result.terminal = true;
        finish();
    }
    result.observation = observe();
    return result;
}

// ---------------------------------------------------------------------------
// MiniFreeway

MiniFreeway::MiniFreeway(EpisodeStream stream) : stream_(stream) {
    spec_ = EnvSpec::for_game(GameId::MiniFreeway);
}

void MiniFreeway::randomize_cars() {
    for (auto& car : cars_) {
        car.col = episode_rng_.uniform_int(kSize);
        car.dir = episode_rng_.uniform_int(2) == 0 ? -1 : 1;
        car.speed = 1 + episode_rng_.uniform_int(5);
        car.phase = 0;
    }
}

Observation MiniFreeway::reset() {
    episode_rng_.reseed(stream_.next_episode_seed());
    chicken_row_ = kSize - 1;
    randomize_cars();
    steps_ = 0;
    episode_return_ = 0.0;
    active_ = true;
    return observe();
}

Observation MiniFreeway::observe() const {
    Observation obs(spec_.height, spec_.width, spec_.channels);
    obs.at(0, chicken_row_, kChickenCol) = 1.0f;
    for (int lane = 0; lane < 8; ++lane) {
        const Car& car = cars_[lane];
        const int row = lane + 1;
        obs.at(1, row, car.col) = 1.0f;
        const int trail = ((car.col - car.dir) % kSize + kSize) % kSize;
        obs.at(2 + car.speed - 1, row, trail) = 1.0f;
    }
    return obs;
}

void MiniFreeway::finish() {
    active_ = false;
    last_return_ = episode_return_;
}

StepResult MiniFreeway::step(int action) {
    check_step_preconditions(active_, action, spec_, "MiniFreeway::step");
    ++steps_;

    StepResult result;
    result.steps_elapsed = steps_;

    if (action == kMoveUp) chicken_row_ = std::max(0, chicken_row_ - 1);
    if (action == kMoveDown) chicken_row_ = std::min(kSize - 1, chicken_row_ + 1);

    bool scored = false;
    if (chicken_row_ == 0) {
        result.reward = 1.0;
        chicken_row_ = kSize - 1;
        randomize_cars();
        scored = true;
    }

    for (auto& car : cars_) {
        if (++car.phase >= car.speed) {
            car.phase = 0;
            car.col = ((car.col + car.dir) % kSize + kSize) % kSize;
        }
    }

    if (!scored && chicken_row_ >= 1 && chicken_row_ <= 8 &&
        cars_[chicken_row_ - 1].col == kChickenCol) {
        chicken_row_ = kSize - 1; // hit: sent back to the start
    }

    episode_return_ += result.reward;
    if (steps_ >= spec_.max_episode_steps) {
        result.terminal = true;
        finish();
    }
    result.observation = observe();
    return result;
}

} // namespace advice::env
