#include "advice/env/gridworld.hpp"

#include <algorithm>
#include <stdexcept>

namespace advice::env {

namespace {
constexpr double kSlipProbability = 0.1;
constexpr int kAgentChannel = 0;
constexpr int kGoalChannel = 1;
constexpr int kPitChannel = 2;

Cell moved(Cell from, int action) {
    switch (action) {
        case kUp: return {from.row - 1, from.col};
        case kDown: return {from.row + 1, from.col};
        case kLeft: return {from.row, from.col - 1};
        case kRight: return {from.row, from.col + 1};
        default: return from;
    }
}
} // namespace

GridWorld::GridWorld(EpisodeStream stream, GridLayout layout)
    : layout_(std::move(layout)), stream_(stream) {
    spec_ = EnvSpec::for_game(GameId::GridWorld);
    spec_.height = layout_.rows();
    spec_.width = layout_.cols();
    agent_ = layout_.start();
}

Observation GridWorld::observe() const {
    Observation obs(spec_.height, spec_.width, spec_.channels);
    obs.at(kAgentChannel, agent_.row, agent_.col) = 1.0f;
    for (int r = 0; r < spec_.height; ++r) {
        for (int c = 0; c < spec_.width; ++c) {
            const Tile t = layout_.tile({r, c});
            if (t == Tile::Goal) obs.at(kGoalChannel, r, c) = 1.0f;
            if (t == Tile::Pit) obs.at(kPitChannel, r, c) = 1.0f;
        }
    }
    return obs;
}

Observation GridWorld::reset() {
    episode_rng_.reseed(stream_.next_episode_seed());
    agent_ = layout_.start();
    steps_ = 0;
    episode_return_ = 0.0;
    active_ = true;
    return observe();
}

void GridWorld::finish(bool reached_goal, double reward) {
    active_ = false;
    episode_return_ += reward;
    last_return_ = episode_return_;
    outcome_ = GridWorldOutcome{reached_goal, steps_, agent_};
}

StepResult GridWorld::step(int action) {
    if (!active_) throw std::logic_error("GridWorld::step: no active episode (call reset)");
    if (action < 0 || action >= spec_.num_actions)
        throw std::invalid_argument("GridWorld::step: action out of range");

    ++steps_;
    ++total_steps_;

    const bool slipped = episode_rng_.uniform() < kSlipProbability;
    int executed = action;
    if (slipped) {
        ++slip_count_;
        executed = episode_rng_.uniform_int(spec_.num_actions);
    }

    Cell target = moved(agent_, executed);
    if (!layout_.in_bounds(target)) {
        target = agent_; // edge moves hold in place
    } else if (layout_.is_pit(target) && slipped) {
        target = agent_; // slipped moves never enter a pit
    }

    StepResult result;
    result.steps_elapsed = steps_;

    if (layout_.in_bounds(target) && layout_.tile(target) == Tile::Goal) {
        agent_ = target;
        result.reward = 1.0;
        result.terminal = true;
        finish(true, result.reward);
    } else if (layout_.in_bounds(target) && layout_.is_pit(target)) {
        agent_ = target;
        result.reward = 0.0;
        result.terminal = true;
        finish(false, result.reward);
    } else {
        agent_ = target;
        result.reward = 0.0;
        if (steps_ >= spec_.max_episode_steps) {
            result.terminal = true;
            finish(false, result.reward);
        } else {
            episode_return_ += result.reward;
        }
    }

    result.observation = observe();
    return result;
}

double GridWorld::last_episode_eval_score() const {
    return gridworld_eval_score(outcome_, layout_, spec_.max_episode_steps);
}

double gridworld_eval_score(const GridWorldOutcome& outcome, const GridLayout& layout,
                            int max_steps) {
    if (outcome.reached_goal) {
        const double remaining = std::max(0, max_steps - outcome.steps_used);
        return 0.5 + 0.5 * remaining / max_steps;
    }
    const auto to_goal = layout.distances_from(layout.goal());
    const auto dist_of = [&](Cell c) { return to_goal[static_cast<std::size_t>(c.row) * layout.cols() + c.col]; };
    const int d0 = dist_of(layout.start());
    int d = 0;
    if (layout.is_pit(outcome.final_cell)) {
        // Ended inside a pit: score through the nearest walkable neighbour.
        int best = kUnreachable;
        const int dr[4] = {-1, 1, 0, 0};
        const int dc[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
            Cell n{outcome.final_cell.row + dr[k], outcome.final_cell.col + dc[k]};
            if (!layout.is_walkable(n)) continue;
            const int dn = dist_of(n);
            if (dn == kUnreachable) continue;
            if (best == kUnreachable || dn + 1 < best) best = dn + 1;
        }
        d = (best == kUnreachable) ? d0 : best;
    } else {
        d = dist_of(outcome.final_cell);
        if (d == kUnreachable) d = d0;
    }
    if (d0 <= 0) return 0.0;
    const double score = 0.5 * (1.0 - static_cast<double>(d) / d0);
    return std::clamp(score, 0.0, 1.0);
}

} // namespace advice::env
