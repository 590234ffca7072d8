#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "advice/rng.hpp"

namespace advice::env {

enum class GameId { GridWorld, MiniBreakout, MiniFreeway };

std::string to_string(GameId id);
GameId game_from_string(const std::string& name);

struct EnvSpec {
    GameId id = GameId::GridWorld;
    int height = 0;
    int width = 0;
    int channels = 0;
    int num_actions = 0;
    int max_episode_steps = 0;

    int obs_cells() const { return height * width * channels; }

    static EnvSpec for_game(GameId id);
};

// Dense binary tensor, channel-major: data[(c*height + row)*width + col].
struct Observation {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<float> data;

    Observation() = default;
    Observation(int h, int w, int c)
        : height(h), width(w), channels(c), data(static_cast<std::size_t>(h) * w * c, 0.0f) {}

    float& at(int c, int r, int col) { return data[(static_cast<std::size_t>(c) * height + r) * width + col]; }
    float at(int c, int r, int col) const { return data[(static_cast<std::size_t>(c) * height + r) * width + col]; }
    int cells() const { return height * width * channels; }
};

struct StepResult {
    Observation observation;
    double reward = 0.0;
    bool terminal = false;
    int steps_elapsed = 0;
};

// Seeds one RNG per episode from (stream_seed, episode_index) so that the
// episode event sequence is independent of how agents behave between resets.
class EpisodeStream {
public:
    explicit EpisodeStream(std::uint64_t stream_seed, std::uint64_t start_episode = 0)
        : stream_seed_(stream_seed), cursor_(start_episode) {}

    std::uint64_t next_episode_seed() { return derive_seed(stream_seed_, cursor_++); }
    std::uint64_t cursor() const { return cursor_; }
    std::uint64_t stream_seed() const { return stream_seed_; }
    void seek(std::uint64_t episode_index) { cursor_ = episode_index; }

private:
    std::uint64_t stream_seed_;
    std::uint64_t cursor_;
};

} // namespace advice::env
