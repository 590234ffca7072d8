#pragma once

#include <cstdint>
#include <vector>

#include "advice/env/types.hpp"
#include "advice/nn/core.hpp"

namespace advice::dqn {

struct Transition {
    env::Observation state;
    int action = 0;
    float reward = 0.0f;
    env::Observation next_state;
    bool terminal = false;
};

struct Batch {
    nn::Mat<float> states;      // obs_cells x k
    nn::Mat<float> next_states; // obs_cells x k
    std::vector<int> actions;
    std::vector<float> rewards;
    std::vector<std::uint8_t> terminals;
};

// FIFO ring buffer with uniform sampling. Observations are binary, so they
// are stored bit-packed (a MinAtar-profile buffer stays in the tens of MB).
class ReplayMemory {
public:
    ReplayMemory(int capacity, int obs_cells);

    void push(const Transition& t);
    int size() const { return size_; }
    int capacity() const { return capacity_; }
    int obs_cells() const { return obs_cells_; }

    void sample(Rng& rng, int k, Batch& out) const;

    // Unpacks the i-th oldest transition; test/debug use.
    Transition transition_at(int i) const;

private:
    void pack(const std::vector<float>& data, std::uint64_t* words) const;
    void unpack_into(const std::uint64_t* words, float* out) const;

    int capacity_;
    int obs_cells_;
    int words_per_obs_;
    int size_ = 0;
    int cursor_ = 0;
    std::vector<std::uint64_t> states_;
    std::vector<std::uint64_t> next_states_;
    std::vector<int> actions_;
    std::vector<float> rewards_;
    std::vector<std::uint8_t> terminals_;
    int obs_h_ = 0, obs_w_ = 0, obs_c_ = 0;
};

} // namespace advice::dqn
