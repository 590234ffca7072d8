#include "advice/dqn/replay.hpp"

#include <stdexcept>

namespace advice::dqn {

ReplayMemory::ReplayMemory(int capacity, int obs_cells)
    : capacity_(capacity), obs_cells_(obs_cells), words_per_obs_((obs_cells + 63) / 64) {
    if (capacity <= 0) throw std::invalid_argument("ReplayMemory: capacity must be positive");
    states_.resize(static_cast<std::size_t>(capacity_) * words_per_obs_);
    next_states_.resize(static_cast<std::size_t>(capacity_) * words_per_obs_);
    actions_.resize(capacity_);
    rewards_.resize(capacity_);
    terminals_.resize(capacity_);
}

void ReplayMemory::pack(const std::vector<float>& data, std::uint64_t* words) const {
    for (int w = 0; w < words_per_obs_; ++w) words[w] = 0;
    for (int i = 0; i < obs_cells_; ++i)
        if (data[i] != 0.0f) words[i >> 6] |= (1ULL << (i & 63));
}

void ReplayMemory::unpack_into(const std::uint64_t* words, float* out) const {
    for (int i = 0; i < obs_cells_; ++i)
        out[i] = (words[i >> 6] >> (i & 63)) & 1ULL ? 1.0f : 0.0f;
}

void ReplayMemory::push(const Transition& t) {
    if (t.state.cells() != obs_cells_ || t.next_state.cells() != obs_cells_)
        throw std::invalid_argument("ReplayMemory: observation size mismatch");
    obs_h_ = t.state.height;
    obs_w_ = t.state.width;
    obs_c_ = t.state.channels;
    pack(t.state.data, states_.data() + static_cast<std::size_t>(cursor_) * words_per_obs_);
    pack(t.next_state.data, next_states_.data() + static_cast<std::size_t>(cursor_) * words_per_obs_);
    actions_[cursor_] = t.action;
    rewards_[cursor_] = t.reward;
    terminals_[cursor_] = t.terminal ? 1 : 0;
    cursor_ = (cursor_ + 1) % capacity_;
    if (size_ < capacity_) ++size_;
}

void ReplayMemory::sample(Rng& rng, int k, Batch& out) const {
    if (size_ == 0) throw std::logic_error("ReplayMemory: sample from empty memory");
    out.states.resize(obs_cells_, k);
    out.next_states.resize(obs_cells_, k);
    out.actions.resize(k);
    out.rewards.resize(k);
    out.terminals.resize(k);
    for (int j = 0; j < k; ++j) {
        const int idx = rng.uniform_int(size_);
        unpack_into(states_.data() + static_cast<std::size_t>(idx) * words_per_obs_,
                    out.states.data() + static_cast<std::size_t>(j) * obs_cells_);
        unpack_into(next_states_.data() + static_cast<std::size_t>(idx) * words_per_obs_,
                    out.next_states.data() + static_cast<std::size_t>(j) * obs_cells_);
        out.actions[j] = actions_[idx];
        out.rewards[j] = rewards_[idx];
        out.terminals[j] = terminals_[idx];
    }
}

Transition ReplayMemory::transition_at(int i) const {
    if (i < 0 || i >= size_) throw std::out_of_range("ReplayMemory: index out of range");
    // Oldest element sits at the cursor once the buffer has wrapped.
    const int idx = size_ < capacity_ ? i : (cursor_ + i) % capacity_;
    Transition t;
    t.state = env::Observation(obs_h_, obs_w_, obs_c_);
    t.next_state = env::Observation(obs_h_, obs_w_, obs_c_);
    unpack_into(states_.data() + static_cast<std::size_t>(idx) * words_per_obs_, t.state.data.data());
    unpack_into(next_states_.data() + static_cast<std::size_t>(idx) * words_per_obs_, t.next_state.data.data());
    t.action = actions_[idx];
    t.reward = rewards_[idx];
    t.terminal = terminals_[idx] != 0;
    return t;
}

} // namespace advice::dqn
