#pragma once

#include <map>
#include <memory>
#include <string>

#include "advice/dqn/agent.hpp"
#include "advice/env/gridworld.hpp"

namespace advice::teacher {

// Fixed advising policy; pure function of the observation.
class TeacherPolicy {
public:
    virtual ~TeacherPolicy() = default;
    virtual int advise(const env::Observation& obs) const = 0;
};

// First move of a pit-avoiding BFS shortest path from the agent cell to the
// goal; ties broken in action order up, down, left, right. An unreachable
// cell yields action 0 with a warning on stderr.
class ShortestPathTeacher final : public TeacherPolicy {
public:
    explicit ShortestPathTeacher(env::GridLayout layout = env::GridLayout::canonical());

    int advise(const env::Observation& obs) const override;
    int advise_from(env::Cell cell) const;
    const env::GridLayout& layout() const { return layout_; }

private:
    env::GridLayout layout_;
    std::vector<int> dist_to_goal_;
};

// Ordered key/value manifest stored in the checkpoint's text header.
struct CheckpointManifest {
    std::vector<std::pair<std::string, std::string>> entries;

    void set(const std::string& key, const std::string& value);
    std::string get(const std::string& key) const; // empty when missing
};

// Checkpoint layout: a "key: value" text header terminated by "---", then
// one record per tensor: u32 name length, name bytes, u64 element count and
// little-endian f32 data.
void save_checkpoint(const std::string& path, const CheckpointManifest& manifest,
                     const nn::QNetwork<float>& net);
std::pair<CheckpointManifest, nn::QNetwork<float>> load_checkpoint(const std::string& path);

// Greedy zero-noise policy of a checkpointed Q-network.
class CheckpointTeacher final : public TeacherPolicy {
public:
    explicit CheckpointTeacher(const std::string& path);

    int advise(const env::Observation& obs) const override;
    const CheckpointManifest& manifest() const { return manifest_; }
    const nn::QNetwork<float>& net() const { return net_; }
    env::GameId game() const;

private:
    CheckpointManifest manifest_;
    nn::QNetwork<float> net_;
};

std::unique_ptr<TeacherPolicy> make_teacher(const std::string& spec_string,
                                            const env::GridLayout& layout);

struct PretrainResult {
    std::string path;
    double final_eval_score = 0.0;
    long steps = 0;
};

// Trains a plain (non-noisy) epsilon-greedy DQN and saves the checkpoint with
// its final evaluation score in the manifest. Epsilon anneals 1.0 -> 0.01
// over the first 10% of steps.
PretrainResult pretrain_teacher(env::GameId game, long steps, std::uint64_t seed,
                                const std::string& out_path, bool verbose = false);

} // namespace advice::teacher
