#pragma once

#include <string>
#include <vector>

#include "advice/advising/advising.hpp"
#include "advice/harness/evaluate.hpp"
#include "advice/harness/metrics.hpp"
#include "advice/teacher/teacher.hpp"

namespace advice::harness {

struct SessionConfig {
    env::GameId game = env::GameId::GridWorld;
    std::string layout_ascii;              // empty -> canonical GridWorld layout
    advising::AdvisingConfig advising;
    long budget = 5000;
    long session_steps = 100000;
    long eval_period = 100;
    int eval_episodes = 5;
    std::uint64_t experiment_seed = 1;     // agent internals: init, noise, replay, advice draws
    std::uint64_t env_stream_seed = 7;     // training episode events
    std::uint64_t eval_stream_seed = kEvalStreamSeed;
    dqn::DqnHyperparams hyper;
    std::string teacher = "shortest-path"; // "shortest-path", checkpoint path, or "none"
    std::string out_dir;                   // empty -> no files written
    bool record_decisions = true;

    // GridWorld: 100K-step sessions with evaluations every 100 steps; the
    // minimal games default to desk-scale 200K-step sessions evaluated every
    // 1000 steps (full-scale 1.5M is a flag away).
    static SessionConfig defaults_for(env::GameId game);
};

struct DecisionRow {
    long step = 0;
    double signal = 0.0;
    double probability = 0.0;
    bool requested = false;
    long remaining = 0;
};

struct SessionRecord {
    std::vector<long> eval_steps;
    std::vector<double> eval_scores;
    std::vector<long> window_counts;
    int window_size = 100;
    std::vector<long> cumulative; // cumulative advices after each step
    std::vector<DecisionRow> decisions;
    long advices_total = 0;
    long budget = 0;
    double auc = 0.0;
    double final_score = 0.0;
    bool short_curve = false;
    double wall_seconds = 0.0;
};

// Runs the full learning session: per step an advising decision, action
// (teacher's or the student's), environment step, replay insert, train tick
// and the SNA batch hook, with periodic frozen-policy evaluation.
SessionRecord run_session(const SessionConfig& config);

} // namespace advice::harness
