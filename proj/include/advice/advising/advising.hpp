#pragma once

#include <memory>
#include <string>

#include "advice/dqn/agent.hpp"
#include "advice/rnd/rnd.hpp"

namespace advice::advising {

enum class Mode { None, EA, RA, UA, SNA, ANA };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

struct AdvisingConfig {
    Mode mode = Mode::None;
    double eta = 0.001;   // ANA novelty threshold
    double nu = 0.001;    // UA uncertainty threshold
    double rho = 0.0001;  // SNA novelty threshold
    double ra_probability = 0.5;
    long teacher_available_from = 0; // requests permitted from step teacher_available_from + 1
    int rnd_embedding_dim = rnd::RndModule::kDefaultEmbeddingDim;
    // 2e-4 is the smallest rate at which 100 single-sample updates reliably
    // remove >= 99% of a state's novelty at these observation sizes.
    float rnd_learning_rate = 2e-4f;
    int normalizer_warmup = 1000;
};

// Tracks the remaining budget plus per-100-step window and cumulative
// counters; decremented exactly once per executed advice.
struct BudgetLedger {
    long initial = 0;
    long remaining = 0;
    long cumulative = 0;
    int window_size = 100;
    std::vector<long> window_counts;

    explicit BudgetLedger(long budget, int window = 100)
        : initial(budget), remaining(budget), window_size(window) {}

    void on_advice(long step) {
        if (remaining <= 0) throw std::logic_error("BudgetLedger: overdrawn budget");
        --remaining;
        ++cumulative;
        const std::size_t w = static_cast<std::size_t>((step - 1) / window_size);
        if (window_counts.size() <= w) window_counts.resize(w + 1, 0);
        ++window_counts[w];
    }
};

struct AdviceDecision {
    bool requested = false;
    double probability = 0.0;
    double signal = 0.0; // novelty (SNA/ANA) or uncertainty (UA); 0 otherwise
};

// Predictive variance of the greedy action of a noisy output head:
// U(s) = phi^T diag(sigma_{w_a}^2) phi + sigma_{b_a}^2 with a = argmax q,
// ties to the lowest index. Plain heads have zero uncertainty.
double head_uncertainty(const nn::Dense<float>& head, const nn::Vec<float>& phi,
                        const nn::Vec<float>& q);

// One advising mode's mutable state: budget draws, plus an RND module for
// SNA (batch-coupled to the student's updates) and ANA (updated only on
// executed advice, per the advice-novelty rule).
class AdvisingStrategy {
public:
    AdvisingStrategy(const AdvisingConfig& config, const env::EnvSpec& spec, std::uint64_t seed);

    Mode mode() const { return cfg_.mode; }
    const AdvisingConfig& config() const { return cfg_; }

    // Normalizer warmup: feed every observation the agent decides on.
    void observe(const env::Observation& obs);

    // Called once per environment step before action selection.
    AdviceDecision decide(const env::Observation& obs, const dqn::StudentAgent& student,
                          BudgetLedger& ledger, long step);

    // Called by the session loop after every student gradient update with the
    // exact minibatch states; SNA trains its RND module on them while budget
    // remains, every other mode ignores the call.
    void on_train_batch(const nn::Mat<float>& states, const BudgetLedger& ledger);

    const rnd::RndModule* rnd_module() const { return rnd_.get(); }
    rnd::RndModule* rnd_module() { return rnd_.get(); }

private:
    AdvisingConfig cfg_;
    std::unique_ptr<rnd::RndModule> rnd_;
    Rng draw_rng_;
};

} // namespace advice::advising
