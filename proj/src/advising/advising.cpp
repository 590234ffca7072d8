#include "advice/advising/advising.hpp"

#include <algorithm>
#include <stdexcept>

namespace advice::advising {

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::None: return "none";
        case Mode::EA: return "ea";
        case Mode::RA: return "ra";
        case Mode::UA: return "ua";
        case Mode::SNA: return "sna";
        case Mode::ANA: return "ana";
    }
    return "unknown";
}

Mode mode_from_string(const std::string& name) {
    if (name == "none") return Mode::None;
    if (name == "ea") return Mode::EA;
    if (name == "ra") return Mode::RA;
    if (name == "ua") return Mode::UA;
    if (name == "sna") return Mode::SNA;
    if (name == "ana") return Mode::ANA;
    throw std::invalid_argument("unknown advising mode: " + name);
}

double head_uncertainty(const nn::Dense<float>& head, const nn::Vec<float>& phi,
                        const nn::Vec<float>& q) {
    if (!head.noisy()) return 0.0;
    if (phi.size() != head.in_dim())
        throw std::invalid_argument("head_uncertainty: feature dimension mismatch");
    const int a = nn::argmax_lowest(q);
    const auto sigma_row = head.sigma_w.row(a).transpose().array();
    const double weight_var = (sigma_row.square() * phi.array().square()).sum();
    const double bias_var = static_cast<double>(head.sigma_b[a]) * head.sigma_b[a];
    return weight_var + bias_var;
}

AdvisingStrategy::AdvisingStrategy(const AdvisingConfig& config, const env::EnvSpec& spec,
                                   std::uint64_t seed)
    : cfg_(config), draw_rng_(derive_seed(seed, 20)) {
    if (cfg_.mode == Mode::SNA || cfg_.mode == Mode::ANA)
        rnd_ = std::make_unique<rnd::RndModule>(spec, cfg_.rnd_embedding_dim, cfg_.rnd_learning_rate,
                                                cfg_.normalizer_warmup, derive_seed(seed, 21));
}

void AdvisingStrategy::observe(const env::Observation& obs) {
    if (rnd_) rnd_->observe_for_warmup(obs);
}

AdviceDecision AdvisingStrategy::decide(const env::Observation& obs,
                                        const dqn::StudentAgent& student, BudgetLedger& ledger,
                                        long step) {
    AdviceDecision decision;
    if (cfg_.mode == Mode::None || ledger.remaining <= 0) return decision;

    bool fire = false;
    switch (cfg_.mode) {
        case Mode::EA:
            decision.probability = 1.0;
            fire = true;
            break;
        case Mode::RA:
            decision.probability = cfg_.ra_probability;
            fire = decision.probability > draw_rng_.uniform();
            break;
        case Mode::UA: {
            const auto eval = student.q_values_eval(obs);
            decision.signal = head_uncertainty(student.online().advantage, eval.phi, eval.q);
            decision.probability = std::clamp(decision.signal / cfg_.nu, 0.0, 1.0);
            fire = decision.probability > draw_rng_.uniform();
            break;
        }
        case Mode::SNA:
            decision.signal = rnd_->novelty(obs);
            decision.probability = std::clamp(decision.signal / cfg_.rho, 0.0, 1.0);
            fire = decision.probability > draw_rng_.uniform();
            break;
        case Mode::ANA:
            decision.signal = rnd_->novelty(obs);
            decision.probability = std::clamp(decision.signal / cfg_.eta, 0.0, 1.0);
            fire = decision.probability > draw_rng_.uniform();
            break;
        case Mode::None:
            break;
    }

    if (fire && step > cfg_.teacher_available_from) {
        decision.requested = true;
        if (cfg_.mode == Mode::ANA) rnd_->update_single(obs);
        ledger.on_advice(step);
    }
    return decision;
}

void AdvisingStrategy::on_train_batch(const nn::Mat<float>& states, const BudgetLedger& ledger) {
    if (cfg_.mode != Mode::SNA || ledger.remaining <= 0) return;
    rnd_->update_batch(states);
}

} // namespace advice::advising
