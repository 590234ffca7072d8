#include "advice/harness/session.hpp"

#include <chrono>
#include <stdexcept>

namespace advice::harness {

SessionConfig SessionConfig::defaults_for(env::GameId game) {
    SessionConfig config;
    config.game = game;
    if (game == env::GameId::GridWorld) {
        config.session_steps = 100000;
        config.eval_period = 100;
        config.budget = 5000;
        config.hyper = dqn::DqnHyperparams::gridworld_profile();
        config.advising.normalizer_warmup = 1000;
        config.teacher = "shortest-path";
    } else {
        config.session_steps = 200000;
        config.eval_period = 1000;
        config.budget = 50000;
        config.hyper = dqn::DqnHyperparams::minatar_profile();
        config.advising.normalizer_warmup = 5000;
        config.teacher = "none";
    }
    return config;
}

SessionRecord run_session(const SessionConfig& config) {
    const auto t_begin = std::chrono::steady_clock::now();

    const env::GridLayout layout = config.layout_ascii.empty()
                                       ? env::GridLayout::canonical()
                                       : env::GridLayout::parse(config.layout_ascii);
    env::EnvSpec spec = env::EnvSpec::for_game(config.game);
    std::unique_ptr<env::Environment> environment =
        config.game == env::GameId::GridWorld
            ? env::make_gridworld(env::EpisodeStream(config.env_stream_seed), layout)
            : env::make_env(config.game, env::EpisodeStream(config.env_stream_seed));
    spec = environment->spec();

    std::unique_ptr<teacher::TeacherPolicy> teacher_policy =
        teacher::make_teacher(config.teacher, layout);
    if (config.advising.mode != advising::Mode::None && teacher_policy == nullptr)
        throw std::invalid_argument("run_session: advising mode needs a teacher");
    if (const auto* ckpt = dynamic_cast<const teacher::CheckpointTeacher*>(teacher_policy.get());
        ckpt != nullptr && ckpt->game() != config.game)
        throw std::invalid_argument("run_session: teacher checkpoint is for " +
                                    env::to_string(ckpt->game()) + ", not " +
                                    env::to_string(config.game));

    dqn::StudentAgent student(spec, config.hyper, derive_seed(config.experiment_seed, 100));
    advising::AdvisingStrategy strategy(config.advising, spec,
                                        derive_seed(config.experiment_seed, 200));
    advising::BudgetLedger ledger(config.budget);

    SessionRecord record;
    record.budget = config.budget;
    record.cumulative.resize(config.session_steps);
    if (config.record_decisions) record.decisions.reserve(config.session_steps);

    const env::GridLayout* eval_layout = config.game == env::GameId::GridWorld ? &layout : nullptr;

    env::Observation obs = environment->reset();
    for (long t = 1; t <= config.session_steps; ++t) {
        strategy.observe(obs);
        const advising::AdviceDecision decision = strategy.decide(obs, student, ledger, t);
        const int action = decision.requested ? teacher_policy->advise(obs) : student.act(obs);
        const env::StepResult result = environment->step(action);
        student.observe({obs, action, static_cast<float>(result.reward), result.observation,
                         result.terminal});
        const std::optional<float> loss = student.train_tick();
        if (loss.has_value()) strategy.on_train_batch(student.last_batch_states(), ledger);

        record.cumulative[t - 1] = ledger.cumulative;
        if (config.record_decisions)
            record.decisions.push_back(
                {t, decision.signal, decision.probability, decision.requested, ledger.remaining});

        obs = result.terminal ? environment->reset() : result.observation;

        if (t % config.eval_period == 0) {
            const long eval_index = t / config.eval_period - 1;
            const double score = evaluate_greedy(student, spec, eval_layout,
                                                 config.eval_stream_seed, eval_index,
                                                 config.eval_episodes);
            record.eval_steps.push_back(t);
            record.eval_scores.push_back(score);
        }
    }

    record.window_size = ledger.window_size;
    record.window_counts = ledger.window_counts;
    record.window_counts.resize(
        static_cast<std::size_t>((config.session_steps + ledger.window_size - 1) / ledger.window_size),
        0);
    record.advices_total = ledger.cumulative;
    record.auc = compute_auc(record.eval_scores);
    record.final_score = compute_final_score(record.eval_scores, &record.short_curve);
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    return record;
}

} // namespace advice::harness
