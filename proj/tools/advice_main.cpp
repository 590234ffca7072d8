#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "advice/harness/outputs.hpp"

namespace {

using namespace advice;

struct RunOptions {
    std::string env = "gridworld";
    std::string mode = "none";
    long budget = -1;
    int scenario = 1;
    long teacher_available_from = -1;
    long steps = -1;
    long eval_period = -1;
    int eval_episodes = -1;
    std::uint64_t seed = 1;
    std::uint64_t env_seed = 7;
    double eta = -1.0, nu = -1.0, rho = -1.0;
    double rnd_lr = -1.0;
    std::string teacher;
    std::string layout_file;
    std::string out;
    bool no_decisions = false;
};

harness::SessionConfig build_config(const RunOptions& opt) {
    const env::GameId game = env::game_from_string(opt.env);
    harness::SessionConfig config = harness::SessionConfig::defaults_for(game);
    config.advising.mode = advising::mode_from_string(opt.mode);
    if (opt.budget >= 0) config.budget = opt.budget;
    if (opt.steps > 0) config.session_steps = opt.steps;
    if (opt.eval_period > 0) config.eval_period = opt.eval_period;
    if (opt.eval_episodes > 0) config.eval_episodes = opt.eval_episodes;
    config.experiment_seed = opt.seed;
    config.env_stream_seed = opt.env_seed;
    if (opt.scenario == 2) config.advising.teacher_available_from = 25000;
    if (opt.teacher_available_from >= 0)
        config.advising.teacher_available_from = opt.teacher_available_from;
    if (opt.eta > 0) config.advising.eta = opt.eta;
    if (opt.nu > 0) config.advising.nu = opt.nu;
    if (opt.rho > 0) config.advising.rho = opt.rho;
    if (opt.rnd_lr > 0) config.advising.rnd_learning_rate = static_cast<float>(opt.rnd_lr);
    if (!opt.teacher.empty()) config.teacher = opt.teacher;
    if (!opt.layout_file.empty())
        config.layout_ascii = env::GridLayout::load_file(opt.layout_file).to_ascii();
    config.out_dir = opt.out;
    config.record_decisions = !opt.no_decisions;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Action-advising experiment harness"};
    app.require_subcommand(1);

    // --- pretrain ---
    auto* pretrain = app.add_subcommand("pretrain", "Train an epsilon-greedy DQN teacher");
    std::string pre_env = "minibreakout";
    long pre_steps = 200000;
    std::uint64_t pre_seed = 1;
    std::string pre_out = "teacher.ckpt";
    bool pre_quiet = false;
    pretrain->add_option("--env", pre_env, "gridworld|minibreakout|minifreeway");
    pretrain->add_option("--steps", pre_steps, "training steps");
    pretrain->add_option("--seed", pre_seed, "seed");
    pretrain->add_option("--out", pre_out, "checkpoint path");
    pretrain->add_flag("--quiet", pre_quiet, "suppress progress output");

    // --- run ---
    auto* run = app.add_subcommand("run", "Run one learning session");
    RunOptions opt;
    run->set_config("--config", "", "key=value config file (CLI flags override it)");
    run->add_option("--env", opt.env, "gridworld|minibreakout|minifreeway");
    run->add_option("--mode", opt.mode, "none|ea|ra|ua|sna|ana");
    run->add_option("--budget", opt.budget, "advice budget b");
    run->add_option("--scenario", opt.scenario, "1: teacher from start, 2: teacher from step 25000")
        ->check(CLI::IsMember({1, 2}));
    run->add_option("--teacher-available-from", opt.teacher_available_from,
                    "first step after which requests are allowed (overrides --scenario)");
    run->add_option("--steps", opt.steps, "session length");
    run->add_option("--eval-period", opt.eval_period, "steps between evaluations");
    run->add_option("--eval-episodes", opt.eval_episodes, "episodes per evaluation");
    run->add_option("--seed", opt.seed, "experiment seed (agent internals)");
    run->add_option("--env-seed", opt.env_seed, "environment episode stream seed");
    run->add_option("--eta", opt.eta, "ANA novelty threshold");
    run->add_option("--nu", opt.nu, "UA uncertainty threshold");
    run->add_option("--rho", opt.rho, "SNA novelty threshold");
    run->add_option("--rnd-lr", opt.rnd_lr, "RND predictor learning rate");
    run->add_option("--teacher", opt.teacher, "shortest-path | checkpoint path | none");
    run->add_option("--layout", opt.layout_file, "GridWorld layout file (ASCII)");
    run->add_option("--out", opt.out, "output directory for CSVs");
    run->add_flag("--no-decisions", opt.no_decisions, "skip the per-step decision log");

    // --- aggregate ---
    auto* aggregate = app.add_subcommand("aggregate", "Summarize runs into a report CSV");
    std::string agg_runs = "runs";
    std::string agg_out = "report.csv";
    aggregate->add_option("--runs", agg_runs, "directory containing run directories");
    aggregate->add_option("--out", agg_out, "report CSV path");

    // --- plot ---
    auto* plot = app.add_subcommand("plot", "Render SVG plots from runs");
    std::string plot_runs = "runs";
    std::string plot_out = "plots";
    int smooth = 0;
    plot->add_option("--runs", plot_runs, "directory containing run directories");
    plot->add_option("--out", plot_out, "output directory for SVGs");
    plot->add_option("--smooth", smooth, "moving average window (0 = 5% of points)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pretrain->parsed()) {
            const auto result = teacher::pretrain_teacher(env::game_from_string(pre_env), pre_steps,
                                                          pre_seed, pre_out, !pre_quiet);
            std::printf("saved %s (final evaluation score %.4g after %ld steps)\n",
                        result.path.c_str(), result.final_eval_score, result.steps);
        } else if (run->parsed()) {
            const harness::SessionConfig config = build_config(opt);
            const harness::SessionRecord record = harness::run_session(config);
            if (!config.out_dir.empty()) harness::write_session_outputs(config, record);
            std::printf("mode=%s budget=%ld advices=%ld final=%.6g auc=%.6g (%.1fs)\n",
                        advising::to_string(config.advising.mode).c_str(), config.budget,
                        record.advices_total, record.final_score, record.auc, record.wall_seconds);
        } else if (aggregate->parsed()) {
            const auto rows = harness::aggregate_runs(harness::scan_runs(agg_runs));
            harness::write_report_csv(agg_out, rows);
            std::printf("wrote %s (%zu rows)\n", agg_out.c_str(), rows.size());
        } else if (plot->parsed()) {
            harness::write_plots(plot_runs, plot_out, smooth);
            std::printf("wrote plots to %s\n", plot_out.c_str());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
