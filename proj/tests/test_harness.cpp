#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "advice/harness/outputs.hpp"

using namespace advice;
using namespace advice::harness;

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

long count_lines(const std::string& text) {
    long n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

SessionConfig small_gridworld_session(advising::Mode mode, long steps = 600) {
    SessionConfig config = SessionConfig::defaults_for(env::GameId::GridWorld);
    config.advising.mode = mode;
    config.session_steps = steps;
    config.eval_period = 100;
    config.eval_episodes = 2;
    config.budget = 50;
    config.hyper.replay_start = 200;
    config.advising.normalizer_warmup = 50;
    return config;
}

} // namespace

TEST_CASE("auc of simple curves") {
    CHECK(compute_auc({2.0, 2.0, 2.0, 2.0, 2.0}) == doctest::Approx(2.0 * 4));
    // linear ramp 0..1 over N points integrates to (N-1)/2
    std::vector<double> ramp;
    const int n = 11;
    for (int i = 0; i < n; ++i) ramp.push_back(static_cast<double>(i) / (n - 1));
    CHECK(compute_auc(ramp) == doctest::Approx((n - 1) / 2.0));
    CHECK(compute_auc({3.5}) == 3.5);
    CHECK_THROWS_AS(compute_auc({}), std::invalid_argument);

    // independent summation oracle on a pseudo-random curve
    Rng rng(6);
    std::vector<double> curve;
    for (int i = 0; i < 937; ++i) curve.push_back(rng.uniform());
    double oracle = 0.0;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) oracle += (curve[i] + curve[i + 1]) / 2.0;
    CHECK(std::abs(compute_auc(curve) - oracle) < 1e-9);
}

TEST_CASE("final score is the mean of the last 50 values") {
    std::vector<double> constant(120, 0.75);
    bool short_curve = true;
    CHECK(compute_final_score(constant, &short_curve) == doctest::Approx(0.75));
    CHECK_FALSE(short_curve);

    std::vector<double> alternating(200, 0.0);
    for (std::size_t i = 0; i < alternating.size(); ++i) alternating[i] = i % 2 ? 1.0 : 0.0;
    CHECK(compute_final_score(alternating) == doctest::Approx(0.5));

    std::vector<double> heavy_head(100, 9.0);
    for (int i = 50; i < 100; ++i) heavy_head[i] = 1.0;
    CHECK(compute_final_score(heavy_head) == doctest::Approx(1.0));

    std::vector<double> short_one(49, 0.3);
    CHECK(compute_final_score(short_one, &short_curve) == doctest::Approx(0.3));
    CHECK(short_curve);
    CHECK_THROWS_AS(compute_final_score({}), std::invalid_argument);
}

TEST_CASE("moving average window one is the identity") {
    const std::vector<double> series{1, 5, 2, 8, 3};
    CHECK(moving_average(series, 1) == series);
    const auto smoothed = moving_average(series, 3);
    CHECK(smoothed[1] == doctest::Approx((1 + 5 + 2) / 3.0));
    CHECK(smoothed[0] == doctest::Approx((1 + 5) / 2.0)); // truncated edge
}

TEST_CASE("the shortest-path policy evaluates near the top of the score range") {
    const env::GridLayout layout = env::GridLayout::canonical();
    teacher::ShortestPathTeacher teacher(layout);
    const env::EnvSpec spec = env::EnvSpec::for_game(env::GameId::GridWorld);
    const double score = evaluate_policy(
        [&](const env::Observation& obs) { return teacher.advise(obs); }, spec, &layout,
        kEvalStreamSeed, 0, 20);
    CHECK(score > 0.8);
}

TEST_CASE("an untrained agent evaluates near zero on minifreeway") {
    const env::EnvSpec spec = env::EnvSpec::for_game(env::GameId::MiniFreeway);
    dqn::StudentAgent agent(spec, dqn::DqnHyperparams::minatar_profile(), 50);
    const double score = evaluate_greedy(agent, spec, nullptr, kEvalStreamSeed, 0, 3);
    CHECK(score < 0.5);
}

TEST_CASE("evaluation is deterministic and mutates nothing") {
    const env::EnvSpec spec = env::EnvSpec::for_game(env::GameId::GridWorld);
    dqn::StudentAgent agent(spec, dqn::DqnHyperparams::gridworld_profile(), 51);
    const auto hash_before = agent.online_hash();
    const auto replay_before = agent.replay().size();
    const double a = evaluate_greedy(agent, spec, nullptr, kEvalStreamSeed, 3, 5);
    const double b = evaluate_greedy(agent, spec, nullptr, kEvalStreamSeed, 3, 5);
    CHECK(a == b);
    CHECK(agent.online_hash() == hash_before);
    CHECK(agent.replay().size() == replay_before);
}

TEST_CASE("the evaluation stream presents identical episodes to every caller") {
    env::EpisodeStream a(kEvalStreamSeed, 10), b(kEvalStreamSeed, 10);
    env::GridWorld wa{a}, wb{b};
    Rng actions(3);
    for (int e = 0; e < 3; ++e) {
        env::Observation oa = wa.reset(), ob = wb.reset();
        CHECK(oa.data == ob.data);
        while (wa.episode_active()) {
            const int action = actions.uniform_int(4);
            CHECK(wa.step(action).observation.data == wb.step(action).observation.data);
        }
    }
}

TEST_CASE("session with mode none takes no advice") {
    SessionConfig config = small_gridworld_session(advising::Mode::None);
    config.teacher = "none";
    const SessionRecord record = run_session(config);
    CHECK(record.advices_total == 0);
    for (long c : record.cumulative) CHECK(c == 0);
    CHECK(record.eval_steps.size() == 6);
    CHECK(record.eval_scores.size() == 6);
    CHECK(record.short_curve); // fewer than 50 evaluation points
}

TEST_CASE("session with EA consumes the budget from the first step") {
    const SessionConfig config = small_gridworld_session(advising::Mode::EA);
    const SessionRecord record = run_session(config);
    CHECK(record.advices_total == 50);
    for (long t = 1; t <= config.session_steps; ++t)
        CHECK(record.cumulative[t - 1] == std::min<long>(t, 50));
    long window_sum = 0;
    for (long c : record.window_counts) window_sum += c;
    CHECK(window_sum == record.advices_total);
    REQUIRE(record.decisions.size() == static_cast<std::size_t>(config.session_steps));
    CHECK(record.decisions[0].requested);
    CHECK(record.decisions[0].remaining == 49);
}

TEST_CASE("advising modes require a teacher") {
    SessionConfig config = small_gridworld_session(advising::Mode::EA);
    config.teacher = "none";
    CHECK_THROWS_AS(run_session(config), std::invalid_argument);
}

TEST_CASE("teacher checkpoint must match the session game") {
    const auto dir = std::filesystem::temp_directory_path() / "advice_test_harness";
    fs::create_directories(dir);
    const std::string path = (dir / "wrong_env.ckpt").string();
    Rng rng(3);
    auto net = nn::QNetwork<float>::make(rng, 4, 10, 10, 6, false);
    teacher::CheckpointManifest manifest;
    manifest.set("env", "minibreakout");
    manifest.set("height", "10");
    manifest.set("width", "10");
    manifest.set("channels", "4");
    manifest.set("num_actions", "6");
    manifest.set("noisy", "0");
    teacher::save_checkpoint(path, manifest, net);

    SessionConfig config = small_gridworld_session(advising::Mode::EA);
    config.teacher = path;
    CHECK_THROWS_AS(run_session(config), std::invalid_argument);
}

TEST_CASE("identical configs reproduce the session record exactly") {
    const SessionConfig config = small_gridworld_session(advising::Mode::ANA);
    const SessionRecord a = run_session(config);
    const SessionRecord b = run_session(config);
    CHECK(a.eval_scores == b.eval_scores);
    CHECK(a.cumulative == b.cumulative);
    CHECK(a.advices_total == b.advices_total);
    REQUIRE(a.decisions.size() == b.decisions.size());
    for (std::size_t i = 0; i < a.decisions.size(); ++i) {
        CHECK(a.decisions[i].signal == b.decisions[i].signal);
        CHECK(a.decisions[i].requested == b.decisions[i].requested);
    }

    // a different experiment seed changes the agent's internals
    SessionConfig other = config;
    other.experiment_seed += 1;
    const SessionRecord c = run_session(other);
    CHECK(a.eval_scores != c.eval_scores);
}

TEST_CASE("session outputs have the documented csv shapes") {
    const auto dir = std::filesystem::temp_directory_path() / "advice_test_outputs";
    fs::remove_all(dir);

    SessionConfig config = small_gridworld_session(advising::Mode::RA);
    config.out_dir = (dir / "ra_run").string();
    const SessionRecord record = run_session(config);
    write_session_outputs(config, record);

    const std::string eval_csv = read_file(dir / "ra_run" / "eval.csv");
    CHECK(eval_csv.starts_with("step,score\n"));
    CHECK(count_lines(eval_csv) == 1 + config.session_steps / config.eval_period);

    const std::string windows_csv = read_file(dir / "ra_run" / "windows.csv");
    CHECK(windows_csv.starts_with("window_start,count\n"));
    CHECK(count_lines(windows_csv) == 1 + config.session_steps / 100);

    const std::string cumulative_csv = read_file(dir / "ra_run" / "cumulative.csv");
    CHECK(count_lines(cumulative_csv) == 1 + config.session_steps);

    const std::string decisions_csv = read_file(dir / "ra_run" / "decisions.csv");
    CHECK(decisions_csv.starts_with("step,mode,signal,probability,requested,remaining\n"));
    CHECK(count_lines(decisions_csv) == 1 + config.session_steps);

    const auto runs = scan_runs(dir.string());
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].mode() == "ra");
    CHECK(runs[0].eval_scores.size() == record.eval_scores.size());
}

TEST_CASE("aggregation computes seed statistics and EA-relative percentages") {
    const auto dir = std::filesystem::temp_directory_path() / "advice_test_aggregate";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const auto write_run = [&](const std::string& name, const std::string& mode,
                               const std::vector<double>& scores) {
        const fs::path run = dir / name;
        fs::create_directories(run);
        std::ofstream meta(run / "meta.txt");
        meta << "mode=" << mode << "\nbudget=100\nteacher_available_from=0\n";
        std::ofstream eval(run / "eval.csv");
        eval << "step,score\n";
        for (std::size_t i = 0; i < scores.size(); ++i) eval << (i + 1) * 100 << ',' << scores[i] << '\n';
    };
    write_run("ea_s1", "ea", {0.0, 2.0});
    write_run("ea_s2", "ea", {0.0, 4.0});
    write_run("ana_s1", "ana", {0.0, 5.0});
    write_run("ana_s2", "ana", {0.0, 7.0});

    const auto rows = aggregate_runs(scan_runs(dir.string()));
    REQUIRE(rows.size() == 2);
    const auto& ana = rows[0].mode == "ana" ? rows[0] : rows[1];
    const auto& ea = rows[0].mode == "ea" ? rows[0] : rows[1];
    CHECK(ea.seeds == 2);
    CHECK(ea.final_mean == doctest::Approx(1.5)); // short curves: mean of all points
    CHECK(ana.final_mean == doctest::Approx(3.0));
    CHECK(ana.final_vs_ea_pct == doctest::Approx(100.0));
    CHECK(ana.has_ea_reference);
    CHECK_FALSE(ea.has_ea_reference);
    CHECK(ea.final_std == doctest::Approx(0.5));

    const std::string report = (dir / "report.csv").string();
    write_report_csv(report, rows);
    const std::string text = read_file(report);
    CHECK(text.starts_with("mode,budget,"));
    CHECK(count_lines(text) == 3);
}

TEST_CASE("svg plots render the recorded series") {
    const auto dir = std::filesystem::temp_directory_path() / "advice_test_plots";
    fs::remove_all(dir);
    fs::create_directories(dir);

    PlotSeries series;
    series.label = "ana";
    for (int i = 0; i < 100; ++i) {
        series.xs.push_back(i);
        series.mean.push_back(std::sin(i / 10.0));
        series.std_dev.push_back(0.1);
    }
    const std::string path = (dir / "demo.svg").string();
    write_svg_lineplot(path, "demo", "step", "score", {series}, 5);
    const std::string svg = read_file(path);
    CHECK(svg.starts_with("<svg"));
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("moving average window: 5") != std::string::npos);
    CHECK(svg.find("ana") != std::string::npos);

    // smoothing window 1 plots the raw series: spot-check one mapped point
    const std::string raw_path = (dir / "raw.svg").string();
    write_svg_lineplot(raw_path, "raw", "x", "y", {series}, 1);
    CHECK(read_file(raw_path).find("moving average window: 1") != std::string::npos);
}

TEST_CASE("write_plots produces one svg set per budget group") {
    const auto dir = std::filesystem::temp_directory_path() / "advice_test_plotdirs";
    fs::remove_all(dir);

    SessionConfig config = small_gridworld_session(advising::Mode::EA, 300);
    config.out_dir = (dir / "runs" / "ea_s1").string();
    write_session_outputs(config, run_session(config));
    config.experiment_seed = 2;
    config.out_dir = (dir / "runs" / "ea_s2").string();
    write_session_outputs(config, run_session(config));

    write_plots((dir / "runs").string(), (dir / "plots").string());
    CHECK(fs::exists(dir / "plots" / "eval_b50.svg"));
    CHECK(fs::exists(dir / "plots" / "cumulative_b50.svg"));
    CHECK(fs::exists(dir / "plots" / "windows_b50.svg"));
}
