#include "advice/teacher/teacher.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "advice/harness/evaluate.hpp"

namespace advice::teacher {

namespace {
constexpr const char* kMagic = "advice-checkpoint v1";
}

ShortestPathTeacher::ShortestPathTeacher(env::GridLayout layout) : layout_(std::move(layout)) {
    dist_to_goal_ = layout_.distances_from(layout_.goal());
}

int ShortestPathTeacher::advise_from(env::Cell cell) const {
    const auto dist_of = [&](env::Cell c) {
        return dist_to_goal_[static_cast<std::size_t>(c.row) * layout_.cols() + c.col];
    };
    const int here = dist_of(cell);
    if (here == env::kUnreachable) {
        std::cerr << "ShortestPathTeacher: goal unreachable from (" << cell.row << "," << cell.col
                  << "), advising action 0\n";
        return 0;
    }
    const int dr[4] = {-1, 1, 0, 0};
    const int dc[4] = {0, 0, -1, 1};
    for (int a = 0; a < 4; ++a) {
        const env::Cell next{cell.row + dr[a], cell.col + dc[a]};
        if (!layout_.is_walkable(next)) continue;
        if (dist_of(next) == here - 1) return a;
    }
    return 0; // already on the goal
}

int ShortestPathTeacher::advise(const env::Observation& obs) const {
    for (int r = 0; r < obs.height; ++r)
        for (int c = 0; c < obs.width; ++c)
            if (obs.at(0, r, c) != 0.0f) return advise_from({r, c});
    std::cerr << "ShortestPathTeacher: no agent in observation, advising action 0\n";
    return 0;
}

void CheckpointManifest::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries)
        if (k == key) {
            v = value;
            return;
        }
    entries.emplace_back(key, value);
}

std::string CheckpointManifest::get(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    return {};
}

void save_checkpoint(const std::string& path, const CheckpointManifest& manifest,
                     const nn::QNetwork<float>& net) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path);
    out << kMagic << "\n";
    for (const auto& [k, v] : manifest.entries) out << k << ": " << v << "\n";
    out << "---\n";
    auto tensors = nn::named_tensors(const_cast<nn::QNetwork<float>&>(net));
    for (const auto& t : tensors) {
        const std::uint32_t name_len = static_cast<std::uint32_t>(t.name.size());
        const std::uint64_t count = static_cast<std::uint64_t>(t.size);
        out.write(reinterpret_cast<const char*>(&name_len), sizeof(name_len));
        out.write(t.name.data(), name_len);
        out.write(reinterpret_cast<const char*>(&count), sizeof(count));
        out.write(reinterpret_cast<const char*>(t.data), sizeof(float) * t.size);
    }
    if (!out) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

std::pair<CheckpointManifest, nn::QNetwork<float>> load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kMagic)
        throw std::runtime_error("load_checkpoint: bad magic in " + path);
    CheckpointManifest manifest;
    while (std::getline(in, line)) {
        if (line == "---") break;
        const auto colon = line.find(": ");
        if (colon == std::string::npos)
            throw std::runtime_error("load_checkpoint: malformed header line: " + line);
        manifest.set(line.substr(0, colon), line.substr(colon + 2));
    }

    const auto required = [&](const std::string& key) {
        const std::string v = manifest.get(key);
        if (v.empty()) throw std::runtime_error("load_checkpoint: missing manifest key " + key);
        return v;
    };
    const int height = std::stoi(required("height"));
    const int width = std::stoi(required("width"));
    const int channels = std::stoi(required("channels"));
    const int num_actions = std::stoi(required("num_actions"));
    const bool noisy = required("noisy") == "1";

    Rng scratch(0);
    nn::QNetwork<float> net =
        nn::QNetwork<float>::make(scratch, channels, height, width, num_actions, noisy);
    auto tensors = nn::named_tensors(net);

    std::uint32_t name_len = 0;
    while (in.read(reinterpret_cast<char*>(&name_len), sizeof(name_len))) {
        std::string name(name_len, '\0');
        std::uint64_t count = 0;
        if (!in.read(name.data(), name_len) || !in.read(reinterpret_cast<char*>(&count), sizeof(count)))
            throw std::runtime_error("load_checkpoint: truncated tensor record");
        bool found = false;
        for (auto& t : tensors) {
            if (t.name != name) continue;
            if (static_cast<std::uint64_t>(t.size) != count)
                throw std::runtime_error("load_checkpoint: size mismatch for tensor " + name);
            if (!in.read(reinterpret_cast<char*>(t.data), sizeof(float) * t.size))
                throw std::runtime_error("load_checkpoint: truncated tensor data for " + name);
            found = true;
            break;
        }
        if (!found) throw std::runtime_error("load_checkpoint: unexpected tensor " + name);
    }
    return {manifest, std::move(net)};
}

CheckpointTeacher::CheckpointTeacher(const std::string& path) {
    auto [manifest, net] = load_checkpoint(path);
    manifest_ = std::move(manifest);
    net_ = std::move(net);
    if (net_.noisy)
        throw std::runtime_error("CheckpointTeacher: teacher networks must be noise-free");
}

env::GameId CheckpointTeacher::game() const { return env::game_from_string(manifest_.get("env")); }

int CheckpointTeacher::advise(const env::Observation& obs) const {
    static const nn::QNoise<float> zero;
    const Eigen::Map<const nn::Vec<float>> x(obs.data.data(), obs.cells());
    const auto [q, phi] = nn::forward_q_single(net_, zero, nn::Vec<float>(x));
    return nn::argmax_lowest(q);
}

std::unique_ptr<TeacherPolicy> make_teacher(const std::string& spec_string,
                                            const env::GridLayout& layout) {
    if (spec_string.empty() || spec_string == "none") return nullptr;
    if (spec_string == "shortest-path") return std::make_unique<ShortestPathTeacher>(layout);
    return std::make_unique<CheckpointTeacher>(spec_string);
}

PretrainResult pretrain_teacher(env::GameId game, long steps, std::uint64_t seed,
                                const std::string& out_path, bool verbose) {
    if (steps <= 0) throw std::invalid_argument("pretrain_teacher: steps must be positive");
    const env::EnvSpec spec = env::EnvSpec::for_game(game);
    const dqn::DqnHyperparams hyper = game == env::GameId::GridWorld
                                          ? dqn::DqnHyperparams::gridworld_profile()
                                          : dqn::DqnHyperparams::minatar_profile();
    dqn::EpsGreedySchedule schedule{1.0, 0.01, std::max<long>(1, steps / 10)};
    dqn::StudentAgent agent(spec, hyper, derive_seed(seed, 0), schedule);

    auto environment = env::make_env(game, env::EpisodeStream(derive_seed(seed, 1)));
    env::Observation obs = environment->reset();
    for (long t = 1; t <= steps; ++t) {
        const int action = agent.act(obs);
        const env::StepResult result = environment->step(action);
        agent.observe({obs, action, static_cast<float>(result.reward), result.observation,
                       result.terminal});
        agent.train_tick();
        obs = result.terminal ? environment->reset() : result.observation;
        if (verbose && t % 20000 == 0) {
            const double score = harness::evaluate_greedy(agent, spec, nullptr,
                                                          harness::kEvalStreamSeed, 0, 5);
            std::fprintf(stderr, "pretrain %s: step %ld/%ld eval %.3f\n",
                         env::to_string(game).c_str(), t, steps, score);
        }
    }

    const double final_score =
        harness::evaluate_greedy(agent, spec, nullptr, harness::kEvalStreamSeed, 0, 10);

    CheckpointManifest manifest;
    manifest.set("env", env::to_string(game));
    manifest.set("height", std::to_string(spec.height));
    manifest.set("width", std::to_string(spec.width));
    manifest.set("channels", std::to_string(spec.channels));
    manifest.set("num_actions", std::to_string(spec.num_actions));
    manifest.set("noisy", "0");
    manifest.set("training_steps", std::to_string(steps));
    manifest.set("seed", std::to_string(seed));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", final_score);
    manifest.set("final_eval_score", buf);
    save_checkpoint(out_path, manifest, agent.online());
    return {out_path, final_score, steps};
}

} // namespace advice::teacher
