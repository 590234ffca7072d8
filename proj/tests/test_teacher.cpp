#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "advice/teacher/teacher.hpp"

using namespace advice;
using namespace advice::teacher;

namespace {

env::Observation gridworld_obs_at(const env::GridLayout& layout, env::Cell agent) {
    env::Observation obs(layout.rows(), layout.cols(), 3);
    obs.at(0, agent.row, agent.col) = 1.0f;
    for (int r = 0; r < layout.rows(); ++r)
        for (int c = 0; c < layout.cols(); ++c) {
            if (layout.tile({r, c}) == env::Tile::Goal) obs.at(1, r, c) = 1.0f;
            if (layout.tile({r, c}) == env::Tile::Pit) obs.at(2, r, c) = 1.0f;
        }
    return obs;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("shortest path teacher picks moves that shrink the goal distance") {
    const env::GridLayout layout = env::GridLayout::canonical();
    ShortestPathTeacher teacher(layout);

    // one step left of the goal: go right
    CHECK(teacher.advise(gridworld_obs_at(layout, {0, 7})) == env::kRight);
    // directly below the goal: go up
    CHECK(teacher.advise(gridworld_obs_at(layout, {1, 8})) == env::kUp);

    // from the start cell both 'down' and 'right' shrink the distance;
    // the fixed tie-break order (up, down, left, right) selects 'down'
    {
        const auto dist = layout.distances_from(layout.goal());
        const auto d = [&](env::Cell c) { return dist[c.row * layout.cols() + c.col]; };
        REQUIRE(d({1, 0}) == d({0, 0}) - 1);
        REQUIRE(d({0, 1}) == d({0, 0}) - 1);
    }
    CHECK(teacher.advise(gridworld_obs_at(layout, {0, 0})) == env::kDown);

    // pure function of the observation
    const auto obs = gridworld_obs_at(layout, {6, 2});
    const int first = teacher.advise(obs);
    for (int i = 0; i < 5; ++i) CHECK(teacher.advise(obs) == first);
}

TEST_CASE("greedy teacher reaches the goal in exactly the BFS distance from every cell") {
    const env::GridLayout layout = env::GridLayout::canonical();
    ShortestPathTeacher teacher(layout);
    const auto dist = layout.distances_from(layout.goal());
    int cells_checked = 0;
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c) {
            ++cells_checked;
            if (layout.is_pit({r, c})) continue;
            const int expected = dist[r * 9 + c];
            REQUIRE(expected != env::kUnreachable);
            env::Cell cell{r, c};
            int steps = 0;
            while (layout.tile(cell) != env::Tile::Goal && steps <= expected) {
                const int action = teacher.advise_from(cell);
                const int dr[4] = {-1, 1, 0, 0}, dc[4] = {0, 0, -1, 1};
                cell = {cell.row + dr[action], cell.col + dc[action]};
                ++steps;
            }
            CHECK(steps == expected);
            CHECK(layout.tile(cell) == env::Tile::Goal);
        }
    CHECK(cells_checked == 81);
}

TEST_CASE("unreachable cells fall back to action 0 with a warning") {
    const env::GridLayout layout = env::GridLayout::parse("S.G\n###\n...\n");
    ShortestPathTeacher teacher(layout);
    CHECK(teacher.advise_from({2, 0}) == 0);
}

TEST_CASE("checkpoint save/load round trip is byte identical") {
    const auto dir = std::filesystem::temp_directory_path() / "advice_test_ckpt";
    std::filesystem::create_directories(dir);
    const std::string path_a = (dir / "a.ckpt").string();
    const std::string path_b = (dir / "b.ckpt").string();

    Rng rng(44);
    auto net = nn::QNetwork<float>::make(rng, 4, 10, 10, 6, false);
    CheckpointManifest manifest;
    manifest.set("env", "minibreakout");
    manifest.set("height", "10");
    manifest.set("width", "10");
    manifest.set("channels", "4");
    manifest.set("num_actions", "6");
    manifest.set("noisy", "0");
    manifest.set("final_eval_score", "12.5");
    save_checkpoint(path_a, manifest, net);

    auto [loaded_manifest, loaded_net] = load_checkpoint(path_a);
    CHECK(loaded_manifest.get("final_eval_score") == "12.5");
    CHECK(loaded_net.param_count() == net.param_count());
    CHECK(nn::params_hash(loaded_net) == nn::params_hash(net));

    save_checkpoint(path_b, loaded_manifest, loaded_net);
    CHECK(read_file(path_a) == read_file(path_b));

    // teachers must be structurally noise-free
    auto noisy_net = nn::QNetwork<float>::make(rng, 4, 10, 10, 6, true);
    CheckpointManifest noisy_manifest = manifest;
    noisy_manifest.set("noisy", "1");
    const std::string path_c = (dir / "c.ckpt").string();
    save_checkpoint(path_c, noisy_manifest, noisy_net);
    CHECK_THROWS_AS(CheckpointTeacher teacher(path_c), std::runtime_error);
}

TEST_CASE("checkpoint teacher is a fixed greedy policy") {
    const auto dir = std::filesystem::temp_directory_path() / "advice_test_ckpt";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "fixed.ckpt").string();
    Rng rng(55);
    auto net = nn::QNetwork<float>::make(rng, 3, 9, 9, 4, false);
    CheckpointManifest manifest;
    manifest.set("env", "gridworld");
    manifest.set("height", "9");
    manifest.set("width", "9");
    manifest.set("channels", "3");
    manifest.set("num_actions", "4");
    manifest.set("noisy", "0");
    save_checkpoint(path, manifest, net);

    CheckpointTeacher teacher(path);
    CHECK(teacher.game() == env::GameId::GridWorld);
    const auto obs = gridworld_obs_at(env::GridLayout::canonical(), {3, 3});
    const int action = teacher.advise(obs);
    for (int i = 0; i < 10; ++i) CHECK(teacher.advise(obs) == action);
    // teacher network exposes no sigma tensors
    for (const auto& tensor : nn::named_tensors(const_cast<nn::QNetwork<float>&>(teacher.net())))
        CHECK(tensor.name.find("sigma") == std::string::npos);
}

TEST_CASE("make_teacher dispatches on the teacher spec string") {
    const env::GridLayout layout = env::GridLayout::canonical();
    CHECK(make_teacher("none", layout) == nullptr);
    CHECK(make_teacher("", layout) == nullptr);
    CHECK(dynamic_cast<ShortestPathTeacher*>(make_teacher("shortest-path", layout).get()) != nullptr);
    CHECK_THROWS(make_teacher("/no/such/file.ckpt", layout));
}

TEST_CASE("short pretraining run produces a loadable checkpoint") {
    const auto dir = std::filesystem::temp_directory_path() / "advice_test_ckpt";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "pretrained.ckpt").string();
    const auto result = pretrain_teacher(env::GameId::GridWorld, 3000, 7, path);
    CHECK(result.steps == 3000);
    CheckpointTeacher teacher(path);
    CHECK(teacher.game() == env::GameId::GridWorld);
    CHECK(teacher.manifest().get("training_steps") == "3000");
    CHECK(!teacher.manifest().get("final_eval_score").empty());
    CHECK_THROWS_AS(pretrain_teacher(env::GameId::GridWorld, 0, 1, path), std::invalid_argument);
}
