#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "advice/harness/outputs.hpp"

namespace py = pybind11;
using namespace advice;

namespace {

py::array_t<float> obs_to_array(const env::Observation& obs) {
    py::array_t<float> out({obs.channels, obs.height, obs.width});
    std::copy(obs.data.begin(), obs.data.end(), out.mutable_data());
    return out;
}

env::Observation obs_from_array(const py::array& array) {
    const auto buf = py::array_t<float, py::array::c_style | py::array::forcecast>::ensure(array);
    if (!buf || buf.ndim() != 3) throw std::invalid_argument("expected a (channels, height, width) array");
    env::Observation obs(static_cast<int>(buf.shape(1)), static_cast<int>(buf.shape(2)),
                         static_cast<int>(buf.shape(0)));
    std::copy(buf.data(), buf.data() + buf.size(), obs.data.begin());
    return obs;
}

harness::SessionConfig config_from_kwargs(const std::string& game, const std::string& mode,
                                          long budget, long steps, long eval_period,
                                          int eval_episodes, std::uint64_t seed,
                                          std::uint64_t env_seed, long teacher_available_from,
                                          double eta, double nu, double rho,
                                          const std::string& teacher_spec, const std::string& out_dir) {
    harness::SessionConfig config = harness::SessionConfig::defaults_for(env::game_from_string(game));
    config.advising.mode = advising::mode_from_string(mode);
    if (budget >= 0) config.budget = budget;
    if (steps > 0) config.session_steps = steps;
    if (eval_period > 0) config.eval_period = eval_period;
    if (eval_episodes > 0) config.eval_episodes = eval_episodes;
    config.experiment_seed = seed;
    config.env_stream_seed = env_seed;
    if (teacher_available_from >= 0) config.advising.teacher_available_from = teacher_available_from;
    if (eta > 0) config.advising.eta = eta;
    if (nu > 0) config.advising.nu = nu;
    if (rho > 0) config.advising.rho = rho;
    if (!teacher_spec.empty()) config.teacher = teacher_spec;
    config.out_dir = out_dir;
    return config;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Action-advising experiment harness (C++ core)";

    py::class_<env::Environment>(m, "Environment")
        .def("reset", [](env::Environment& self) { return obs_to_array(self.reset()); })
        .def(
            "step",
            [](env::Environment& self, int action) {
                const env::StepResult result = self.step(action);
                return py::make_tuple(obs_to_array(result.observation), result.reward,
                                      result.terminal, result.steps_elapsed);
            },
            py::arg("action"))
        .def_property_readonly("episode_active", &env::Environment::episode_active)
        .def_property_readonly("num_actions",
                               [](const env::Environment& self) { return self.spec().num_actions; })
        .def_property_readonly("obs_shape",
                               [](const env::Environment& self) {
                                   return py::make_tuple(self.spec().channels, self.spec().height,
                                                         self.spec().width);
                               })
        .def_property_readonly("max_episode_steps",
                               [](const env::Environment& self) {
                                   return self.spec().max_episode_steps;
                               })
        .def_property_readonly("last_episode_return", &env::Environment::last_episode_return)
        .def_property_readonly("last_episode_eval_score",
                               &env::Environment::last_episode_eval_score);

    m.def(
        "make_env",
        [](const std::string& game, std::uint64_t stream_seed, std::uint64_t start_episode,
           const std::string& layout) -> std::unique_ptr<env::Environment> {
            env::EpisodeStream stream(stream_seed, start_episode);
            if (!layout.empty())
                return env::make_gridworld(stream, env::GridLayout::parse(layout));
            return env::make_env(env::game_from_string(game), stream);
        },
        py::arg("game"), py::arg("stream_seed") = 7, py::arg("start_episode") = 0,
        py::arg("layout") = "");

    m.def("canonical_layout", []() { return env::GridLayout::canonical().to_ascii(); });

    m.def(
        "shortest_path_distance",
        [](const std::string& layout, std::pair<int, int> from, std::pair<int, int> to) {
            return env::shortest_path_distance(env::GridLayout::parse(layout),
                                               {from.first, from.second}, {to.first, to.second});
        },
        py::arg("layout"), py::arg("from_cell"), py::arg("to_cell"));

    py::class_<teacher::ShortestPathTeacher>(m, "ShortestPathTeacher")
        .def(py::init([](const std::string& layout) {
                 return teacher::ShortestPathTeacher(layout.empty() ? env::GridLayout::canonical()
                                                                    : env::GridLayout::parse(layout));
             }),
             py::arg("layout") = "")
        .def("advise",
             [](const teacher::ShortestPathTeacher& self, const py::array& obs) {
                 return self.advise(obs_from_array(obs));
             });

    py::class_<dqn::StudentAgent>(m, "StudentAgent")
        .def(py::init([](const std::string& game, std::uint64_t seed) {
                 const env::EnvSpec spec = env::EnvSpec::for_game(env::game_from_string(game));
                 const auto hyper = spec.id == env::GameId::GridWorld
                                        ? dqn::DqnHyperparams::gridworld_profile()
                                        : dqn::DqnHyperparams::minatar_profile();
                 return std::make_unique<dqn::StudentAgent>(spec, hyper, seed);
             }),
             py::arg("game"), py::arg("seed") = 1)
        .def("act",
             [](dqn::StudentAgent& self, const py::array& obs) { return self.act(obs_from_array(obs)); })
        .def("greedy_action",
             [](const dqn::StudentAgent& self, const py::array& obs) {
                 return self.greedy_action(obs_from_array(obs));
             })
        .def("observe",
             [](dqn::StudentAgent& self, const py::array& obs, int action, float reward,
                const py::array& next_obs, bool terminal) {
                 self.observe({obs_from_array(obs), action, reward, obs_from_array(next_obs), terminal});
             },
             py::arg("obs"), py::arg("action"), py::arg("reward"), py::arg("next_obs"),
             py::arg("terminal"))
        .def("train_tick",
             [](dqn::StudentAgent& self) -> py::object {
                 const auto loss = self.train_tick();
                 return loss.has_value() ? py::cast(*loss) : py::none();
             })
        .def("q_values",
             [](const dqn::StudentAgent& self, const py::array& obs) {
                 const auto eval = self.q_values_eval(obs_from_array(obs));
                 return py::array_t<float>(eval.q.size(), eval.q.data());
             })
        .def_property_readonly("step_count", &dqn::StudentAgent::step_count)
        .def_property_readonly("updates_done", &dqn::StudentAgent::updates_done);

    py::class_<rnd::RndModule>(m, "RndModule")
        .def(py::init([](const std::string& game, int embedding_dim, float learning_rate,
                         int normalizer_warmup, std::uint64_t seed) {
                 return std::make_unique<rnd::RndModule>(
                     env::EnvSpec::for_game(env::game_from_string(game)), embedding_dim,
                     learning_rate, normalizer_warmup, seed);
             }),
             py::arg("game"), py::arg("embedding_dim") = rnd::RndModule::kDefaultEmbeddingDim,
             py::arg("learning_rate") = advising::AdvisingConfig{}.rnd_learning_rate,
             py::arg("normalizer_warmup") = 0, py::arg("seed") = 1)
        .def("novelty",
             [](const rnd::RndModule& self, const py::array& obs) {
                 return self.novelty(obs_from_array(obs));
             })
        .def("update_single",
             [](rnd::RndModule& self, const py::array& obs) {
                 return self.update_single(obs_from_array(obs));
             })
        .def("observe_for_warmup",
             [](rnd::RndModule& self, const py::array& obs) {
                 self.observe_for_warmup(obs_from_array(obs));
             })
        .def_property_readonly("normalizer_fitted", &rnd::RndModule::normalizer_fitted);

    m.def("pretrain_teacher",
          [](const std::string& game, long steps, std::uint64_t seed, const std::string& out_path) {
              const auto result =
                  teacher::pretrain_teacher(env::game_from_string(game), steps, seed, out_path);
              return py::make_tuple(result.path, result.final_eval_score);
          },
          py::arg("game"), py::arg("steps"), py::arg("seed"), py::arg("out_path"));

    m.def(
        "run_session",
        [](const std::string& game, const std::string& mode, long budget, long steps,
           long eval_period, int eval_episodes, std::uint64_t seed, std::uint64_t env_seed,
           long teacher_available_from, double eta, double nu, double rho,
           const std::string& teacher_spec, const std::string& out_dir) {
            const harness::SessionConfig config =
                config_from_kwargs(game, mode, budget, steps, eval_period, eval_episodes, seed,
                                   env_seed, teacher_available_from, eta, nu, rho, teacher_spec,
                                   out_dir);
            const harness::SessionRecord record = harness::run_session(config);
            if (!config.out_dir.empty()) harness::write_session_outputs(config, record);
            py::dict out;
            out["eval_steps"] = record.eval_steps;
            out["eval_scores"] = record.eval_scores;
            out["window_counts"] = record.window_counts;
            out["cumulative_advices"] = record.cumulative;
            out["advices_total"] = record.advices_total;
            out["final_score"] = record.final_score;
            out["auc"] = record.auc;
            out["wall_seconds"] = record.wall_seconds;
            return out;
        },
        py::arg("game"), py::arg("mode"), py::arg("budget") = -1, py::arg("steps") = -1,
        py::arg("eval_period") = -1, py::arg("eval_episodes") = -1, py::arg("seed") = 1,
        py::arg("env_seed") = 7, py::arg("teacher_available_from") = -1, py::arg("eta") = -1.0,
        py::arg("nu") = -1.0, py::arg("rho") = -1.0, py::arg("teacher") = "",
        py::arg("out_dir") = "");

    m.def("compute_auc", &harness::compute_auc, py::arg("curve"));
    m.def("compute_final_score",
          [](const std::vector<double>& curve) { return harness::compute_final_score(curve); },
          py::arg("curve"));
}
