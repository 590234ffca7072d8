#include "advice/env/environment.hpp"

#include <stdexcept>

#include "advice/env/gridworld.hpp"
#include "advice/env/minatar.hpp"

namespace advice::env {

std::string to_string(GameId id) {
    switch (id) {
        case GameId::GridWorld: return "gridworld";
        case GameId::MiniBreakout: return "minibreakout";
        case GameId::MiniFreeway: return "minifreeway";
    }
    return "unknown";
}

GameId game_from_string(const std::string& name) {
    if (name == "gridworld") return GameId::GridWorld;
    if (name == "minibreakout" || name == "breakout") return GameId::MiniBreakout;
    if (name == "minifreeway" || name == "freeway") return GameId::MiniFreeway;
    throw std::invalid_argument("unknown game id: " + name);
}

EnvSpec EnvSpec::for_game(GameId id) {
    switch (id) {
        case GameId::GridWorld: return {id, 9, 9, 3, 4, 50};
        case GameId::MiniBreakout: return {id, 10, 10, 4, 6, 1000};
        case GameId::MiniFreeway: return {id, 10, 10, 7, 6, 1000};
    }
    throw std::invalid_argument("unknown game id");
}

std::unique_ptr<Environment> make_env(GameId id, EpisodeStream stream) {
    switch (id) {
        case GameId::GridWorld: return std::make_unique<GridWorld>(stream);
        case GameId::MiniBreakout: return std::make_unique<MiniBreakout>(stream);
        case GameId::MiniFreeway: return std::make_unique<MiniFreeway>(stream);
    }
    throw std::invalid_argument("unknown game id");
}

std::unique_ptr<Environment> make_env(const EnvSpec& spec, EpisodeStream stream) {
    const EnvSpec expected = EnvSpec::for_game(spec.id);
    if (spec.id != GameId::GridWorld &&
        (spec.height != expected.height || spec.width != expected.width ||
         spec.channels != expected.channels || spec.num_actions != expected.num_actions))
        throw std::invalid_argument("make_env: spec does not match game " + to_string(spec.id));
    return make_env(spec.id, stream);
}

std::unique_ptr<Environment> make_gridworld(EpisodeStream stream, const GridLayout& layout) {
    return std::make_unique<GridWorld>(stream, layout);
}

} // namespace advice::env
