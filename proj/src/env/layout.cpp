#include "advice/env/layout.hpp"

#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace advice::env {

namespace {

// Four rooms: pit walls along row 4 and column 4 with single-tile doorways
// at (4,2), (4,6), (2,4) and (6,4). Start top-left, goal top-right.
constexpr const char* kCanonicalLayout =
    "S...#...G\n"
    "....#....\n"
    ".........\n"
    "....#....\n"
    "##.###.##\n"
    "....#....\n"
    ".........\n"
    "....#....\n"
    "....#....\n";

} // namespace

GridLayout GridLayout::canonical() { return parse(kCanonicalLayout); }

GridLayout GridLayout::parse(const std::string& ascii) {
    GridLayout layout;
    std::istringstream in(ascii);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw std::invalid_argument("layout: empty grid");
    layout.rows_ = static_cast<int>(lines.size());
    layout.cols_ = static_cast<int>(lines[0].size());
    layout.tiles_.resize(static_cast<std::size_t>(layout.rows_) * layout.cols_, Tile::Ground);
    bool has_start = false;
    bool has_goal = false;
    for (int r = 0; r < layout.rows_; ++r) {
        if (static_cast<int>(lines[r].size()) != layout.cols_)
            throw std::invalid_argument("layout: ragged rows");
        for (int c = 0; c < layout.cols_; ++c) {
            Tile t = Tile::Ground;
            switch (lines[r][c]) {
                case '.': t = Tile::Ground; break;
                case '#': t = Tile::Pit; break;
                case 'G': t = Tile::Goal; layout.goal_ = {r, c}; has_goal = true; break;
                case 'S': t = Tile::Start; layout.start_ = {r, c}; has_start = true; break;
                default: throw std::invalid_argument(std::string("layout: bad tile '") + lines[r][c] + "'");
            }
            layout.tiles_[static_cast<std::size_t>(r) * layout.cols_ + c] = t;
        }
    }
    if (!has_start || !has_goal) throw std::invalid_argument("layout: missing start or goal");
    if (shortest_path_distance(layout, layout.start_, layout.goal_) == kUnreachable)
        throw std::invalid_argument("layout: goal unreachable from start");
    return layout;
}

GridLayout GridLayout::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("layout: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string GridLayout::to_ascii() const {
    std::string out;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            switch (tile({r, c})) {
                case Tile::Ground: out += '.'; break;
                case Tile::Pit: out += '#'; break;
                case Tile::Goal: out += 'G'; break;
                case Tile::Start: out += 'S'; break;
            }
        }
        out += '\n';
    }
    return out;
}

std::vector<int> GridLayout::distances_from(Cell from) const {
    std::vector<int> dist(tiles_.size(), kUnreachable);
    std::deque<Cell> queue;
    dist[static_cast<std::size_t>(from.row) * cols_ + from.col] = 0;
    queue.push_back(from);
    const int dr[4] = {-1, 1, 0, 0};
    const int dc[4] = {0, 0, -1, 1};
    while (!queue.empty()) {
        Cell cur = queue.front();
        queue.pop_front();
        const int d = dist[static_cast<std::size_t>(cur.row) * cols_ + cur.col];
        for (int k = 0; k < 4; ++k) {
            Cell next{cur.row + dr[k], cur.col + dc[k]};
            if (!is_walkable(next)) continue;
            int& slot = dist[static_cast<std::size_t>(next.row) * cols_ + next.col];
            if (slot != kUnreachable) continue;
            slot = d + 1;
            queue.push_back(next);
        }
    }
    return dist;
}

int shortest_path_distance(const GridLayout& layout, Cell from, Cell to) {
    if (!layout.in_bounds(from) || !layout.in_bounds(to))
        throw std::invalid_argument("shortest_path_distance: cell out of bounds");
    if (layout.is_pit(from) || layout.is_pit(to))
        throw std::invalid_argument("shortest_path_distance: pit cell endpoint");
    const auto dist = layout.distances_from(from);
    return dist[static_cast<std::size_t>(to.row) * layout.cols() + to.col];
}

} // namespace advice::env
