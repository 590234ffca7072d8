#pragma once

#include <string>
#include <vector>

namespace advice::env {

struct Cell {
    int row = 0;
    int col = 0;

    bool operator==(const Cell&) const = default;
};

enum class Tile : unsigned char { Ground, Pit, Goal, Start };

constexpr int kUnreachable = -1;

// 9x9 tile map parsed from ASCII ('.' ground, '#' pit, 'G' goal, 'S' start).
class GridLayout {
public:
    static GridLayout canonical();
    static GridLayout parse(const std::string& ascii);
    static GridLayout load_file(const std::string& path);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Tile tile(Cell c) const { return tiles_[static_cast<std::size_t>(c.row) * cols_ + c.col]; }
    bool in_bounds(Cell c) const { return c.row >= 0 && c.row < rows_ && c.col >= 0 && c.col < cols_; }
    bool is_pit(Cell c) const { return tile(c) == Tile::Pit; }
    bool is_walkable(Cell c) const { return in_bounds(c) && !is_pit(c); }
    Cell start() const { return start_; }
    Cell goal() const { return goal_; }

    std::string to_ascii() const;

    // BFS distances from `from` over non-pit tiles; kUnreachable where blocked off.
    std::vector<int> distances_from(Cell from) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Tile> tiles_;
    Cell start_;
    Cell goal_;
};

// BFS distance treating pits as impassable. Throws std::invalid_argument if
// either endpoint is a pit; returns kUnreachable when no path exists.
int shortest_path_distance(const GridLayout& layout, Cell from, Cell to);

} // namespace advice::env
