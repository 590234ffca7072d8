#include "advice/harness/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace advice::harness {

namespace fs = std::filesystem;

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

} // namespace

void write_session_outputs(const SessionConfig& config, const SessionRecord& record) {
    if (config.out_dir.empty()) throw std::invalid_argument("write_session_outputs: no out_dir");
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);

    {
        auto out = open_out(dir / "eval.csv");
        out << "step,score\n";
        for (std::size_t i = 0; i < record.eval_steps.size(); ++i)
            out << record.eval_steps[i] << ',' << fmt_double(record.eval_scores[i]) << '\n';
    }
    {
        auto out = open_out(dir / "windows.csv");
        out << "window_start,count\n";
        for (std::size_t w = 0; w < record.window_counts.size(); ++w)
            out << w * record.window_size << ',' << record.window_counts[w] << '\n';
    }
    {
        auto out = open_out(dir / "cumulative.csv");
        out << "step,total\n";
        for (std::size_t i = 0; i < record.cumulative.size(); ++i)
            out << (i + 1) << ',' << record.cumulative[i] << '\n';
    }
    {
        auto out = open_out(dir / "decisions.csv");
        out << "step,mode,signal,probability,requested,remaining\n";
        const std::string mode = advising::to_string(config.advising.mode);
        for (const auto& row : record.decisions)
            out << row.step << ',' << mode << ',' << fmt_double(row.signal) << ','
                << fmt_double(row.probability) << ',' << (row.requested ? 1 : 0) << ','
                << row.remaining << '\n';
    }
    {
        auto out = open_out(dir / "meta.txt");
        out << "game=" << env::to_string(config.game) << '\n';
        out << "mode=" << advising::to_string(config.advising.mode) << '\n';
        out << "budget=" << config.budget << '\n';
        out << "session_steps=" << config.session_steps << '\n';
        out << "eval_period=" << config.eval_period << '\n';
        out << "eval_episodes=" << config.eval_episodes << '\n';
        out << "experiment_seed=" << config.experiment_seed << '\n';
        out << "env_stream_seed=" << config.env_stream_seed << '\n';
        out << "teacher=" << config.teacher << '\n';
        out << "teacher_available_from=" << config.advising.teacher_available_from << '\n';
        out << "eta=" << fmt_double(config.advising.eta) << '\n';
        out << "nu=" << fmt_double(config.advising.nu) << '\n';
        out << "rho=" << fmt_double(config.advising.rho) << '\n';
        out << "advices_total=" << record.advices_total << '\n';
        out << "final_score=" << fmt_double(record.final_score) << '\n';
        out << "auc=" << fmt_double(record.auc) << '\n';
        out << "short_curve=" << (record.short_curve ? 1 : 0) << '\n';
        out << "wall_seconds=" << fmt_double(record.wall_seconds) << '\n';
    }
}

std::string RunInfo::mode() const {
    const auto it = meta.find("mode");
    return it == meta.end() ? "" : it->second;
}

long RunInfo::budget() const {
    const auto it = meta.find("budget");
    return it == meta.end() ? 0 : std::stol(it->second);
}

long RunInfo::teacher_available_from() const {
    const auto it = meta.find("teacher_available_from");
    return it == meta.end() ? 0 : std::stol(it->second);
}

namespace {

RunInfo load_run(const fs::path& dir, bool load_heavy_series) {
    RunInfo info;
    info.dir = dir.string();
    {
        std::ifstream in(dir / "meta.txt");
        std::string line;
        while (std::getline(in, line)) {
            const auto eq = line.find('=');
            if (eq != std::string::npos) info.meta[line.substr(0, eq)] = line.substr(eq + 1);
        }
    }
    {
        std::ifstream in(dir / "eval.csv");
        std::string line;
        std::getline(in, line); // header
        while (std::getline(in, line)) {
            const auto fields = split_csv_line(line);
            if (fields.size() != 2) continue;
            info.eval_steps.push_back(std::stol(fields[0]));
            info.eval_scores.push_back(std::stod(fields[1]));
        }
    }
    if (load_heavy_series) {
        std::ifstream win(dir / "windows.csv");
        std::string line;
        std::getline(win, line);
        while (std::getline(win, line)) {
            const auto fields = split_csv_line(line);
            if (fields.size() != 2) continue;
            info.window_starts.push_back(std::stol(fields[0]));
            info.window_counts.push_back(std::stol(fields[1]));
        }
        std::ifstream cum(dir / "cumulative.csv");
        std::getline(cum, line);
        while (std::getline(cum, line)) {
            const auto fields = split_csv_line(line);
            if (fields.size() != 2) continue;
            info.cumulative.push_back(std::stol(fields[1]));
        }
    }
    return info;
}

} // namespace

std::vector<RunInfo> scan_runs(const std::string& root, bool load_heavy_series) {
    std::vector<RunInfo> runs;
    const fs::path root_path(root);
    if (!fs::exists(root_path)) throw std::runtime_error("scan_runs: no such directory " + root);
    if (fs::exists(root_path / "meta.txt")) runs.push_back(load_run(root_path, load_heavy_series));
    std::vector<fs::path> children;
    for (const auto& entry : fs::recursive_directory_iterator(root_path))
        if (entry.is_directory() && fs::exists(entry.path() / "meta.txt"))
            children.push_back(entry.path());
    std::sort(children.begin(), children.end());
    for (const auto& child : children) runs.push_back(load_run(child, load_heavy_series));
    return runs;
}

std::vector<AggregateRow> aggregate_runs(const std::vector<RunInfo>& runs) {
    // group key: (mode, budget, teacher_available_from)
    std::map<std::tuple<std::string, long, long>, std::vector<const RunInfo*>> groups;
    for (const auto& run : runs)
        groups[{run.mode(), run.budget(), run.teacher_available_from()}].push_back(&run);

    std::vector<AggregateRow> rows;
    for (const auto& [key, members] : groups) {
        AggregateRow row;
        row.mode = std::get<0>(key);
        row.budget = std::get<1>(key);
        row.teacher_available_from = std::get<2>(key);
        row.seeds = static_cast<int>(members.size());
        std::vector<double> finals, aucs;
        for (const auto* run : members) {
            finals.push_back(compute_final_score(run->eval_scores));
            aucs.push_back(compute_auc(run->eval_scores));
        }
        row.final_mean = mean_of(finals);
        row.final_std = stddev_of(finals);
        row.auc_mean = mean_of(aucs);
        row.auc_std = stddev_of(aucs);
        rows.push_back(row);
    }

    for (auto& row : rows) {
        if (row.mode == "ea") continue;
        for (const auto& ea : rows) {
            if (ea.mode != "ea" || ea.budget != row.budget ||
                ea.teacher_available_from != row.teacher_available_from)
                continue;
            if (ea.final_mean != 0.0) {
                row.final_vs_ea_pct = 100.0 * (row.final_mean - ea.final_mean) / std::abs(ea.final_mean);
                row.auc_vs_ea_pct = 100.0 * (row.auc_mean - ea.auc_mean) / std::abs(ea.auc_mean);
                row.has_ea_reference = true;
            }
        }
    }
    return rows;
}

void write_report_csv(const std::string& path, const std::vector<AggregateRow>& rows) {
    auto out = open_out(path);
    out << "mode,budget,teacher_available_from,seeds,final_mean,final_std,final_vs_ea_pct,"
           "auc_mean,auc_std,auc_vs_ea_pct\n";
    for (const auto& row : rows) {
        out << row.mode << ',' << row.budget << ',' << row.teacher_available_from << ','
            << row.seeds << ',' << fmt_double(row.final_mean) << ',' << fmt_double(row.final_std)
            << ',' << (row.has_ea_reference ? fmt_double(row.final_vs_ea_pct) : std::string())
            << ',' << fmt_double(row.auc_mean) << ',' << fmt_double(row.auc_std) << ','
            << (row.has_ea_reference ? fmt_double(row.auc_vs_ea_pct) : std::string()) << '\n';
    }
}

// ---------------------------------------------------------------------------
// SVG plotting

namespace {

const char* mode_color(const std::string& mode) {
    if (mode == "none") return "#7f7f7f";
    if (mode == "ea") return "#1f77b4";
    if (mode == "ra") return "#ff7f0e";
    if (mode == "ua") return "#2ca02c";
    if (mode == "sna") return "#d62728";
    if (mode == "ana") return "#9467bd";
    return "#17becf";
}

struct AxisScale {
    double lo = 0.0, hi = 1.0;
    double px0 = 0.0, px1 = 1.0;
    double map(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

void write_svg_lineplot(const std::string& path, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        std::vector<PlotSeries> series, int smooth_window) {
    if (series.empty()) throw std::invalid_argument("write_svg_lineplot: no series");
    std::size_t max_points = 0;
    for (const auto& s : series) max_points = std::max(max_points, s.xs.size());
    if (smooth_window <= 0)
        smooth_window = std::max<int>(1, static_cast<int>(std::lround(0.05 * max_points)));
    for (auto& s : series) {
        s.mean = moving_average(s.mean, smooth_window);
        if (!s.std_dev.empty()) s.std_dev = moving_average(s.std_dev, smooth_window);
    }

    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            const double sd = s.std_dev.empty() ? 0.0 : s.std_dev[i];
            x_lo = std::min(x_lo, s.xs[i]);
            x_hi = std::max(x_hi, s.xs[i]);
            y_lo = std::min(y_lo, s.mean[i] - sd);
            y_hi = std::max(y_hi, s.mean[i] + sd);
        }
    }
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    const double width = 720, height = 440;
    const double left = 70, right = 160, top = 40, bottom = 50;
    const AxisScale xs{x_lo, x_hi, left, width - right};
    const AxisScale ys{y_lo, y_hi, height - bottom, top}; // inverted

    auto out = open_out(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << " " << height << "'>\n";
    out << "<!-- moving average window: " << smooth_window << " points -->\n";
    out << "<rect width='" << width << "' height='" << height << "' fill='white'/>\n";
    out << "<text x='" << width / 2 << "' y='22' text-anchor='middle' font-size='15'>" << title
        << "</text>\n";

    // axes and ticks
    out << "<line x1='" << left << "' y1='" << top << "' x2='" << left << "' y2='"
        << height - bottom << "' stroke='black'/>\n";
    out << "<line x1='" << left << "' y1='" << height - bottom << "' x2='" << width - right
        << "' y2='" << height - bottom << "' stroke='black'/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 5.0;
        const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
        out << "<line x1='" << xs.map(xv) << "' y1='" << height - bottom << "' x2='" << xs.map(xv)
            << "' y2='" << height - bottom + 5 << "' stroke='black'/>\n";
        out << "<text x='" << xs.map(xv) << "' y='" << height - bottom + 18
            << "' text-anchor='middle' font-size='11'>" << svg_num(xv) << "</text>\n";
        out << "<line x1='" << left - 5 << "' y1='" << ys.map(yv) << "' x2='" << left << "' y2='"
            << ys.map(yv) << "' stroke='black'/>\n";
        out << "<text x='" << left - 8 << "' y='" << ys.map(yv) + 4
            << "' text-anchor='end' font-size='11'>" << svg_num(yv) << "</text>\n";
    }
    out << "<text x='" << (left + width - right) / 2 << "' y='" << height - 12
        << "' text-anchor='middle' font-size='12'>" << x_label << "</text>\n";
    out << "<text x='18' y='" << (top + height - bottom) / 2
        << "' text-anchor='middle' font-size='12' transform='rotate(-90 18 "
        << (top + height - bottom) / 2 << ")'>" << y_label << "</text>\n";

    for (const auto& s : series) {
        const char* color = mode_color(s.label);
        if (!s.std_dev.empty()) {
            out << "<path fill='" << color << "' fill-opacity='0.15' stroke='none' d='M";
            for (std::size_t i = 0; i < s.xs.size(); ++i)
                out << svg_num(xs.map(s.xs[i])) << ' ' << svg_num(ys.map(s.mean[i] + s.std_dev[i]))
                    << (i + 1 < s.xs.size() ? " L" : " ");
            for (std::size_t i = s.xs.size(); i-- > 0;)
                out << "L" << svg_num(xs.map(s.xs[i])) << ' '
                    << svg_num(ys.map(s.mean[i] - s.std_dev[i])) << ' ';
            out << "Z'/>\n";
        }
        out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < s.xs.size(); ++i)
            out << svg_num(xs.map(s.xs[i])) << ',' << svg_num(ys.map(s.mean[i])) << ' ';
        out << "'/>\n";
    }

    double legend_y = top + 10;
    for (const auto& s : series) {
        out << "<line x1='" << width - right + 12 << "' y1='" << legend_y << "' x2='"
            << width - right + 38 << "' y2='" << legend_y << "' stroke='" << mode_color(s.label)
            << "' stroke-width='2'/>\n";
        out << "<text x='" << width - right + 44 << "' y='" << legend_y + 4
            << "' font-size='12'>" << s.label << "</text>\n";
        legend_y += 18;
    }
    out << "</svg>\n";
}

namespace {

// Mean +- std across runs; series are truncated to the shortest run.
PlotSeries cross_seed_series(const std::string& label, const std::vector<const RunInfo*>& runs,
                             const std::vector<long>& (*x_of)(const RunInfo&),
                             std::vector<double> (*y_of)(const RunInfo&)) {
    PlotSeries series;
    series.label = label;
    std::size_t n = SIZE_MAX;
    for (const auto* run : runs) n = std::min(n, y_of(*run).size());
    if (n == SIZE_MAX || n == 0) return series;
    const auto& xs = x_of(*runs.front());
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> ys;
        for (const auto* run : runs) ys.push_back(y_of(*run)[i]);
        series.xs.push_back(static_cast<double>(xs[i]));
        series.mean.push_back(mean_of(ys));
        series.std_dev.push_back(stddev_of(ys));
    }
    return series;
}

std::vector<double> downsample(const std::vector<double>& v, std::size_t target) {
    if (v.size() <= target) return v;
    std::vector<double> out;
    const std::size_t stride = (v.size() + target - 1) / target;
    for (std::size_t i = 0; i < v.size(); i += stride) out.push_back(v[i]);
    return out;
}

} // namespace

void write_plots(const std::string& runs_root, const std::string& out_dir, int smooth_window) {
    const auto runs = scan_runs(runs_root, true);
    if (runs.empty()) throw std::runtime_error("write_plots: no runs under " + runs_root);
    fs::create_directories(out_dir);

    std::map<std::pair<long, long>, std::map<std::string, std::vector<const RunInfo*>>> groups;
    for (const auto& run : runs)
        groups[{run.budget(), run.teacher_available_from()}][run.mode()].push_back(&run);

    for (const auto& [key, by_mode] : groups) {
        const auto [budget, available_from] = key;
        const std::string suffix = "b" + std::to_string(budget) +
                                   (available_from > 0 ? "_t" + std::to_string(available_from) : "");

        std::vector<PlotSeries> eval_series, cumulative_series, window_series;
        for (const auto& [mode, members] : by_mode) {
            PlotSeries ev = cross_seed_series(
                mode, members, [](const RunInfo& r) -> const std::vector<long>& { return r.eval_steps; },
                [](const RunInfo& r) { return r.eval_scores; });
            if (!ev.xs.empty()) eval_series.push_back(std::move(ev));

            std::size_t n = SIZE_MAX;
            for (const auto* run : members) n = std::min(n, run->cumulative.size());
            if (n != SIZE_MAX && n > 0) {
                PlotSeries cum;
                cum.label = mode;
                std::vector<double> mean_curve(n);
                for (std::size_t i = 0; i < n; ++i) {
                    std::vector<double> ys;
                    for (const auto* run : members) ys.push_back(static_cast<double>(run->cumulative[i]));
                    mean_curve[i] = mean_of(ys);
                }
                const auto sampled = downsample(mean_curve, 1000);
                const std::size_t stride = (n + sampled.size() - 1) / sampled.size();
                for (std::size_t i = 0; i < sampled.size(); ++i) {
                    cum.xs.push_back(static_cast<double>(i * stride + 1));
                    cum.mean.push_back(sampled[i]);
                }
                cumulative_series.push_back(std::move(cum));
            }

            PlotSeries win = cross_seed_series(
                mode, members,
                [](const RunInfo& r) -> const std::vector<long>& { return r.window_starts; },
                [](const RunInfo& r) {
                    std::vector<double> out(r.window_counts.begin(), r.window_counts.end());
                    return out;
                });
            if (!win.xs.empty()) window_series.push_back(std::move(win));
        }

        const fs::path dir(out_dir);
        if (!eval_series.empty())
            write_svg_lineplot((dir / ("eval_" + suffix + ".svg")).string(),
                               "Evaluation score (budget " + std::to_string(budget) + ")", "step",
                               "evaluation score", eval_series, smooth_window);
        if (!cumulative_series.empty())
            write_svg_lineplot((dir / ("cumulative_" + suffix + ".svg")).string(),
                               "Cumulative advices (budget " + std::to_string(budget) + ")", "step",
                               "advices taken", cumulative_series, 1);
        if (!window_series.empty())
            write_svg_lineplot((dir / ("windows_" + suffix + ".svg")).string(),
                               "Advices per 100 steps (budget " + std::to_string(budget) + ")",
                               "step", "advices / 100 steps", window_series, smooth_window);
    }
}

} // namespace advice::harness
