#pragma once

#include <map>
#include <string>
#include <vector>

#include "advice/harness/session.hpp"

namespace advice::harness {

// Writes eval.csv, windows.csv, cumulative.csv, decisions.csv and meta.txt
// into config.out_dir (created if needed).
void write_session_outputs(const SessionConfig& config, const SessionRecord& record);

struct RunInfo {
    std::string dir;
    std::map<std::string, std::string> meta;
    std::vector<long> eval_steps;
    std::vector<double> eval_scores;
    std::vector<long> window_starts;
    std::vector<long> window_counts;
    std::vector<long> cumulative;

    std::string mode() const;
    long budget() const;
    long teacher_available_from() const;
};

// Scans root for directories containing meta.txt (root itself counts).
std::vector<RunInfo> scan_runs(const std::string& root, bool load_heavy_series = false);

struct AggregateRow {
    std::string mode;
    long budget = 0;
    long teacher_available_from = 0;
    int seeds = 0;
    double final_mean = 0.0, final_std = 0.0;
    double auc_mean = 0.0, auc_std = 0.0;
    double final_vs_ea_pct = 0.0, auc_vs_ea_pct = 0.0;
    bool has_ea_reference = false;
};

// Per-(mode, budget, availability) mean +- std of Final Score and AUC across
// seeds, with relative percentages against the EA row of the same group.
std::vector<AggregateRow> aggregate_runs(const std::vector<RunInfo>& runs);
void write_report_csv(const std::string& path, const std::vector<AggregateRow>& rows);

struct PlotSeries {
    std::string label;
    std::vector<double> xs;
    std::vector<double> mean;
    std::vector<double> std_dev; // empty -> no shading
};

// Line plot with moving-average smoothing and +-std shading. A smooth_window
// of 0 picks 5% of the points; the window used is recorded in the SVG.
void write_svg_lineplot(const std::string& path, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        std::vector<PlotSeries> series, int smooth_window);

// Evaluation, cumulative-advice and advice-window plots for every
// (budget, availability) group found under runs_root.
void write_plots(const std::string& runs_root, const std::string& out_dir, int smooth_window = 0);

} // namespace advice::harness
