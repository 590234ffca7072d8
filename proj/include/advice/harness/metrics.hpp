#pragma once

#include <vector>

namespace advice::harness {

// Trapezoidal area over evaluation index with unit spacing; a single point
// degenerates to its own value.
double compute_auc(const std::vector<double>& curve);

// Mean of the last 50 evaluation values. Shorter curves fall back to the
// mean of everything and set *short_curve.
double compute_final_score(const std::vector<double>& curve, bool* short_curve = nullptr);

// Centered moving average; the window is truncated at the edges. window <= 1
// returns the series unchanged.
std::vector<double> moving_average(const std::vector<double>& series, int window);

double mean_of(const std::vector<double>& values);
double stddev_of(const std::vector<double>& values); // population std

} // namespace advice::harness
