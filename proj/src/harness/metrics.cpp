#include "advice/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace advice::harness {

double compute_auc(const std::vector<double>& curve) {
    if (curve.empty()) throw std::invalid_argument("compute_auc: empty curve");
    if (curve.size() == 1) return curve[0];
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) area += 0.5 * (curve[i - 1] + curve[i]);
    return area;
}

double compute_final_score(const std::vector<double>& curve, bool* short_curve) {
    if (curve.empty()) throw std::invalid_argument("compute_final_score: empty curve");
    constexpr std::size_t kWindow = 50;
    const bool short_flag = curve.size() < kWindow;
    if (short_curve != nullptr) *short_curve = short_flag;
    const std::size_t n = short_flag ? curve.size() : kWindow;
    double total = 0.0;
    for (std::size_t i = curve.size() - n; i < curve.size(); ++i) total += curve[i];
    return total / n;
}

std::vector<double> moving_average(const std::vector<double>& series, int window) {
    if (window <= 1 || series.size() <= 1) return series;
    const int n = static_cast<int>(series.size());
    const int half = window / 2;
    std::vector<double> out(series.size());
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - half);
        const int hi = std::min(n - 1, i + half);
        double sum = 0.0;
        for (int j = lo; j <= hi; ++j) sum += series[j];
        out[i] = sum / (hi - lo + 1);
    }
    return out;
}

double mean_of(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / values.size();
}

double stddev_of(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    const double m = mean_of(values);
    double acc = 0.0;
    for (double v : values) acc += (v - m) * (v - m);
    return std::sqrt(acc / values.size());
}

} // namespace advice::harness
