#include "uavsim/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace uavsim {

double mean(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc / values.size();
}

double sample_stddev(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    const double m = mean(values);
    double acc = 0.0;
    for (double v : values) acc += (v - m) * (v - m);
    return std::sqrt(acc / (values.size() - 1));
}

std::vector<double> moving_average(const std::vector<double>& values, int window) {
    std::vector<double> out(values.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc += values[i];
        if (i >= static_cast<std::size_t>(window)) acc -= values[i - window];
        const std::size_t n = std::min(i + 1, static_cast<std::size_t>(window));
        out[i] = acc / static_cast<double>(n);
    }
    return out;
}

double linear_slope(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    const double x_mean = (n - 1) / 2.0;
    const double y_mean = mean(values);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - x_mean;
        num += dx * (values[i] - y_mean);
        den += dx * dx;
    }
    return num / den;
}

long convergence_step(const std::vector<LossEntry>& log, int window, double plateau_fraction,
                      double factor) {
    if (log.empty()) return 0;
    std::vector<double> losses(log.size());
    for (std::size_t i = 0; i < log.size(); ++i) losses[i] = log[i].loss;
    const std::vector<double> smooth = moving_average(losses, window);

    const std::size_t tail =
        std::max<std::size_t>(1, static_cast<std::size_t>(smooth.size() * plateau_fraction));
    double plateau = 0.0;
    for (std::size_t i = smooth.size() - tail; i < smooth.size(); ++i) plateau += smooth[i];
    plateau /= tail;

    std::size_t peak = 0;
    for (std::size_t i = 1; i < smooth.size(); ++i) {
        if (smooth[i] > smooth[peak]) peak = i;
    }
    const double threshold = factor * plateau;
    for (std::size_t i = peak; i < smooth.size(); ++i) {
        if (smooth[i] <= threshold) return log[i].step;
    }
    return log.back().step;
}

}  // namespace uavsim
