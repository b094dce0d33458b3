#pragma once

#include <vector>

#include "uavsim/trainer.hpp"

namespace uavsim {

double mean(const std::vector<double>& values);
double sample_stddev(const std::vector<double>& values);

// Trailing moving average; entry i averages the window ending at i.
std::vector<double> moving_average(const std::vector<double>& values, int window);

// Least-squares slope of values against their index.
double linear_slope(const std::vector<double>& values);

// Step count at which the smoothed loss first settles: the first point at or
// after the smoothed peak that drops below `factor` times the final plateau
// (the mean of the trailing `plateau_fraction` of the smoothed curve).
// Returns the last logged step when the curve never settles.
long convergence_step(const std::vector<LossEntry>& log, int window = 1000,
                      double plateau_fraction = 0.1, double factor = 1.5);

}  // namespace uavsim
