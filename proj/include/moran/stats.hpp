#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace moran {

// Least-squares slope plus chord-slope bracket over a window of (x, y) points.
struct SlopeFit {
    double lower_slope = 0.0;
    double upper_slope = 0.0;
    double least_squares_slope = 0.0;
    double residual = 0.0;  // RMS residual of the fit
    std::size_t window_first = 0;
    std::size_t window_last = 0;  // exclusive
};

// Drops the coarsest and finest quarters of the available scales.
std::pair<std::size_t, std::size_t> middle_half_window(std::size_t n_points);

// Fits over points[first..last). Throws InsufficientPoints when the window
// holds fewer than 4 points. The chord bracket is over all point pairs in the
// window, so it always contains the least-squares slope.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points,
                   std::size_t first, std::size_t last);
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

// Regularized upper incomplete gamma Q(a, x); series + continued fraction.
double gammq(double a, double x);

// Survival function of the chi-square distribution with k degrees of freedom.
double chi2_sf(double statistic, int dof);

double quantile(std::vector<double> values, double q);

}  // namespace moran
