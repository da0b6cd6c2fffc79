#include "moran/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "moran/errors.hpp"

namespace moran {

std::pair<std::size_t, std::size_t> middle_half_window(std::size_t n_points) {
    std::size_t first = n_points / 4;
    std::size_t last = n_points - n_points / 4;
    if (last - first < 4) {
        first = 0;
        last = n_points;
    }
    return {first, last};
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points,
                   std::size_t first, std::size_t last) {
    if (last > points.size()) last = points.size();
    if (last < first || last - first < 4)
        throw InsufficientPoints("slope fit needs at least 4 points in the window");
    const std::size_t n = last - first;
    double sx = 0, sy = 0;
    for (std::size_t i = first; i < last; ++i) {
        sx += points[i].first;
        sy += points[i].second;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = first; i < last; ++i) {
        double dx = points[i].first - mx;
        sxx += dx * dx;
        sxy += dx * (points[i].second - my);
    }
    if (sxx == 0.0) throw InsufficientPoints("slope fit needs distinct abscissae");

    SlopeFit fit;
    fit.window_first = first;
    fit.window_last = last;
    fit.least_squares_slope = sxy / sxx;
    double intercept = my - fit.least_squares_slope * mx;
    double ss = 0;
    for (std::size_t i = first; i < last; ++i) {
        double e = points[i].second - (intercept + fit.least_squares_slope * points[i].first);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);

    bool any = false;
    for (std::size_t i = first; i < last; ++i) {
        for (std::size_t j = i + 1; j < last; ++j) {
            double dx = points[j].first - points[i].first;
            if (dx == 0.0) continue;
            double s = (points[j].second - points[i].second) / dx;
            if (!any) {
                fit.lower_slope = fit.upper_slope = s;
                any = true;
            } else {
                fit.lower_slope = std::min(fit.lower_slope, s);
                fit.upper_slope = std::max(fit.upper_slope, s);
            }
        }
    }
    return fit;
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
    auto [first, last] = middle_half_window(points.size());
    return fit_slope(points, first, last);
}

namespace {

// Incomplete gamma by series (x < a+1) and continued fraction (otherwise),
// after Numerical Recipes.
double gser(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gcf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gammq(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::domain_error("gammq: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gser(a, x);
    return gcf(a, x);
}

double chi2_sf(double statistic, int dof) {
    if (statistic <= 0.0) return 1.0;
    return gammq(0.5 * dof, 0.5 * statistic);
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::domain_error("quantile of empty sample");
    std::sort(values.begin(), values.end());
    double pos = q * (values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    double frac = pos - lo;
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

}  // namespace moran
