#include "outflow/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace outflow {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("MonotoneCubic: need >= 2 nodes with matching values");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i + 1] > x_[i]))
            throw std::invalid_argument("MonotoneCubic: abscissae must be strictly increasing");

    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    if (n == 2) {
        d_[0] = d_[1] = delta[0];
    } else {
        // interior: weighted harmonic mean when the secants agree in sign
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] > 0.0) {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        // one-sided ends with Fritsch-Carlson limiting
        auto end_slope = [](double h0, double h1, double d0, double d1) {
            double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if (d * d0 <= 0.0)
                d = 0.0;
            else if (d0 * d1 <= 0.0 && std::abs(d) > 3.0 * std::abs(d0))
                d = 3.0 * d0;
            return d;
        };
        d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
}

std::size_t MonotoneCubic::find_cell(double x) const {
    if (!(x >= x_.front() && x <= x_.back()))
        throw std::out_of_range("MonotoneCubic: query outside interpolation range");
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t j = static_cast<std::size_t>(it - x_.begin());
    if (j > 0) --j;
    if (j + 1 >= x_.size()) j = x_.size() - 2;
    return j;
}

double MonotoneCubic::operator()(double x) const {
    const std::size_t j = find_cell(x);
    const double h = x_[j + 1] - x_[j];
    const double t = (x - x_[j]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[j] + h10 * h * d_[j] + h01 * y_[j + 1] + h11 * h * d_[j + 1];
}

double MonotoneCubic::derivative(double x) const {
    const std::size_t j = find_cell(x);
    const double h = x_[j + 1] - x_[j];
    const double t = (x - x_[j]) / h;
    const double t2 = t * t;
    const double g00 = (6 * t2 - 6 * t) / h, g10 = 3 * t2 - 4 * t + 1;
    const double g01 = (-6 * t2 + 6 * t) / h, g11 = 3 * t2 - 2 * t;
    return g00 * y_[j] + g10 * d_[j] + g01 * y_[j + 1] + g11 * d_[j + 1];
}

double lerp_at(const std::vector<double>& x, const std::vector<double>& y, double xq) {
    if (x.size() < 2 || x.size() != y.size())
        throw std::invalid_argument("lerp_at: need >= 2 matching nodes");
    if (!(xq >= x.front() && xq <= x.back()))
        throw std::out_of_range("lerp_at: query outside range");
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    std::size_t j = static_cast<std::size_t>(it - x.begin());
    if (j > 0) --j;
    if (j + 1 >= x.size()) j = x.size() - 2;
    const double t = (xq - x[j]) / (x[j + 1] - x[j]);
    return (1.0 - t) * y[j] + t * y[j + 1];
}

} // namespace outflow
