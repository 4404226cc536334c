#pragma once

#include <vector>

namespace outflow {

// Monotone cubic Hermite interpolation (Fritsch-Carlson slope limiting).
// Preserves monotonicity of the data between nodes and reproduces nodal
// values exactly.
class MonotoneCubic {
  public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

  private:
    std::size_t find_cell(double x) const;
    std::vector<double> x_, y_, d_; // nodes, values, nodal slopes
};

// Linear interpolation on a strictly increasing abscissa (used where
// monotone shape preservation is not required).
double lerp_at(const std::vector<double>& x, const std::vector<double>& y, double xq);

} // namespace outflow
