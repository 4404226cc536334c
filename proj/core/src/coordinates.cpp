#include "outflow/coordinates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace outflow {

double CoordinateMap::outer_mass_M(double t) const {
    if (t < 0.0) throw std::out_of_range("outer_mass_M: negative time");
    return M0 + rho1 * ub_abs * t;
}

double mass_coordinate_X(const std::vector<double>& r_nodes,
                         const std::vector<double>& rho_nodes, int n, double r,
                         double B_t) {
    const std::size_t m = r_nodes.size();
    if (m < 2 || rho_nodes.size() != m)
        throw std::invalid_argument("mass_coordinate_X: need matching grids with >= 2 nodes");
    if (!(r >= r_nodes.front() && r <= r_nodes.back()))
        throw std::out_of_range("mass_coordinate_X: radius outside field support");
    for (double rho : rho_nodes)
        if (!(rho > 0.0))
            throw std::domain_error("mass_coordinate_X: nonpositive density in field");

    auto f = [&](std::size_t i) {
        return rho_nodes[i] * std::pow(r_nodes[i], n - 1.0);
    };
    double acc = B_t;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (r <= r_nodes[i + 1]) {
            // partial cell: trapezoid against the linearly interpolated density
            const double t = (r - r_nodes[i]) / (r_nodes[i + 1] - r_nodes[i]);
            const double rho_r = (1.0 - t) * rho_nodes[i] + t * rho_nodes[i + 1];
            const double f_r = rho_r * std::pow(r, n - 1.0);
            acc += 0.5 * (f(i) + f_r) * (r - r_nodes[i]);
            return acc;
        }
        acc += 0.5 * (f(i) + f(i + 1)) * (r_nodes[i + 1] - r_nodes[i]);
    }
    return acc;
}

std::vector<double> radius_R_all(const std::vector<double>& x_nodes,
                                 const std::vector<double>& v_nodes, int n) {
    const std::size_t m = x_nodes.size();
    if (m < 2 || v_nodes.size() != m)
        throw std::invalid_argument("radius_R_all: need matching grids with >= 2 nodes");
    std::vector<double> r(m);
    double acc = 0.0;
    r[0] = 1.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (!(v_nodes[i] > 0.0) || !(v_nodes[i + 1] > 0.0))
            throw std::domain_error("radius_R_all: nonpositive specific volume");
        acc += 0.5 * (v_nodes[i] + v_nodes[i + 1]) * (x_nodes[i + 1] - x_nodes[i]);
        r[i + 1] = std::pow(1.0 + n * acc, 1.0 / n);
    }
    return r;
}

double radius_R(const std::vector<double>& x_nodes, const std::vector<double>& v_nodes,
                int n, double x) {
    const std::size_t m = x_nodes.size();
    if (m < 2 || v_nodes.size() != m)
        throw std::invalid_argument("radius_R: need matching grids with >= 2 nodes");
    if (!(x >= x_nodes.front() && x <= x_nodes.back()))
        throw std::out_of_range("radius_R: mass coordinate outside [B(t), M(t)]");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (!(v_nodes[i] > 0.0) || !(v_nodes[i + 1] > 0.0))
            throw std::domain_error("radius_R: nonpositive specific volume");
        if (x <= x_nodes[i + 1]) {
            const double t = (x - x_nodes[i]) / (x_nodes[i + 1] - x_nodes[i]);
            const double v_x = (1.0 - t) * v_nodes[i] + t * v_nodes[i + 1];
            acc += 0.5 * (v_nodes[i] + v_x) * (x - x_nodes[i]);
            return std::pow(1.0 + n * acc, 1.0 / n);
        }
        acc += 0.5 * (v_nodes[i] + v_nodes[i + 1]) * (x_nodes[i + 1] - x_nodes[i]);
    }
    return std::pow(1.0 + n * acc, 1.0 / n);
}

double state_mass_coordinate(const std::vector<double>& x_nodes,
                             const std::vector<double>& v_nodes,
                             const std::vector<double>& r_nodes, int n, double r) {
    const std::size_t m = x_nodes.size();
    if (m < 2 || v_nodes.size() != m || r_nodes.size() != m)
        throw std::invalid_argument("state_mass_coordinate: need matching grids");
    if (!(r >= r_nodes.front() && r <= r_nodes.back()))
        throw std::out_of_range("state_mass_coordinate: radius outside state support");
    auto it = std::upper_bound(r_nodes.begin(), r_nodes.end(), r);
    std::size_t j = static_cast<std::size_t>(it - r_nodes.begin());
    if (j > 0) --j;
    if (j + 1 >= m) j = m - 2;
    // Per cell the (3.12)-map is r^n = r_j^n + n vbar (x - x_j); invert it.
    const double vbar = 0.5 * (v_nodes[j] + v_nodes[j + 1]);
    const double rn = std::pow(r, static_cast<double>(n));
    const double rjn = std::pow(r_nodes[j], static_cast<double>(n));
    return x_nodes[j] + (rn - rjn) / (n * vbar);
}

} // namespace outflow
