#include "outflow/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "outflow/errors.hpp"

namespace outflow {

namespace {

// 15-point Kronrod abscissae on [-1,1] (positive half) with the embedded
// 7-point Gauss rule sitting on xgk[1], xgk[3], xgk[5], xgk[7].
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = wgk[7] * fc;
    double g = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double fsum = f(c - dx) + f(c + dx);
        k += wgk[j] * fsum;
        if (j % 2 == 1) g += wg[j / 2] * fsum;
    }
    k *= h;
    g *= h;
    return {k, std::abs(k - g)};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    const double sign = (b >= a) ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double total_len = hi - lo;

    struct Interval {
        double a, b;
        int depth;
    };
    std::vector<Interval> stack{{lo, hi, 0}};
    double sum = 0.0;
    std::size_t panels = 0;
    constexpr std::size_t max_panels = 200000;
    constexpr int max_depth = 60;

    while (!stack.empty()) {
        const Interval iv = stack.back();
        stack.pop_back();
        if (++panels > max_panels)
            throw numerical_error("adaptive quadrature: interval budget exhausted");
        const PanelResult r = gk15(f, iv.a, iv.b);
        const double local_tol = abs_tol * (iv.b - iv.a) / total_len;
        if (r.err <= local_tol || iv.depth >= max_depth) {
            sum += r.kronrod;
        } else {
            const double m = 0.5 * (iv.a + iv.b);
            stack.push_back({iv.a, m, iv.depth + 1});
            stack.push_back({m, iv.b, iv.depth + 1});
        }
    }
    return sign * sum;
}

} // namespace outflow
