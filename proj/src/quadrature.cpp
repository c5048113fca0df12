#include "kinlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace kinlab {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("quadrature order must be positive");
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton from the Chebyshev-like initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

void legendre_all(double x, int nmax, double* out) {
    out[0] = 1.0;
    if (nmax == 0) return;
    out[1] = x;
    for (int n = 1; n < nmax; ++n)
        out[n + 1] = ((2.0 * n + 1.0) * x * out[n] - n * out[n - 1]) / (n + 1.0);
}

void sph_bessel_all(double x, int nmax, double* out) {
    if (x < 1e-10) {
        out[0] = 1.0 - x * x / 6.0;
        for (int n = 1; n <= nmax; ++n) out[n] = 0.0;
        if (nmax >= 1) out[1] = x / 3.0;
        return;
    }
    if (static_cast<double>(nmax) < 0.5 * x) {
        // upward recurrence is stable while n < x
        double j0 = std::sin(x) / x;
        out[0] = j0;
        if (nmax == 0) return;
        double j1 = j0 / x - std::cos(x) / x;
        out[1] = j1;
        for (int n = 1; n < nmax; ++n) out[n + 1] = (2.0 * n + 1.0) / x * out[n] - out[n - 1];
        return;
    }
    // Miller's downward recurrence, normalized by sum (2n+1) j_n^2 = 1
    int top = nmax + 16 + static_cast<int>(x);
    std::vector<double> tmp(top + 2, 0.0);
    tmp[top + 1] = 0.0;
    tmp[top] = 1e-30;
    for (int n = top; n >= 1; --n) {
        tmp[n - 1] = (2.0 * n + 1.0) / x * tmp[n] - tmp[n + 1];
        if (std::abs(tmp[n - 1]) > 1e280) {
            for (int m = n - 1; m <= top + 1; ++m) tmp[m] *= 1e-280;
        }
    }
    double s = 0.0;
    for (int n = 0; n <= top; ++n) s += (2.0 * n + 1.0) * tmp[n] * tmp[n];
    double scale = 1.0 / std::sqrt(s);
    // fix the overall sign from j_0
    if (tmp[0] * std::sin(x) < 0.0) scale = -scale;
    for (int n = 0; n <= nmax; ++n) out[n] = tmp[n] * scale;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size() || t.size() < 2)
        throw std::invalid_argument("trapezoid needs at least two samples");
    double s = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
    return s;
}

}  // namespace kinlab
