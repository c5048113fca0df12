#include "kinlab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kinlab {

double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

double bracket_weight(const Vec3& v, double k) {
    return std::pow(1.0 + norm2(v), 0.5 * k);
}

VelocityGrid VelocityGrid::build(double radius, int points_per_axis) {
    if (radius <= 0.0)
        throw std::invalid_argument("velocity grid radius must be positive");
    if (points_per_axis % 2 != 0)
        throw std::invalid_argument("N_v must be even");
    if (points_per_axis < 8)
        throw std::invalid_argument("N_v must be at least 8");

    VelocityGrid g;
    g.radius = radius;
    g.n = points_per_axis;
    g.h = 2.0 * radius / points_per_axis;
    g.axis.resize(points_per_axis);
    for (int i = 0; i < points_per_axis; ++i)
        g.axis[i] = -radius + (i + 0.5) * g.h;
    return g;
}

FrequencyGrid FrequencyGrid::build(int dim, double max_freq, int n_per_axis) {
    if (dim != 1 && dim != 3)
        throw std::invalid_argument("frequency grid dim must be 1 or 3");
    if (n_per_axis < 1 || n_per_axis % 2 == 0)
        throw std::invalid_argument("N_xi must be odd");
    if (max_freq < 0.0 || (n_per_axis > 1 && max_freq <= 0.0))
        throw std::invalid_argument("max frequency must be positive");

    FrequencyGrid g;
    g.dim = dim;
    g.max_freq = max_freq;
    g.n_per_axis = n_per_axis;
    g.spacing = (n_per_axis > 1) ? 2.0 * max_freq / (n_per_axis - 1) : 1.0;
    g.axis.resize(n_per_axis);
    for (int i = 0; i < n_per_axis; ++i)
        g.axis[i] = (n_per_axis > 1) ? -max_freq + i * g.spacing : 0.0;
    // keep xi = 0 exact at the center mode
    g.axis[(n_per_axis - 1) / 2] = 0.0;
    return g;
}

std::size_t FrequencyGrid::size() const {
    std::size_t n = static_cast<std::size_t>(n_per_axis);
    return dim == 1 ? n : n * n * n;
}

double FrequencyGrid::weight() const {
    double w = spacing;
    if (dim == 3) w = spacing * spacing * spacing;
    return w;
}

std::array<int, 3> FrequencyGrid::coords(std::size_t idx) const {
    int c = (n_per_axis - 1) / 2;
    if (dim == 1) return {static_cast<int>(idx) - c, 0, 0};
    int k = static_cast<int>(idx % n_per_axis);
    int j = static_cast<int>((idx / n_per_axis) % n_per_axis);
    int i = static_cast<int>(idx / (static_cast<std::size_t>(n_per_axis) * n_per_axis));
    return {i - c, j - c, k - c};
}

bool FrequencyGrid::in_range(const std::array<int, 3>& c) const {
    int half = (n_per_axis - 1) / 2;
    if (dim == 1)
        return std::abs(c[0]) <= half && c[1] == 0 && c[2] == 0;
    return std::abs(c[0]) <= half && std::abs(c[1]) <= half && std::abs(c[2]) <= half;
}

std::size_t FrequencyGrid::index_of(const std::array<int, 3>& c) const {
    int half = (n_per_axis - 1) / 2;
    if (dim == 1) return static_cast<std::size_t>(c[0] + half);
    return (static_cast<std::size_t>(c[0] + half) * n_per_axis + (c[1] + half)) * n_per_axis +
           (c[2] + half);
}

Vec3 FrequencyGrid::mode(std::size_t idx) const {
    auto c = coords(idx);
    if (dim == 1) return {spacing * c[0], 0.0, 0.0};
    return {spacing * c[0], spacing * c[1], spacing * c[2]};
}

std::size_t FrequencyGrid::center() const {
    auto c = std::array<int, 3>{0, 0, 0};
    return index_of(c);
}

std::size_t FrequencyGrid::negate(std::size_t idx) const {
    auto c = coords(idx);
    return index_of({-c[0], -c[1], -c[2]});
}

bool FrequencyGrid::difference(std::size_t a, std::size_t b, std::size_t& out) const {
    auto ca = coords(a), cb = coords(b);
    std::array<int, 3> d{ca[0] - cb[0], ca[1] - cb[1], ca[2] - cb[2]};
    if (!in_range(d)) return false;
    out = index_of(d);
    return true;
}

WeightTable WeightTable::build(const VelocityGrid& grid, double k) {
    WeightTable t;
    t.exponent = k;
    t.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        t.values[i] = bracket_weight(grid.node(i), k);
    return t;
}

RField maxwellian(const VelocityGrid& grid) {
    const double c = std::pow(2.0 * M_PI, -1.5);
    RField mu(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        mu[i] = c * std::exp(-0.5 * norm2(grid.node(i)));
    return mu;
}

}  // namespace kinlab
