#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace kinlab {

using Vec3 = std::array<double, 3>;
using RField = std::vector<double>;
using CField = std::vector<std::complex<double>>;
using Complex = std::complex<double>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Vec3& a) { return dot(a, a); }
double norm(const Vec3& a);

/// ⟨v⟩^k = (1 + |v|^2)^{k/2}
double bracket_weight(const Vec3& v, double k);

/// Uniform cell-centered lattice on [-radius, radius]^3. There is no node at
/// v = 0 (points_per_axis is even), and the node set is symmetric under
/// v -> -v. Quadrature weight is h^3 per node.
struct VelocityGrid {
    double radius = 0.0;
    int n = 0;
    double h = 0.0;
    std::vector<double> axis;

    static VelocityGrid build(double radius, int points_per_axis);

    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    double cell_weight() const { return h * h * h; }

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }
    Vec3 node(std::size_t idx) const {
        int k = static_cast<int>(idx % n);
        int j = static_cast<int>((idx / n) % n);
        int i = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
        return {axis[i], axis[j], axis[k]};
    }
    // index of -v_i; exists by construction
    std::size_t mirror(std::size_t idx) const {
        int k = static_cast<int>(idx % n);
        int j = static_cast<int>((idx / n) % n);
        int i = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
        return index(n - 1 - i, n - 1 - j, n - 1 - k);
    }
};

/// Uniform symmetric quadrature grid for the spatial-frequency variable.
/// dim is 1 (slab reduction, modes along the first axis) or 3. The mode
/// count per axis is odd so xi = 0 is always present.
struct FrequencyGrid {
    int dim = 1;
    double max_freq = 0.0;
    int n_per_axis = 0;
    double spacing = 0.0;
    std::vector<double> axis;

    static FrequencyGrid build(int dim, double max_freq, int n_per_axis);

    std::size_t size() const;
    double weight() const;  // spacing^dim
    Vec3 mode(std::size_t idx) const;
    std::array<int, 3> coords(std::size_t idx) const;  // integer offsets from center
    std::size_t index_of(const std::array<int, 3>& c) const;
    bool in_range(const std::array<int, 3>& c) const;
    std::size_t center() const;
    std::size_t negate(std::size_t idx) const;
    // index of xi_a - xi_b if on the grid
    bool difference(std::size_t a, std::size_t b, std::size_t& out) const;
};

/// Nodewise table of ⟨v⟩^k over a velocity grid.
struct WeightTable {
    double exponent = 0.0;
    std::vector<double> values;

    static WeightTable build(const VelocityGrid& grid, double k);
};

/// mu(v) = (2 pi)^{-3/2} exp(-|v|^2 / 2) sampled on the grid.
RField maxwellian(const VelocityGrid& grid);

}  // namespace kinlab
