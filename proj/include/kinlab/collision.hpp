#pragma once

#include "kinlab/grid.hpp"

#include <utility>

namespace kinlab {

/// Non-cutoff collision kernel B(v-u, sigma) = |v-u|^gamma b(cos theta) with
/// the grazing singularity regularized at theta_min. The concrete angular
/// factor is b(cos theta) = theta^{-1-2s} / sin theta on [theta_min, pi/2],
/// zero below theta_min.
struct KernelSpec {
    double gamma = 1.0;
    double s = 0.5;
    double theta_min = 0.1;
    int n_theta = 16;
    int n_phi = 8;
    double r_min = 0.0;  // relative-speed clamp for gamma < 0; 0 = h/2 at use site

    void validate() const;
    bool hard() const { return gamma >= 0.0; }
};

/// Amplitude and cutoff radius of the velocity-space damping split.
struct SplitOperatorConfig {
    double amplitude = 40.0;  // A
    double cutoff = 4.0;      // M

    void validate() const;
};

enum class InterpOrder { Linear, Cubic };

double kernel_angular(double theta, const KernelSpec& spec);

std::pair<Vec3, Vec3> post_collision(const Vec3& v, const Vec3& u, const Vec3& sigma);

/// Smooth bump: 1 on |v| <= M, 0 on |v| >= 2M.
double cutoff_chi(double speed, double cutoff_radius);

/// Gauss-Legendre rule in cos(theta) on [theta_min, pi/2] times uniform
/// azimuth, with the angular kernel factor baked into the weights.
struct SigmaRule {
    std::vector<double> cos_theta;
    std::vector<double> sin_theta;
    std::vector<double> weight_b;  // GL weight * b(cos theta)
    std::vector<double> cos_phi;
    std::vector<double> sin_phi;
    double phi_weight = 0.0;

    static SigmaRule build(const KernelSpec& spec);
    std::size_t n_theta() const { return cos_theta.size(); }
    std::size_t n_phi() const { return cos_phi.size(); }
    /// 2 pi * int b sin theta dtheta over the regularized range
    double total_b_mass() const;
};

/// Q(G,F) by direct quadrature: relative-velocity lattice sum times the
/// sigma rule, gain and loss paired per quadrature point. Off-grid values
/// of G and F are interpolated with zero extension outside the box.
template <class T>
std::vector<T> collide_reference(const std::vector<T>& G, const std::vector<T>& F,
                                 const KernelSpec& spec, const VelocityGrid& grid,
                                 InterpOrder order = InterpOrder::Linear);

/// Loss-term collision frequency nu0(v) = int B mu(u) du dsigma.
RField collision_frequency(const VelocityGrid& grid, const KernelSpec& spec, const RField& mu);

/// Dense matrix of g -> Q(mu,g) + Q(g,mu) under the reference quadrature.
/// Memory is O(N^6); intended for small grids as a cross-check path.
std::vector<double> assemble_curly_dense(const VelocityGrid& grid, const KernelSpec& spec,
                                         const RField& mu, InterpOrder order = InterpOrder::Linear);

}  // namespace kinlab
