#pragma once

#include "kinlab/collision.hpp"
#include "kinlab/fourier.hpp"
#include "kinlab/grid.hpp"

#include <vector>

namespace kinlab {

struct SpectralParams {
    int k_half = 0;      // mode band |l_i| <= k_half; 0 = auto from grid
    double r_q = 0.0;    // relative-velocity truncation radius; 0 = grid radius
    int n_radial = 48;
    int n_legendre = 0;  // 0 = auto from bandwidth

    static SpectralParams auto_for(const VelocityGrid& grid);
};

/// Fourier-Galerkin representation of the collision operator on the
/// periodized velocity box. The bilinear form acts on truncated mode bands
/// through a precomputed coupling matrix; the zero mode of the output
/// vanishes identically (mass is conserved exactly).
class SpectralQ {
  public:
    SpectralQ(const VelocityGrid& grid, const KernelSpec& spec, SpectralParams params = {});

    int k_half() const { return k_; }
    std::size_t mode_count() const { return modes_; }
    const std::vector<double>& coupling() const { return w_; }
    double coupling(int ti, int tj) const { return w_[static_cast<std::size_t>(ti) * modes_ + tj]; }

    /// Gather/scatter between full DFT coefficient arrays and the band.
    void gather(const CField& hat_full, CField& trunc) const;
    void scatter(const CField& trunc, CField& hat_full) const;

    /// out_k = sum_{l+m=k} G_l F_m W(l,m) over the band (optionally capped
    /// to a narrower sub-band |l_i|,|m_i|,|k_i| <= cap).
    void convolve(const CField& G_trunc, const CField& F_trunc, CField& out_trunc,
                  int cap = -1) const;

    /// Nodal-in, nodal-out application.
    CField apply(const CField& G, const CField& F, const FourierBox& box) const;

    /// Band matrix of g -> Q(mu, g) + Q(g, mu), row-major modes x modes.
    std::vector<double> linearized_matrix(const CField& mu_trunc) const;

    /// Direct quadrature of one kernel coefficient (validation oracle).
    double coupling_brute(const std::array<int, 3>& l, const std::array<int, 3>& m, int n_r,
                          int n_sphere, int n_theta, int n_phi) const;

    std::array<int, 3> mode_of(std::size_t t) const;
    std::size_t index_of(const std::array<int, 3>& l) const;

  private:
    int k_;
    int side_;
    std::size_t modes_;
    double zeta_half_;  // pi / (2R): |P| = zeta_half * |l+m|
    double gamma_;
    KernelSpec spec_;
    std::vector<double> w_;              // coupling matrix
    std::vector<std::size_t> full_map_;  // band index -> full DFT storage index

    void assemble(const VelocityGrid& grid, SpectralParams params);
};

}  // namespace kinlab
