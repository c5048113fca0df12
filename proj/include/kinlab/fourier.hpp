#pragma once

#include "kinlab/grid.hpp"

#include <memory>

namespace kinlab {

/// Discrete Fourier transform on the cell-centered velocity box.
///
/// Coefficients are those of the trigonometric interpolant
///   f(v) = sum_l fhat_l exp(i zeta_l . v),  zeta_l = (pi/R) l,
/// with integer frequencies l in [-n/2, n/2) per axis. Storage order matches
/// the nodal array; the integer frequency of storage index m is m for
/// m <= n/2-1 and m-n otherwise.
class FourierBox {
  public:
    explicit FourierBox(const VelocityGrid& grid);
    ~FourierBox();
    FourierBox(const FourierBox&) = delete;
    FourierBox& operator=(const FourierBox&) = delete;

    int n() const { return n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

    void to_hat(const CField& f, CField& hat) const;
    void from_hat(const CField& hat, CField& f) const;
    CField to_hat(const CField& f) const;
    CField from_hat(const CField& hat) const;

    int freq_int(int storage_index) const {
        return storage_index <= n_ / 2 - 1 ? storage_index : storage_index - n_;
    }
    int storage_index(int freq) const { return freq >= 0 ? freq : freq + n_; }
    double freq(int l) const { return fundamental_ * l; }
    double fundamental() const { return fundamental_; }

  private:
    int n_;
    double fundamental_;
    CField twiddle_;  // per-axis forward phase e^{-i zeta_l v_0}
    struct Plans;
    std::unique_ptr<Plans> plans_;
};

}  // namespace kinlab
