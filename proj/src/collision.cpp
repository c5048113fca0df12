#include "kinlab/collision.hpp"

#include "kinlab/quadrature.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

namespace kinlab {

void KernelSpec::validate() const {
    if (gamma <= -3.0 || gamma > 1.0)
        throw std::invalid_argument("gamma must lie in (-3, 1]");
    if (s <= 0.0 || s >= 1.0) throw std::invalid_argument("s must lie in (0, 1)");
    if (gamma + 2.0 * s <= -1.0)
        throw std::invalid_argument("gamma + 2s <= -1 violates the standing kernel assumption");
    if (theta_min <= 0.0 || theta_min > M_PI / 4.0)
        throw std::invalid_argument("theta_min must lie in (0, pi/4]");
    if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("angular orders must be positive");
    if (r_min < 0.0) throw std::invalid_argument("r_min must be nonnegative");
}

void SplitOperatorConfig::validate() const {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
        throw std::invalid_argument("split amplitude A must be finite and nonnegative");
    if (!(cutoff > 0.0) || !std::isfinite(cutoff))
        throw std::invalid_argument("split cutoff M must be finite and positive");
}

double kernel_angular(double theta, const KernelSpec& spec) {
    if (theta <= 0.0 || theta > M_PI / 2.0)
        throw std::invalid_argument("theta outside (0, pi/2]");
    if (theta < spec.theta_min) return 0.0;
    return std::pow(theta, -1.0 - 2.0 * spec.s) / std::sin(theta);
}

std::pair<Vec3, Vec3> post_collision(const Vec3& v, const Vec3& u, const Vec3& sigma) {
    double ns = norm2(sigma);
    if (std::abs(ns - 1.0) > 1e-12)
        throw std::invalid_argument("sigma must be a unit vector");
    Vec3 q{v[0] - u[0], v[1] - u[1], v[2] - u[2]};
    double r = norm(q);
    Vec3 vp, up;
    for (int a = 0; a < 3; ++a) {
        double mid = 0.5 * (v[a] + u[a]);
        vp[a] = mid + 0.5 * r * sigma[a];
        up[a] = mid - 0.5 * r * sigma[a];
    }
    return {vp, up};
}

double cutoff_chi(double speed, double cutoff_radius) {
    if (cutoff_radius <= 0.0) throw std::invalid_argument("cutoff radius must be positive");
    auto S = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    double r = speed / cutoff_radius;
    double num = S(2.0 - r);
    double den = num + S(r - 1.0);
    return den > 0.0 ? num / den : 0.0;
}

SigmaRule SigmaRule::build(const KernelSpec& spec) {
    spec.validate();
    SigmaRule rule;
    // Gauss-Legendre in t = cos(theta) on [0, cos(theta_min)]
    std::vector<double> x, w;
    gauss_legendre(spec.n_theta, x, w);
    double hi = std::cos(spec.theta_min);
    rule.cos_theta.resize(spec.n_theta);
    rule.sin_theta.resize(spec.n_theta);
    rule.weight_b.resize(spec.n_theta);
    for (int i = 0; i < spec.n_theta; ++i) {
        double t = 0.5 * hi * (x[i] + 1.0);
        double theta = std::acos(t);
        rule.cos_theta[i] = t;
        rule.sin_theta[i] = std::sin(theta);
        rule.weight_b[i] = 0.5 * hi * w[i] * kernel_angular(theta, spec);
    }
    rule.cos_phi.resize(spec.n_phi);
    rule.sin_phi.resize(spec.n_phi);
    for (int c = 0; c < spec.n_phi; ++c) {
        double phi = 2.0 * M_PI * c / spec.n_phi;
        rule.cos_phi[c] = std::cos(phi);
        rule.sin_phi[c] = std::sin(phi);
    }
    rule.phi_weight = 2.0 * M_PI / spec.n_phi;
    return rule;
}

double SigmaRule::total_b_mass() const {
    double s = 0.0;
    for (double wb : weight_b) s += wb;
    return 2.0 * M_PI * s;
}

namespace {

// orthonormal frame completing the unit vector w
void frame(const Vec3& w, Vec3& e1, Vec3& e2) {
    int least = 0;
    if (std::abs(w[1]) < std::abs(w[least])) least = 1;
    if (std::abs(w[2]) < std::abs(w[least])) least = 2;
    Vec3 a{0.0, 0.0, 0.0};
    a[least] = 1.0;
    double p = dot(a, w);
    for (int i = 0; i < 3; ++i) e1[i] = a[i] - p * w[i];
    double n1 = norm(e1);
    for (int i = 0; i < 3; ++i) e1[i] /= n1;
    e2[0] = w[1] * e1[2] - w[2] * e1[1];
    e2[1] = w[2] * e1[0] - w[0] * e1[2];
    e2[2] = w[0] * e1[1] - w[1] * e1[0];
}

template <int S>
struct AxisStencil {
    int base;         // integer index offset
    double w[S];      // interpolation weights
};

template <int S>
AxisStencil<S> axis_stencil(double delta);

template <>
AxisStencil<2> axis_stencil<2>(double delta) {
    AxisStencil<2> st;
    double fl = std::floor(delta);
    st.base = static_cast<int>(fl);
    double f = delta - fl;
    st.w[0] = 1.0 - f;
    st.w[1] = f;
    return st;
}

template <>
AxisStencil<4> axis_stencil<4>(double delta) {
    AxisStencil<4> st;
    double fl = std::floor(delta);
    st.base = static_cast<int>(fl) - 1;
    double f = delta - fl;
    st.w[0] = -f * (f - 1.0) * (f - 2.0) / 6.0;
    st.w[1] = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
    st.w[2] = -(f + 1.0) * f * (f - 2.0) / 2.0;
    st.w[3] = (f + 1.0) * f * (f - 1.0) / 6.0;
    return st;
}

template <int S>
struct GatherPlan {
    AxisStencil<S> ax, ay, az;
    long flat_base;      // relative flat offset of the stencil origin
    double cw[S * S * S];

    void finish(int n) {
        flat_base = (static_cast<long>(ax.base) * n + ay.base) * n + az.base;
        int c = 0;
        for (int i = 0; i < S; ++i)
            for (int j = 0; j < S; ++j)
                for (int k = 0; k < S; ++k) cw[c++] = ax.w[i] * ay.w[j] * az.w[k];
    }
    // interior iff index i satisfies 0 <= i + base and i + base + S-1 < n, per axis
    bool interior(int i, int j, int k, int n) const {
        return i + ax.base >= 0 && i + ax.base + S <= n && j + ay.base >= 0 &&
               j + ay.base + S <= n && k + az.base >= 0 && k + az.base + S <= n;
    }
};

template <class T, int S>
inline T gather_fast(const T* f, long idx, const GatherPlan<S>& p, const long* off) {
    T acc{};
    const T* base = f + idx + p.flat_base;
    for (int c = 0; c < S * S * S; ++c) acc += p.cw[c] * base[off[c]];
    return acc;
}

template <class T, int S>
T gather_guarded(const T* f, int i, int j, int k, int n, const GatherPlan<S>& p) {
    T acc{};
    int c = 0;
    for (int a = 0; a < S; ++a) {
        int ia = i + p.ax.base + a;
        for (int b = 0; b < S; ++b) {
            int jb = j + p.ay.base + b;
            for (int d = 0; d < S; ++d, ++c) {
                int kd = k + p.az.base + d;
                if (ia < 0 || ia >= n || jb < 0 || jb >= n || kd < 0 || kd >= n) continue;
                acc += p.cw[c] * f[(static_cast<long>(ia) * n + jb) * n + kd];
            }
        }
    }
    return acc;
}

template <class T, int S>
void collide_impl(const std::vector<T>& G, const std::vector<T>& F, const KernelSpec& spec,
                  const VelocityGrid& grid, std::vector<T>& out) {
    const int n = grid.n;
    const double h = grid.h;
    const SigmaRule rule = SigmaRule::build(spec);
    const double w_u = grid.cell_weight();
    const double rmin = spec.r_min > 0.0 ? spec.r_min : 0.5 * h;

    long stencil_off[S * S * S];
    {
        int c = 0;
        for (int i = 0; i < S; ++i)
            for (int j = 0; j < S; ++j)
                for (int k = 0; k < S; ++k) stencil_off[c++] = (static_cast<long>(i) * n + j) * n + k;
    }

    const int nd = 2 * n - 1;
    const long n_dq = static_cast<long>(nd) * nd * nd;
    int n_threads = omp_get_max_threads();
    std::vector<std::vector<T>> partial(n_threads, std::vector<T>(grid.size(), T{}));

#pragma omp parallel for schedule(static)
    for (long dq_flat = 0; dq_flat < n_dq; ++dq_flat) {
        int dqx = static_cast<int>(dq_flat / (nd * nd)) - (n - 1);
        int dqy = static_cast<int>((dq_flat / nd) % nd) - (n - 1);
        int dqz = static_cast<int>(dq_flat % nd) - (n - 1);
        if (dqx == 0 && dqy == 0 && dqz == 0) continue;  // bracket vanishes at q = 0

        std::vector<T>& acc = partial[omp_get_thread_num()];

        Vec3 q{h * dqx, h * dqy, h * dqz};
        double qn = norm(q);
        double phi_kernel = std::pow(std::max(qn, rmin), spec.gamma);
        Vec3 qhat{q[0] / qn, q[1] / qn, q[2] / qn};
        Vec3 e1, e2;
        frame(qhat, e1, e2);

        // u = v - q valid range per axis
        int lo[3] = {std::max(0, dqx), std::max(0, dqy), std::max(0, dqz)};
        int hi[3] = {n - 1 + std::min(0, dqx), n - 1 + std::min(0, dqy), n - 1 + std::min(0, dqz)};
        if (lo[0] > hi[0] || lo[1] > hi[1] || lo[2] > hi[2]) continue;
        long u_off = -((static_cast<long>(dqx) * n + dqy) * n + dqz);

        for (std::size_t a = 0; a < rule.n_theta(); ++a) {
            double ct = rule.cos_theta[a], st = rule.sin_theta[a];
            for (std::size_t c = 0; c < rule.n_phi(); ++c) {
                double w = w_u * rule.weight_b[a] * rule.phi_weight * phi_kernel;
                Vec3 sigma;
                for (int d = 0; d < 3; ++d)
                    sigma[d] = ct * qhat[d] + st * (rule.cos_phi[c] * e1[d] + rule.sin_phi[c] * e2[d]);
                // v' = v - qm, u' = v - qp
                GatherPlan<S> pv, pu;
                {
                    Vec3 qp, qm;
                    for (int d = 0; d < 3; ++d) {
                        qp[d] = 0.5 * (q[d] + qn * sigma[d]);
                        qm[d] = 0.5 * (q[d] - qn * sigma[d]);
                    }
                    pv.ax = axis_stencil<S>(-qm[0] / h);
                    pv.ay = axis_stencil<S>(-qm[1] / h);
                    pv.az = axis_stencil<S>(-qm[2] / h);
                    pv.finish(n);
                    pu.ax = axis_stencil<S>(-qp[0] / h);
                    pu.ay = axis_stencil<S>(-qp[1] / h);
                    pu.az = axis_stencil<S>(-qp[2] / h);
                    pu.finish(n);
                }

                for (int i = lo[0]; i <= hi[0]; ++i) {
                    bool ix_ok = i + pv.ax.base >= 0 && i + pv.ax.base + S <= n &&
                                 i + pu.ax.base >= 0 && i + pu.ax.base + S <= n;
                    for (int j = lo[1]; j <= hi[1]; ++j) {
                        bool ij_ok = ix_ok && j + pv.ay.base >= 0 && j + pv.ay.base + S <= n &&
                                     j + pu.ay.base >= 0 && j + pu.ay.base + S <= n;
                        long row = (static_cast<long>(i) * n + j) * n;
                        int kzlo = std::max({lo[2], -pv.az.base, -pu.az.base});
                        int kzhi = std::min({hi[2], n - S - pv.az.base, n - S - pu.az.base});
                        if (ij_ok && kzlo <= kzhi) {
                            for (int k = lo[2]; k < kzlo; ++k) {
                                long idx = row + k;
                                T gain = gather_guarded<T, S>(G.data(), i, j, k, n, pu) *
                                         gather_guarded<T, S>(F.data(), i, j, k, n, pv);
                                acc[idx] += w * (gain - G[idx + u_off] * F[idx]);
                            }
                            for (int k = kzlo; k <= kzhi; ++k) {
                                long idx = row + k;
                                T gain = gather_fast<T, S>(G.data(), idx, pu, stencil_off) *
                                         gather_fast<T, S>(F.data(), idx, pv, stencil_off);
                                acc[idx] += w * (gain - G[idx + u_off] * F[idx]);
                            }
                            for (int k = kzhi + 1; k <= hi[2]; ++k) {
                                long idx = row + k;
                                T gain = gather_guarded<T, S>(G.data(), i, j, k, n, pu) *
                                         gather_guarded<T, S>(F.data(), i, j, k, n, pv);
                                acc[idx] += w * (gain - G[idx + u_off] * F[idx]);
                            }
                        } else {
                            for (int k = lo[2]; k <= hi[2]; ++k) {
                                long idx = row + k;
                                T gain = gather_guarded<T, S>(G.data(), i, j, k, n, pu) *
                                         gather_guarded<T, S>(F.data(), i, j, k, n, pv);
                                acc[idx] += w * (gain - G[idx + u_off] * F[idx]);
                            }
                        }
                    }
                }
            }
        }
    }

    out.assign(grid.size(), T{});
    for (int t = 0; t < n_threads; ++t)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += partial[t][i];
}

template <class T>
bool any_nonfinite(const std::vector<T>& f);

template <>
bool any_nonfinite(const std::vector<double>& f) {
    for (double x : f)
        if (!std::isfinite(x)) return true;
    return false;
}

template <>
bool any_nonfinite(const std::vector<Complex>& f) {
    for (const Complex& x : f)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return true;
    return false;
}

}  // namespace

template <class T>
std::vector<T> collide_reference(const std::vector<T>& G, const std::vector<T>& F,
                                 const KernelSpec& spec, const VelocityGrid& grid,
                                 InterpOrder order) {
    if (G.size() != grid.size() || F.size() != grid.size())
        throw std::invalid_argument("field/grid size mismatch");
    if (any_nonfinite(G) || any_nonfinite(F))
        throw std::invalid_argument("non-finite values in collision input");
    std::vector<T> out;
    if (order == InterpOrder::Linear)
        collide_impl<T, 2>(G, F, spec, grid, out);
    else
        collide_impl<T, 4>(G, F, spec, grid, out);
    return out;
}

template std::vector<double> collide_reference<double>(const std::vector<double>&,
                                                       const std::vector<double>&,
                                                       const KernelSpec&, const VelocityGrid&,
                                                       InterpOrder);
template std::vector<Complex> collide_reference<Complex>(const std::vector<Complex>&,
                                                         const std::vector<Complex>&,
                                                         const KernelSpec&, const VelocityGrid&,
                                                         InterpOrder);

RField collision_frequency(const VelocityGrid& grid, const KernelSpec& spec, const RField& mu) {
    const double cb = SigmaRule::build(spec).total_b_mass();
    const double rmin = spec.r_min > 0.0 ? spec.r_min : 0.5 * grid.h;
    RField nu(grid.size(), 0.0);
    const std::size_t nn = grid.size();
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(nn); ++i) {
        Vec3 v = grid.node(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < nn; ++j) {
            Vec3 u = grid.node(j);
            double r = std::sqrt((v[0] - u[0]) * (v[0] - u[0]) + (v[1] - u[1]) * (v[1] - u[1]) +
                                 (v[2] - u[2]) * (v[2] - u[2]));
            acc += std::pow(std::max(r, rmin), spec.gamma) * mu[j];
        }
        nu[i] = cb * grid.cell_weight() * acc;
    }
    return nu;
}

std::vector<double> assemble_curly_dense(const VelocityGrid& grid, const KernelSpec& spec,
                                         const RField& mu, InterpOrder order) {
    if (order != InterpOrder::Linear)
        throw std::invalid_argument("dense assembly supports linear interpolation only");
    const std::size_t nn = grid.size();
    if (grid.n > 16) throw std::invalid_argument("dense operator limited to N_v <= 16");
    const int n = grid.n;
    const double h = grid.h;
    const SigmaRule rule = SigmaRule::build(spec);
    const double w_u = grid.cell_weight();
    const double rmin = spec.r_min > 0.0 ? spec.r_min : 0.5 * h;

    std::vector<double> mat(nn * nn, 0.0);
    const int nd = 2 * n - 1;
    const long n_dq = static_cast<long>(nd) * nd * nd;

    // serial: distinct dq write overlapping matrix rows
    for (long dq_flat = 0; dq_flat < n_dq; ++dq_flat) {
        int dqx = static_cast<int>(dq_flat / (nd * nd)) - (n - 1);
        int dqy = static_cast<int>((dq_flat / nd) % nd) - (n - 1);
        int dqz = static_cast<int>(dq_flat % nd) - (n - 1);
        if (dqx == 0 && dqy == 0 && dqz == 0) continue;

        Vec3 q{h * dqx, h * dqy, h * dqz};
        double qn = norm(q);
        double phi_kernel = std::pow(std::max(qn, rmin), spec.gamma);
        Vec3 qhat{q[0] / qn, q[1] / qn, q[2] / qn};
        Vec3 e1, e2;
        frame(qhat, e1, e2);

        int lo[3] = {std::max(0, dqx), std::max(0, dqy), std::max(0, dqz)};
        int hi[3] = {n - 1 + std::min(0, dqx), n - 1 + std::min(0, dqy), n - 1 + std::min(0, dqz)};
        if (lo[0] > hi[0] || lo[1] > hi[1] || lo[2] > hi[2]) continue;
        long u_off = -((static_cast<long>(dqx) * n + dqy) * n + dqz);

        for (std::size_t a = 0; a < rule.n_theta(); ++a) {
            double ct = rule.cos_theta[a], st = rule.sin_theta[a];
            for (std::size_t c = 0; c < rule.n_phi(); ++c) {
                double w = w_u * rule.weight_b[a] * rule.phi_weight * phi_kernel;
                Vec3 sigma;
                for (int d = 0; d < 3; ++d)
                    sigma[d] = ct * qhat[d] + st * (rule.cos_phi[c] * e1[d] + rule.sin_phi[c] * e2[d]);
                GatherPlan<2> pv, pu;
                Vec3 qp, qm;
                for (int d = 0; d < 3; ++d) {
                    qp[d] = 0.5 * (q[d] + qn * sigma[d]);
                    qm[d] = 0.5 * (q[d] - qn * sigma[d]);
                }
                pv.ax = axis_stencil<2>(-qm[0] / h);
                pv.ay = axis_stencil<2>(-qm[1] / h);
                pv.az = axis_stencil<2>(-qm[2] / h);
                pv.finish(n);
                pu.ax = axis_stencil<2>(-qp[0] / h);
                pu.ay = axis_stencil<2>(-qp[1] / h);
                pu.az = axis_stencil<2>(-qp[2] / h);
                pu.finish(n);

                for (int i = lo[0]; i <= hi[0]; ++i)
                    for (int j = lo[1]; j <= hi[1]; ++j)
                        for (int k = lo[2]; k <= hi[2]; ++k) {
                            long row = (static_cast<long>(i) * n + j) * n + k;
                            long u_idx = row + u_off;
                            double mu_up = gather_guarded<double, 2>(mu.data(), i, j, k, n, pu);
                            double mu_vp = gather_guarded<double, 2>(mu.data(), i, j, k, n, pv);
                            double* mrow = mat.data() + static_cast<std::size_t>(row) * nn;
                            // Q(mu, g): mu(u') g(v') - mu(u) g(v)
                            int cc = 0;
                            for (int ai = 0; ai < 2; ++ai) {
                                int ia = i + pv.ax.base + ai;
                                for (int bj = 0; bj < 2; ++bj) {
                                    int jb = j + pv.ay.base + bj;
                                    for (int dk = 0; dk < 2; ++dk, ++cc) {
                                        int kd = k + pv.az.base + dk;
                                        if (ia < 0 || ia >= n || jb < 0 || jb >= n || kd < 0 ||
                                            kd >= n)
                                            continue;
                                        mrow[(static_cast<long>(ia) * n + jb) * n + kd] +=
                                            w * mu_up * pv.cw[cc];
                                    }
                                }
                            }
                            mrow[row] -= w * mu[u_idx];
                            // Q(g, mu): g(u') mu(v') - g(u) mu(v)
                            cc = 0;
                            for (int ai = 0; ai < 2; ++ai) {
                                int ia = i + pu.ax.base + ai;
                                for (int bj = 0; bj < 2; ++bj) {
                                    int jb = j + pu.ay.base + bj;
                                    for (int dk = 0; dk < 2; ++dk, ++cc) {
                                        int kd = k + pu.az.base + dk;
                                        if (ia < 0 || ia >= n || jb < 0 || jb >= n || kd < 0 ||
                                            kd >= n)
                                            continue;
                                        mrow[(static_cast<long>(ia) * n + jb) * n + kd] +=
                                            w * mu_vp * pu.cw[cc];
                                    }
                                }
                            }
                            mrow[u_idx] -= w * mu[row];
                        }
            }
        }
    }
    return mat;
}

}  // namespace kinlab
