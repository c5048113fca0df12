#include "kinlab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace kinlab {

namespace {
std::mutex g_plan_mutex;  // FFTW plan creation is not thread-safe

struct FftwBuffer {
    fftw_complex* p;
    explicit FftwBuffer(std::size_t n) : p(fftw_alloc_complex(n)) {}
    ~FftwBuffer() { fftw_free(p); }
    FftwBuffer(const FftwBuffer&) = delete;
};
}  // namespace

struct FourierBox::Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t size = 0;

    ~Plans() {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (buf) fftw_free(buf);
    }
};

FourierBox::FourierBox(const VelocityGrid& grid) : n_(grid.n) {
    fundamental_ = M_PI / grid.radius;
    plans_ = std::make_unique<Plans>();
    plans_->size = size();
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        plans_->buf = fftw_alloc_complex(plans_->size);
        plans_->fwd = fftw_plan_dft_3d(n_, n_, n_, plans_->buf, plans_->buf, FFTW_FORWARD,
                                       FFTW_ESTIMATE);
        plans_->bwd = fftw_plan_dft_3d(n_, n_, n_, plans_->buf, plans_->buf, FFTW_BACKWARD,
                                       FFTW_ESTIMATE);
    }
    // forward twiddle per axis index: e^{-i zeta_l v_0}, v_0 the first node
    twiddle_.resize(n_);
    const double v0 = grid.axis[0];
    for (int m = 0; m < n_; ++m) {
        double zeta = fundamental_ * freq_int(m);
        twiddle_[m] = std::polar(1.0, -zeta * v0);
    }
}

FourierBox::~FourierBox() = default;

// execute_dft on caller-local buffers keeps transforms thread-safe
void FourierBox::to_hat(const CField& f, CField& hat) const {
    if (f.size() != plans_->size) throw std::invalid_argument("field size mismatch");
    hat.resize(plans_->size);
    FftwBuffer buf(plans_->size);
    std::memcpy(buf.p, f.data(), sizeof(fftw_complex) * plans_->size);
    fftw_execute_dft(plans_->fwd, buf.p, buf.p);
    const double scale = 1.0 / static_cast<double>(plans_->size);
    const Complex* out = reinterpret_cast<const Complex*>(buf.p);
    std::size_t idx = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            Complex tij = twiddle_[i] * twiddle_[j] * scale;
            for (int k = 0; k < n_; ++k, ++idx) hat[idx] = out[idx] * (tij * twiddle_[k]);
        }
}

void FourierBox::from_hat(const CField& hat, CField& f) const {
    if (hat.size() != plans_->size) throw std::invalid_argument("field size mismatch");
    f.resize(plans_->size);
    FftwBuffer buf(plans_->size);
    Complex* in = reinterpret_cast<Complex*>(buf.p);
    std::size_t idx = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            Complex tij = std::conj(twiddle_[i] * twiddle_[j]);
            for (int k = 0; k < n_; ++k, ++idx)
                in[idx] = hat[idx] * (tij * std::conj(twiddle_[k]));
        }
    fftw_execute_dft(plans_->bwd, buf.p, buf.p);
    std::memcpy(f.data(), buf.p, sizeof(fftw_complex) * plans_->size);
}

CField FourierBox::to_hat(const CField& f) const {
    CField hat;
    to_hat(f, hat);
    return hat;
}

CField FourierBox::from_hat(const CField& hat) const {
    CField f;
    from_hat(hat, f);
    return f;
}

}  // namespace kinlab
