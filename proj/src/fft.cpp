#include "tsteer/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace tsteer {

namespace {
// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex g_planner_mutex;
}  // namespace

Fft::Fft(int n) : n_(n) {
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    real_buf_ = fftw_alloc_real(static_cast<std::size_t>(n) * n);
    cplx_buf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(spectral_size()));
    plan_fwd_ = fftw_plan_dft_r2c_2d(n, n, real_buf_, reinterpret_cast<fftw_complex*>(cplx_buf_), FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r_2d(n, n, reinterpret_cast<fftw_complex*>(cplx_buf_), real_buf_, FFTW_ESTIMATE);
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(real_buf_);
    fftw_free(cplx_buf_);
}

const Fft& Fft::get(int n) {
    thread_local std::map<int, std::unique_ptr<Fft>> cache;
    auto& slot = cache[n];
    if (!slot) slot.reset(new Fft(n));
    return *slot;
}

void Fft::forward(const double* phys, std::complex<double>* hat) const {
    std::size_t nn = static_cast<std::size_t>(n_) * n_;
    std::memcpy(real_buf_, phys, nn * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    double scale = 1.0 / static_cast<double>(nn);
    for (std::size_t i = 0; i < spectral_size(); ++i) hat[i] = cplx_buf_[i] * scale;
}

void Fft::inverse(const std::complex<double>* hat, double* phys) const {
    std::memcpy(cplx_buf_, hat, spectral_size() * sizeof(std::complex<double>));
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));  // c2r clobbers cplx_buf_, which is ours
    std::memcpy(phys, real_buf_, static_cast<std::size_t>(n_) * n_ * sizeof(double));
}

}  // namespace tsteer
