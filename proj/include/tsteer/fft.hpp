#pragma once

#include <complex>
#include <cstddef>

namespace tsteer {

// Cached FFTW plans for one n x n real grid. Instances are per-thread, so a
// transform never races on its scratch buffers. Forward includes the 1/n^2
// factor: coefficients are amplitudes in the exp(i l.x) basis.
class Fft {
  public:
    static const Fft& get(int n);  // thread-local cache

    int n() const { return n_; }
    std::size_t spectral_size() const { return static_cast<std::size_t>(n_) * (n_ / 2 + 1); }

    void forward(const double* phys, std::complex<double>* hat) const;
    void inverse(const std::complex<double>* hat, double* phys) const;

    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
    ~Fft();

  private:
    explicit Fft(int n);

    int n_;
    void* plan_fwd_;
    void* plan_bwd_;
    double* real_buf_;
    std::complex<double>* cplx_buf_;
};

}  // namespace tsteer
