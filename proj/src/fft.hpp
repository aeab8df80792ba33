/**
 * @file fft.hpp
 * @brief Thin RAII wrapper over FFTW real transforms (internal).
 *
 * Plans are created with FFTW_ESTIMATE | FFTW_UNALIGNED so the chosen algorithm
 * does not depend on timing and any buffer may be passed to execute. Planning
 * is serialized by a global mutex; execution is reentrant.
 */
#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <span>

namespace nrlab::detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

/// Batched 1D real <-> half-complex transforms of length n over `howmany`
/// contiguous rows. Unnormalized, FFTW sign conventions.
class RealFFT {
public:
    RealFFT(int n, int howmany) : n_(n), howmany_(howmany) {
        std::lock_guard lock(fftw_planner_mutex());
        const int nc = n / 2 + 1;
        double* rin = fftw_alloc_real(static_cast<size_t>(n) * howmany);
        fftw_complex* cout = fftw_alloc_complex(static_cast<size_t>(nc) * howmany);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        forward_ = fftw_plan_many_dft_r2c(1, &n_, howmany, rin, nullptr, 1, n, cout, nullptr, 1, nc, flags);
        backward_ = fftw_plan_many_dft_c2r(1, &n_, howmany, cout, nullptr, 1, nc, rin, nullptr, 1, n,
                                           flags | FFTW_PRESERVE_INPUT);
        fftw_free(rin);
        fftw_free(cout);
    }
    ~RealFFT() {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
    }
    RealFFT(const RealFFT&) = delete;
    RealFFT& operator=(const RealFFT&) = delete;

    int n() const { return n_; }
    int howmany() const { return howmany_; }
    int n_complex() const { return n_ / 2 + 1; }

    void forward(std::span<const double> in, std::span<std::complex<double>> out) const {
        fftw_execute_dft_r2c(forward_, const_cast<double*>(in.data()),
                             reinterpret_cast<fftw_complex*>(out.data()));
    }
    /// The input half spectrum is preserved.
    void backward(std::span<const std::complex<double>> in, std::span<double> out) const {
        fftw_execute_dft_c2r(backward_,
                             reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                             out.data());
    }

private:
    int n_;
    int howmany_;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

}  // namespace nrlab::detail
