/**
 * @file vtilde_grid.cpp
 * @brief Volume Biot-Savart sum at all grid nodes via ring-to-ring circular convolutions.
 *
 * For target node (i, j) and source node (i', j + e) the kernel in the target's
 * local polar frame depends only on (i, i', e):
 *
 *   H_r(i, i', e)     = w_i' rho sin(a)           / (2 pi |d|^2)
 *   H_theta(i, i', e) = w_i' (r_i - rho cos(a))   / (2 pi |d|^2),   a = e dtheta,
 *
 * with the self term H(i, i, 0) = 0. The sum over e is a circular correlation, so
 * its DFT is conj(H^_m) * omega^_m. H_r is odd in e (purely imaginary transform)
 * and H_theta is even (real transform); only the nonzero parts are stored.
 */
#include "nrlab/biot_savart.hpp"

#include "../fft.hpp"

#include <cmath>
#include <complex>

namespace nrlab {

struct VtildeGridOperator::Impl {
    int nr = 0;
    int nt = 0;
    int nm = 0;
    std::vector<double> sin_coef;  // -Im H^_r, layout [(i * nr + i') * nm + m]
    std::vector<double> cos_coef;  //  Re H^_theta
    std::vector<double> corr_r;    // -sum_q H_r over all sources (per target ring)
    std::vector<double> corr_theta;  // U(r_i) - sum_q H_theta
    std::unique_ptr<detail::RealFFT> rings;
};

VtildeGridOperator::VtildeGridOperator(const PolarGrid& grid) : grid_(grid), impl_(std::make_unique<Impl>()) {
    Impl& d = *impl_;
    d.nr = grid.n_r();
    d.nt = grid.n_theta();
    d.nm = d.nt / 2 + 1;
    d.rings = std::make_unique<detail::RealFFT>(d.nt, d.nr);
    d.sin_coef.assign(static_cast<std::size_t>(d.nr) * d.nr * d.nm, 0.0);
    d.cos_coef.assign(d.sin_coef.size(), 0.0);
    d.corr_r.assign(d.nr, 0.0);
    d.corr_theta.assign(d.nr, 0.0);

    constexpr double inv2pi = 1.0 / kTwoPi;
    const detail::RealFFT row_fft(d.nt, 1);
    std::vector<double> hr(d.nt), ht(d.nt);
    std::vector<std::complex<double>> hr_hat(d.nm), ht_hat(d.nm);
    for (int i = 0; i < d.nr; ++i) {
        const double ri = grid.r(i);
        double sum_r = 0.0;
        double sum_t = 0.0;
        for (int ip = 0; ip < d.nr; ++ip) {
            const double rho = grid.r(ip);
            const double w = grid.area_weight(ip) * inv2pi;
            for (int e = 0; e < d.nt; ++e) {
                if (ip == i && e == 0) {
                    hr[e] = ht[e] = 0.0;
                    continue;
                }
                const double dx = ri - rho * grid.cos_theta(e);
                const double dy = -rho * grid.sin_theta(e);
                const double inv = w / (dx * dx + dy * dy);
                hr[e] = -dy * inv;
                ht[e] = dx * inv;
            }
            for (int e = 0; e < d.nt; ++e) {
                sum_r += hr[e];
                sum_t += ht[e];
            }
            row_fft.forward(hr, hr_hat);
            row_fft.forward(ht, ht_hat);
            const std::size_t base = (static_cast<std::size_t>(i) * d.nr + ip) * d.nm;
            for (int m = 0; m < d.nm; ++m) {
                d.sin_coef[base + m] = -hr_hat[m].imag();
                d.cos_coef[base + m] = ht_hat[m].real();
            }
        }
        d.corr_r[i] = -sum_r;
        d.corr_theta[i] = uniform_annulus_speed(ri) - sum_t;
    }
}

VtildeGridOperator::~VtildeGridOperator() = default;

void VtildeGridOperator::apply(const ScalarField& omega, std::span<double> v_r, std::span<double> v_theta) const {
    const Impl& d = *impl_;
    if (!(omega.grid() == grid_)) throw std::invalid_argument("VtildeGridOperator: grid mismatch");
    using cd = std::complex<double>;
    std::vector<cd> w_hat(static_cast<std::size_t>(d.nr) * d.nm);
    d.rings->forward(omega.values(), w_hat);

    std::vector<cd> out_r(w_hat.size()), out_t(w_hat.size());
    const double inv_n = 1.0 / d.nt;
    for_each_index(Exec::OpenMP, static_cast<std::size_t>(d.nr), [&](std::size_t is) {
        const int i = static_cast<int>(is);
        std::vector<double> ar_re(d.nm, 0.0), ar_im(d.nm, 0.0), at_re(d.nm, 0.0), at_im(d.nm, 0.0);
        for (int ip = 0; ip < d.nr; ++ip) {
            const std::size_t base = (static_cast<std::size_t>(i) * d.nr + ip) * d.nm;
            const double* sc = d.sin_coef.data() + base;
            const double* cc = d.cos_coef.data() + base;
            const cd* wh = w_hat.data() + static_cast<std::size_t>(ip) * d.nm;
            for (int m = 0; m < d.nm; ++m) {
                const double re = wh[m].real();
                const double im = wh[m].imag();
                ar_re[m] += sc[m] * re;
                ar_im[m] += sc[m] * im;
                at_re[m] += cc[m] * re;
                at_im[m] += cc[m] * im;
            }
        }
        cd* orow = out_r.data() + static_cast<std::size_t>(i) * d.nm;
        cd* trow = out_t.data() + static_cast<std::size_t>(i) * d.nm;
        for (int m = 0; m < d.nm; ++m) {
            // i * (ar_re + i ar_im) = -ar_im + i ar_re
            orow[m] = cd(-ar_im[m], ar_re[m]) * inv_n;
            trow[m] = cd(at_re[m], at_im[m]) * inv_n;
        }
    });
    d.rings->backward(out_r, v_r);
    d.rings->backward(out_t, v_theta);

    const std::span<const double> w = omega.values();
    for (int i = 0; i < d.nr; ++i) {
        for (int j = 0; j < d.nt; ++j) {
            const std::size_t k = grid_.index(i, j);
            v_r[k] += w[k] * d.corr_r[i];
            v_theta[k] += w[k] * d.corr_theta[i];
        }
    }
}

}  // namespace nrlab
