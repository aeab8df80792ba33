/**
 * @file besov.hpp
 * @brief Dyadic-shell Besov norm and Sobolev norm of grid functions on the 2-torus.
 *
 * Coefficients are w^(xi) = n^-2 sum_x w(x) exp(-i xi . x), so a unit complex
 * exponential has coefficient 1. Frequencies are taken in [-n/2, n/2) per axis.
 * Shell k holds 2^k <= |xi| < 2^(k+1); shells k = 0 .. log2(n/2) - 1 are complete.
 * Modes with |xi| >= n/2 are unresolved and reported separately. The mean xi = 0
 * lies in no shell.
 */
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace nrlab {

class TorusField {
public:
    /// Throws std::invalid_argument unless n is a power of two >= 8 and the size
    /// matches; std::domain_error on non-finite values.
    TorusField(int n, std::vector<std::complex<double>> values);
    static TorusField from_real(int n, const std::vector<double>& values);
    static TorusField from_function(int n, const std::function<std::complex<double>(double x1, double x2)>& f);

    int n() const { return n_; }
    /// Node (i1, i2) at (2 pi i1 / n, 2 pi i2 / n), stored at i1 * n + i2.
    const std::vector<std::complex<double>>& values() const { return values_; }
    TorusField scaled(double alpha) const;

    /// CSV `x1,x2,value` (real part). from_csv infers n from the row count.
    std::string to_csv() const;
    static TorusField from_csv(const std::string& text);

private:
    int n_;
    std::vector<std::complex<double>> values_;
};

/// Normalized coefficients, index (k1 mod n) * n + (k2 mod n).
std::vector<std::complex<double>> torus_fourier(const TorusField& w);

/// Shell index of a nonzero frequency with |xi|^2 = q: the k with 4^k <= q < 4^(k+1).
int dyadic_shell(long q);

struct ShellEntry {
    int k = 0;
    double energy = 0.0;    ///< sum of |w^|^2 over the shell
    double weighted = 0.0;  ///< 2^(2ks) * energy
};

struct BesovResult {
    double besov = 0.0;
    std::vector<ShellEntry> per_shell;  ///< complete shells only
    double unresolved_energy = 0.0;     ///< modes with |xi| >= n/2
    double mean_energy = 0.0;           ///< |w^(0)|^2
};

BesovResult besov_analysis(const TorusField& w, double s);
double besov_norm(const TorusField& w, double s);

/// (sum over all n^2 modes of (1 + |xi|^2)^s |w^|^2)^(1/2), mean included.
double sobolev_norm(const TorusField& w, double s);

/// Root mean square over the grid; equals sobolev_norm(w, 0) by Parseval.
double grid_l2_norm(const TorusField& w);

struct EmbeddingReport {
    double s = 0.0;
    double eps = 0.0;
    double besov = 0.0;
    double sobolev_s = 0.0;
    double sobolev_s_minus_eps = 0.0;        ///< over all modes
    double sobolev_s_minus_eps_shells = 0.0; ///< over the complete shells (mean-free, resolved part)
    double constant = 0.0;                   ///< C(s, eps)
    bool lower_holds = false;                ///< besov <= sobolev_s (needs s >= 0)
    bool upper_holds = false;                ///< sobolev_s_minus_eps_shells <= C * besov
    BesovResult detail;
};

/// C(s, eps)^2 = sum_k max_{xi in shell k} (1 + |xi|^2)^(s - eps) * 4^(-k s) over
/// complete shells, so that the resolved mean-free part obeys
/// ||w||_{H^(s-eps)} <= C ||w||_{B_s}.
double embedding_constant(int n, double s, double eps);

/// Throws std::invalid_argument unless eps > 0.
EmbeddingReport embedding_check(const TorusField& w, double s, double eps);

}  // namespace nrlab
