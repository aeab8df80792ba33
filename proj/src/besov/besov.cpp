/**
 * @file besov.cpp
 */
#include "nrlab/besov.hpp"

#include "../fft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nrlab {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

long signed_freq(int k, int n) { return k < n / 2 ? k : k - n; }

int log2_int(int n) {
    int k = 0;
    while ((1 << (k + 1)) <= n) ++k;
    return k;
}

}  // namespace

TorusField::TorusField(int n, std::vector<std::complex<double>> values) : n_(n), values_(std::move(values)) {
    if (!power_of_two(n) || n < 8) throw std::invalid_argument("TorusField: n must be a power of two >= 8");
    if (values_.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("TorusField: expected n^2 = " + std::to_string(n * n) + " values, got " +
                                    std::to_string(values_.size()));
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("TorusField: non-finite value");
}

TorusField TorusField::from_real(int n, const std::vector<double>& values) {
    return TorusField(n, std::vector<std::complex<double>>(values.begin(), values.end()));
}

TorusField TorusField::from_function(int n, const std::function<std::complex<double>(double, double)>& f) {
    std::vector<std::complex<double>> v(static_cast<std::size_t>(n) * n);
    const double h = 2.0 * std::numbers::pi / n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) v[static_cast<std::size_t>(a) * n + b] = f(a * h, b * h);
    return TorusField(n, std::move(v));
}

TorusField TorusField::scaled(double alpha) const {
    std::vector<std::complex<double>> v(values_);
    for (auto& x : v) x *= alpha;
    return TorusField(n_, std::move(v));
}

std::string TorusField::to_csv() const {
    std::string out = "x1,x2,value\n";
    const double h = 2.0 * std::numbers::pi / n_;
    char buf[96];
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", a * h, b * h,
                          values_[static_cast<std::size_t>(a) * n_ + b].real());
            out += buf;
        }
    }
    return out;
}

TorusField TorusField::from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x1,x2,value", 0) != 0)
        throw std::invalid_argument("torus CSV: expected header 'x1,x2,value'");
    std::vector<double> x1, x2, val;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        double a, b, c;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3)
            throw std::invalid_argument("torus CSV: bad row '" + line + "'");
        x1.push_back(a);
        x2.push_back(b);
        val.push_back(c);
    }
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(val.size()))));
    if (static_cast<std::size_t>(n) * n != val.size())
        throw std::invalid_argument("torus CSV: row count " + std::to_string(val.size()) + " is not a square");
    if (!power_of_two(n) || n < 8) throw std::invalid_argument("torus CSV: n must be a power of two >= 8");
    const double h = 2.0 * std::numbers::pi / n;
    std::vector<std::complex<double>> v(val.size());
    std::vector<char> seen(val.size(), 0);
    for (std::size_t r = 0; r < val.size(); ++r) {
        const long a = std::lround(x1[r] / h), b = std::lround(x2[r] / h);
        if (a < 0 || a >= n || b < 0 || b >= n || std::abs(x1[r] - a * h) > 1e-9 || std::abs(x2[r] - b * h) > 1e-9)
            throw std::invalid_argument("torus CSV: row " + std::to_string(r + 1) + " is off the uniform grid");
        const std::size_t k = static_cast<std::size_t>(a) * n + b;
        if (seen[k]) throw std::invalid_argument("torus CSV: duplicate node in row " + std::to_string(r + 1));
        seen[k] = 1;
        v[k] = val[r];
    }
    return TorusField(n, std::move(v));
}

std::vector<std::complex<double>> torus_fourier(const TorusField& w) {
    const int n = w.n();
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n) * n);
    fftw_plan plan;
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(w.values().data())),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    const double inv = 1.0 / (static_cast<double>(n) * n);
    for (auto& c : out) c *= inv;
    return out;
}

int dyadic_shell(long q) {
    if (q <= 0) throw std::invalid_argument("dyadic_shell: the zero mode lies in no shell");
    int k = 0;
    while ((1L << (2 * (k + 1))) <= q) ++k;
    return k;
}

BesovResult besov_analysis(const TorusField& w, double s) {
    const int n = w.n();
    const int shells = log2_int(n / 2);  // complete shells: 2^(k+1) <= n/2
    const long q_resolved = static_cast<long>(n / 2) * (n / 2);
    const auto c = torus_fourier(w);
    BesovResult r;
    r.per_shell.resize(shells);
    for (int k = 0; k < shells; ++k) r.per_shell[k].k = k;
    for (int a = 0; a < n; ++a) {
        const long k1 = signed_freq(a, n);
        for (int b = 0; b < n; ++b) {
            const long k2 = signed_freq(b, n);
            const long q = k1 * k1 + k2 * k2;
            const double e = std::norm(c[static_cast<std::size_t>(a) * n + b]);
            if (q == 0) {
                r.mean_energy += e;
            } else if (q >= q_resolved) {
                r.unresolved_energy += e;
            } else {
                r.per_shell[dyadic_shell(q)].energy += e;
            }
        }
    }
    double sup = 0.0;
    for (ShellEntry& e : r.per_shell) {
        e.weighted = std::pow(2.0, 2.0 * e.k * s) * e.energy;
        sup = std::max(sup, e.weighted);
    }
    r.besov = std::sqrt(sup);
    return r;
}

double besov_norm(const TorusField& w, double s) { return besov_analysis(w, s).besov; }

namespace {

// Sum of (1 + |xi|^2)^s |w^|^2; `shells_only` keeps the complete shells.
double sobolev_sum(const std::vector<std::complex<double>>& c, int n, double s, bool shells_only) {
    const long q_resolved = static_cast<long>(n / 2) * (n / 2);
    double acc = 0.0;
    for (int a = 0; a < n; ++a) {
        const long k1 = signed_freq(a, n);
        for (int b = 0; b < n; ++b) {
            const long k2 = signed_freq(b, n);
            const long q = k1 * k1 + k2 * k2;
            if (shells_only && (q == 0 || q >= q_resolved)) continue;
            acc += std::pow(1.0 + static_cast<double>(q), s) * std::norm(c[static_cast<std::size_t>(a) * n + b]);
        }
    }
    return acc;
}

}  // namespace

double sobolev_norm(const TorusField& w, double s) { return std::sqrt(sobolev_sum(torus_fourier(w), w.n(), s, false)); }

double grid_l2_norm(const TorusField& w) {
    double acc = 0.0;
    for (const auto& v : w.values()) acc += std::norm(v);
    return std::sqrt(acc / w.values().size());
}

double embedding_constant(int n, double s, double eps) {
    const int shells = log2_int(n / 2);
    double c2 = 0.0;
    for (int k = 0; k < shells; ++k) {
        const double lo = std::pow(1.0 + std::pow(4.0, k), s - eps);
        const double hi = std::pow(1.0 + std::pow(4.0, k + 1), s - eps);
        c2 += std::max(lo, hi) * std::pow(4.0, -k * s);
    }
    return std::sqrt(c2);
}

EmbeddingReport embedding_check(const TorusField& w, double s, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("embedding_check: eps must be positive");
    const auto c = torus_fourier(w);
    EmbeddingReport r;
    r.s = s;
    r.eps = eps;
    r.detail = besov_analysis(w, s);
    r.besov = r.detail.besov;
    r.sobolev_s = std::sqrt(sobolev_sum(c, w.n(), s, false));
    r.sobolev_s_minus_eps = std::sqrt(sobolev_sum(c, w.n(), s - eps, false));
    r.sobolev_s_minus_eps_shells = std::sqrt(sobolev_sum(c, w.n(), s - eps, true));
    r.constant = embedding_constant(w.n(), s, eps);
    const double slack = 1e-12 * std::max(1.0, r.sobolev_s);
    r.lower_holds = r.besov <= r.sobolev_s + slack;
    r.upper_holds = r.sobolev_s_minus_eps_shells <= r.constant * r.besov + slack;
    return r;
}

}  // namespace nrlab
