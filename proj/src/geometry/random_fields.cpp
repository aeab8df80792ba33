#include "nrlab/random_fields.hpp"

#include <cmath>
#include <vector>

namespace nrlab {

ScalarField random_band_limited(const PolarGrid& grid, std::uint64_t seed, int m_max, int p_max) {
    std::mt19937_64 rng(seed);
    struct Mode {
        int m, p;
        double a, b, c;
    };
    std::vector<Mode> modes;
    for (int m = 0; m < m_max; ++m) {
        for (int p = 0; p < p_max; ++p) {
            Mode md{m, p, 0, 0, 0};
            md.a = (2.0 * unit_uniform(rng) - 1.0) / (1.0 + m + p);
            md.b = kTwoPi * unit_uniform(rng);
            md.c = kTwoPi * unit_uniform(rng);
            modes.push_back(md);
        }
    }
    return ScalarField::from_function(grid, [&](double r, double th) {
        double s = 0.0;
        for (const Mode& md : modes) s += md.a * std::cos(md.p * kPi * (r - 1.0) + md.b) * std::cos(md.m * th + md.c);
        return s;
    });
}

ScalarField random_perturbation(const PolarGrid& grid, std::uint64_t seed, double c1_target) {
    if (c1_target == 0.0) return ScalarField::zeros(grid);
    const ScalarField f = random_band_limited(grid, seed, 4, 3);
    return f.scaled(c1_target / c1_norm(f));
}

ScalarField bump_field(const PolarGrid& grid) {
    return ScalarField::from_function(grid, [](double r, double th) {
        const double a = std::remainder(th - kPi / 2.0, kTwoPi);
        return std::exp(-((r - 1.5) * (r - 1.5) + a * a * r * r) / 0.05);
    });
}

}  // namespace nrlab
