/**
 * @file random_fields.hpp
 * @brief Seeded band-limited vorticity fields on the polar grid.
 */
#pragma once

#include "nrlab/geometry.hpp"

#include <cstdint>
#include <random>

namespace nrlab {

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// omega(r, theta) = sum_{m < m_max, p < p_max} a_mp cos(p pi (r - 1) + b_mp) cos(m theta + c_mp)
/// with a_mp uniform in [-1, 1] / (1 + m + p) and phases uniform in [0, 2pi).
/// The same seed gives the same continuous function on every grid.
ScalarField random_band_limited(const PolarGrid& grid, std::uint64_t seed, int m_max = 6, int p_max = 4);

/// random_band_limited rescaled to the requested grid C1 norm.
ScalarField random_perturbation(const PolarGrid& grid, std::uint64_t seed, double c1_target);

/// C1 bump exp(-((r - 1.5)^2 + (theta - pi/2)^2 r^2) / 0.05), a smooth localized blob.
ScalarField bump_field(const PolarGrid& grid);

}  // namespace nrlab
