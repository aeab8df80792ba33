/**
 * @file parallel.hpp
 * @brief Execution policy for the data-parallel kernels.
 *
 * Every kernel in the library evaluates one independent output per index with a
 * fixed inner summation order. The serial path is the reference; the OpenMP path
 * runs the same per-index body, so results are bitwise identical.
 */
#pragma once

#include <cstddef>

namespace nrlab {

enum class Exec { Serial, OpenMP };

template <class Body>
void for_each_index(Exec exec, std::size_t n, Body&& body) {
    const auto count = static_cast<std::ptrdiff_t>(n);
    if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    }
}

}  // namespace nrlab
