/**
 * @file measure_recurrence.hpp
 * @brief Poincare recurrence on finite uniform spaces: permutations, first-return
 *        times and the sets A_n = U_{k >= n} f^-k(E), all with exact counting.
 */
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nrlab {

/// A measure-preserving self-map of {0..n-1} with counting measure, i.e. a permutation.
class FiniteSystem {
public:
    /// Throws std::invalid_argument if `map` is not a bijection of {0..n-1}.
    explicit FiniteSystem(std::vector<std::size_t> map);

    static FiniteSystem identity(std::size_t n);
    static FiniteSystem cyclic_shift(std::size_t n);
    /// Uniform permutation from a Fisher-Yates shuffle driven by mt19937_64(seed).
    static FiniteSystem random(std::size_t n, std::uint64_t seed);

    std::size_t size() const { return map_.size(); }
    std::size_t operator()(std::size_t x) const { return map_[x]; }
    const std::vector<std::size_t>& map() const { return map_; }

    /// Cycle index of every point and the cycle lengths.
    const std::vector<std::size_t>& cycle_of() const { return cycle_of_; }
    const std::vector<std::size_t>& cycle_lengths() const { return cycle_len_; }
    std::size_t cycle_length(std::size_t x) const { return cycle_len_[cycle_of_[x]]; }

private:
    std::vector<std::size_t> map_;
    std::vector<std::size_t> cycle_of_;
    std::vector<std::size_t> cycle_len_;
};

/// Uniform integer in [0, bound) from raw 64-bit engine output with rejection, so
/// the sequence does not depend on the standard library's distributions.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Exact measure k / n.
struct Measure {
    std::size_t count = 0;
    std::size_t total = 1;
    std::string str() const { return std::to_string(count) + "/" + std::to_string(total); }
    friend bool operator==(const Measure&, const Measure&) = default;
};

/// For each x in E (ascending, duplicates removed), the least k >= 1 with f^k(x) in E.
/// Uses the cycle decomposition. Throws std::invalid_argument if E is empty or has
/// points outside {0..n-1}.
std::vector<std::pair<std::size_t, std::size_t>> recurrence_statistics(const FiniteSystem& sys,
                                                                       const std::vector<std::size_t>& e);

struct AnSetReport {
    std::vector<Measure> measures;  ///< mu(A_0) .. mu(A_n_max)
    bool e_subset_a0 = false;
    bool nested = false;            ///< A_{n+1} subset of A_n for every n
    bool equal_measure = false;     ///< all mu(A_n) equal
    std::size_t exceptional = 0;    ///< |E - intersection of A_n|
    std::vector<std::vector<std::size_t>> sets;  ///< A_0 .. A_n_max (sorted)

    bool ok() const { return e_subset_a0 && nested && equal_measure && exceptional == 0; }
};

/// Materializes A_0..A_{n_max}: x is in A_n iff f^k(x) is in E for some k in
/// [n, n + L_x) with L_x the length of x's cycle.
AnSetReport an_set_check(const FiniteSystem& sys, const std::vector<std::size_t>& e, std::size_t n_max);

/// Parses "a..b" (inclusive) or a comma list "1,5,7" into a point set.
std::vector<std::size_t> parse_point_set(const std::string& text);

}  // namespace nrlab
