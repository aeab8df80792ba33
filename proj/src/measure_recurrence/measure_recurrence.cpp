/**
 * @file measure_recurrence.cpp
 */
#include "nrlab/measure_recurrence.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace nrlab {

FiniteSystem::FiniteSystem(std::vector<std::size_t> map) : map_(std::move(map)) {
    const std::size_t n = map_.size();
    if (n == 0) throw std::invalid_argument("FiniteSystem: empty state space");
    std::vector<char> hit(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t y = map_[x];
        if (y >= n || hit[y]) {
            throw std::invalid_argument("FiniteSystem: map is not a bijection (f(" + std::to_string(x) + ") = " +
                                        std::to_string(y) + "), so it does not preserve counting measure");
        }
        hit[y] = 1;
    }
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    cycle_of_.assign(n, none);
    for (std::size_t x = 0; x < n; ++x) {
        if (cycle_of_[x] != none) continue;
        const std::size_t c = cycle_len_.size();
        std::size_t len = 0;
        std::size_t y = x;
        do {
            cycle_of_[y] = c;
            y = map_[y];
            ++len;
        } while (y != x);
        cycle_len_.push_back(len);
    }
}

FiniteSystem FiniteSystem::identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t x = 0; x < n; ++x) m[x] = x;
    return FiniteSystem(std::move(m));
}

FiniteSystem FiniteSystem::cyclic_shift(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t x = 0; x < n; ++x) m[x] = (x + 1) % n;
    return FiniteSystem(std::move(m));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

FiniteSystem FiniteSystem::random(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> m(n);
    for (std::size_t x = 0; x < n; ++x) m[x] = x;
    for (std::size_t i = n; i > 1; --i) std::swap(m[i - 1], m[uniform_below(rng, i)]);
    return FiniteSystem(std::move(m));
}

namespace {

std::vector<std::size_t> normalized_set(const FiniteSystem& sys, const std::vector<std::size_t>& e) {
    if (e.empty()) throw std::invalid_argument("E must be nonempty");
    std::vector<std::size_t> s(e);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.back() >= sys.size())
        throw std::invalid_argument("E contains " + std::to_string(s.back()) + " outside {0.." +
                                    std::to_string(sys.size() - 1) + "}");
    return s;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> recurrence_statistics(const FiniteSystem& sys,
                                                                       const std::vector<std::size_t>& e) {
    const std::vector<std::size_t> set = normalized_set(sys, e);
    std::vector<char> in_e(sys.size(), 0);
    for (std::size_t x : set) in_e[x] = 1;

    std::vector<std::size_t> ret(sys.size(), 0);
    std::vector<char> cycle_done(sys.cycle_lengths().size(), 0);
    for (std::size_t x0 : set) {
        const std::size_t c = sys.cycle_of()[x0];
        if (cycle_done[c]) continue;
        cycle_done[c] = 1;
        // Walk the cycle once from x0; the gap between consecutive E-visits is the
        // return time of the earlier one.
        const std::size_t len = sys.cycle_length(x0);
        std::size_t last = x0;
        std::size_t last_pos = 0;
        std::size_t y = sys(x0);
        for (std::size_t k = 1; k <= len; ++k, y = sys(y)) {
            if (in_e[y]) {
                ret[last] = k - last_pos;
                last = y;
                last_pos = k;
            }
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(set.size());
    for (std::size_t x : set) out.emplace_back(x, ret[x]);
    return out;
}

AnSetReport an_set_check(const FiniteSystem& sys, const std::vector<std::size_t>& e, std::size_t n_max) {
    if (n_max < 1) throw std::invalid_argument("an_set_check: n_max must be >= 1");
    const std::vector<std::size_t> set = normalized_set(sys, e);
    const std::size_t n = sys.size();
    std::vector<char> in_e(n, 0);
    for (std::size_t x : set) in_e[x] = 1;

    AnSetReport rep;
    std::vector<std::size_t> fn(n);  // f^m(x)
    for (std::size_t x = 0; x < n; ++x) fn[x] = x;
    std::vector<char> in_all(n, 1);
    std::vector<char> prev;
    rep.nested = true;
    for (std::size_t m = 0; m <= n_max; ++m) {
        std::vector<char> a(n, 0);
        for (std::size_t x = 0; x < n; ++x) {
            std::size_t y = fn[x];
            for (std::size_t k = 0; k < sys.cycle_length(x); ++k, y = sys(y)) {
                if (in_e[y]) {
                    a[x] = 1;
                    break;
                }
            }
        }
        std::vector<std::size_t> members;
        for (std::size_t x = 0; x < n; ++x) {
            if (a[x]) members.push_back(x);
            if (!a[x]) in_all[x] = 0;
            if (!prev.empty() && a[x] && !prev[x]) rep.nested = false;
        }
        rep.measures.push_back({members.size(), n});
        if (m == 0) rep.e_subset_a0 = std::all_of(set.begin(), set.end(), [&](std::size_t x) { return a[x] != 0; });
        rep.sets.push_back(std::move(members));
        prev = std::move(a);
        for (std::size_t x = 0; x < n; ++x) fn[x] = sys(fn[x]);
    }
    rep.equal_measure = std::all_of(rep.measures.begin(), rep.measures.end(),
                                    [&](const Measure& m) { return m == rep.measures.front(); });
    rep.exceptional = static_cast<std::size_t>(
        std::count_if(set.begin(), set.end(), [&](std::size_t x) { return !in_all[x]; }));
    return rep;
}

std::vector<std::size_t> parse_point_set(const std::string& text) {
    std::vector<std::size_t> out;
    auto parse_num = [&](const std::string& s) -> std::size_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad point '" + s + "' in set '" + text + "'");
        return static_cast<std::size_t>(std::stoull(s));
    };
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const std::size_t dots = item.find("..");
        if (dots != std::string::npos) {
            const std::size_t a = parse_num(item.substr(0, dots));
            const std::size_t b = parse_num(item.substr(dots + 2));
            if (b < a) throw std::invalid_argument("empty range '" + item + "'");
            for (std::size_t x = a; x <= b; ++x) out.push_back(x);
        } else {
            out.push_back(parse_num(item));
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace nrlab
