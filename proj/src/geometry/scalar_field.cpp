/**
 * @file scalar_field.cpp
 * @brief Grid functions on the annulus and their CSV form.
 */
#include "nrlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nrlab {

ScalarField::ScalarField(PolarGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("ScalarField: " + std::to_string(values_.size()) +
                                    " values for a grid of " + std::to_string(grid_.size()) + " nodes");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw std::domain_error("ScalarField: non-finite value at node (" +
                                    std::to_string(grid_.row(k)) + ", " + std::to_string(grid_.col(k)) + ")");
        }
    }
}

ScalarField ScalarField::zeros(const PolarGrid& grid) {
    return ScalarField(grid, std::vector<double>(grid.size(), 0.0));
}

ScalarField ScalarField::from_function(const PolarGrid& grid,
                                       const std::function<double(double, double)>& f) {
    std::vector<double> v(grid.size());
    for (int i = 0; i < grid.n_r(); ++i)
        for (int j = 0; j < grid.n_theta(); ++j) v[grid.index(i, j)] = f(grid.r(i), grid.theta(j));
    return ScalarField(grid, std::move(v));
}

ScalarField ScalarField::scaled(double alpha) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= alpha;
    return ScalarField(grid_, std::move(v));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("ScalarField +: grid mismatch");
    std::vector<double> v(a.values_);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += b.values_[k];
    return ScalarField(a.grid_, std::move(v));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("ScalarField -: grid mismatch");
    std::vector<double> v(a.values_);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= b.values_[k];
    return ScalarField(a.grid_, std::move(v));
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

std::string ScalarField::to_csv() const {
    std::string out = "r,theta,value\n";
    out.reserve(out.size() + values_.size() * 64);
    char buf[96];
    for (int i = 0; i < grid_.n_r(); ++i) {
        for (int j = 0; j < grid_.n_theta(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid_.r(i), grid_.theta(j), (*this)(i, j));
            out += buf;
        }
    }
    return out;
}

ScalarField ScalarField::from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("r,theta,value", 0) != 0) {
        throw std::invalid_argument("ScalarField CSV: expected header `r,theta,value`");
    }
    std::vector<double> rs, vals;
    int rows_with_first_r = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double r = 0, th = 0, v = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &r, &th, &v) != 3) {
            throw std::invalid_argument("ScalarField CSV: malformed row `" + line + "`");
        }
        if (rs.empty() || r == rs.front()) ++rows_with_first_r;
        rs.push_back(r);
        vals.push_back(v);
    }
    if (rows_with_first_r == 0 || vals.size() % rows_with_first_r != 0) {
        throw std::invalid_argument("ScalarField CSV: rows do not form a tensor grid");
    }
    const int n_theta = rows_with_first_r;
    const int n_r = static_cast<int>(vals.size()) / n_theta;
    PolarGrid grid(n_r, n_theta);
    for (std::size_t k = 0; k < rs.size(); ++k) {
        if (std::abs(rs[k] - grid.r(grid.row(k))) > 1e-12) {
            throw std::invalid_argument("ScalarField CSV: radial nodes are not the uniform grid on [1, 2]");
        }
    }
    return ScalarField(grid, std::move(vals));
}

double integrate(const ScalarField& f) {
    const PolarGrid& g = f.grid();
    double total = 0.0;
    for (int i = 0; i < g.n_r(); ++i) {
        double ring = 0.0;
        for (int j = 0; j < g.n_theta(); ++j) ring += f(i, j);
        total += g.area_weight(i) * ring;
    }
    return total;
}

}  // namespace nrlab
