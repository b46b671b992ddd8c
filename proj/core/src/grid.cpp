#include "radgas/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace radgas {

Grid::Grid(double length, std::size_t n_points) : length_(length), n_(n_points) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("grid length must be positive and finite");
    }
    if (n_points < 3) throw std::invalid_argument("grid needs at least 3 points");
    h_ = length / static_cast<double>(n_points - 1);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(n_);
    for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
    return xs;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("grid function size does not match grid");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("non-finite grid function value at node " +
                                        std::to_string(i));
        }
    }
}

GridFunction GridFunction::zeros(const Grid& grid) {
    return GridFunction(grid, std::vector<double>(grid.size(), 0.0));
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.x(i));
    return GridFunction(grid, std::move(v));
}

GridFunction GridFunction::scaled(double c) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= c;
    return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::operator+(const GridFunction& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch");
    std::vector<double> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
    return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch");
    std::vector<double> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= other.values_[i];
    return GridFunction(grid_, std::move(v));
}

Norm Norm::h(int k) {
    switch (k) {
        case 1: return {NormKind::H1, 2.0};
        case 2: return {NormKind::H2, 2.0};
        case 3: return {NormKind::H3, 2.0};
        default: throw std::invalid_argument("Sobolev order must be 1, 2 or 3");
    }
}

double trapezoid(const GridFunction& f) {
    auto v = f.values();
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s * f.grid().h();
}

namespace {

double lp_norm(std::span<const double> v, double h, double p) {
    auto term = [p](double x) { return p == 2.0 ? x * x : std::pow(std::abs(x), p); };
    // Scale by the sup to avoid overflow for large p.
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    if (m == 0.0) return 0.0;
    double s = 0.5 * (term(v.front() / m) + term(v.back() / m));
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += term(v[i] / m);
    return m * std::pow(s * h, 1.0 / p);
}

double sobolev(const GridFunction& f, int k) {
    if (f.size() < static_cast<std::size_t>(k) + 2) {
        throw std::invalid_argument("grid too small for H^" + std::to_string(k) + " norm");
    }
    const double h = f.grid().h();
    double l2 = lp_norm(f.values(), h, 2.0);
    double acc = l2 * l2;
    for (int j = 1; j <= k; ++j) {
        double n = lp_norm(fd_derivative(f, j).values(), h, 2.0);
        acc += n * n;
    }
    return std::sqrt(acc);
}

}  // namespace

double discrete_norm(const GridFunction& f, Norm kind) {
    const double h = f.grid().h();
    switch (kind.kind) {
        case NormKind::Sup: {
            double m = 0.0;
            for (double x : f.values()) m = std::max(m, std::abs(x));
            return m;
        }
        case NormKind::L2: return lp_norm(f.values(), h, 2.0);
        case NormKind::Lp:
            if (!(kind.p >= 1.0) || !std::isfinite(kind.p)) {
                throw std::invalid_argument("Lp norm needs finite p >= 1");
            }
            return lp_norm(f.values(), h, kind.p);
        case NormKind::H1: return sobolev(f, 1);
        case NormKind::H2: return sobolev(f, 2);
        case NormKind::H3: return sobolev(f, 3);
    }
    throw std::invalid_argument("unknown norm kind");
}

std::vector<double> fd_weights(double x0, std::span<const double> xs, int m) {
    const int n = static_cast<int>(xs.size());
    if (m < 0 || n < m + 1) throw std::invalid_argument("fd_weights: too few nodes");
    // c[j][k]: weight of node j for the k-th derivative.
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = c[j][m];
    return w;
}

namespace {

struct Stencil {
    int first;  // offset of the first node relative to the evaluation node
    std::vector<double> w;
};

// Weights on a unit-spaced stencil, evaluation node at offset 0.
Stencil unit_stencil(int first, int width, int order) {
    std::vector<double> xs(width);
    for (int j = 0; j < width; ++j) xs[j] = first + j;
    return {first, fd_weights(0.0, xs, order)};
}

}  // namespace

GridFunction fd_derivative(const GridFunction& f, int order) {
    if (order < 1 || order > 4) throw std::invalid_argument("fd_derivative order must be in 1..4");
    const int n = static_cast<int>(f.size());
    if (n < order + 2) {
        throw std::invalid_argument("grid too small for derivative of order " +
                                    std::to_string(order));
    }
    const int half = order <= 2 ? 1 : 2;
    const int one_sided = order + 2;
    const Stencil centered = unit_stencil(-half, 2 * half + 1, order);
    const double scale = std::pow(f.grid().h(), -order);
    auto v = f.values();

    std::vector<double> out(n);
    auto apply = [&](int i, const Stencil& s) {
        double acc = 0.0;
        for (std::size_t j = 0; j < s.w.size(); ++j) acc += s.w[j] * v[i + s.first + j];
        out[i] = acc * scale;
    };
    for (int i = half; i < n - half; ++i) apply(i, centered);
    for (int i = 0; i < half; ++i) {
        apply(i, unit_stencil(-i, one_sided, order));
        int r = n - 1 - i;
        apply(r, unit_stencil(-(one_sided - 1 - i), one_sided, order));
    }
    return GridFunction(f.grid(), std::move(out));
}

void write_csv(std::ostream& os, const GridFunction& f) {
    os << "x,value\n";
    char buf[64];
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.grid().x(i), f[i]);
        os << buf;
    }
}

}  // namespace radgas
