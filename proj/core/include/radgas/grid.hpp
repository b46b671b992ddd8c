#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace radgas {

// Uniform grid on the truncated half line [0, L].
class Grid {
public:
    Grid(double length, std::size_t n_points);

    double length() const noexcept { return length_; }
    std::size_t size() const noexcept { return n_; }
    double h() const noexcept { return h_; }
    double x(std::size_t i) const noexcept { return static_cast<double>(i) * h_; }
    std::vector<double> nodes() const;

    bool operator==(const Grid& other) const noexcept {
        return length_ == other.length_ && n_ == other.n_;
    }

private:
    double length_;
    std::size_t n_;
    double h_;
};

class GridFunction {
public:
    GridFunction(Grid grid, std::vector<double> values);

    static GridFunction zeros(const Grid& grid);
    static GridFunction sample(const Grid& grid, const std::function<double(double)>& f);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    // Callers that mutate are responsible for keeping values finite.
    std::vector<double>& mutable_values() noexcept { return values_; }

    GridFunction scaled(double c) const;
    GridFunction operator+(const GridFunction& other) const;
    GridFunction operator-(const GridFunction& other) const;

private:
    Grid grid_;
    std::vector<double> values_;
};

enum class NormKind { L2, Sup, H1, H2, H3, Lp };

struct Norm {
    NormKind kind = NormKind::L2;
    double p = 2.0;  // only read for Lp

    static Norm l2() { return {NormKind::L2, 2.0}; }
    static Norm sup() { return {NormKind::Sup, 0.0}; }
    static Norm h(int k);
    static Norm lp(double p) { return {NormKind::Lp, p}; }
};

// Trapezoid rule over the whole grid.
double trapezoid(const GridFunction& f);

double discrete_norm(const GridFunction& f, Norm kind);

// Second-order finite differences: centered in the interior, one-sided
// (order+2)-point stencils where the centered one does not fit.
// Requires 1 <= order <= 4 and n_points >= order + 2.
GridFunction fd_derivative(const GridFunction& f, int order);

// Finite-difference weights for the derivative of order m at x0 from
// nodes xs (Fornberg's algorithm).
std::vector<double> fd_weights(double x0, std::span<const double> xs, int m);

void write_csv(std::ostream& os, const GridFunction& f);

}  // namespace radgas
