#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace radgas {

struct OdeOptions {
    double rtol = 1e-12;
    double atol = 1e-16;
    double h_init = 0.0;  // 0 selects a starting step from the data
    // Cap on the step relative to |s| (floored at h_rel_floor), so the cubic
    // Hermite interpolant between accepted nodes stays at integrator accuracy.
    double h_rel_max = 0.0;  // 0 disables the cap
    double h_rel_floor = 1e-8;
    std::size_t max_steps = 5'000'000;
};

struct OdeNode {
    double s;
    double v;
    double dv;  // right-hand side at (s, v)
};

struct OdeResult {
    std::vector<OdeNode> nodes;  // accepted steps, first node is the initial point
    std::size_t rejected = 0;
};

using ScalarRhs = std::function<double(double, double)>;

// Dormand-Prince 5(4) for a scalar ODE v' = f(s, v) from s0 to s1 > s0.
// Steps that would make v non-positive are rejected. Throws
// IntegratorFailure when the step size underflows or max_steps is hit.
OdeResult integrate_dp45(const ScalarRhs& f, double s0, double v0, double s1,
                         const OdeOptions& opt = {});

// Cubic Hermite interpolation on accepted nodes; s must lie in [a.s, b.s].
double hermite(const OdeNode& a, const OdeNode& b, double s);
// Derivative of the same cubic.
double hermite_derivative(const OdeNode& a, const OdeNode& b, double s);

}  // namespace radgas
