#pragma once

#include <vector>

#include "radgas/grid.hpp"

namespace radgas {

// Inviscid Burgers rarefaction fan for u_minus < u_plus.
double riemann_rarefaction(double u_minus, double u_plus, double x, double t);

// log(erfc(z)), accurate where erfc underflows.
double log_erfc(double z);

// (2/sqrt(pi)) e^{-z^2} / erfc(z), the negative log-derivative of erfc.
double mills_ratio(double z);

// Viscous Burgers solution u_t + u u_x = u_xx with step data (ul for x<0,
// ur for x>0), from the Hopf-Cole representation. deriv in 0..4.
double smooth_burgers(double ul, double ur, double x, double t, int deriv);

// u, u_x, u_xx together, plus u - ul computed without cancellation.
struct BurgersJet {
    double u;
    double u_x;
    double u_xx;
    double offset;  // u - ul
};
BurgersJet smooth_burgers_jet(double ul, double ur, double x, double t);

struct RarefactionFamily {
    enum class Case { Case4, Case5 };

    double u_minus;
    double u_plus;
    Case tag;

    // 0 <= u_minus < u_plus; Case4 iff u_minus == 0.
    static RarefactionFamily make(double u_minus, double u_plus);

    double delta() const noexcept { return u_plus - u_minus; }
    // Burgers step datum: (-u_plus, u_plus) in Case4, (u_minus, u_plus) in Case5.
    double left_state() const noexcept { return tag == Case::Case4 ? -u_plus : u_minus; }
    double right_state() const noexcept { return u_plus; }
};

double smooth_rarefaction(const RarefactionFamily& fam, double x, double t, int deriv);

struct ModifiedWaveValue {
    double phi;
    double phi_x;
    double psi;
    double u_hat;
    double q_hat;
};

struct Residuals {
    double r1;
    double r2;
};

// Smooth rarefaction with the exponential boundary correctors that make
// phi(0,t) = u_minus and psi(0,t) = 0.
class ModifiedWave {
public:
    explicit ModifiedWave(RarefactionFamily family) : fam_(family) {}

    const RarefactionFamily& family() const noexcept { return fam_; }

    ModifiedWaveValue eval(double x, double t) const;
    Residuals residuals(double x, double t) const;

    // phi and psi on every grid node at time t.
    void sample(const Grid& grid, double t, std::vector<double>& phi,
                std::vector<double>& psi) const;

    struct Boundary {
        double a;    // u~(0,t) - u_minus
        double b;    // -u~_x(0,t)
        double a_t;  // d/dt of a
    };
    Boundary boundary(double t) const;

private:
    RarefactionFamily fam_;
};

}  // namespace radgas
