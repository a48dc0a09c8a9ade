#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "breather/errors.hpp"

namespace breather {

using TimeFn = std::function<double(double)>;

/// Growable cumulative trapezoid table for int_0^t f(s) ds on a fixed step.
/// Extension is mutex-guarded so shared plans can be evaluated concurrently.
class CumulativeIntegral {
  public:
    CumulativeIntegral(TimeFn f, double step);
    double operator()(double t) const;

  private:
    double eval_locked(std::vector<double>& cum, std::vector<double>& fv,
                       double sign, double t) const;

    TimeFn f_;
    double h_;
    mutable std::mutex mu_;
    mutable std::vector<double> cum_pos_, f_pos_;  // nodes k*h, k >= 0
    mutable std::vector<double> cum_neg_, f_neg_;  // nodes -k*h
};

enum class CPolicy {
    zero,                // c(t) = 0
    quadrature_f3_zero,  // c_t = -b_t^2 / (2 a^2), c by cumulative quadrature
    explicit_fn,         // caller supplies c and c_t
};

/// One evaluation of the Ansatz kinematics at time t.
struct Kinematics {
    double t;
    double a, a_t, a_tt;
    double b, b_t, b_tt;
    double c, c_t;
    double tau;  // int_0^t a^2
    double rho;  // sqrt(a)
};

struct PotentialCoeffs {
    double f1, f2, f3;  // V(x,t) = f1 x^2 + f2 x + f3
};

struct ConsistencyResiduals {
    double r_tau;  // d tau/dt - a^2
    double r_eta;  // eta_x + zeta_t / zeta_x
    double r_rho;  // rho_t + rho eta_xx / 2
};

/// The width/translation functions a(t), b(t) with their derivatives and the
/// phase-offset policy. Derivatives and tau fall back to finite differences /
/// quadrature when closed forms are not supplied. Immutable after
/// construction; evaluation is reentrant.
class ModulationPlan {
  public:
    struct Config {
        TimeFn a;                     // required, must stay positive
        TimeFn b;                     // required
        TimeFn a_t, a_tt, b_t, b_tt;  // optional closed forms
        TimeFn tau;                   // optional closed form of int a^2
        CPolicy c_policy = CPolicy::zero;
        TimeFn c, c_t;                // used when c_policy == explicit_fn
        double quadrature_step = 1e-4;
    };

    explicit ModulationPlan(Config cfg);

    double a(double t) const;
    double b(double t) const { return cfg_.b(t); }
    double a_t(double t) const;
    double a_tt(double t) const;
    double b_t(double t) const;
    double b_tt(double t) const;
    double tau(double t) const;
    double c(double t) const;
    double c_t(double t) const;

    bool has_closed_derivatives() const;
    bool has_closed_tau() const { return static_cast<bool>(cfg_.tau); }
    CPolicy c_policy() const { return cfg_.c_policy; }

    /// Center of mass of the modulated solution, -b/a.
    double center_of_mass(double t) const { return -b(t) / a(t); }

  private:
    Config cfg_;
    std::shared_ptr<CumulativeIntegral> tau_quad_;
    std::shared_ptr<CumulativeIntegral> c_quad_;
};

/// Constant coefficients G_{2n+1} of the autonomous nonlinearity, n = 1..N.
struct NonlinearitySpec {
    std::vector<double> G;

    double G3() const;
    /// g_{2i+1}(t) = G_{2i+1} a^{2-i}, i = 1..N
    double strength(int i, const ModulationPlan& plan, double t) const;
};

Kinematics kinematics(const ModulationPlan& plan, double t);

/// Quadratic phase eta(x,t) = -(a_t/2a) x^2 - (b_t/a) x + c(t).
double eta(const ModulationPlan& plan, double x, double t);

PotentialCoeffs potential_coefficients(const ModulationPlan& plan, double t);

/// Cubic strength g_3(t) = G_3 a(t).
double cubic_strength(const NonlinearitySpec& spec, const ModulationPlan& plan,
                      double t);

/// Finite-difference check of the kinematic relations at (t, x_probe).
ConsistencyResiduals consistency_residuals(const ModulationPlan& plan, double t,
                                           double x_probe);

}  // namespace breather
