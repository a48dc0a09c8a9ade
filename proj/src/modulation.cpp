#include "breather/modulation.hpp"

#include <cmath>
#include <utility>

namespace breather {

namespace {

// Central difference with one Richardson step.
double fd_first(const TimeFn& f, double t) {
    const double h = 1e-6;
    const double d1 = (f(t + h) - f(t - h)) / (2 * h);
    const double d2 = (f(t + h / 2) - f(t - h / 2)) / h;
    return (4 * d2 - d1) / 3;
}

// Second derivative needs a larger step: the second difference loses
// eps/h^2 to round-off.
double fd_second(const TimeFn& f, double t) {
    const double h = 2e-4;
    const double f0 = f(t);
    const double d1 = (f(t + h) - 2 * f0 + f(t - h)) / (h * h);
    const double d2 = (f(t + h / 2) - 2 * f0 + f(t - h / 2)) / (h * h / 4);
    return (4 * d2 - d1) / 3;
}

}  // namespace

CumulativeIntegral::CumulativeIntegral(TimeFn f, double step)
    : f_(std::move(f)), h_(step) {
    cum_pos_ = {0.0};
    f_pos_ = {f_(0.0)};
    cum_neg_ = {0.0};
    f_neg_ = {f_pos_[0]};
}

double CumulativeIntegral::eval_locked(std::vector<double>& cum,
                                       std::vector<double>& fv, double sign,
                                       double t) const {
    const double s = sign * t;  // arc length from 0, >= 0
    const std::size_t cell = static_cast<std::size_t>(s / h_);
    while (cum.size() <= cell + 1) {
        const std::size_t k = cum.size();
        const double fk = f_(sign * static_cast<double>(k) * h_);
        cum.push_back(cum.back() + 0.5 * h_ * (fv.back() + fk));
        fv.push_back(fk);
    }
    const double tk = static_cast<double>(cell) * h_;
    const double ft = f_(sign * s);
    const double partial = 0.5 * (s - tk) * (fv[cell] + ft);
    return sign * (cum[cell] + partial);
}

double CumulativeIntegral::operator()(double t) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (t >= 0.0) return eval_locked(cum_pos_, f_pos_, 1.0, t);
    return eval_locked(cum_neg_, f_neg_, -1.0, t);
}

ModulationPlan::ModulationPlan(Config cfg) : cfg_(std::move(cfg)) {
    if (!cfg_.a || !cfg_.b)
        throw CatalogError("modulation plan: a(t) and b(t) are required");
    if (cfg_.c_policy == CPolicy::explicit_fn && (!cfg_.c || !cfg_.c_t))
        throw CatalogError("modulation plan: explicit c policy needs c and c_t");
    if (!cfg_.tau) {
        const TimeFn a = cfg_.a;
        tau_quad_ = std::make_shared<CumulativeIntegral>(
            [a](double t) { const double v = a(t); return v * v; },
            cfg_.quadrature_step);
    }
    if (cfg_.c_policy == CPolicy::quadrature_f3_zero) {
        // c_t = -b_t^2 / (2 a^2) makes f3 vanish identically. Capture the
        // functions by value: plans are copyable and the cache is shared.
        const TimeFn a = cfg_.a;
        const TimeFn bt = cfg_.b_t
                              ? cfg_.b_t
                              : TimeFn([b = cfg_.b](double t) { return fd_first(b, t); });
        c_quad_ = std::make_shared<CumulativeIntegral>(
            [a, bt](double t) {
                const double btv = bt(t);
                const double av = a(t);
                return -btv * btv / (2 * av * av);
            },
            cfg_.quadrature_step);
    }
}

double ModulationPlan::a(double t) const {
    const double v = cfg_.a(t);
    if (!(v > 0.0))
        throw DomainError("modulation plan: a(t) must be positive (rho = sqrt a)");
    return v;
}

double ModulationPlan::a_t(double t) const {
    return cfg_.a_t ? cfg_.a_t(t) : fd_first(cfg_.a, t);
}

double ModulationPlan::a_tt(double t) const {
    return cfg_.a_tt ? cfg_.a_tt(t) : fd_second(cfg_.a, t);
}

double ModulationPlan::b_t(double t) const {
    return cfg_.b_t ? cfg_.b_t(t) : fd_first(cfg_.b, t);
}

double ModulationPlan::b_tt(double t) const {
    return cfg_.b_tt ? cfg_.b_tt(t) : fd_second(cfg_.b, t);
}

double ModulationPlan::tau(double t) const {
    return cfg_.tau ? cfg_.tau(t) : (*tau_quad_)(t);
}

double ModulationPlan::c(double t) const {
    switch (cfg_.c_policy) {
        case CPolicy::zero: return 0.0;
        case CPolicy::quadrature_f3_zero: return (*c_quad_)(t);
        case CPolicy::explicit_fn: return cfg_.c(t);
    }
    return 0.0;
}

double ModulationPlan::c_t(double t) const {
    switch (cfg_.c_policy) {
        case CPolicy::zero: return 0.0;
        case CPolicy::quadrature_f3_zero: {
            const double bt = b_t(t);
            const double av = a(t);
            return -bt * bt / (2 * av * av);
        }
        case CPolicy::explicit_fn: return cfg_.c_t(t);
    }
    return 0.0;
}

bool ModulationPlan::has_closed_derivatives() const {
    return cfg_.a_t && cfg_.a_tt && cfg_.b_t && cfg_.b_tt;
}

double NonlinearitySpec::G3() const {
    if (G.empty()) throw CatalogError("nonlinearity: G_3 missing");
    return G[0];
}

double NonlinearitySpec::strength(int i, const ModulationPlan& plan,
                                  double t) const {
    if (i < 1 || i > static_cast<int>(G.size()))
        throw CatalogError("nonlinearity: order out of range");
    return G[i - 1] * std::pow(plan.a(t), 2 - i);
}

Kinematics kinematics(const ModulationPlan& plan, double t) {
    Kinematics k;
    k.t = t;
    k.a = plan.a(t);
    k.a_t = plan.a_t(t);
    k.a_tt = plan.a_tt(t);
    k.b = plan.b(t);
    k.b_t = plan.b_t(t);
    k.b_tt = plan.b_tt(t);
    k.c = plan.c(t);
    k.c_t = plan.c_t(t);
    k.tau = plan.tau(t);
    k.rho = std::sqrt(k.a);
    return k;
}

double eta(const ModulationPlan& plan, double x, double t) {
    const Kinematics k = kinematics(plan, t);
    return -(k.a_t / (2 * k.a)) * x * x - (k.b_t / k.a) * x + k.c;
}

PotentialCoeffs potential_coefficients(const ModulationPlan& plan, double t) {
    const Kinematics k = kinematics(plan, t);
    const double f1 = k.a_tt / (2 * k.a) - (k.a_t * k.a_t) / (k.a * k.a);
    const double f2 = k.b_tt / k.a - 2 * k.a_t * k.b_t / (k.a * k.a);
    const double f3 = -k.c_t - (k.b_t * k.b_t) / (2 * k.a * k.a);
    return {f1, f2, f3};
}

double cubic_strength(const NonlinearitySpec& spec, const ModulationPlan& plan,
                      double t) {
    return spec.G3() * plan.a(t);
}

ConsistencyResiduals consistency_residuals(const ModulationPlan& plan, double t,
                                           double x_probe) {
    const double h = 1e-5;
    const Kinematics k = kinematics(plan, t);

    const double tau_t = (plan.tau(t + h) - plan.tau(t - h)) / (2 * h);
    const double r_tau = tau_t - k.a * k.a;

    // zeta = a x + b, finite difference in t against the analytic eta_x
    const double zeta_p = plan.a(t + h) * x_probe + plan.b(t + h);
    const double zeta_m = plan.a(t - h) * x_probe + plan.b(t - h);
    const double zeta_t = (zeta_p - zeta_m) / (2 * h);
    const double eta_x = -(k.a_t / k.a) * x_probe - k.b_t / k.a;
    const double r_eta = eta_x + zeta_t / k.a;

    const double rho_t =
        (std::sqrt(plan.a(t + h)) - std::sqrt(plan.a(t - h))) / (2 * h);
    const double eta_xx = -k.a_t / k.a;
    const double r_rho = rho_t + k.rho * eta_xx / 2;

    return {r_tau, r_eta, r_rho};
}

}  // namespace breather
