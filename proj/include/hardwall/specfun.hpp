#pragma once

#include <functional>

namespace hardwall {

/// Tolerances and iteration budgets shared by series, continued fractions and quadrature.
struct AccuracyConfig
{
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    long max_terms = 1000000;
    int quad_panel_limit = 200;

    /// Throws DomainError unless tolerances are positive and max_terms >= 100.
    void validate() const;
};

namespace specfun {

/// a, lambda = x/a and the signed Temme variable eta with eta^2/2 = lambda - 1 - log(lambda).
struct GammaArgs
{
    double a = 1.0;
    double lambda = 1.0;
    double eta = 0.0;

    static GammaArgs from_lambda(double a, double lambda);
    static GammaArgs from_x(double a, double x) { return from_lambda(a, x / a); }
};

double euler_gamma() noexcept;

/// log(1 + x) - x, accurate for small |x|.
double log1pmx(double x);

double log_gamma(double a);

/// log Gamma(a) minus its Stirling approximation (a - 1/2) log a - a + log(2 pi)/2.
double log_gamma_star(double a);

/// log(x^a e^{-x} / Gamma(a)), the common prefactor of P and Q.
double log_gamma_density(double a, double x);

double log_reg_lower_gamma(double a, double x, AccuracyConfig const& cfg = {});
double log_reg_upper_gamma(double a, double x, AccuracyConfig const& cfg = {});
double reg_lower_gamma(double a, double x, AccuracyConfig const& cfg = {});
double reg_upper_gamma(double a, double x, AccuracyConfig const& cfg = {});

/// eta(lambda) = sign(lambda - 1) sqrt(2 (lambda - 1 - log lambda)).
double temme_eta(double lambda);
double temme_c0(double lambda);
double temme_c1(double lambda);

/// Uniform approximation of P(a, lambda a) keeping R_a through c0 (order 0) or c1 (order 1).
/// Requires a >= 50.
double temme_uniform_P(GammaArgs const& args, int order = 1);

double erfc(double y);

/// e^{y^2} erfc(y). Overflows to +inf for y below about -26.6.
double erfcx(double y);

/// e^{-y^2} / (sqrt(pi) erfc y), finite for all real y.
double erfc_ratio(double y);

/// erfc_ratio(y) - y without cancellation for large y.
double erfc_ratio_excess(double y);

double exp_integral_E1(double x, AccuracyConfig const& cfg = {});

/// theta(z; i t) = sum_l exp(-pi t l^2 + 2 pi i l z) for real z and t > 0.
double jacobi_theta(double z, double tau_im);

/// d/dz log theta(z; i t).
double jacobi_log_theta_deriv(double z, double tau_im);

/// Adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
double quad_adaptive(std::function<double(double)> const& f, double lo, double hi,
                     AccuracyConfig const& cfg = {});

} // namespace specfun
} // namespace hardwall
