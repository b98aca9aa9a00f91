#include "hardwall/asymptotics.hpp"

#include "hardwall/compensated_sum.hpp"
#include "hardwall/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hardwall {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;
constexpr double cutoff_L = 50.0;
constexpr double series_tol = 1e-15;
constexpr int series_quiet_run = 10;

// int over [lo, hi] in unit-ish panels so that the adaptive rule sees each feature
double integrate_pieces(std::function<double(double)> const& f, double lo, double hi, double width,
                        AccuracyConfig const& cfg)
{
    NeumaierSum<double> s;
    for (double a = lo; a < hi; a += width)
        s.add(specfun::quad_adaptive(f, a, std::min(hi, a + width), cfg));
    return s.value();
}

// int over the real line of g(y) for y < 0 and h(y) for y > 0 (h regularized), with an analytic
// correction for the part of h beyond L
double regularized_line(std::function<double(double)> const& g, std::function<double(double)> const& h,
                        double tail, AccuracyConfig const& cfg)
{
    return integrate_pieces(g, -cutoff_L, 0.0, 5.0, cfg) + integrate_pieces(h, 0.0, cutoff_L, 5.0, cfg) + tail;
}

double inv_powers(double L, std::initializer_list<std::pair<double, int>> terms)
{
    double s = 0.0;
    for (auto [c, k] : terms)
        s += c / std::pow(L, k);
    return s;
}

// 1 - (1 + s) e^{-s}
double one_minus_1ps_exp(double s)
{
    if (s < 0.1) {
        // sum_{k >= 2} (-1)^k (k - 1) s^k / k!
        double term = -s;  // (-1)^k s^k / k! at k = 1
        double sum = 0.0;
        for (int k = 2; k < 40; ++k) {
            term *= -s / k;
            sum += (k - 1) * term;
        }
        return sum;
    }
    return -std::expm1(-s) - s * std::exp(-s);
}

// E1(s) + gamma + log s
double ein(double s)
{
    if (s <= 1.0) {
        double term = 1.0, sum = 0.0;
        for (int k = 1; k < 60; ++k) {
            term *= -s / k;
            sum -= term / k;
        }
        return sum;
    }
    return specfun::exp_integral_E1(s) + specfun::euler_gamma() + std::log(s);
}

double reduced_angle(double theta1, double theta2)
{
    double const phi = std::remainder(theta1 - theta2, 2 * pi);
    if (std::abs(phi) < 1e-12)
        throw DegenerateAngles("theta1 and theta2 coincide modulo 2 pi");
    return phi;
}

// Sum of term(l) for l = 0, 1, ... until series_quiet_run consecutive terms fall below
// series_tol times the running magnitude.
template <typename Term> cplx sum_until_quiet(Term term, AccuracyConfig const& cfg, char const* what)
{
    ComplexNeumaierSum<double> s;
    int quiet = 0;
    for (long l = 0; l < cfg.max_terms; ++l) {
        cplx const t = term(l);
        s.add(t);
        if (std::abs(t) <= series_tol * std::abs(s.value()))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= series_quiet_run)
            return s.value();
    }
    throw NonConvergence(std::string(what) + ": series did not settle within max_terms");
}

// e^{i l phi} with periodic resynchronization so rounding does not drift over long runs
class Rotor
{
public:
    explicit Rotor(double phi) : phi_(phi), step_(std::polar(1.0, phi)) {}
    cplx next()
    {
        cplx const out = cur_;
        ++l_;
        cur_ = (l_ % 256 == 0) ? std::polar(1.0, std::remainder(phi_ * double(l_), 2 * pi)) : cur_ * step_;
        return out;
    }

private:
    double phi_;
    cplx step_;
    cplx cur_{1.0, 0.0};
    long l_ = 0;
};

// 1 / (1 + c e^{u}) without overflow
double logistic_like(double log_c, double u)
{
    double const e = log_c + u;
    if (e > 700)
        return std::exp(-e);
    return 1.0 / (1.0 + std::exp(e));
}

cplx q_n_sum(ModelParams const& params, EquilibriumData const& eq, double phi, AccuracyConfig const& cfg)
{
    double const lr = std::log(params.r2 / params.r1);
    double const l12 = std::log(eq.sigma1 / eq.sigma2);
    double const x = eq.x;
    Rotor up(phi), down(-phi);
    down.next();  // starts at e^{-i phi}
    cplx const a = sum_until_quiet([&](long j) { return up.next() * logistic_like(l12, 2 * (j + 1 - x) * lr); }, cfg,
                                   "Q_n");
    cplx const b =
        sum_until_quiet([&](long j) { return down.next() * logistic_like(-l12, 2 * (j + x) * lr); }, cfg, "Q_n");
    return a - b;
}

Prediction make_prediction(Theorem th, std::vector<std::pair<std::string, cplx>> terms, std::string order)
{
    Prediction p;
    p.theorem = th;
    p.breakdown = std::move(terms);
    p.error_order = std::move(order);
    cplx v = 0;
    for (auto const& [name, t] : p.breakdown)
        v += t;
    p.value = v;
    return p;
}

void check_t(double t1, double t2)
{
    if (!(t1 >= 0) || !(t2 >= 0))
        throw DomainError("t1 and t2 must be nonnegative");
}

void check_s(double s1, double s2)
{
    if (!(s1 > 0) || !(s2 > 0))
        throw DomainError("semi-hard parameters must be positive");
}

// int G(y) * weight(y) dy with G = exp(-y (s1 + s2) - (s1^2 + s2^2)/2) e^{-y^2}/(sqrt(pi) erfc y)
double semi_hard_integral(double s1, double s2, std::function<double(double, double)> const& weight,
                          AccuracyConfig const& cfg)
{
    double const ssum = s1 + s2, sq = 0.5 * (s1 * s1 + s2 * s2);
    auto G = [&](double y) {
        double const r = specfun::erfc_ratio(y);
        return std::exp(-y * ssum - sq) * weight(y, r);
    };
    // beyond hi the Gaussian factor is below 1e-300
    double const hi = std::max(10.0, 700.0 / ssum);
    NeumaierSum<double> s;
    s.add(integrate_pieces(G, -cutoff_L, 0.0, 5.0, cfg));
    for (double a = 0.0, w = 1.0; a < hi; a += w, w *= 2)
        s.add(specfun::quad_adaptive(G, a, std::min(hi, a + w), cfg));
    return s.value();
}

} // namespace

char const* theorem_name(Theorem t)
{
    switch (t) {
    case Theorem::HardMicro:
        return "1.1";
    case Theorem::SemiHardMicro:
        return "1.2";
    case Theorem::R1R2Macro:
        return "1.3";
    case Theorem::R1R1Macro:
        return "1.4";
    case Theorem::SemiHardMacroBound:
        return "1.5";
    }
    return "?";
}

Integrals integrals_I1_to_I4(AccuracyConfig const& cfg)
{
    using specfun::erfc_ratio;
    using specfun::erfc_ratio_excess;
    double const L = cutoff_L;
    Integrals out;
    out.I = regularized_line([](double y) { return y * erfc_ratio(y); },
                             [](double y) { return y * erfc_ratio_excess(y) - 0.5; },
                             inv_powers(L, {{-0.5, 1}, {5.0 / 12, 3}, {-37.0 / 40, 5}, {353.0 / 112, 7},
                                            {-4081.0 / 288, 9}}),
                             cfg);
    out.I1 = regularized_line([](double y) { return erfc_ratio(y); },
                              [](double y) { return erfc_ratio_excess(y) - y / (2 * (1 + y * y)); },
                              inv_powers(L, {{3.0 / 16, 4}, {-11.0 / 16, 6}, {345.0 / 128, 8}, {-813.0 / 64, 10}}),
                              cfg);
    out.I2 = regularized_line([](double y) { return y * y * y * erfc_ratio(y); },
                              [](double y) { return y * y * y * erfc_ratio_excess(y) - 0.5 * y * y + 0.5; },
                              inv_powers(L, {{5.0 / 4, 1}, {-37.0 / 24, 3}, {353.0 / 80, 5}, {-583.0 / 32, 7},
                                             {55205.0 / 576, 9}}),
                              cfg);
    auto sq_excess = [](double y) {
        double const e = erfc_ratio_excess(y);
        return 2 * y * e + e * e - 1;
    };
    out.I3 = regularized_line([](double y) { return std::pow(erfc_ratio(y), 2); }, sq_excess,
                              inv_powers(L, {{-3.0 / 4, 1}, {2.0 / 3, 3}, {-31.0 / 20, 5}, {153.0 / 28, 7},
                                             {-3629.0 / 144, 9}}),
                              cfg);
    out.I4 = regularized_line([](double y) { return std::pow(y * erfc_ratio(y), 2); },
                              [&](double y) { return y * y * sq_excess(y) + 0.75; },
                              inv_powers(L, {{2.0, 1}, {-31.0 / 12, 3}, {153.0 / 20, 5}, {-3629.0 / 112, 7},
                                             {1564.0 / 9, 9}}),
                              cfg);
    return out;
}

double integral_I(AccuracyConfig const& cfg)
{
    using specfun::erfc_ratio;
    using specfun::erfc_ratio_excess;
    return regularized_line([](double y) { return y * erfc_ratio(y); },
                            [](double y) { return y * erfc_ratio_excess(y) - 0.5; },
                            inv_powers(cutoff_L, {{-0.5, 1}, {5.0 / 12, 3}, {-37.0 / 40, 5}, {353.0 / 112, 7},
                                                  {-4081.0 / 288, 9}}),
                            cfg);
}

HardMicroConstants hard_micro_constants(ModelParams const& params, EquilibriumData const& eq, double t1, double t2)
{
    check_t(t1, t2);
    double const b = params.b, r1 = params.r1, s1 = eq.sigma1;
    double const r1b = std::pow(r1, b), r12b = r1b * r1b;
    double const dq = b * b * r12b / (r1 * r1);
    double const s = t1 + t2;
    HardMicroConstants c;
    c.C2 = dq / 2;
    static double const I = integral_I();
    if (s < 1e-8) {
        c.C1 = s1 * s1 / (2 * r1 * r1);
        c.C3 = dq / 2 * std::log(2 * pi * s1 * s1 / (b * b * r12b));
        c.C4 = std::sqrt(2.0) * b * b * r1b / (r1 * r1) * I;
        return c;
    }
    double const g = one_minus_1ps_exp(s);
    double const tt = t1 * t1 + t2 * t2;
    c.C1 = s1 * s1 * g / (r1 * r1 * s * s);
    c.C3 = -dq * (ein(s) + std::log(b * r1b / (s1 * std::sqrt(2 * pi)))) +
           s1 / (r1 * r1 * s * s * s) *
               (s * s * tt * std::exp(-s) / 2 + (2 * t1 * t2 - b * b * r12b / s1 * s * tt) * g);
    c.C4 = std::sqrt(2.0) * b * b * r1b / (r1 * r1) * (1 - 2 * b * r12b * s / s1) * I;
    return c;
}

double theta_factor_Fn(ModelParams const& params, EquilibriumData const& eq)
{
    double const lr = std::log(params.r2 / params.r1);
    double const ls = std::log(eq.sigma2 / eq.sigma1);
    double const z = eq.j_star + 0.5 + ls / (2 * lr);
    return (specfun::jacobi_log_theta_deriv(z, pi / lr) + ls) / (2 * lr);
}

double theta_factor_bound(ModelParams const& params, EquilibriumData const& eq)
{
    double const lr = std::log(params.r2 / params.r1);
    double const t = pi / lr;
    auto f = [&](double z) { return std::abs(specfun::jacobi_log_theta_deriv(z, t)); };
    int const grid = 4096;
    double best = 0.0, arg = 0.0;
    for (int i = 0; i < grid; ++i) {
        double const z = double(i) / grid;
        if (f(z) > best) {
            best = f(z);
            arg = z;
        }
    }
    // refine around the coarse maximum
    for (int i = -1000; i <= 1000; ++i)
        best = std::max(best, f(arg + i * 1e-3 / grid));
    return (best * (1 + 1e-6) + std::abs(std::log(eq.sigma2 / eq.sigma1))) / (2 * lr);
}

Prediction predict_hard_micro(ModelParams const& params, EquilibriumData const& eq, double t1, double t2)
{
    auto const c = hard_micro_constants(params, eq, t1, t2);
    double const n = params.n;
    double const osc = eq.sigma1 / (params.r1 * params.r1) * std::exp(-t1 - t2) * theta_factor_Fn(params, eq);
    return make_prediction(Theorem::HardMicro,
                           {{"C1*n^2", c.C1 * n * n},
                            {"C2*nlogn", c.C2 * n * std::log(n)},
                            {"C3*n", c.C3 * n},
                            {"theta_term", osc * n},
                            {"C4*sqrt_n", c.C4 * std::sqrt(n)}},
                           "O(n^{2/5})");
}

SemiHardConstants semi_hard_constants(ModelParams const& params, EquilibriumData const& eq, double s1, double s2,
                                      AccuracyConfig const& cfg)
{
    check_s(s1, s2);
    double const b = params.b, dq = eq.delta_tilde_Q_r1;
    SemiHardConstants c;
    c.C1 = 2 * dq * semi_hard_integral(s1, s2, [](double, double r) { return r; }, cfg);
    double const ss = s1 + s2, sq = s1 * s1 + s2 * s2, cu = s1 * s1 * s1 + s2 * s2 * s2;
    auto bracket = [&](double y, double r) {
        double const y2 = y * y;
        return r * ((10 * y2 - 2) * r / 3 + 5 * y - 10 * y2 * y / 3 + ss / b - y * sq / (2 * b) - 2 * y2 * ss +
                    (2 * b - 3) / b * cu / 6);
    };
    c.C2 = b * std::sqrt(2 * dq) / params.r1 * semi_hard_integral(s1, s2, bracket, cfg);
    return c;
}

Prediction predict_semi_hard_micro(ModelParams const& params, EquilibriumData const& eq, double s1, double s2)
{
    auto const c = semi_hard_constants(params, eq, s1, s2);
    double const n = params.n;
    return make_prediction(Theorem::SemiHardMicro, {{"C1*n", c.C1 * n}, {"C2*sqrt_n", c.C2 * std::sqrt(n)}}, "O(1)");
}

double density_profile_rho(double x, AccuracyConfig const& cfg)
{
    if (!(x > 0))
        throw DomainError("density_profile_rho: x must be positive");
    return semi_hard_integral(x, x, [](double, double r) { return r; }, cfg);
}

std::complex<double> szego_hard(ModelParams const& params, EquilibriumData const& eq, PlanePoint const& z,
                                PlanePoint const& w, AccuracyConfig const& cfg)
{
    double const r1 = params.r1, r2 = params.r2;
    double const p = z.r * w.r;
    if (!(p > r1 * r1 && p < r2 * r2))
        throw DivergentSeries("szego_hard: |z w| must lie strictly between r1^2 and r2^2");
    double const x = eq.x;
    double const lA = 2 * (1 - x) * std::log(r1) - std::log(eq.sigma1);
    double const lB = 2 * (1 - x) * std::log(r2) - std::log(eq.sigma2);
    double const l12 = 2 * std::log(r1 / r2);  // log (r1/r2)^2 < 0
    double const lq_up = std::log(p / (r2 * r2)), lq_down = std::log(r1 * r1 / p);
    double const phi = z.theta - w.theta;
    // l >= 0: (p/r2^2)^l e^{i l phi} / (A (r1/r2)^{2l} + B)
    Rotor up(phi);
    cplx const pos = sum_until_quiet(
        [&](long l) {
            double const den = std::exp(lB) + std::exp(lA + l * l12);
            return up.next() * (std::exp(l * lq_up) / den);
        },
        cfg, "szego_hard");
    // l = -m, m >= 1: (r1^2/p)^m e^{-i m phi} / (A + B (r1/r2)^{2m})
    Rotor down(-phi);
    down.next();
    cplx const neg = sum_until_quiet(
        [&](long l) {
            long const m = l + 1;
            double const den = std::exp(lA) + std::exp(lB + m * l12);
            return down.next() * (std::exp(m * lq_down) / den);
        },
        cfg, "szego_hard");
    return (pos + neg) / (2 * pi);
}

std::complex<double> szego_hard_regularized(ModelParams const& params, EquilibriumData const& eq, double theta1,
                                            double theta2, AccuracyConfig const& cfg)
{
    double const phi = reduced_angle(theta1, theta2);
    double const pref = eq.sigma1 / std::pow(params.r1, 2 * (1 - eq.x)) / (2 * pi);
    cplx const pole = 1.0 / (std::polar(1.0, phi) - 1.0);
    return pref * (pole + q_n_sum(params, eq, phi, cfg));
}

Prediction predict_r1r2_macro(ModelParams const& params, EquilibriumData const& eq, double t1, double t2,
                              double theta1, double theta2)
{
    check_t(t1, t2);
    auto const z = hard_edge_point(params, eq, t1, theta1, Side::Inner);
    auto const w = hard_edge_point(params, eq, t2, theta2, Side::Outer);
    double const dphi = std::remainder(double(eq.floor_j_star) * (theta1 - theta2), 2 * pi);
    cplx const v = 2 * pi * params.n * szego_hard(params, eq, z, w) *
                   std::polar(std::pow(params.r1 * params.r2, -eq.x) * std::exp(-t1 - t2), dphi);
    return make_prediction(Theorem::R1R2Macro, {{"2*pi*n*S", v}}, "O((log n)^2)");
}

Prediction predict_r1r1_macro(ModelParams const& params, EquilibriumData const& eq, double t1, double t2,
                              double theta1, double theta2)
{
    check_t(t1, t2);
    auto const s = szego_hard_regularized(params, eq, theta1, theta2);
    double const dphi = std::remainder(double(eq.floor_j_star) * (theta1 - theta2), 2 * pi);
    cplx const v = 2 * pi * params.n * s * std::polar(std::pow(params.r1, -2 * eq.x) * std::exp(-t1 - t2), dphi);
    return make_prediction(Theorem::R1R1Macro, {{"2*pi*n*S_reg", v}}, "O(sqrt(n log n))");
}

Prediction predict_semi_hard_macro_bound(ModelParams const&, EquilibriumData const&, double s1, double s2,
                                         double theta1, double theta2)
{
    check_s(s1, s2);
    reduced_angle(theta1, theta2);
    return make_prediction(Theorem::SemiHardMacroBound, {{"bound", cplx(0.0, 0.0)}}, "O(1)");
}

std::complex<double> Q_n_series(ModelParams const& params, EquilibriumData const& eq, double theta1, double theta2)
{
    return q_n_sum(params, eq, std::remainder(theta1 - theta2, 2 * pi), {});
}

double Q_n_theta(ModelParams const& params, EquilibriumData const& eq)
{
    double const lr = std::log(params.r2 / params.r1);
    double const ls = std::log(eq.sigma2 / eq.sigma1);
    double const z = eq.j_star + (ls + lr) / (2 * lr);
    return (specfun::jacobi_log_theta_deriv(z, pi / lr) + (2 * eq.x - 1) * lr + ls) / (2 * lr);
}

double max_regime_epsilon(ModelParams const& params, EquilibriumData const& eq)
{
    double const R1 = params.b * std::pow(params.r1, 2 * params.b);
    double const R2 = params.b * std::pow(params.r2, 2 * params.b);
    double const s = eq.sigma_star;
    return std::min({(R2 - R1) / (R2 + R1), 1 - R2, 1 - R1 / s, R2 / s - 1});
}

RegimeParams classify_regime(ModelParams const& params, EquilibriumData const& eq, int j, RegimeOptions const& opts)
{
    params.validate();
    if (j < 1 || j > params.n)
        throw DomainError("classify_regime: j must lie in [1, n]");
    double const emax = max_regime_epsilon(params, eq);
    RegimeParams rp;
    rp.epsilon = opts.epsilon == 0 ? std::min(0.05, emax / 2) : opts.epsilon;
    if (!(rp.epsilon > 0) || !(rp.epsilon < emax))
        throw DomainError("classify_regime: epsilon violates the window ordering conditions");
    if (!(opts.M_prime > 0))
        throw DomainError("classify_regime: M' must be positive");
    rp.M_prime = opts.M_prime;
    double const n = params.n, sn = std::sqrt(n), al = params.alpha, b = params.b;
    rp.M = opts.M_prime * std::sqrt(std::log(n));
    double const R[2] = {b * std::pow(params.r1, 2 * b), b * std::pow(params.r2, 2 * b)};
    double const big = std::numeric_limits<double>::infinity();
    auto lower = [&](double Rk, double e) { return std::ceil(Rk * n / (1 + e) - al); };
    auto upper = [&](double Rk, double e) { return e < 1 ? std::floor(Rk * n / (1 - e) - al) : big; };
    double const m = rp.M / sn;
    double const g1m = lower(R[0], m), g1p = upper(R[0], m), g2m = lower(R[1], m), g2p = upper(R[1], m);
    double const j1m = lower(R[0], rp.epsilon), j1p = upper(R[0], rp.epsilon);
    double const j2m = lower(R[1], rp.epsilon), j2p = upper(R[1], rp.epsilon);
    double const jj = j;
    using H = HjRegime;
    if (jj <= opts.M_prime)
        rp.regime = H::FixedIndex;
    else if (jj >= g1m && jj <= g1p)
        rp.regime = H::WindowR1;
    else if (jj >= g2m && jj <= g2p)
        rp.regime = H::WindowR2;
    else if (jj < j1m)
        rp.regime = H::BelowR1;
    else if (jj < g1m)
        rp.regime = H::ApproachR1;
    else if (jj <= j1p)
        rp.regime = H::PastR1;
    else if (jj <= double(eq.floor_j_star))
        rp.regime = H::R1ToJStar;
    else if (jj < j2m)
        rp.regime = H::JStarToR2;
    else if (jj < g2m)
        rp.regime = H::ApproachR2;
    else if (jj <= j2p)
        rp.regime = H::PastR2;
    else
        rp.regime = H::AboveR2;
    rp.k = static_cast<int>(rp.regime) <= static_cast<int>(H::R1ToJStar) ? 1 : 2;
    rp.a_j = (j + al) / b;
    rp.lambda_jk = n * R[rp.k - 1] / (j + al);
    rp.eta_jk = specfun::temme_eta(rp.lambda_jk);
    rp.M_jk = sn * (rp.lambda_jk - 1);
    return rp;
}

namespace {

double checked_log1p(double u)
{
    if (!(u > -1))
        throw DomainError("log_hj_asymptotic: correction factor is not positive; |M_jk| is too large for the expansion");
    return std::log1p(u);
}

// log of b n^{a}/Gamma(a) through the large-j Stirling form with its 1/n correction
double log_prefactor_stirling(double b, double alpha, double n, double j)
{
    double const jn = j / n;
    return std::log(b) + 0.5 * std::log(n) + (j / b) * (1 - std::log(jn / b)) - 0.5 * std::log(2 * pi) +
           (alpha / b) * std::log(b / jn) + 0.5 * std::log(jn / b) +
           checked_log1p((-b * b + 6 * b * alpha - 6 * alpha * alpha) / (12 * b * jn * n));
}

// log of b n^{a}/Gamma(a) expanded around the circle r_k in the window variable M
double log_prefactor_window(double b, double rk, double n, double M)
{
    double const r2b = std::pow(rk, 2 * b), L = std::log(r2b), sn = std::sqrt(n);
    double const M2 = M * M, M4 = M2 * M2, M6 = M4 * M2, M9 = M6 * M2 * M;
    double const e = M / 6 * (-3 + 5 * M2 * r2b + 6 * M2 * r2b * L) / sn +
                     (r2b * r2b * M6 * (25.0 / 72 + 5 * L / 6 + L * L / 2) - 1.5 * r2b * M4 * (1 + L)) / n +
                     (125 + 450 * L + 540 * L * L + 216 * L * L * L) / 1296 * r2b * r2b * r2b * M9 / (n * sn);
    return std::log(b) + r2b * (1 - L) * n + M * r2b * L * sn - r2b * (0.5 + L) * M2 +
           std::log(std::pow(rk, b) * sn / std::sqrt(2 * pi)) + checked_log1p(e);
}

} // namespace

double log_hj_asymptotic(ModelParams const& params, EquilibriumData const& eq, RegimeParams const& rp, int j)
{
    params.validate();
    if (j < 1 || j > params.n)
        throw DomainError("log_hj_asymptotic: j must lie in [1, n]");
    double const b = params.b, al = params.alpha, n = params.n, r1 = params.r1, r2 = params.r2;
    double const jn = j / n, sn = std::sqrt(n);
    double const R1 = b * std::pow(r1, 2 * b), R2 = b * std::pow(r2, 2 * b);
    double const lrho = std::log(r2 / r1);
    // log of n e^{n(r^{2b} - 2 (j/n) log r)} / r^{2 alpha}
    auto edge = [&](double r) { return std::log(n) - 2 * al * std::log(r) + n * std::pow(r, 2 * b) - 2 * j * std::log(r); };
    auto first_corr = [&](double r, double d) { return (b * b * std::pow(r, 2 * b) + d * al) / (n * d * d); };
    double inv;  // log h_j^{-1}
    using H = HjRegime;
    switch (rp.regime) {
    case H::FixedIndex: {
        double const a = (j + al) / b;
        inv = std::log(b) + a * std::log(n) - specfun::log_gamma(a);
        break;
    }
    case H::BelowR1:
    case H::ApproachR1:
    case H::PastR2:
    case H::AboveR2:
        inv = log_prefactor_stirling(b, al, n, j);
        break;
    case H::WindowR1: {
        double const M = rp.M_jk, r2b = std::pow(r1, 2 * b), rb = std::pow(r1, b);
        double const y = -M * rb / std::sqrt(2.0);
        // log(erfc(y)/2) and e^{-y^2}/erfc(y) through erfcx
        double const log_half_erfc = std::log(0.5 * specfun::erfcx(y)) - y * y;
        double const ratio = 1.0 / specfun::erfcx(y);
        double const neg = M < 0 ? 1.0 : 0.0;
        double const M2 = M * M, M4 = M2 * M2, M6 = M4 * M2, M9 = M6 * M2 * M;
        double const f = (5 * M2 * r2b - 2) * ratio / (3 * std::sqrt(2 * pi) * rb * sn) +
                         neg / n * (25 * r2b * r2b * M6 / 72 + 1.5 * r2b * M4) -
                         neg * 125 * r2b * r2b * r2b * M9 / (1296 * n * sn);
        inv = log_prefactor_window(b, r1, n, M) - log_half_erfc + checked_log1p(f);
        break;
    }
    case H::WindowR2: {
        double const M = rp.M_jk, r2b = std::pow(r2, 2 * b), rb = std::pow(r2, b);
        double const y = M * rb / std::sqrt(2.0);
        double const log_half_erfc = std::log(0.5 * specfun::erfcx(y)) - y * y;
        double const ratio = 1.0 / specfun::erfcx(y);
        double const pos = M > 0 ? 1.0 : 0.0;
        double const M2 = M * M, M4 = M2 * M2, M6 = M4 * M2, M9 = M6 * M2 * M;
        double const f = (2 - 5 * M2 * r2b) * ratio / (3 * std::sqrt(2 * pi) * rb * sn) +
                         pos / n * (25 * r2b * r2b * M6 / 72 + 1.5 * r2b * M4) -
                         pos * 125 * r2b * r2b * r2b * M9 / (1296 * n * sn);
        inv = log_prefactor_window(b, r2, n, M) - log_half_erfc + checked_log1p(f);
        break;
    }
    case H::PastR1: {
        double const d = jn - R1;
        double const r4 = std::pow(r1, 4 * b), r6 = std::pow(r1, 6 * b);
        double const u = first_corr(r1, d) - 2 * std::pow(b, 4) * r4 / (n * n * std::pow(d, 4)) +
                         10 * std::pow(b, 6) * r6 / (n * n * n * std::pow(d, 6));
        inv = edge(r1) + std::log(d) + checked_log1p(u);
        break;
    }
    case H::R1ToJStar: {
        double const d = jn - R1;
        double const coupling = std::exp(-2 * (eq.j_star - j) * lrho) / (R2 - jn);
        inv = edge(r1) - std::log(1 / d + coupling) + checked_log1p(first_corr(r1, d));
        break;
    }
    case H::JStarToR2: {
        double const d = jn - R2;
        double const coupling = std::exp(-2 * (j - eq.j_star) * lrho) / (jn - R1);
        inv = edge(r2) - std::log(-1 / d + coupling) + checked_log1p(first_corr(r2, d));
        break;
    }
    case H::ApproachR2: {
        double const d = jn - R2;
        inv = edge(r2) + std::log(-d) + checked_log1p(first_corr(r2, d));
        break;
    }
    default:
        throw RegimeUnknown("log_hj_asymptotic: unclassified index");
    }
    return -inv;
}

} // namespace hardwall
