#include "hardwall/specfun.hpp"

#include "hardwall/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace hardwall {

void AccuracyConfig::validate() const
{
    if (!(abs_tol > 0) || !(rel_tol > 0))
        throw DomainError("AccuracyConfig: tolerances must be positive");
    if (max_terms < 100)
        throw DomainError("AccuracyConfig: max_terms must be at least 100");
    if (quad_panel_limit < 1)
        throw DomainError("AccuracyConfig: quad_panel_limit must be positive");
}

namespace specfun {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double tiny = 1e-300;
constexpr double half_log_2pi = 0.91893853320467274178;

[[noreturn]] void no_convergence(char const* what, double a, double x)
{
    throw NonConvergence(std::string(what) + " did not converge (a=" + std::to_string(a) +
                         ", x=" + std::to_string(x) + ")");
}

double stirling_tail(double a)
{
    // B_{2k} / (2k (2k-1) a^{2k-1}), k = 1..8
    static constexpr std::array<double, 8> c = {
        1.0 / 12.0,    -1.0 / 360.0,           1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0,  -691.0 / 360360.0,      1.0 / 156.0,  -3617.0 / 122400.0,
    };
    double const w = 1.0 / (a * a);
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        s = s * w + *it;
    return s / a;
}

double lgamma_small(double a)
{
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(a, &sign);
#else
    return std::lgamma(a);
#endif
}

// Series sum_{k>=0} x^k / ((a+1)...(a+k)); P = density * sum / a.
double lower_series(double a, double x, AccuracyConfig const& cfg)
{
    double term = 1.0, sum = 1.0, ap = a;
    for (long k = 1; k <= cfg.max_terms; ++k) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (term < sum * eps * 0.5)
            return sum;
    }
    no_convergence("incomplete gamma series", a, x);
}

// Continued fraction for Q / density (modified Lentz).
double upper_fraction(double a, double x, AccuracyConfig const& cfg)
{
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (long i = 1; i <= cfg.max_terms; ++i) {
        double const an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        double const del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps)
            return h;
    }
    no_convergence("incomplete gamma continued fraction", a, x);
}

double log1m_exp(double log_v)
{
    // log(1 - e^{log_v}) for log_v <= 0
    return log_v > -std::numbers::ln2 ? std::log(-std::expm1(log_v)) : std::log1p(-std::exp(log_v));
}

void check_gamma_args(double a, double x)
{
    if (!(a > 0) || !std::isfinite(a))
        throw DomainError("incomplete gamma: a must be positive and finite");
    if (!(x >= 0))
        throw DomainError("incomplete gamma: x must be nonnegative");
}

// Returns {log P, log Q}, each computed without subtracting near-equal quantities
// whenever the value is small.
std::pair<double, double> log_pq(double a, double x, AccuracyConfig const& cfg)
{
    check_gamma_args(a, x);
    if (x == 0)
        return {-std::numeric_limits<double>::infinity(), 0.0};
    if (std::isinf(x))
        return {0.0, -std::numeric_limits<double>::infinity()};
    double const logd = log_gamma_density(a, x);
    if (x < a + 1.0) {
        double const log_p = logd - std::log(a) + std::log(lower_series(a, x, cfg));
        if (log_p < std::log(0.9))
            return {log_p, log1m_exp(log_p)};
        double const log_q = logd + std::log(upper_fraction(a, x, cfg));
        return {log1m_exp(log_q), log_q};
    }
    double const log_q = logd + std::log(upper_fraction(a, x, cfg));
    return {log1m_exp(log_q), log_q};
}

} // namespace

GammaArgs GammaArgs::from_lambda(double a, double lambda)
{
    if (!(a > 0))
        throw DomainError("GammaArgs: a must be positive");
    if (!(lambda >= 0))
        throw DomainError("GammaArgs: lambda must be nonnegative");
    return GammaArgs{a, lambda, temme_eta(lambda)};
}

double euler_gamma() noexcept { return 0.57721566490153286061; }

double log1pmx(double x)
{
    if (!(x > -1.0))
        throw DomainError("log1pmx: x must exceed -1");
    if (std::abs(x) > 0.5)
        return std::log1p(x) - x;
    // log(1+x) = 2 atanh(y), y = x/(2+x); the leading 2y - x = -x y is exact in form
    double const y = x / (2.0 + x);
    double const y2 = y * y;
    double s = 0.0, p = y * y2;
    for (int k = 1; k < 60; ++k) {
        double const t = p / (2 * k + 1);
        s += t;
        if (std::abs(t) <= std::abs(s) * eps * 0.25)
            break;
        p *= y2;
    }
    return -x * y + 2.0 * s;
}

double log_gamma(double a)
{
    if (!(a > 0) || std::isnan(a))
        throw DomainError("log_gamma: a must be positive");
    if (a < 15.0)
        return lgamma_small(a);
    return (a - 0.5) * std::log(a) - a + half_log_2pi + stirling_tail(a);
}

double log_gamma_star(double a)
{
    if (!(a > 0))
        throw DomainError("log_gamma_star: a must be positive");
    if (a >= 15.0)
        return stirling_tail(a);
    return lgamma_small(a) - ((a - 0.5) * std::log(a) - a + half_log_2pi);
}

double log_gamma_density(double a, double x)
{
    check_gamma_args(a, x);
    if (x == 0)
        return -std::numeric_limits<double>::infinity();
    if (a < 15.0)
        return a * std::log(x) - x - lgamma_small(a);
    double const lambda = x / a;
    return a * log1pmx(lambda - 1.0) + 0.5 * std::log(a / (2 * pi)) - stirling_tail(a);
}

double log_reg_lower_gamma(double a, double x, AccuracyConfig const& cfg) { return log_pq(a, x, cfg).first; }
double log_reg_upper_gamma(double a, double x, AccuracyConfig const& cfg) { return log_pq(a, x, cfg).second; }
double reg_lower_gamma(double a, double x, AccuracyConfig const& cfg) { return std::exp(log_pq(a, x, cfg).first); }
double reg_upper_gamma(double a, double x, AccuracyConfig const& cfg) { return std::exp(log_pq(a, x, cfg).second); }

double temme_eta(double lambda)
{
    if (!(lambda >= 0))
        throw DomainError("temme_eta: lambda must be nonnegative");
    if (lambda == 1.0)
        return 0.0;
    if (lambda == 0.0)
        return -std::numeric_limits<double>::infinity();
    double const u = lambda - 1.0;
    double const d = -log1pmx(u);
    return std::copysign(std::sqrt(2.0 * d), u);
}

double temme_c0(double lambda)
{
    double const u = lambda - 1.0;
    if (std::abs(u) < 1e-3)
        return -1.0 / 3.0 +
               u * (1.0 / 12.0 +
                    u * (-23.0 / 540.0 + u * (353.0 / 12960.0 + u * (-589.0 / 30240.0 + u * (81083.0 / 5443200.0)))));
    return 1.0 / u - 1.0 / temme_eta(lambda);
}

double temme_c1(double lambda)
{
    double const u = lambda - 1.0;
    if (std::abs(u) < 1e-3)
        return -1.0 / 540.0 +
               u * (-1.0 / 288.0 +
                    u * (23.0 / 6048.0 +
                         u * (-3733.0 / 1088640.0 + u * (3253.0 / 1088640.0 + u * (-135719.0 / 52254720.0)))));
    double const eta = temme_eta(lambda);
    return 1.0 / (eta * eta * eta) - 1.0 / (u * u * u) - 1.0 / (u * u) - 1.0 / (12.0 * u);
}

double temme_uniform_P(GammaArgs const& args, int order)
{
    if (args.a < 50.0)
        throw DomainError("temme_uniform_P: requires a >= 50");
    if (order != 0 && order != 1)
        throw DomainError("temme_uniform_P: order must be 0 or 1");
    double const a = args.a;
    double const lead = 0.5 * erfc(-args.eta * std::sqrt(a / 2.0));
    double series = temme_c0(args.lambda);
    if (order == 1)
        series += temme_c1(args.lambda) / a;
    return lead - std::exp(-0.5 * a * args.eta * args.eta) / std::sqrt(2 * pi * a) * series;
}

double erfc(double y) { return std::erfc(y); }

namespace {

// e^{-y^2}/(sqrt(pi) erfc y) - y for y >= 3 as (1/2)/T, T = y + 1/(y + (3/2)/(y + 2/(y + ...)))
double ratio_excess_fraction(double y)
{
    double f = y;
    double c = y;
    double d = 0.0;
    for (int k = 2; k < 5000; ++k) {
        double const ak = 0.5 * k;
        d = y + ak * d;
        d = 1.0 / d;
        c = y + ak / c;
        double const del = c * d;
        f *= del;
        if (std::abs(del - 1.0) < eps)
            break;
    }
    return 0.5 / f;
}

} // namespace

double erfcx(double y)
{
    if (std::isnan(y))
        return y;
    if (y < 0) {
        double const hi = y * y;
        double const lo = std::fma(y, y, -hi);
        return 2.0 * std::exp(hi) * (1.0 + lo) - erfcx(-y);
    }
    if (y < 3.0) {
        double const hi = y * y;
        double const lo = std::fma(y, y, -hi);
        return std::exp(hi) * (1.0 + lo) * std::erfc(y);
    }
    if (y > 1e8)
        return 1.0 / (std::sqrt(pi) * y);
    return 1.0 / (std::sqrt(pi) * (y + ratio_excess_fraction(y)));
}

double erfc_ratio(double y)
{
    if (y < 0)
        return std::exp(-y * y) / (std::sqrt(pi) * std::erfc(y));
    return 1.0 / (std::sqrt(pi) * erfcx(y));
}

double erfc_ratio_excess(double y)
{
    if (y < 3.0)
        return erfc_ratio(y) - y;
    if (y > 1e8)
        return 0.5 / y;
    return ratio_excess_fraction(y);
}

double exp_integral_E1(double x, AccuracyConfig const& cfg)
{
    if (!(x > 0))
        throw DomainError("exp_integral_E1: x must be positive");
    if (x <= 1.0) {
        double s = 0.0, term = 1.0;
        for (long k = 1; k <= cfg.max_terms; ++k) {
            term *= -x / static_cast<double>(k);
            double const t = -term / static_cast<double>(k);
            s += t;
            if (std::abs(t) < std::abs(s) * eps * 0.25)
                return s - euler_gamma() - std::log(x);
        }
        no_convergence("E1 series", 0.0, x);
    }
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (long i = 1; i <= cfg.max_terms; ++i) {
        double const an = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        double const del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps)
            return h * std::exp(-x);
    }
    no_convergence("E1 continued fraction", 0.0, x);
}

namespace {

// theta and its z-derivative at the reduced argument z in [-1/2, 1/2].
std::pair<double, double> theta_pair(double z, double t)
{
    if (!(t > 0) || !std::isfinite(t))
        throw DomainError("jacobi_theta: tau_im must be positive");
    z -= std::floor(z);
    if (z > 0.5)
        z -= 1.0;
    if (t >= 1.0) {
        double th = 1.0, dth = 0.0;
        for (int l = 1;; ++l) {
            double const q = std::exp(-pi * t * l * l);
            if (q < 1e-18)
                break;
            th += 2.0 * q * std::cos(2 * pi * l * z);
            dth -= 4.0 * pi * l * q * std::sin(2 * pi * l * z);
        }
        return {th, dth};
    }
    // Poisson-transformed series: theta(z; i t) = t^{-1/2} sum_k exp(-pi (z + k)^2 / t)
    double th = 0.0, dth = 0.0;
    double const k_max = std::ceil(std::sqrt(18.0 * std::log(10.0) / (pi / t))) + 1.0;
    for (double k = -k_max; k <= k_max; k += 1.0) {
        double const u = z + k;
        double const e = std::exp(-pi * u * u / t);
        th += e;
        dth -= 2.0 * pi * u / t * e;
    }
    double const s = 1.0 / std::sqrt(t);
    return {th * s, dth * s};
}

} // namespace

double jacobi_theta(double z, double tau_im) { return theta_pair(z, tau_im).first; }

double jacobi_log_theta_deriv(double z, double tau_im)
{
    auto const [th, dth] = theta_pair(z, tau_im);
    return dth / th;
}

namespace {

struct Panel
{
    double lo, hi, value, error;
    bool operator<(Panel const& o) const { return error < o.error; }
};

constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

Panel gk15(std::function<double(double)> const& f, double lo, double hi)
{
    double const c = 0.5 * (lo + hi);
    double const h = 0.5 * (hi - lo);
    double const fc = f(c);
    double rk = fc * wgk[7];
    double rg = fc * wg[3];
    double rabs = std::abs(rk);
    for (int i = 0; i < 7; ++i) {
        double const dx = h * xgk[i];
        double const f1 = f(c - dx), f2 = f(c + dx);
        rk += wgk[i] * (f1 + f2);
        rabs += wgk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1)
            rg += wg[i / 2] * (f1 + f2);
    }
    double const value = rk * h;
    double err = std::abs((rk - rg) * h);
    if (!std::isfinite(value))
        throw DomainError("quad_adaptive: integrand is not finite");
    // floor at the roundoff level of the panel sum
    err = std::max(err, 50.0 * eps * rabs * std::abs(h));
    return {lo, hi, value, err};
}

} // namespace

double quad_adaptive(std::function<double(double)> const& f, double lo, double hi, AccuracyConfig const& cfg)
{
    if (lo == hi)
        return 0.0;
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("quad_adaptive: limits must be finite");
    std::vector<Panel> heap{gk15(f, lo, hi)};
    auto totals = [&heap] {
        double v = 0.0, e = 0.0;
        for (auto const& p : heap) {
            v += p.value;
            e += p.error;
        }
        return std::pair{v, e};
    };
    while (true) {
        // recomputed from scratch: incremental updates cancel badly when one panel dominates
        auto const [total, total_err] = totals();
        double const tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (total_err <= tol)
            return total;
        Panel const worst = heap.front();
        double const mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi)
            throw NonConvergence("quad_adaptive: panel width reached machine resolution");
        if (static_cast<int>(heap.size()) + 1 > cfg.quad_panel_limit)
            throw NonConvergence("quad_adaptive: panel limit exceeded (error " + std::to_string(total_err) +
                                 ", tolerance " + std::to_string(tol) + ")");
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = gk15(f, worst.lo, mid);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(gk15(f, mid, worst.hi));
        std::push_heap(heap.begin(), heap.end());
    }
}

} // namespace specfun
} // namespace hardwall
