#include "hardwall/kernel.hpp"

#include "hardwall/compensated_sum.hpp"
#include "hardwall/errors.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace hardwall {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();
constexpr double drop_horizon = 745.0;

double log_add_exp(double x, double y)
{
    if (x == neg_inf)
        return y;
    if (y == neg_inf)
        return x;
    double const m = std::max(x, y);
    return m + std::log1p(std::exp(-std::abs(x - y)));
}

double reduce_phase(double phase)
{
    double r = std::remainder(phase, 2 * std::numbers::pi);
    if (r <= -std::numbers::pi)
        r += 2 * std::numbers::pi;
    return r;
}

double bracket_unchecked(double b, double alpha, double r1, double r2, int n, int j)
{
    double const a = (j + alpha) / b;
    double const x1 = n * std::pow(r1, 2 * b);
    double const x2 = n * std::pow(r2, 2 * b);
    return log_add_exp(specfun::log_reg_lower_gamma(a, x1), specfun::log_reg_upper_gamma(a, x2));
}

void check_index(ModelParams const& params, int j)
{
    if (j < 1 || j > params.n)
        throw DomainError("mode index j must lie in [1, n]");
}

using CacheKey = std::tuple<double, double, double, double, int>;

struct CacheEntry
{
    std::once_flag once;
    std::shared_ptr<HjTable const> table;
};

std::mutex cache_mutex;
std::map<CacheKey, std::shared_ptr<CacheEntry>> cache;

std::shared_ptr<HjTable const> build_table(ModelParams const& params)
{
    auto t = std::make_shared<HjTable>();
    t->log_h.resize(params.n);
    t->log_bracket.resize(params.n);
    for (int j = 1; j <= params.n; ++j) {
        double const a = (j + params.alpha) / params.b;
        double const lb = bracket_unchecked(params.b, params.alpha, params.r1, params.r2, params.n, j);
        t->log_bracket[j - 1] = lb;
        t->log_h[j - 1] = specfun::log_gamma(a) - std::log(params.b) - a * std::log(double(params.n)) + lb;
    }
    return t;
}

// Log-magnitude of the j-th summand given the mode's log bracket.
double term_log_mag(ModelParams const& params, int j, double log_bracket, double log_h, double rz, double rw)
{
    double const b = params.b;
    double const a = (j + params.alpha) / b;
    if (rz == 0 || rw == 0) {
        double const expo = j - 1 + params.alpha;
        double const weight = -0.5 * params.n * (std::pow(rz, 2 * b) + std::pow(rw, 2 * b));
        if (expo == 0)
            return weight - log_h;
        return (expo > 0 ? neg_inf : std::numeric_limits<double>::infinity());
    }
    // (j-1+alpha) log(rz rw) - (n/2)(rz^{2b} + rw^{2b}) - log h_j regrouped around x = n (rz rw)^b
    // so that the O(n) pieces cancel analytically
    double const pz = std::pow(rz, b), pw = std::pow(rw, b);
    double const x = params.n * pz * pw;
    double const diff = pz - pw;
    return specfun::log_gamma_density(a, x) + std::log(b) - std::log(rz * rw) - 0.5 * params.n * diff * diff -
           log_bracket;
}

} // namespace

LogComplex LogComplex::normalized() const
{
    if (log_mag == neg_inf)
        return {neg_inf, 0.0};
    return {log_mag, reduce_phase(phase)};
}

std::complex<double> LogComplex::value() const
{
    if (log_mag == neg_inf)
        return {0.0, 0.0};
    return std::polar(std::exp(log_mag), phase);
}

std::shared_ptr<HjTable const> hj_table(ModelParams const& params)
{
    params.validate();
    std::shared_ptr<CacheEntry> entry;
    {
        std::lock_guard lock(cache_mutex);
        auto& slot = cache[CacheKey{params.b, params.alpha, params.r1, params.r2, params.n}];
        if (!slot)
            slot = std::make_shared<CacheEntry>();
        entry = slot;
    }
    std::call_once(entry->once, [&] { entry->table = build_table(params); });
    return entry->table;
}

void clear_hj_cache()
{
    std::lock_guard lock(cache_mutex);
    cache.clear();
}

double detail::log_hj_unchecked(double b, double alpha, double r1, double r2, int n, int j)
{
    double const a = (j + alpha) / b;
    return specfun::log_gamma(a) - std::log(b) - a * std::log(double(n)) + bracket_unchecked(b, alpha, r1, r2, n, j);
}

double log_hj_bracket(ModelParams const& params, int j)
{
    params.validate();
    check_index(params, j);
    return bracket_unchecked(params.b, params.alpha, params.r1, params.r2, params.n, j);
}

double log_hj(ModelParams const& params, int j)
{
    params.validate();
    check_index(params, j);
    return detail::log_hj_unchecked(params.b, params.alpha, params.r1, params.r2, params.n, j);
}

LogComplex kernel_term(ModelParams const& params, int j, PlanePoint const& z, PlanePoint const& w)
{
    params.validate();
    check_index(params, j);
    if (params.in_gap(z.r) || params.in_gap(w.r))
        return {neg_inf, 0.0};
    double const lb = log_hj_bracket(params, j);
    double const lh = log_hj(params, j);
    return LogComplex{term_log_mag(params, j, lb, lh, z.r, w.r), (j - 1) * (z.theta - w.theta)}.normalized();
}

KernelValue kernel_eval(ModelParams const& params, PlanePoint const& z, PlanePoint const& w)
{
    params.validate();
    KernelValue out;
    if (params.in_gap(z.r) || params.in_gap(w.r)) {
        out.value = {0.0, 0.0};
        out.dropped_terms = params.n;
        out.max_term_log = neg_inf;
        return out;
    }
    auto const table = hj_table(params);
    std::vector<double> mags(params.n);
    double mx = neg_inf;
    for (int j = 1; j <= params.n; ++j) {
        mags[j - 1] = term_log_mag(params, j, table->log_bracket[j - 1], table->log_h[j - 1], z.r, w.r);
        mx = std::max(mx, mags[j - 1]);
    }
    out.max_term_log = mx;
    if (mx == neg_inf) {
        out.value = {0.0, 0.0};
        out.dropped_terms = params.n;
        return out;
    }
    double const dtheta = z.theta - w.theta;
    ComplexNeumaierSum<double> sum;
    for (int j = 1; j <= params.n; ++j) {
        double const m = mags[j - 1];
        if (mx - m > drop_horizon) {
            ++out.dropped_terms;
            continue;
        }
        ++out.terms_summed;
        sum.add(std::polar(std::exp(m - mx), reduce_phase((j - 1) * dtheta)));
    }
    out.value = sum.value() * std::exp(mx);
    return out;
}

double one_point(ModelParams const& params, PlanePoint const& z)
{
    auto const k = kernel_eval(params, z, z);
    double const re = k.value.real();
    if (std::abs(k.value.imag()) > 1e-10 * std::abs(re) + 1e-300)
        throw Error("one_point: diagonal kernel value is not real");
    return std::max(re, 0.0);
}

double expected_count_in_disk(ModelParams const& params, double r)
{
    params.validate();
    if (!(r >= 0))
        throw DomainError("expected_count_in_disk: r must be nonnegative");
    auto const table = hj_table(params);
    NeumaierSum<double> total;
    double const b = params.b;
    for (int j = 1; j <= params.n; ++j) {
        double const a = (j + params.alpha) / b;
        double const lb = table->log_bracket[j - 1];
        double m;
        if (r >= params.r2) {
            double const xr = std::isinf(r) ? r : params.n * std::pow(r, 2 * b);
            m = -std::expm1(specfun::log_reg_upper_gamma(a, xr) - lb);
        } else {
            double const xr = params.n * std::pow(std::min(r, params.r1), 2 * b);
            m = std::exp(specfun::log_reg_lower_gamma(a, xr) - lb);
        }
        total.add(m);
    }
    return total.value();
}

} // namespace hardwall
