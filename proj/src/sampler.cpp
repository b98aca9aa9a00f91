#include "hardwall/sampler.hpp"

#include "hardwall/errors.hpp"
#include "hardwall/kernel.hpp"
#include "hardwall/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

namespace hardwall {

namespace {

constexpr int max_iterations = 200;

struct Mode
{
    double a = 0;
    double x1 = 0;      ///< n r1^{2b}
    double x2 = 0;      ///< n r2^{2b}
    double log_p1 = 0;  ///< log P(a, x1)
    double log_q2 = 0;  ///< log Q(a, x2)
    double log_bracket = 0;
};

Mode mode_of(ModelParams const& params, int j)
{
    params.validate();
    if (j < 1 || j > params.n)
        throw DomainError("mode index " + std::to_string(j) + " outside [1, n]");
    Mode m;
    m.a = (j + params.alpha) / params.b;
    m.x1 = params.n * std::pow(params.r1, 2 * params.b);
    m.x2 = params.n * std::pow(params.r2, 2 * params.b);
    m.log_p1 = specfun::log_reg_lower_gamma(m.a, m.x1);
    m.log_q2 = specfun::log_reg_upper_gamma(m.a, m.x2);
    double const hi = std::max(m.log_p1, m.log_q2), lo = std::min(m.log_p1, m.log_q2);
    m.log_bracket = hi + std::log1p(std::exp(lo - hi));
    return m;
}

double radius_of(ModelParams const& params, double x) { return std::pow(x / params.n, 0.5 / params.b); }

/// Solves log P(a, x) = target on (0, x1] (inner) or log Q(a, x) = target on [x2, inf) (outer),
/// by Newton in log x kept inside a bisection bracket.
double solve_side(Mode const& m, double target, bool inner, double tol)
{
    auto g = [&](double s) {
        double const x = std::exp(s);
        return inner ? specfun::log_reg_lower_gamma(m.a, x) - target : specfun::log_reg_upper_gamma(m.a, x) - target;
    };
    // g is increasing for the inner side and decreasing for the outer side
    double lo, hi;
    if (inner) {
        hi = std::log(m.x1);
        double step = 1;
        lo = hi - step;
        while (g(lo) > 0) {
            hi = lo;
            step *= 2;
            lo -= step;
            if (step > 1e4)
                throw NonConvergence("radial inversion: no lower bracket");
        }
    } else {
        lo = std::log(m.x2);
        double step = 1;
        hi = std::log(std::max(m.x2, m.a)) + step;
        while (g(hi) > 0) {
            lo = hi;
            step *= 2;
            hi += step;
            if (step > 1e4)
                throw NonConvergence("radial inversion: no upper bracket");
        }
    }
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < max_iterations; ++it) {
        double const x = std::exp(s);
        double const val = g(s);
        if (val == 0)
            return x;
        bool const below = inner ? val < 0 : val > 0;
        (below ? lo : hi) = s;
        double const log_f = val + target;
        double const slope = (inner ? 1 : -1) * std::exp(specfun::log_gamma_density(m.a, x) - log_f);
        double next = s - val / slope;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (std::abs(next - s) <= tol || hi - lo <= tol)
            return std::exp(next);
        s = next;
    }
    throw NonConvergence("radial inversion did not converge in 200 iterations");
}

double modulus_from(ModelParams const& params, Mode const& m, bool inner, double level, double tol)
{
    if (inner) {
        double const x = solve_side(m, std::log(level) + m.log_p1, true, tol);
        return std::min(radius_of(params, x), params.r1);
    }
    double const x = solve_side(m, std::log(level) + m.log_q2, false, tol);
    return std::max(radius_of(params, x), params.r2);
}

std::uint64_t splitmix64(std::uint64_t x)
{
    std::uint64_t z = x + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

double radial_cdf(ModelParams const& params, int j, double r)
{
    if (!(r >= 0))
        throw DomainError("radial_cdf: r must be nonnegative");
    Mode const m = mode_of(params, j);
    if (std::isinf(r))
        return 1.0;
    if (r == 0)
        return 0.0;
    if (r < params.r2) {
        double const x = params.n * std::pow(std::min(r, params.r1), 2 * params.b);
        double const lp = r >= params.r1 ? m.log_p1 : specfun::log_reg_lower_gamma(m.a, x);
        return std::min(1.0, std::exp(lp - m.log_bracket));
    }
    // 1 - Q(a, x)/bracket
    double const x = params.n * std::pow(r, 2 * params.b);
    double const lq = specfun::log_reg_upper_gamma(m.a, x);
    return std::clamp(-std::expm1(lq - m.log_bracket), 0.0, 1.0);
}

double invert_radial_cdf(ModelParams const& params, int j, double u, double tol)
{
    if (!(u > 0 && u < 1))
        throw DomainError("invert_radial_cdf: u must lie in (0, 1)");
    Mode const m = mode_of(params, j);
    double const log_u = std::log(u);
    double const log_inner = m.log_p1 - m.log_bracket;
    if (log_u < log_inner)
        return modulus_from(params, m, true, std::exp(log_u - log_inner), tol);
    // Q(a, x) = (1 - u) bracket
    double const x = solve_side(m, std::log1p(-u) + m.log_bracket, false, tol);
    return std::max(radius_of(params, x), params.r2);
}

std::uint64_t mode_stream_seed(std::uint64_t seed, int j)
{
    return splitmix64(seed + static_cast<std::uint64_t>(j) * 0x9E3779B97F4A7C15ull);
}

double open_unit_uniform(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

double sample_modulus(ModelParams const& params, int j, std::mt19937_64& rng, double tol)
{
    Mode const m = mode_of(params, j);
    double const side = open_unit_uniform(rng);
    double const level = open_unit_uniform(rng);
    bool const inner = std::log(side) < m.log_p1 - m.log_bracket;
    return modulus_from(params, m, inner, level, tol);
}

std::vector<PlanePoint> sample_configuration(ModelParams const& params, SampleConfig const& cfg)
{
    params.validate();
    if (cfg.n_points != params.n)
        throw InvalidParams("SampleConfig.n_points must equal n");
    if (!(cfg.inversion_tol > 0))
        throw InvalidParams("SampleConfig.inversion_tol must be positive");
    std::vector<PlanePoint> out(params.n);
    auto work = [&](int first, int last) {
        for (int j = first; j <= last; ++j) {
            std::mt19937_64 rng(mode_stream_seed(cfg.seed, j));
            double const r = sample_modulus(params, j, rng, cfg.inversion_tol);
            double const theta = std::numbers::pi * (2 * open_unit_uniform(rng) - 1);
            out[j - 1] = {r, theta};
        }
    };
    int const threads = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 1 + params.n / 256);
    std::vector<std::future<void>> tasks;
    int const chunk = (params.n + threads - 1) / threads;
    for (int first = 1; first <= params.n; first += chunk)
        tasks.push_back(std::async(std::launch::async, work, first, std::min(params.n, first + chunk - 1)));
    for (auto& t : tasks)
        t.get();
    return out;
}

void write_sample_csv(std::ostream& out, std::vector<PlanePoint> const& points)
{
    auto const old = out.precision(17);
    out << "j,r,theta,x,y\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto const& p = points[i];
        out << i + 1 << ',' << p.r << ',' << p.theta << ',' << p.r * std::cos(p.theta) << ','
            << p.r * std::sin(p.theta) << '\n';
    }
    out.precision(old);
}

} // namespace hardwall
