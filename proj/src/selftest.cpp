#include "hardwall/asymptotics.hpp"
#include "hardwall/harness.hpp"
#include "hardwall/kernel.hpp"
#include "hardwall/sampler.hpp"
#include "hardwall/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <random>

namespace hardwall {

namespace {

CheckResult upper(std::string name, double measured, double tol, std::string detail = {})
{
    return {std::move(name), measured <= tol, measured, tol, std::move(detail)};
}

ModelParams random_params(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> bd(0.3, 3.0), ad(-0.9, 4.0), f1(0.1, 0.8), gap(0.1, 0.9);
    double const b = bd(rng);
    double const r1f = f1(rng);
    double const r2f = r1f + (0.97 - r1f) * gap(rng);
    return ModelParams::from_fractions(b, ad(rng), r1f, r2f, 16 + static_cast<int>(rng() % 5000));
}

CheckResult check_integrals()
{
    double const I = integral_I();
    bool const ok = I >= -0.81372 && I <= -0.81362;
    return {"universal integral I in [-0.81372, -0.81362]", ok, I, 5e-5, {}};
}

CheckResult check_identities()
{
    auto const v = integrals_I1_to_I4();
    double const r = std::max({std::abs(v.I1 - 0.5 * std::log(2 * std::sqrt(std::numbers::pi))),
                               std::abs(v.I3 - v.I), std::abs(v.I4 - (v.I2 - v.I))});
    return upper("integral identities", r, 1e-9);
}

CheckResult check_theta(int sets)
{
    std::mt19937_64 rng(2024);
    double worst = 0;
    for (int i = 0; i < sets; ++i) {
        auto const p = random_params(rng);
        auto const eq = equilibrium(p);
        worst = std::max(worst, std::abs(Q_n_series(p, eq, 0.3, 0.3) - Q_n_theta(p, eq)));
    }
    return upper("theta identity on " + std::to_string(sets) + " parameter sets", worst, 1e-10);
}

CheckResult check_temme(int per_axis)
{
    double worst = 0;
    for (int i = 0; i < per_axis; ++i)
        for (int k = 0; k < per_axis; ++k) {
            double const a = std::pow(10.0, 3.0 + 2.0 * i / (per_axis - 1));
            double const lambda = 0.2 + 4.8 * k / (per_axis - 1);
            auto const g = specfun::GammaArgs::from_lambda(a, lambda);
            worst = std::max(worst, std::abs(specfun::temme_uniform_P(g) - specfun::reg_lower_gamma(a, lambda * a)));
        }
    return upper("uniform expansion of P against P", worst, 1e-8);
}

CheckResult check_upper_gamma_order()
{
    double const lambda = 1.5;
    std::vector<double> scaled;
    for (double a : {1e3, 1e4, 1e5}) {
        auto const g = specfun::GammaArgs::from_lambda(a, lambda);
        double const lhs =
            std::exp(specfun::log_reg_upper_gamma(a, lambda * a) + a * g.eta * g.eta / 2) * std::sqrt(2 * std::numbers::pi);
        double const rhs = 1 / ((lambda - 1) * std::sqrt(a)) -
                           (1 + 10 * lambda + lambda * lambda) / (12 * std::pow(lambda - 1, 3) * std::pow(a, 1.5));
        scaled.push_back(std::abs(lhs - rhs) * std::pow(a, 2.5));
    }
    auto const [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    return upper("Q(a, 1.5a) error a^{5/2} spread", *hi / *lo, 3.0);
}

CheckResult check_trace()
{
    double worst = 0;
    for (int n : {1, 17, 256, 4096}) {
        double const c = expected_count_in_disk(default_model(n), std::numeric_limits<double>::infinity());
        worst = std::max(worst, std::abs(c - n) / n);
    }
    return upper("trace of K_n equals n", worst, 1e-9);
}

std::vector<CheckResult> check_structure()
{
    auto const p = default_model(512);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0), th(-std::numbers::pi, std::numbers::pi);
    auto point = [&] {
        double const r = u(rng) < 0.5 ? p.r1 * (0.7 + 0.3 * u(rng)) : p.r2 + (p.outer_radius() - p.r2) * 0.6 * u(rng);
        return PlanePoint{r, th(rng)};
    };
    double herm = 0, cs = 0;
    for (int i = 0; i < 100; ++i) {
        auto const z = point(), w = point();
        auto const kzw = kernel_eval(p, z, w).value, kwz = kernel_eval(p, w, z).value;
        herm = std::max(herm, std::abs(kzw - std::conj(kwz)) / std::max(std::abs(kzw), 1e-300));
        cs = std::max(cs, std::norm(kzw) / (one_point(p, z) * one_point(p, w)) - 1);
    }
    return {upper("Hermitian symmetry", herm, 1e-12), upper("Cauchy-Schwarz excess", std::max(cs, 0.0), 1e-12)};
}

std::vector<CheckResult> check_figures()
{
    auto const grid = default_n_grid();
    auto const p = default_model(1);
    auto run = [&](Figure f) { return figure_diag(f, p, default_scenario(f), grid); };
    std::vector<CheckResult> out;
    out.push_back(upper("fig4-left stabilizes", stabilization_ratio(run(Figure::Fig4Left)), 0.25));
    out.push_back(upper("fig4-right stabilizes", stabilization_ratio(run(Figure::Fig4Right)), 0.25));
    auto const f5l = run(Figure::Fig5Left);
    double ratio = 0;
    for (auto const& r : f5l)
        ratio = std::max(ratio, r.diagnostic / std::pow(std::log(double(r.n)), 2));
    out.push_back(upper("fig5-left |K - S| / (log n)^2", ratio, 40.0));
    out.push_back(upper("fig5-left trend slope", log_squared_trend(f5l), 0.0));
    out.push_back(upper("fig5-right stabilizes", stabilization_ratio(run(Figure::Fig5Right)), 0.25));
    auto const t15 = run(Figure::Thm15Bound);
    double mx = 0;
    for (auto const& r : t15)
        mx = std::max(mx, r.diagnostic);
    out.push_back(upper("thm15 max |K| / |K| at smallest n", mx / t15.front().diagnostic, 10.0));
    return out;
}

std::vector<CheckResult> check_sampler(int samples, bool with_ks)
{
    auto const p = default_model(1024);
    auto const eq = equilibrium(p);
    SampleConfig cfg;
    cfg.n_points = p.n;
    double inner = 0;
    long gap = 0;
    for (int s = 0; s < samples; ++s) {
        cfg.seed = 9000 + s;
        for (auto const& z : sample_configuration(p, cfg)) {
            inner += z.r <= p.r1;
            gap += p.in_gap(z.r);
        }
    }
    double const se = std::sqrt(p.n * 0.25 / samples);
    std::vector<CheckResult> out;
    out.push_back(upper("sampled points in the gap", double(gap), 0.0));
    out.push_back(upper("inner count vs n sigma_star, standard errors",
                        std::abs(inner / samples - p.n * eq.sigma_star) / se, 4.0));
    cfg.seed = 1;
    auto const a = sample_configuration(p, cfg), b = sample_configuration(p, cfg);
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i)
        same = same && a[i].r == b[i].r && a[i].theta == b[i].theta;
    out.push_back({"fixed seed reproduces the sample", same, same ? 0.0 : 1.0, 0.0, {}});
    if (with_ks) {
        int const jstar = static_cast<int>(eq.floor_j_star);
        double worst = 0;
        for (int j : {1, 150, jstar, jstar + 1, 900}) {
            std::vector<double> r;
            for (std::uint64_t s = 0; s < 10000; ++s) {
                std::mt19937_64 rng(mode_stream_seed(1000 + s, j));
                r.push_back(sample_modulus(p, j, rng));
            }
            std::sort(r.begin(), r.end());
            for (std::size_t i = 0; i < r.size(); ++i) {
                double const F = radial_cdf(p, j, r[i]);
                worst = std::max({worst, std::abs(F - i / 1e4), std::abs(F - (i + 1) / 1e4)});
            }
        }
        out.push_back(upper("per-mode KS distance", worst, 0.0163));
    }
    return out;
}

CheckResult check_regimes()
{
    struct Case
    {
        RegimeOptions opts;
        double value;
        bool lambda;
    };
    double worst = 0;
    for (auto const& c : {Case{{0.45, 1.0}, 1.3, true}, Case{{0.45, 1.0}, 0.75, true}, Case{{0.05, 1.0}, 0.157, false}}) {
        std::vector<double> scaled;
        for (int n : {512, 1024, 2048, 4096}) {
            auto const p = default_model(n);
            auto const eq = equilibrium(p);
            double const R1 = p.b * std::pow(p.r1, 2 * p.b);
            int const j = static_cast<int>(std::lround(c.lambda ? n * R1 / c.value - p.alpha : c.value * n));
            auto const rp = classify_regime(p, eq, j, c.opts);
            scaled.push_back(std::abs(log_hj_asymptotic(p, eq, rp, j) - log_hj(p, j)) * double(n) * n);
        }
        for (std::size_t i = 1; i < scaled.size(); ++i)
            worst = std::max(worst, scaled[i] / scaled[i - 1]);
    }
    return upper("h_j regime errors: growth of scaled error per doubling", worst, 3.0);
}

void guarded(std::vector<CheckResult>& out, std::string const& name, std::function<void(std::vector<CheckResult>&)> f)
{
    try {
        f(out);
    } catch (std::exception const& e) {
        out.push_back({name, false, 0, 0, std::string("threw: ") + e.what()});
    }
}

} // namespace

std::vector<CheckResult> selftest(SelftestLevel level)
{
    bool const full = level == SelftestLevel::Full;
    std::vector<CheckResult> out;
    guarded(out, "integrals", [](auto& o) {
        o.push_back(check_integrals());
        o.push_back(check_identities());
    });
    guarded(out, "theta identity", [&](auto& o) { o.push_back(check_theta(full ? 20 : 5)); });
    guarded(out, "incomplete gamma", [&](auto& o) {
        o.push_back(check_temme(full ? 15 : 7));
        o.push_back(check_upper_gamma_order());
    });
    guarded(out, "kernel", [](auto& o) {
        o.push_back(check_trace());
        for (auto& c : check_structure())
            o.push_back(std::move(c));
    });
    guarded(out, "figures", [](auto& o) {
        for (auto& c : check_figures())
            o.push_back(std::move(c));
    });
    guarded(out, "sampler", [&](auto& o) {
        for (auto& c : check_sampler(full ? 200 : 20, full))
            o.push_back(std::move(c));
    });
    guarded(out, "h_j regimes", [](auto& o) { o.push_back(check_regimes()); });
    return out;
}

} // namespace hardwall
