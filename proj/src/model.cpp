#include "hardwall/model.hpp"

#include "hardwall/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hardwall {

ModelParams ModelParams::from_fractions(double b, double alpha, double r1_frac, double r2_frac, int n)
{
    if (!(b > 0))
        throw InvalidParams("b must be positive");
    double const R = std::pow(b, -1.0 / (2.0 * b));
    ModelParams p{b, alpha, r1_frac * R, r2_frac * R, n};
    p.validate();
    return p;
}

double ModelParams::outer_radius() const { return std::pow(b, -1.0 / (2.0 * b)); }

void ModelParams::validate() const
{
    if (!(b > 0) || !std::isfinite(b))
        throw InvalidParams("b must be positive");
    if (!(alpha > -1) || !std::isfinite(alpha))
        throw InvalidParams("alpha must exceed -1");
    if (!(r1 > 0) || !(r1 < r2) || !(r2 < outer_radius()))
        throw InvalidParams("radii must satisfy 0 < r1 < r2 < b^{-1/(2b)} (r1=" + std::to_string(r1) +
                            ", r2=" + std::to_string(r2) + ")");
    if (n < 1)
        throw InvalidParams("n must be at least 1");
}

EquilibriumData equilibrium(ModelParams const& params)
{
    params.validate();
    double const b = params.b;
    double const p1 = std::pow(params.r1, 2 * b), p2 = std::pow(params.r2, 2 * b);
    EquilibriumData eq;
    eq.sigma_star = (p2 - p1) / (2.0 * std::log(params.r2 / params.r1));
    eq.sigma1 = eq.sigma_star - b * p1;
    eq.sigma2 = b * p2 - eq.sigma_star;
    eq.j_star = params.n * eq.sigma_star - params.alpha;
    double const fl = std::floor(eq.j_star);
    eq.floor_j_star = static_cast<long>(fl);
    eq.x = eq.j_star - fl;
    eq.delta_tilde_Q_r1 = b * b * std::pow(params.r1, 2 * b - 2);
    return eq;
}

double potential_Q(ModelParams const& params, PlanePoint const& p)
{
    double const inf = std::numeric_limits<double>::infinity();
    if (params.in_gap(p.r))
        return inf;
    if (p.r == 0)
        return params.alpha > 0 ? inf : (params.alpha < 0 ? -inf : 0.0);
    return std::pow(p.r, 2 * params.b) - 2.0 * params.alpha / params.n * std::log(p.r);
}

double mu_mass_in_disk(ModelParams const& params, double r)
{
    if (r < 0)
        return 0.0;
    double const b = params.b;
    if (r >= params.outer_radius())
        return 1.0;
    if (r < params.r1)
        return b * std::pow(r, 2 * b);
    if (r < params.r2)
        return equilibrium(params).sigma_star;
    return b * std::pow(r, 2 * b);
}

PlanePoint hard_edge_point(ModelParams const& params, EquilibriumData const& eq, double t, double beta, Side side)
{
    if (!(t >= 0))
        throw DomainError("hard_edge_point: t must be nonnegative");
    if (side == Side::Inner)
        return {params.r1 * (1.0 - t / (eq.sigma1 * params.n)), beta};
    return {params.r2 * (1.0 + t / (eq.sigma2 * params.n)), beta};
}

PlanePoint semi_hard_point(ModelParams const& params, double s_frak, double beta)
{
    if (!(s_frak > 0))
        throw DomainError("semi_hard_point: s must be positive");
    double const scale = params.b * std::pow(params.r1, params.b) * std::sqrt(2.0 * params.n);
    return {params.r1 * (1.0 - s_frak / scale), beta};
}

} // namespace hardwall
