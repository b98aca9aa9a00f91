#pragma once

#include "hardwall/model.hpp"

#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

namespace hardwall {

struct SampleConfig
{
    std::uint64_t seed = 0;
    int n_points = 1;
    double inversion_tol = 1e-12;
};

/// P(|z_j| <= r) for the modulus of mode j, whose density is proportional to
/// r^{2(j+alpha)-1} e^{-n r^{2b}} on [0, r1] and [r2, inf).
double radial_cdf(ModelParams const& params, int j, double r);

/// The r with radial_cdf(j, r) = u, to relative tolerance tol in r^{2b}. u in (0, 1).
double invert_radial_cdf(ModelParams const& params, int j, double u, double tol = 1e-12);

/// splitmix64 of seed + j * 0x9E3779B97F4A7C15; seeds the generator of mode j.
std::uint64_t mode_stream_seed(std::uint64_t seed, int j);

/// Uniform on (0, 1) from the top 53 bits of one draw.
double open_unit_uniform(std::mt19937_64& rng);

/// One draw of |z_j|: a first uniform picks the side of the gap, a second one is inverted
/// through the conditional CDF on that side.
double sample_modulus(ModelParams const& params, int j, std::mt19937_64& rng, double tol = 1e-12);

/// One exact draw of the n points, ordered by mode. Mode j uses its own generator, so the
/// output does not depend on the number of threads.
std::vector<PlanePoint> sample_configuration(ModelParams const& params, SampleConfig const& cfg);

/// CSV with header j,r,theta,x,y and 17 significant digits.
void write_sample_csv(std::ostream& out, std::vector<PlanePoint> const& points);

} // namespace hardwall
