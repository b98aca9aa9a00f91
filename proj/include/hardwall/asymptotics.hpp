#pragma once

#include "hardwall/model.hpp"
#include "hardwall/specfun.hpp"

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace hardwall {

enum class Theorem { HardMicro, SemiHardMicro, R1R2Macro, R1R1Macro, SemiHardMacroBound };

char const* theorem_name(Theorem t);

/// A large-n prediction for K_n(z, w). `value` is the sum of the breakdown terms in order.
struct Prediction
{
    Theorem theorem = Theorem::HardMicro;
    std::complex<double> value;
    std::vector<std::pair<std::string, std::complex<double>>> breakdown;
    std::string error_order;
};

struct Integrals
{
    double I = 0;
    double I1 = 0;
    double I2 = 0;
    double I3 = 0;
    double I4 = 0;
};

/// int { y e^{-y^2}/(sqrt(pi) erfc y) - [y > 0](y^2 + 1/2) } dy.
double integral_I(AccuracyConfig const& cfg = {});

/// All five regularized erfc-ratio integrals.
Integrals integrals_I1_to_I4(AccuracyConfig const& cfg = {});

struct HardMicroConstants
{
    double C1 = 0;
    double C2 = 0;
    double C3 = 0;
    double C4 = 0;
};

/// Constants of the hard-edge expansion; t1 + t2 < 1e-8 switches to the t -> 0 limits.
HardMicroConstants hard_micro_constants(ModelParams const& params, EquilibriumData const& eq, double t1, double t2);

/// Oscillatory factor F_n of the hard-edge expansion, in terms of (log theta)'.
double theta_factor_Fn(ModelParams const& params, EquilibriumData const& eq);

/// Bound on |F_n| over all n, from sampling one period of (log theta)'.
double theta_factor_bound(ModelParams const& params, EquilibriumData const& eq);

/// K_n(z, w) ~ C1 n^2 + C2 n log n + (C3 + sigma1/r1^2 e^{-t1-t2} F_n) n + C4 sqrt(n).
Prediction predict_hard_micro(ModelParams const& params, EquilibriumData const& eq, double t1, double t2);

struct SemiHardConstants
{
    double C1 = 0;
    double C2 = 0;
};

SemiHardConstants semi_hard_constants(ModelParams const& params, EquilibriumData const& eq, double s1, double s2,
                                      AccuracyConfig const& cfg = {});

/// K_n(z, w) ~ C1 n + C2 sqrt(n).
Prediction predict_semi_hard_micro(ModelParams const& params, EquilibriumData const& eq, double s1, double s2);

/// int e^{-(y+x)^2} / (sqrt(pi) erfc y) dy, x > 0.
double density_profile_rho(double x, AccuracyConfig const& cfg = {});

/// Bilateral Szego series on the gap annulus; requires r1^2 < |z||w| < r2^2.
std::complex<double> szego_hard(ModelParams const& params, EquilibriumData const& eq, PlanePoint const& z,
                                PlanePoint const& w, AccuracyConfig const& cfg = {});

/// Abel limit of szego_hard((r, theta1), (r, theta2)) as r decreases to r1.
std::complex<double> szego_hard_regularized(ModelParams const& params, EquilibriumData const& eq, double theta1,
                                            double theta2, AccuracyConfig const& cfg = {});

/// z inner at distance t1, w outer at distance t2.
Prediction predict_r1r2_macro(ModelParams const& params, EquilibriumData const& eq, double t1, double t2,
                              double theta1, double theta2);

/// z and w both inner, theta1 != theta2.
Prediction predict_r1r1_macro(ModelParams const& params, EquilibriumData const& eq, double t1, double t2,
                              double theta1, double theta2);

/// Zero prediction with error O(1) for the semi-hard pair at distinct angles.
Prediction predict_semi_hard_macro_bound(ModelParams const& params, EquilibriumData const& eq, double s1,
                                         double s2, double theta1, double theta2);

/// The oscillatory series Q_n at angle difference theta1 - theta2.
std::complex<double> Q_n_series(ModelParams const& params, EquilibriumData const& eq, double theta1, double theta2);

/// Q_n at theta1 = theta2 through (log theta)'.
double Q_n_theta(ModelParams const& params, EquilibriumData const& eq);

/// The eleven index ranges for h_j, in increasing j.
enum class HjRegime {
    FixedIndex = 1,
    BelowR1,
    ApproachR1,
    WindowR1,
    PastR1,
    R1ToJStar,
    JStarToR2,
    ApproachR2,
    WindowR2,
    PastR2,
    AboveR2,
};

struct RegimeOptions
{
    double epsilon = 0;   ///< 0 selects min(0.05, half of the largest admissible value)
    double M_prime = 6;
};

/// Classification of one index j, with the window quantities for its nearest circle k.
struct RegimeParams
{
    double epsilon = 0;
    double M = 0;
    double M_prime = 0;
    double a_j = 0;
    double lambda_jk = 0;
    double eta_jk = 0;
    double M_jk = 0;
    int k = 1;
    HjRegime regime = HjRegime::FixedIndex;
};

/// Largest epsilon for which the window ordering conditions hold (exclusive bound).
double max_regime_epsilon(ModelParams const& params, EquilibriumData const& eq);

/// Throws DomainError if the requested epsilon violates the window conditions.
RegimeParams classify_regime(ModelParams const& params, EquilibriumData const& eq, int j,
                             RegimeOptions const& opts = {});

/// Asymptotic log h_j from the leading formula of rp.regime.
double log_hj_asymptotic(ModelParams const& params, EquilibriumData const& eq, RegimeParams const& rp, int j);

} // namespace hardwall
