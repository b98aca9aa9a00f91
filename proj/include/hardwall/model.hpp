#pragma once

namespace hardwall {

/// Mittag-Leffler potential |z|^{2b} - (2 alpha / n) log|z| with a hard wall on r1 < |z| < r2.
struct ModelParams
{
    double b = 1.0;
    double alpha = 0.0;
    double r1 = 0.5;
    double r2 = 0.8;
    int n = 1;

    /// Radii given as fractions of the droplet radius b^{-1/(2b)}.
    static ModelParams from_fractions(double b, double alpha, double r1_frac, double r2_frac, int n);

    /// b^{-1/(2b)}, the outer radius of the droplet.
    double outer_radius() const;

    /// Throws InvalidParams unless b > 0, alpha > -1, 0 < r1 < r2 < b^{-1/(2b)} and n >= 1.
    void validate() const;

    bool in_gap(double r) const { return r > r1 && r < r2; }
};

struct EquilibriumData
{
    double sigma_star = 0;        ///< mass of the closed disk of radius r1
    double sigma1 = 0;            ///< atom on |z| = r1
    double sigma2 = 0;            ///< atom on |z| = r2
    double j_star = 0;            ///< n sigma_star - alpha
    double x = 0;                 ///< fractional part of j_star
    double delta_tilde_Q_r1 = 0;  ///< b^2 r1^{2b-2}
    long floor_j_star = 0;
};

/// Point in polar form.
struct PlanePoint
{
    double r = 0;
    double theta = 0;
};

enum class Side { Inner, Outer };

EquilibriumData equilibrium(ModelParams const& params);

/// +inf on the open gap; r = 0 gives +-inf (sign of alpha) or 0 when alpha = 0.
double potential_Q(ModelParams const& params, PlanePoint const& p);

/// mu({|z| <= r}) for the equilibrium measure including its two circle atoms.
double mu_mass_in_disk(ModelParams const& params, double r);

/// Inner: r1 (1 - t/(sigma1 n)); outer: r2 (1 + t/(sigma2 n)).
PlanePoint hard_edge_point(ModelParams const& params, EquilibriumData const& eq, double t, double beta, Side side);

/// r1 (1 - s/(b r1^b sqrt(2n))), for s > 0.
PlanePoint semi_hard_point(ModelParams const& params, double s_frak, double beta);

} // namespace hardwall
