#pragma once

#include "hardwall/model.hpp"

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace hardwall {

enum class Figure { Fig4Left, Fig4Right, Fig5Left, Fig5Right, Thm15Bound };

/// Accepts fig4-left, fig4_left, ..., thm15 and thm15_bound.
Figure parse_figure(std::string const& name);
char const* figure_name(Figure f);

/// Distances (t for the hard edge, s for the semi-hard edge) and angles of the point pair.
struct Scenario
{
    double u1 = 0;
    double u2 = 0;
    double theta1 = 0;
    double theta2 = 0;
};

Scenario default_scenario(Figure f);

/// b = 1.3, alpha = 1.26, r1 = 0.42 and r2 = 0.67 of the droplet radius.
ModelParams default_model(int n);

/// 256, 362, 512, ..., 4096: powers of sqrt 2, rounded.
std::vector<int> default_n_grid();

struct DiagnosticRow
{
    int n = 0;
    std::complex<double> exact;
    std::complex<double> predicted;
    double diagnostic = 0;
    double wall_time_ms = 0;
};

/// The pair (z, w) at which the figure evaluates K_n.
std::pair<PlanePoint, PlanePoint> figure_points(Figure f, ModelParams const& params, Scenario const& sc);

/// One row per n (params.n is ignored), computed in parallel and returned in grid order.
/// The grid must be ascending with every n >= 32.
std::vector<DiagnosticRow> figure_diag(Figure f, ModelParams const& params, Scenario const& sc,
                                       std::vector<int> const& n_grid);

void write_diagnostics_csv(std::ostream& out, std::vector<DiagnosticRow> const& rows);

/// Largest successive difference among the last four diagnostics, over the median of their
/// magnitudes.
double stabilization_ratio(std::vector<DiagnosticRow> const& rows);

/// Least-squares slope of diagnostic / (log n)^2 against log n.
double log_squared_trend(std::vector<DiagnosticRow> const& rows);

struct CheckResult
{
    std::string name;
    bool passed = false;
    double measured = 0;
    double tolerance = 0;
    std::string detail;
};

enum class SelftestLevel { Quick, Full };

std::vector<CheckResult> selftest(SelftestLevel level);

} // namespace hardwall
