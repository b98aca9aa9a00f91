#include "hardwall/harness.hpp"

#include "hardwall/asymptotics.hpp"
#include "hardwall/errors.hpp"
#include "hardwall/kernel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>

namespace hardwall {

namespace {

struct FigureInfo
{
    Figure figure;
    char const* name;
    char const* alias;
};

constexpr FigureInfo figures[] = {
    {Figure::Fig4Left, "fig4-left", "fig4_left"},   {Figure::Fig4Right, "fig4-right", "fig4_right"},
    {Figure::Fig5Left, "fig5-left", "fig5_left"},   {Figure::Fig5Right, "fig5-right", "fig5_right"},
    {Figure::Thm15Bound, "thm15", "thm15_bound"},
};

DiagnosticRow diagnostic_row(Figure f, ModelParams params, Scenario const& sc, int n)
{
    auto const start = std::chrono::steady_clock::now();
    params.n = n;
    auto const eq = equilibrium(params);
    auto const [z, w] = figure_points(f, params, sc);
    DiagnosticRow row;
    row.n = n;
    row.exact = kernel_eval(params, z, w).value;
    double const dn = n;
    switch (f) {
    case Figure::Fig4Left: {
        if (std::abs(row.exact.imag()) >= 1e-8 * std::abs(row.exact))
            throw Error("fig4-left: K_n is not real at equal angles");
        row.predicted = predict_hard_micro(params, eq, sc.u1, sc.u2).value;
        row.diagnostic = (row.exact - row.predicted).real() / std::log(dn);
        break;
    }
    case Figure::Fig4Right:
        if (std::abs(row.exact.imag()) >= 1e-8 * std::abs(row.exact))
            throw Error("fig4-right: K_n is not real at equal angles");
        row.predicted = predict_semi_hard_micro(params, eq, sc.u1, sc.u2).value;
        row.diagnostic = (row.exact - row.predicted).real();
        break;
    case Figure::Fig5Left:
        row.predicted = predict_r1r2_macro(params, eq, sc.u1, sc.u2, sc.theta1, sc.theta2).value;
        row.diagnostic = std::abs(row.exact - row.predicted);
        break;
    case Figure::Fig5Right:
        row.predicted = predict_r1r1_macro(params, eq, sc.u1, sc.u2, sc.theta1, sc.theta2).value;
        row.diagnostic = std::abs(row.exact - row.predicted) / std::sqrt(dn);
        break;
    case Figure::Thm15Bound:
        row.predicted = predict_semi_hard_macro_bound(params, eq, sc.u1, sc.u2, sc.theta1, sc.theta2).value;
        row.diagnostic = std::abs(row.exact);
        break;
    }
    std::chrono::duration<double, std::milli> const dt = std::chrono::steady_clock::now() - start;
    row.wall_time_ms = dt.count();
    return row;
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    std::size_t const m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

} // namespace

Figure parse_figure(std::string const& name)
{
    for (auto const& f : figures)
        if (name == f.name || name == f.alias)
            return f.figure;
    throw DomainError("unknown figure '" + name + "'");
}

char const* figure_name(Figure f)
{
    for (auto const& info : figures)
        if (info.figure == f)
            return info.name;
    return "?";
}

Scenario default_scenario(Figure f)
{
    switch (f) {
    case Figure::Fig4Left: return {0.21, 0.45, 0.0, 0.0};
    case Figure::Fig4Right: return {1.21, 1.45, 0.0, 0.0};
    case Figure::Fig5Left: return {0.21, 0.45, 0.0, 0.312};
    case Figure::Fig5Right: return {0.91, 1.45, 0.0, 0.312};
    case Figure::Thm15Bound: return {1.21, 1.45, 0.0, 0.312};
    }
    return {};
}

ModelParams default_model(int n) { return ModelParams::from_fractions(1.3, 1.26, 0.42, 0.67, n); }

std::vector<int> default_n_grid() { return {256, 362, 512, 724, 1024, 1448, 2048, 2896, 4096}; }

std::pair<PlanePoint, PlanePoint> figure_points(Figure f, ModelParams const& params, Scenario const& sc)
{
    auto const eq = equilibrium(params);
    switch (f) {
    case Figure::Fig4Left:
    case Figure::Fig5Right:
        return {hard_edge_point(params, eq, sc.u1, sc.theta1, Side::Inner),
                hard_edge_point(params, eq, sc.u2, sc.theta2, Side::Inner)};
    case Figure::Fig5Left:
        return {hard_edge_point(params, eq, sc.u1, sc.theta1, Side::Inner),
                hard_edge_point(params, eq, sc.u2, sc.theta2, Side::Outer)};
    case Figure::Fig4Right:
    case Figure::Thm15Bound:
        return {semi_hard_point(params, sc.u1, sc.theta1), semi_hard_point(params, sc.u2, sc.theta2)};
    }
    throw DomainError("unknown figure");
}

std::vector<DiagnosticRow> figure_diag(Figure f, ModelParams const& params, Scenario const& sc,
                                       std::vector<int> const& n_grid)
{
    if (n_grid.empty())
        throw DomainError("figure_diag: empty n grid");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 32)
            throw DomainError("figure_diag: every n must be at least 32");
        if (i > 0 && n_grid[i] <= n_grid[i - 1])
            throw DomainError("figure_diag: n grid must be ascending");
    }
    std::vector<std::future<DiagnosticRow>> tasks;
    for (int n : n_grid)
        tasks.push_back(std::async(std::launch::async, diagnostic_row, f, params, sc, n));
    std::vector<DiagnosticRow> rows;
    for (auto& t : tasks)
        rows.push_back(t.get());
    return rows;
}

void write_diagnostics_csv(std::ostream& out, std::vector<DiagnosticRow> const& rows)
{
    auto const old = out.precision(17);
    out << "n,exact_re,exact_im,predicted_re,predicted_im,abs_diff,diagnostic,wall_time_ms\n";
    for (auto const& r : rows)
        out << r.n << ',' << r.exact.real() << ',' << r.exact.imag() << ',' << r.predicted.real() << ','
            << r.predicted.imag() << ',' << std::abs(r.exact - r.predicted) << ',' << r.diagnostic << ','
            << r.wall_time_ms << '\n';
    out.precision(old);
}

double stabilization_ratio(std::vector<DiagnosticRow> const& rows)
{
    if (rows.size() < 4)
        throw DomainError("stabilization_ratio: needs at least four rows");
    std::vector<double> mags;
    double step = 0;
    for (std::size_t i = rows.size() - 4; i < rows.size(); ++i) {
        mags.push_back(std::abs(rows[i].diagnostic));
        if (i > rows.size() - 4)
            step = std::max(step, std::abs(rows[i].diagnostic - rows[i - 1].diagnostic));
    }
    return step / median(mags);
}

double log_squared_trend(std::vector<DiagnosticRow> const& rows)
{
    if (rows.size() < 2)
        throw DomainError("log_squared_trend: needs at least two rows");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double const m = static_cast<double>(rows.size());
    for (auto const& r : rows) {
        double const x = std::log(double(r.n));
        double const y = r.diagnostic / (x * x);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace hardwall
