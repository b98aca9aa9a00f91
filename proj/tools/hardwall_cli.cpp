#include "hardwall/asymptotics.hpp"
#include "hardwall/errors.hpp"
#include "hardwall/harness.hpp"
#include "hardwall/kernel.hpp"
#include "hardwall/sampler.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace hardwall;
using nlohmann::json;

namespace {

struct ModelFlags
{
    double b = 1.3;
    double alpha = 1.26;
    double r1_frac = 0.42;
    double r2_frac = 0.67;
    double r1 = 0;
    double r2 = 0;
    int n = 0;

    void add_to(CLI::App* cmd, bool required)
    {
        cmd->add_option("--b", b, "exponent b > 0")->required(required);
        cmd->add_option("--alpha", alpha, "alpha > -1")->required(required);
        auto* f1 = cmd->add_option("--r1-frac", r1_frac, "inner wall as a fraction of the droplet radius");
        auto* f2 = cmd->add_option("--r2-frac", r2_frac, "outer wall as a fraction of the droplet radius");
        auto* a1 = cmd->add_option("--r1", r1, "inner wall radius");
        auto* a2 = cmd->add_option("--r2", r2, "outer wall radius");
        f1->excludes(a1)->excludes(a2)->needs(f2);
        f2->excludes(a1)->excludes(a2)->needs(f1);
        a1->needs(a2);
        a2->needs(a1);
        if (required) {
            // one of the two radius pairs must be given
            cmd->callback([cmd, f1, a1] {
                if (f1->count() == 0 && a1->count() == 0)
                    throw CLI::RequiredError("--r1-frac/--r2-frac or --r1/--r2");
                (void)cmd;
            });
        }
    }

    ModelParams params() const
    {
        ModelParams p;
        if (r1 > 0 || r2 > 0)
            p = ModelParams{b, alpha, r1, r2, n};
        else
            p = ModelParams::from_fractions(b, alpha, r1_frac, r2_frac, n);
        p.validate();
        return p;
    }
};

PlanePoint parse_point(std::string const& s)
{
    auto const comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("point", "expected R,THETA but got '" + s + "'");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (std::exception const&) {
        throw CLI::ValidationError("point", "expected R,THETA but got '" + s + "'");
    }
}

std::vector<int> parse_grid(std::string const& s)
{
    std::vector<int> grid;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        grid.push_back(std::stoi(item));
    return grid;
}

json prediction_json(Prediction const& p)
{
    json breakdown = json::array();
    for (auto const& [name, v] : p.breakdown)
        breakdown.push_back({{"term", name}, {"re", v.real()}, {"im", v.imag()}});
    return {{"value_re", p.value.real()}, {"value_im", p.value.imag()}, {"breakdown", breakdown},
            {"error_order", p.error_order}};
}

std::ofstream open_out(std::string const& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hard-wall Mittag-Leffler ensemble: exact kernel, asymptotics and sampler"};
    app.require_subcommand(1);

    ModelFlags model;
    std::string z_arg, w_arg;
    bool as_json = false;
    auto* eval = app.add_subcommand("eval-kernel", "exact K_n(z, w)");
    model.add_to(eval, true);
    eval->add_option("--n", model.n, "number of points")->required();
    eval->add_option("--z", z_arg, "R,THETA")->required();
    eval->add_option("--w", w_arg, "R,THETA")->required();
    eval->add_flag("--json", as_json, "print JSON");

    std::string theorem;
    double t1 = NAN, t2 = NAN, s1 = NAN, s2 = NAN, theta1 = 0, theta2 = 0;
    ModelFlags pmodel;
    auto* predict = app.add_subcommand("predict", "large-n prediction of one theorem");
    predict->add_option("--theorem", theorem)->required()->check(CLI::IsMember({"1.1", "1.2", "1.3", "1.4"}));
    auto* ot1 = predict->add_option("--t1", t1, "hard-edge distance of z");
    auto* ot2 = predict->add_option("--t2", t2, "hard-edge distance of w");
    auto* os1 = predict->add_option("--s1", s1, "semi-hard distance of z");
    auto* os2 = predict->add_option("--s2", s2, "semi-hard distance of w");
    ot1->needs(ot2)->excludes(os1)->excludes(os2);
    ot2->needs(ot1);
    os1->needs(os2);
    os2->needs(os1);
    predict->add_option("--theta1", theta1);
    predict->add_option("--theta2", theta2);
    predict->add_option("--n", pmodel.n)->required();
    pmodel.add_to(predict, false);

    std::string which, grid_arg, out_path;
    ModelFlags fmodel;
    auto* figure = app.add_subcommand("figure", "figure diagnostics over a grid of n");
    figure->add_option("--which", which)
        ->required()
        ->check(CLI::IsMember({"fig4-left", "fig4-right", "fig5-left", "fig5-right", "thm15"}));
    figure->add_option("--n-grid", grid_arg, "comma-separated ascending n, each >= 32");
    figure->add_option("--out", out_path)->required();
    fmodel.add_to(figure, false);

    std::uint64_t seed = 0;
    ModelFlags smodel;
    std::string sample_out;
    auto* sample = app.add_subcommand("sample", "one exact sample of the point process");
    sample->add_option("--n", smodel.n)->required();
    sample->add_option("--seed", seed)->required();
    sample->add_option("--out", sample_out)->required();
    smodel.add_to(sample, false);

    auto* integrals = app.add_subcommand("integrals", "the universal integrals and their identities as JSON");

    bool full = false;
    auto* self = app.add_subcommand("selftest", "run the invariant checks");
    self->add_flag("--full", full, "run the full suite");

    ModelFlags hmodel;
    RegimeOptions ropts;
    std::string hj_out;
    auto* hj = app.add_subcommand("hj-regimes", "regime of each j with exact and asymptotic log h_j");
    hj->add_option("--n", hmodel.n)->required();
    hj->add_option("--epsilon", ropts.epsilon, "window parameter; 0 picks the default");
    hj->add_option("--m-prime", ropts.M_prime, "window width constant M'");
    hj->add_option("--out", hj_out)->required();
    hmodel.add_to(hj, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) {
            auto const p = model.params();
            auto const k = kernel_eval(p, parse_point(z_arg), parse_point(w_arg));
            if (as_json) {
                std::cout << json{{"value_re", k.value.real()},
                                  {"value_im", k.value.imag()},
                                  {"breakdown", json::array()},
                                  {"error_order", "exact"}}
                                 .dump(2)
                          << '\n';
            } else {
                std::cout.precision(17);
                std::cout << "K_n = " << k.value.real() << (k.value.imag() < 0 ? " - " : " + ")
                          << std::abs(k.value.imag()) << "i\n"
                          << "terms summed: " << k.terms_summed << ", dropped: " << k.dropped_terms << '\n';
            }
        } else if (predict->parsed()) {
            auto const p = pmodel.params();
            auto const eq = equilibrium(p);
            bool const hard = theorem != "1.2";
            if (hard && ot1->count() == 0)
                throw CLI::RequiredError("--t1/--t2");
            if (!hard && os1->count() == 0)
                throw CLI::RequiredError("--s1/--s2");
            Prediction pr;
            if (theorem == "1.1")
                pr = predict_hard_micro(p, eq, t1, t2);
            else if (theorem == "1.2")
                pr = predict_semi_hard_micro(p, eq, s1, s2);
            else if (theorem == "1.3")
                pr = predict_r1r2_macro(p, eq, t1, t2, theta1, theta2);
            else
                pr = predict_r1r1_macro(p, eq, t1, t2, theta1, theta2);
            std::cout << prediction_json(pr).dump(2) << '\n';
        } else if (figure->parsed()) {
            fmodel.n = 1;
            Figure const f = parse_figure(which);
            auto const grid = grid_arg.empty() ? default_n_grid() : parse_grid(grid_arg);
            auto const rows = figure_diag(f, fmodel.params(), default_scenario(f), grid);
            auto out = open_out(out_path);
            write_diagnostics_csv(out, rows);
        } else if (sample->parsed()) {
            auto const p = smodel.params();
            SampleConfig cfg;
            cfg.seed = seed;
            cfg.n_points = p.n;
            auto out = open_out(sample_out);
            write_sample_csv(out, sample_configuration(p, cfg));
        } else if (integrals->parsed()) {
            auto const v = integrals_I1_to_I4();
            json j{{"I", v.I}, {"I1", v.I1}, {"I2", v.I2}, {"I3", v.I3}, {"I4", v.I4}};
            j["residuals"] = {{"I1 - log(2 sqrt(pi))/2", v.I1 - 0.5 * std::log(2 * std::sqrt(std::numbers::pi))},
                              {"I3 - I", v.I3 - v.I},
                              {"I4 - (I2 - I)", v.I4 - (v.I2 - v.I)}};
            std::cout << j.dump(2) << '\n';
        } else if (self->parsed()) {
            auto const report = selftest(full ? SelftestLevel::Full : SelftestLevel::Quick);
            bool ok = true;
            for (auto const& c : report) {
                ok = ok && c.passed;
                std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": measured " << c.measured
                          << ", tolerance " << c.tolerance << (c.detail.empty() ? "" : " (" + c.detail + ")")
                          << '\n';
            }
            return ok ? 0 : 1;
        } else if (hj->parsed()) {
            auto const p = hmodel.params();
            auto const eq = equilibrium(p);
            auto out = open_out(hj_out);
            out.precision(17);
            out << "j,regime,M_jk,log_h_exact,log_h_asymptotic\n";
            for (int j = 1; j <= p.n; ++j) {
                auto const rp = classify_regime(p, eq, j, ropts);
                out << j << ',' << static_cast<int>(rp.regime) << ',' << rp.M_jk << ',' << log_hj(p, j) << ',';
                try {
                    out << log_hj_asymptotic(p, eq, rp, j);
                } catch (DomainError const&) {
                    out << "nan";  // window expansion invalid this far from the circle
                }
                out << '\n';
            }
        }
    } catch (CLI::Error const& e) {
        return app.exit(e);
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
