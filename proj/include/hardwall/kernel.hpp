#pragma once

#include "hardwall/model.hpp"
#include "hardwall/specfun.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace hardwall {

/// A complex number stored as (log|w|, arg w). log_mag = -inf encodes zero.
struct LogComplex
{
    double log_mag = 0;
    double phase = 0;

    /// Phase reduced to (-pi, pi]; zero phase when log_mag is -inf.
    LogComplex normalized() const;
    std::complex<double> value() const;
};

struct KernelValue
{
    std::complex<double> value;
    long terms_summed = 0;
    double max_term_log = 0;
    long dropped_terms = 0;
};

/// log h_j and log(P(a_j, n r1^{2b}) + Q(a_j, n r2^{2b})) for j = 1..n (index j-1).
struct HjTable
{
    std::vector<double> log_h;
    std::vector<double> log_bracket;
};

/// Cached per (b, alpha, r1, r2, n); safe to call from several threads.
std::shared_ptr<HjTable const> hj_table(ModelParams const& params);
void clear_hj_cache();

/// log of the bracket P(a_j, n r1^{2b}) + Q(a_j, n r2^{2b}), a_j = (j + alpha)/b.
double log_hj_bracket(ModelParams const& params, int j);

/// log h_j = log Gamma(a_j) - log b - a_j log n + log bracket.
double log_hj(ModelParams const& params, int j);

namespace detail {
/// log h_j without parameter validation, so that r1 == r2 (no gap) is allowed.
double log_hj_unchecked(double b, double alpha, double r1, double r2, int n, int j);
} // namespace detail

/// j-th summand of K_n(z, w). Zero (log_mag = -inf) when z or w lies in the gap.
LogComplex kernel_term(ModelParams const& params, int j, PlanePoint const& z, PlanePoint const& w);

/// K_n(z, w) summed in ascending j with compensation. Terms more than 745 below the
/// largest one are dropped and counted.
KernelValue kernel_eval(ModelParams const& params, PlanePoint const& z, PlanePoint const& w);

/// K_n(z, z).
double one_point(ModelParams const& params, PlanePoint const& z);

/// Expected number of points in |z| <= r; r may be +inf.
double expected_count_in_disk(ModelParams const& params, double r);

} // namespace hardwall
