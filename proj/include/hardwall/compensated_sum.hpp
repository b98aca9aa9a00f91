#pragma once

#include <cmath>
#include <complex>

namespace hardwall {

/// Kahan-Neumaier accumulator. Unlike plain Kahan summation it stays exact
/// when an addend is larger in magnitude than the running sum.
template <typename Real> class NeumaierSum
{
public:
    constexpr NeumaierSum() = default;

    constexpr void add(Real value) noexcept
    {
        Real const t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            compensation_ += (sum_ - t) + value;
        else
            compensation_ += (value - t) + sum_;
        sum_ = t;
    }

    constexpr NeumaierSum& operator+=(Real value) noexcept
    {
        add(value);
        return *this;
    }

    constexpr Real value() const noexcept { return sum_ + compensation_; }

private:
    Real sum_ = Real{0};
    Real compensation_ = Real{0};
};

/// Compensated complex sum; real and imaginary parts are compensated separately.
template <typename Real> class ComplexNeumaierSum
{
public:
    constexpr void add(std::complex<Real> const& value) noexcept
    {
        re_.add(value.real());
        im_.add(value.imag());
    }

    constexpr ComplexNeumaierSum& operator+=(std::complex<Real> const& value) noexcept
    {
        add(value);
        return *this;
    }

    constexpr std::complex<Real> value() const noexcept { return {re_.value(), im_.value()}; }

private:
    NeumaierSum<Real> re_;
    NeumaierSum<Real> im_;
};

} // namespace hardwall
