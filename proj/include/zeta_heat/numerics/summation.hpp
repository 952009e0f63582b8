#pragma once

#include <cmath>

#include "zeta_heat/numerics/double_double.hpp"

namespace zeta_heat::numerics {

/// Neumaier's improved Kahan summation in binary64.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// Accumulator in double-double; each addition is accurate to ~2^-104.
class ExtendedSum {
public:
    void add(const DoubleDouble& x) noexcept { sum_ += x; }
    ExtendedSum& operator+=(const DoubleDouble& x) noexcept {
        sum_ += x;
        return *this;
    }
    const DoubleDouble& value() const noexcept { return sum_; }

private:
    DoubleDouble sum_;
};

}  // namespace zeta_heat::numerics
