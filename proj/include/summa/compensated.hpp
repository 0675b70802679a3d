#pragma once

#include <cmath>
#include <span>

#include "summa/grid.hpp"

namespace summa {

/// Neumaier-compensated accumulator. Keeps the running rounding error in a
/// separate carry so long sums of small tail terms stay accurate.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double init) : sum_(init) {}

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

inline double compensated_sum(std::span<const double> xs) noexcept {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

/// Summed-area table: out(m, n) = sum of in(j, k) over j <= m, k <= n.
/// One pass, O(rows * cols). Each row prefix and each column accumulation is
/// compensated.
Grid summed_area(const Grid& in);

}  // namespace summa
