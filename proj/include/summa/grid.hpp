#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace summa {

using Index = std::size_t;

/// Dense row-major table addressed with 1-based (row, column) indices, the
/// way the double-series formulas are written. Index 0 in either position
/// reads as 0 through `at_or_zero`, which is what the 2-D prefix recurrences
/// need at their boundary.
class Grid {
public:
    Grid() = default;
    Grid(Index rows, Index cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(Index m, Index n) noexcept { return data_[(m - 1) * cols_ + (n - 1)]; }
    double operator()(Index m, Index n) const noexcept { return data_[(m - 1) * cols_ + (n - 1)]; }

    double at_or_zero(Index m, Index n) const noexcept {
        if (m == 0 || n == 0 || m > rows_ || n > cols_) return 0.0;
        return (*this)(m, n);
    }

    std::span<const double> row(Index m) const noexcept {
        return {data_.data() + (m - 1) * cols_, cols_};
    }
    std::span<double> row(Index m) noexcept { return {data_.data() + (m - 1) * cols_, cols_}; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    bool operator==(const Grid&) const = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<double> data_;
};

}  // namespace summa
