#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "summa/double_series.hpp"
#include "summa/grid.hpp"

namespace summa {

/// Linear enumeration of the 1-D Haar system on [0, 1).
///
/// j = 1 is the constant function. Every j >= 2 is written uniquely as
/// j = 2^p + q + 1 with scale p >= 0 and translation 0 <= q < 2^p.
class HaarIndex {
public:
    static HaarIndex from_linear(Index j);
    static HaarIndex from_scale_translation(unsigned scale, Index translation);

    Index linear() const noexcept { return linear_; }
    bool is_constant() const noexcept { return linear_ == 1; }
    /// Scale p; only meaningful when !is_constant().
    unsigned scale() const noexcept { return scale_; }
    Index translation() const noexcept { return translation_; }

    bool operator==(const HaarIndex&) const = default;

private:
    HaarIndex(Index linear, unsigned scale, Index translation)
        : linear_(linear), scale_(scale), translation_(translation) {}

    Index linear_;
    unsigned scale_;
    Index translation_;
};

/// h_j(x) for x in [0, 1). Intervals are right-open.
double haar_1d(HaarIndex j, double x);
inline double haar_1d(Index j, double x) { return haar_1d(HaarIndex::from_linear(j), x); }

/// psi_{j,k}(x1, x2) = h_j(x1) * h_k(x2) on [0, 1)^2.
double psi(HaarIndex j, HaarIndex k, double x1, double x2);
inline double psi(Index j, Index k, double x1, double x2) {
    return psi(HaarIndex::from_linear(j), HaarIndex::from_linear(k), x1, x2);
}

/// Smallest dyadic resolution on which h_1..h_J are all constant per cell.
Index required_resolution(Index J);

bool is_power_of_two(Index n) noexcept;

/// Function on [0,1)^2 that is constant on each cell of the R x R dyadic
/// grid. Cell (a, b), 0-based, covers [a/R, (a+1)/R) x [b/R, (b+1)/R).
class DyadicStepFunction {
public:
    DyadicStepFunction() = default;
    DyadicStepFunction(Index resolution, std::vector<double> cell_values);

    /// Samples f at the cell midpoints.
    static DyadicStepFunction from_midpoints(Index resolution,
                                             const std::function<double(double, double)>& f);

    Index resolution() const noexcept { return resolution_; }
    double cell(Index a, Index b) const noexcept { return values_[a * resolution_ + b]; }
    const std::vector<double>& cells() const noexcept { return values_; }

    double evaluate(double x1, double x2) const;
    /// Exact integral over the unit square (mean of the cell values).
    double integral() const;
    /// Exact integral of f^2.
    double integral_of_square() const;

    static double midpoint(Index a, Index resolution) noexcept {
        return (static_cast<double>(a) + 0.5) / static_cast<double>(resolution);
    }

private:
    Index resolution_ = 0;
    std::vector<double> values_;
};

/// Coefficients c(j, k), 1-based, of a finite tensor Haar expansion.
struct CoefficientGrid {
    Grid c;

    Index rows() const noexcept { return c.rows(); }
    Index cols() const noexcept { return c.cols(); }
    double operator()(Index j, Index k) const noexcept { return c(j, k); }
    double& operator()(Index j, Index k) noexcept { return c(j, k); }
};

/// c(j, k) = integral of f * psi_{j,k} over the unit square, computed exactly
/// as a weighted cell sum. Throws ResolutionError when psi_{j,k} for j <= J or
/// k <= K is not constant on the cells of f.
CoefficientGrid analyze(const DyadicStepFunction& f, Index J, Index K);

/// s_{m,n}(x) = sum_{j<=m} sum_{k<=n} c(j,k) psi_{j,k}(x).
double synthesize_partial(const CoefficientGrid& c, Index m, Index n, double x1, double x2);

/// Expansion sampled on every cell of the given resolution.
DyadicStepFunction synthesize(const CoefficientGrid& c, Index resolution);

/// Terms u(j, k) = c(j, k) psi_{j,k}(x) of the expansion at a fixed point;
/// zero outside the grid.
DoubleSequence terms_at(const CoefficientGrid& c, double x1, double x2);

/// All rectangular partial sums s_{m,n}(x) for m <= M, n <= N. M and N may
/// exceed the grid, in which case the sums stay at the full expansion.
PartialSumGrid partial_sums_at(const CoefficientGrid& c, double x1, double x2, Index M, Index N);

/// Position a (0-based) of the tensor enumeration, ordered by square shells
/// max(j, k) = 1, 2, ...; the first s^2 positions cover exactly j, k <= s.
std::pair<Index, Index> tensor_index(Index a);

/// G[a][b] = integral of psi_a psi_b over the unit square for the first
/// n_functions of the tensor enumeration, by exact dyadic quadrature.
Grid gram_matrix(Index n_functions, Index resolution);

}  // namespace summa
