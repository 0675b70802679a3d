#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "summa/double_series.hpp"
#include "summa/grid.hpp"

namespace summa {

/// sigma(M, N) = (1 / MN) * sum_{m<=M} sum_{n<=N} s(m, n).
struct CesaroGrid {
    Grid sigma;

    Index rows() const noexcept { return sigma.rows(); }
    Index cols() const noexcept { return sigma.cols(); }
    double operator()(Index m, Index n) const noexcept { return sigma(m, n); }
};

/// (C,1,1) means of every leading rectangle, O(MN) via one summed-area pass.
CesaroGrid cesaro_means(const PartialSumGrid& s);

/// (C,1) means of a single sequence: sigma_M = (1/M) sum_{m<=M} s_m.
std::vector<double> single_cesaro_means(std::span<const double> s);

/// Means along a subsequence of partial sums: (1/M) sum_{m<=M} s_{v_m}.
/// `v` holds 1-based, strictly increasing indices into `s`.
std::vector<double> subsequence_means(std::span<const double> s, std::span<const Index> v);

enum class DeviationKind { vs_sigma, vs_limit };

std::string_view to_string(DeviationKind k) noexcept;

/// T(M, N) = (1 / MN) * sum_{m<=M} sum_{n<=N} d(m, n)^2 for a deviation grid d.
struct StrongCesaroSeries {
    Grid values;
    DeviationKind kind = DeviationKind::vs_sigma;

    double operator()(Index m, Index n) const noexcept { return values(m, n); }
};

/// Strong means of the deviations d = s - sigma.
StrongCesaroSeries strong_deviation_vs_sigma(const PartialSumGrid& s, const CesaroGrid& sigma);

/// Strong means of the deviations d = s - g, with g the value of the limit
/// function at the evaluation point.
StrongCesaroSeries strong_deviation_vs_limit(const PartialSumGrid& s, double g_value);

/// Mean absolute deviation against root-mean-square deviation.
struct CauchyBound {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
};

inline constexpr double kCauchySlack = 1e-12;

/// lhs = (1/MN) sum |s(m,n) - g|, rhs = sqrt(T(M, N)) over the leading M x N
/// block. `holds` is lhs <= rhs + 1e-12.
CauchyBound cauchy_bound_check(const PartialSumGrid& s, double g_value, Index M, Index N);

/// Same check on an arbitrary list of deviations.
CauchyBound cauchy_bound(std::span<const double> deviations);

}  // namespace summa
