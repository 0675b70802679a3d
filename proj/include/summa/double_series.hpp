#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "summa/grid.hpp"

namespace summa {

inline constexpr double kDefaultEpsilon = 1e-6;
inline constexpr Index kDefaultBudget = 64;
inline constexpr double kDefaultEscapeBound = 1e12;

/// Real double sequence u(j, k) defined on the positive quadrant j, k >= 1.
/// The generator must be deterministic.
class DoubleSequence {
public:
    using Generator = std::function<double(Index, Index)>;

    DoubleSequence() = default;
    explicit DoubleSequence(Generator gen, std::string name = {})
        : gen_(std::move(gen)), name_(std::move(name)) {}

    double operator()(Index j, Index k) const { return gen_(j, k); }
    const std::string& name() const noexcept { return name_; }

    /// u'(j, k) = u(k, j).
    DoubleSequence transposed() const;

    /// Materialises u on {1..rows} x {1..cols}.
    Grid sample(Index rows, Index cols) const;

private:
    Generator gen_;
    std::string name_;
};

/// Rectangular partial sums S(m, n) = sum_{j<=m} sum_{k<=n} u(j, k).
struct PartialSumGrid {
    Grid values;

    Index rows() const noexcept { return values.rows(); }
    Index cols() const noexcept { return values.cols(); }
    double operator()(Index m, Index n) const noexcept { return values(m, n); }
};

PartialSumGrid partial_sum_grid(const DoubleSequence& u, Index M, Index N);
PartialSumGrid partial_sum_grid(const Grid& terms);

enum class ConvergenceStatus { pringsheim, regular, absolute, diverged, undetermined };

std::string_view to_string(ConvergenceStatus s) noexcept;

/// Outcome of a finite-budget convergence test. `limit` is present exactly
/// when the status witnesses convergence.
struct ConvergenceReport {
    ConvergenceStatus status = ConvergenceStatus::undetermined;
    std::optional<double> limit;
    double epsilon = kDefaultEpsilon;
    Index cutoff_K = 1;
    std::string evidence;
};

/// True for pringsheim, regular and absolute.
bool converges_pringsheim(const ConvergenceReport& r) noexcept;
/// True for regular and absolute.
bool converges_regularly(const ConvergenceReport& r) noexcept;
bool converges_absolutely(const ConvergenceReport& r) noexcept;

/// Pringsheim convergence on the window {1..k_max}^2.
///
/// The limit estimate s is S(k_max, k_max). Reports `pringsheim` when some
/// K <= k_max / 2 has |S(m, n) - s| < epsilon for every min(m, n) > K, and the
/// smallest such K becomes the cutoff. Any |S| above `escape_bound` (or a
/// non-finite S) reports `diverged`. Everything else, including partial sums
/// that keep oscillating, is `undetermined`.
ConvergenceReport detect_pringsheim(const DoubleSequence& u, double epsilon = kDefaultEpsilon,
                                    Index k_max = kDefaultBudget,
                                    double escape_bound = kDefaultEscapeBound);

/// Regular (Hardy) convergence: Pringsheim convergence plus a Cauchy-tail
/// test on every row series sum_j u(j, k) and column series sum_k u(j, k)
/// with fixed index <= k_max. The tail test requires
/// max_{k_max/2 <= p <= k_max} |r_p - r_{k_max}| < epsilon.
///
/// When the double series is Pringsheim-convergent but some row or column
/// fails, the report keeps status `pringsheim` and names the failing line.
ConvergenceReport detect_regular(const DoubleSequence& u, double epsilon = kDefaultEpsilon,
                                 Index k_max = kDefaultBudget,
                                 double escape_bound = kDefaultEscapeBound);

/// Absolute convergence from the |u| sums A(B) over {1..B}^2: `absolute` when
/// A(budget) - A(budget / 2) < epsilon, `diverged` when A(budget) > bound.
ConvergenceReport detect_absolute(const DoubleSequence& u, Index budget = kDefaultBudget,
                                  double bound = kDefaultEscapeBound,
                                  double epsilon = kDefaultEpsilon);

}  // namespace summa
