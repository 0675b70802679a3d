#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "summa/double_series.hpp"
#include "summa/haar.hpp"

namespace summa {

/// Per-index weight: 1, [log2(j+1)]^2, or [log2(log2(j+3))]^2.
enum class WeightKind { unit, log_squared, loglog_squared };

std::string_view to_string(WeightKind w) noexcept;
double weight(WeightKind kind, Index j);

/// Coefficients of the form c(j, k) = row(j) * col(k). The weighted square
/// sum then factors into two 1-D sums, which makes large budgets cheap.
struct SeparableCoefficients {
    std::function<double(Index)> row;
    std::function<double(Index)> col;
    std::string name;

    double operator()(Index j, Index k) const { return row(j) * col(k); }
};

/// sum_{j<=J'} sum_{k<=K'} c(j,k)^2 w_row(j) w_col(k) over a grid prefix.
double weighted_square_sum(const CoefficientGrid& c, WeightKind w_row, WeightKind w_col,
                           Index rows, Index cols);
/// Same sum over a generator; cost is rows * cols evaluations.
double weighted_square_sum(const DoubleSequence& c, WeightKind w_row, WeightKind w_col,
                           Index rows, Index cols);
double weighted_square_sum(const SeparableCoefficients& c, WeightKind w_row, WeightKind w_col,
                           Index rows, Index cols);

/// Single-series form: sum_{j<=prefix} c_j^2 w(j).
double single_weighted_square_sum(std::span<const double> c, WeightKind w, Index prefix);

/// The three square-summability conditions on double coefficients, from
/// weakest to strongest weight: plain square summability, the iterated-log
/// (Menshov-Kaczmarz) weight and the log (Rademacher-Menshov) weight.
enum class Condition { square_summable, menshov_kaczmarz, rademacher_menshov };

inline constexpr std::array<Condition, 3> kAllConditions = {
    Condition::square_summable, Condition::menshov_kaczmarz, Condition::rademacher_menshov};

std::string_view to_string(Condition c) noexcept;
WeightKind weight_of(Condition c) noexcept;

enum class Verdict { holds, fails, undetermined };

std::string_view to_string(Verdict v) noexcept;

inline constexpr double kStabilityGrowth = 0.01;
inline constexpr double kConditionEscape = 1e12;

struct ConditionOutcome {
    Condition condition = Condition::square_summable;
    Verdict verdict = Verdict::undetermined;
    double half_sum = 0.0;  ///< prefix sum over {1..budget/2}^2
    double full_sum = 0.0;  ///< prefix sum over {1..budget}^2
    std::string rule;
};

struct ConditionReport {
    Index budget = 0;
    std::array<ConditionOutcome, 3> outcomes;

    const ConditionOutcome& operator[](Condition c) const noexcept {
        return outcomes[static_cast<std::size_t>(c)];
    }
    /// Stronger weights dominate weaker ones term by term, so a decided
    /// verdict must never contradict that ordering.
    bool chain_consistent() const noexcept;
};

/// A grid is read as a finite expansion: entries beyond its dimensions are 0.
using CoefficientSource = std::variant<CoefficientGrid, DoubleSequence, SeparableCoefficients>;

/// Decides each condition from the weighted sums at budget and budget / 2:
/// `fails` if the full sum exceeds 1e12, `holds` if the relative growth
/// (full - half) / full is below 1% (or the sum is 0), else `undetermined`.
/// Verdicts are then propagated along the domination order: a stronger
/// condition that holds makes every weaker one hold, and a weaker condition
/// that fails makes every stronger one fail.
ConditionReport classify_conditions(const CoefficientSource& c, Index budget);

/// True iff |c| is non-increasing along both axes.
bool monotone_check(const CoefficientGrid& c);

}  // namespace summa
