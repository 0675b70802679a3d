#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "summa/double_series.hpp"
#include "summa/errors.hpp"
#include "summa/grid.hpp"

namespace summa {

/// How the weights are required to blow up: along every ray where
/// max(m, n) grows, or only where min(m, n) grows.
enum class DivergenceMode { max_index, min_index };

std::string_view to_string(DivergenceMode m) noexcept;

/// Positive weights lambda(j, k) for the double Kronecker average.
class WeightGrid {
public:
    using Generator = std::function<double(Index, Index)>;

    WeightGrid() = default;
    explicit WeightGrid(Generator gen, std::string name = {})
        : gen_(std::move(gen)), name_(std::move(name)) {}

    double operator()(Index j, Index k) const { return gen_(j, k); }
    const std::string& name() const noexcept { return name_; }

private:
    Generator gen_;
    std::string name_;
};

/// Result of checking the monotonicity conditions on a finite index range:
/// first differences in j and in k, and the mixed second difference, all
/// non-negative, plus a growth proxy for divergence.
struct Admissibility {
    bool d10_ok = true;
    bool d01_ok = true;
    bool d11_ok = true;
    bool diverges_ok = true;
    Index range = 0;
    std::string first_failure;

    bool admissible() const noexcept { return d10_ok && d01_ok && d11_ok && diverges_ok; }
};

/// Thrown when an average is requested with weights that break the
/// monotonicity conditions. `flag()` names the condition that failed.
class InadmissibleWeight : public InvalidWeight {
public:
    InadmissibleWeight(std::string flag, const std::string& what)
        : InvalidWeight(what), flag_(std::move(flag)) {}
    const std::string& flag() const noexcept { return flag_; }
    const char* kind() const noexcept override { return "inadmissible_weight"; }

private:
    std::string flag_;
};

/// Checks all difference conditions for indices in {1..range}^2 (differences
/// that would step outside the square are skipped). The divergence proxy is
/// lambda(R,R) > lambda(1,1) in min mode; in max mode it also requires growth
/// along both axes, lambda(R,1) > lambda(1,1) and lambda(1,R) > lambda(1,1).
/// Throws InvalidWeight on a non-positive weight.
Admissibility check_weight_monotonicity(const WeightGrid& lambda, Index range,
                                        DivergenceMode mode = DivergenceMode::max_index);

/// (1 / lambda(m,n)) * sum_{j<=m} sum_{k<=n} u(j, k). Weights are validated on
/// {1..m} x {1..n} first.
double kronecker_average(const DoubleSequence& u, const WeightGrid& lambda, Index m, Index n);

/// (1 / lambda_m) * sum_{j<=m} u_j with lambda positive and non-decreasing.
double kronecker_single(std::span<const double> u, std::span<const double> lambda, Index m);

struct DecayStage {
    Index m = 0;
    Index n = 0;
    double average = 0.0;
};

inline constexpr double kDecaySlack = 0.10;

struct DecayReport {
    bool hypothesis_met = false;
    ConvergenceReport hypothesis;  ///< regular-convergence test of u / lambda
    Admissibility admissibility;
    std::vector<DecayStage> stages;
    bool monotone_trend = false;       ///< |a_{i+1}| <= (1 + slack) |a_i| at every step
    bool strictly_decreasing = false;  ///< |a_{i+1}| < |a_i| at every step
};

/// Tests regular convergence of u / lambda within the largest stage and, when
/// it holds, evaluates the Kronecker average at each stage.
DecayReport verify_kronecker_decay(const DoubleSequence& u, const WeightGrid& lambda,
                                   std::span<const std::pair<Index, Index>> stages,
                                   double epsilon = kDefaultEpsilon,
                                   DivergenceMode mode = DivergenceMode::max_index);

}  // namespace summa
