#include "summa/conditions.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "summa/compensated.hpp"
#include "summa/errors.hpp"

namespace summa {

namespace {

std::vector<double> weights(WeightKind kind, Index count) {
    std::vector<double> w(count);
    for (Index j = 1; j <= count; ++j) w[j - 1] = weight(kind, j);
    return w;
}

template <typename Coeff>
double weighted_sum_generic(const Coeff& c, WeightKind w_row, WeightKind w_col, Index rows, Index cols) {
    const auto wr = weights(w_row, rows);
    const auto wc = weights(w_col, cols);
    CompensatedSum acc;
    for (Index j = 1; j <= rows; ++j) {
        CompensatedSum row;
        for (Index k = 1; k <= cols; ++k) {
            const double v = c(j, k);
            row.add(v * v * wc[k - 1]);
        }
        acc.add(row.value() * wr[j - 1]);
    }
    return acc.value();
}

double axis_sum(const std::function<double(Index)>& f, WeightKind kind, Index count) {
    CompensatedSum acc;
    for (Index j = 1; j <= count; ++j) {
        const double v = f(j);
        acc.add(v * v * weight(kind, j));
    }
    return acc.value();
}

std::pair<double, double> sums_at(const CoefficientSource& src, WeightKind w, Index half, Index full) {
    return std::visit(
        [&](const auto& c) -> std::pair<double, double> {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, CoefficientGrid>) {
                const auto clip = [&](Index n, Index dim) { return std::min(n, dim); };
                return {weighted_square_sum(c, w, w, clip(half, c.rows()), clip(half, c.cols())),
                        weighted_square_sum(c, w, w, clip(full, c.rows()), clip(full, c.cols()))};
            } else {
                return {weighted_square_sum(c, w, w, half, half), weighted_square_sum(c, w, w, full, full)};
            }
        },
        src);
}

}  // namespace

std::string_view to_string(WeightKind w) noexcept {
    switch (w) {
        case WeightKind::unit: return "unit";
        case WeightKind::log_squared: return "log_squared";
        case WeightKind::loglog_squared: return "loglog_squared";
    }
    return "unit";
}

double weight(WeightKind kind, Index j) {
    const auto x = static_cast<double>(j);
    switch (kind) {
        case WeightKind::unit: return 1.0;
        case WeightKind::log_squared: {
            const double l = std::log2(x + 1.0);
            return l * l;
        }
        case WeightKind::loglog_squared: {
            const double l = std::log2(std::log2(x + 3.0));
            return l * l;
        }
    }
    return 1.0;
}

double weighted_square_sum(const CoefficientGrid& c, WeightKind w_row, WeightKind w_col, Index rows,
                           Index cols) {
    if (rows > c.rows() || cols > c.cols()) throw IndexOutOfRange("prefix exceeds the coefficient grid");
    return weighted_sum_generic(c, w_row, w_col, rows, cols);
}

double weighted_square_sum(const DoubleSequence& c, WeightKind w_row, WeightKind w_col, Index rows,
                           Index cols) {
    return weighted_sum_generic(c, w_row, w_col, rows, cols);
}

double weighted_square_sum(const SeparableCoefficients& c, WeightKind w_row, WeightKind w_col, Index rows,
                           Index cols) {
    return axis_sum(c.row, w_row, rows) * axis_sum(c.col, w_col, cols);
}

double single_weighted_square_sum(std::span<const double> c, WeightKind w, Index prefix) {
    if (prefix > c.size()) throw IndexOutOfRange("prefix exceeds the coefficient sequence");
    CompensatedSum acc;
    for (Index j = 1; j <= prefix; ++j) acc.add(c[j - 1] * c[j - 1] * weight(w, j));
    return acc.value();
}

std::string_view to_string(Condition c) noexcept {
    switch (c) {
        case Condition::square_summable: return "square_summable";
        case Condition::menshov_kaczmarz: return "menshov_kaczmarz";
        case Condition::rademacher_menshov: return "rademacher_menshov";
    }
    return "square_summable";
}

WeightKind weight_of(Condition c) noexcept {
    switch (c) {
        case Condition::square_summable: return WeightKind::unit;
        case Condition::menshov_kaczmarz: return WeightKind::loglog_squared;
        case Condition::rademacher_menshov: return WeightKind::log_squared;
    }
    return WeightKind::unit;
}

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::undetermined: return "undetermined";
    }
    return "undetermined";
}

bool ConditionReport::chain_consistent() const noexcept {
    // outcomes are ordered weakest to strongest.
    for (std::size_t weak = 0; weak < outcomes.size(); ++weak) {
        for (std::size_t strong = weak + 1; strong < outcomes.size(); ++strong) {
            if (outcomes[strong].verdict == Verdict::holds && outcomes[weak].verdict != Verdict::holds)
                return false;
            if (outcomes[weak].verdict == Verdict::fails && outcomes[strong].verdict != Verdict::fails)
                return false;
        }
    }
    return true;
}

ConditionReport classify_conditions(const CoefficientSource& c, Index budget) {
    if (budget < 16) throw InvalidDimension("condition budget must be at least 16");
    ConditionReport report;
    report.budget = budget;
    const Index half = budget / 2;

    for (std::size_t i = 0; i < kAllConditions.size(); ++i) {
        auto& out = report.outcomes[i];
        out.condition = kAllConditions[i];
        const auto [h, f] = sums_at(c, weight_of(out.condition), half, budget);
        out.half_sum = h;
        out.full_sum = f;
        std::ostringstream os;
        if (!std::isfinite(f) || f > kConditionEscape) {
            out.verdict = Verdict::fails;
            os << "escape: sum exceeds " << kConditionEscape;
        } else if (f == 0.0 || (f - h) / f < kStabilityGrowth) {
            out.verdict = Verdict::holds;
            os << "tail-doubling: relative growth " << (f == 0.0 ? 0.0 : (f - h) / f) << " < "
               << kStabilityGrowth;
        } else {
            out.verdict = Verdict::undetermined;
            os << "tail-doubling: relative growth " << (f - h) / f << " >= " << kStabilityGrowth;
        }
        out.rule = os.str();
    }

    // Domination: weight(unit) <= weight(loglog) <= weight(log) pointwise.
    for (std::size_t strong = report.outcomes.size(); strong-- > 0;) {
        if (report.outcomes[strong].verdict != Verdict::holds) continue;
        for (std::size_t weak = 0; weak < strong; ++weak) {
            auto& w = report.outcomes[weak];
            if (w.verdict != Verdict::holds) {
                w.verdict = Verdict::holds;
                w.rule = "comparison: dominated by " + std::string(to_string(report.outcomes[strong].condition));
            }
        }
    }
    for (std::size_t weak = 0; weak < report.outcomes.size(); ++weak) {
        if (report.outcomes[weak].verdict != Verdict::fails) continue;
        for (std::size_t strong = weak + 1; strong < report.outcomes.size(); ++strong) {
            auto& s = report.outcomes[strong];
            if (s.verdict != Verdict::fails) {
                s.verdict = Verdict::fails;
                s.rule = "comparison: dominates " + std::string(to_string(report.outcomes[weak].condition));
            }
        }
    }
    return report;
}

bool monotone_check(const CoefficientGrid& c) {
    for (Index j = 1; j <= c.rows(); ++j) {
        for (Index k = 1; k <= c.cols(); ++k) {
            const double here = std::abs(c(j, k));
            if (j < c.rows() && std::abs(c(j + 1, k)) > here) return false;
            if (k < c.cols() && std::abs(c(j, k + 1)) > here) return false;
        }
    }
    return true;
}

}  // namespace summa
