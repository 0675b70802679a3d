#include "summa/kronecker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "summa/compensated.hpp"

namespace summa {

namespace {

Grid sample_weights(const WeightGrid& lambda, Index rows, Index cols) {
    Grid w(rows, cols);
    for (Index j = 1; j <= rows; ++j) {
        auto row = w.row(j);
        for (Index k = 1; k <= cols; ++k) {
            const double v = lambda(j, k);
            if (!(v > 0.0) || !std::isfinite(v)) {
                std::ostringstream os;
                os << "weight lambda(" << j << ',' << k << ") = " << v << " is not a positive finite number";
                throw InvalidWeight(os.str());
            }
            row[k - 1] = v;
        }
    }
    return w;
}

void note_failure(Admissibility& a, const char* flag, Index j, Index k, double diff) {
    if (!a.first_failure.empty()) return;
    std::ostringstream os;
    os << flag << " fails at (" << j << ',' << k << "): difference " << diff;
    a.first_failure = os.str();
}

// Difference conditions on a sampled weight block.
Admissibility differences(const Grid& w) {
    Admissibility a;
    const Index R = w.rows(), C = w.cols();
    for (Index j = 1; j <= R; ++j) {
        for (Index k = 1; k <= C; ++k) {
            if (j < R) {
                const double d10 = w(j + 1, k) - w(j, k);
                if (d10 < 0.0 && a.d10_ok) {
                    a.d10_ok = false;
                    note_failure(a, "d10", j, k, d10);
                }
            }
            if (k < C) {
                const double d01 = w(j, k + 1) - w(j, k);
                if (d01 < 0.0 && a.d01_ok) {
                    a.d01_ok = false;
                    note_failure(a, "d01", j, k, d01);
                }
            }
            if (j < R && k < C) {
                const double d11 = w(j + 1, k + 1) - w(j + 1, k) - w(j, k + 1) + w(j, k);
                if (d11 < 0.0 && a.d11_ok) {
                    a.d11_ok = false;
                    note_failure(a, "d11", j, k, d11);
                }
            }
        }
    }
    return a;
}

}  // namespace

std::string_view to_string(DivergenceMode m) noexcept {
    return m == DivergenceMode::max_index ? "max" : "min";
}

Admissibility check_weight_monotonicity(const WeightGrid& lambda, Index range, DivergenceMode mode) {
    if (range < 2) throw InvalidDimension("weight check needs range >= 2");
    const Grid w = sample_weights(lambda, range, range);
    Admissibility a = differences(w);
    a.range = range;
    const double base = w(1, 1);
    a.diverges_ok = w(range, range) > base;
    if (mode == DivergenceMode::max_index)
        a.diverges_ok = a.diverges_ok && w(range, 1) > base && w(1, range) > base;
    if (!a.diverges_ok && a.first_failure.empty())
        a.first_failure = "weights show no growth toward index " + std::to_string(range);
    return a;
}

double kronecker_average(const DoubleSequence& u, const WeightGrid& lambda, Index m, Index n) {
    if (m == 0 || n == 0) throw InvalidDimension("Kronecker average needs m, n >= 1");
    const Grid w = sample_weights(lambda, m, n);
    const Admissibility a = differences(w);
    if (!a.d10_ok) throw InadmissibleWeight("d10", a.first_failure);
    if (!a.d01_ok) throw InadmissibleWeight("d01", a.first_failure);
    if (!a.d11_ok) throw InadmissibleWeight("d11", a.first_failure);

    CompensatedSum acc;
    for (Index j = 1; j <= m; ++j)
        for (Index k = 1; k <= n; ++k) acc.add(u(j, k));
    return acc.value() / w(m, n);
}

double kronecker_single(std::span<const double> u, std::span<const double> lambda, Index m) {
    if (m == 0) throw InvalidDimension("Kronecker average needs m >= 1");
    if (m > u.size() || m > lambda.size()) throw IndexOutOfRange("m exceeds the supplied sequences");
    CompensatedSum acc;
    for (Index j = 0; j < m; ++j) {
        if (!(lambda[j] > 0.0)) throw InvalidWeight("weights must be positive");
        if (j > 0 && lambda[j] < lambda[j - 1])
            throw InvalidWeight("weights must be non-decreasing (drop at index " + std::to_string(j + 1) + ")");
        acc.add(u[j]);
    }
    return acc.value() / lambda[m - 1];
}

DecayReport verify_kronecker_decay(const DoubleSequence& u, const WeightGrid& lambda,
                                   std::span<const std::pair<Index, Index>> stages, double epsilon,
                                   DivergenceMode mode) {
    if (stages.empty()) throw InvalidDimension("no stages given");
    Index budget = 2;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto [m, n] = stages[i];
        if (m == 0 || n == 0) throw InvalidDimension("stage sizes must be positive");
        if (i > 0) {
            const auto [pm, pn] = stages[i - 1];
            if (m < pm || n < pn || (m == pm && n == pn))
                throw InvalidDimension("stages must be strictly increasing");
        }
        budget = std::max({budget, m, n});
    }

    DecayReport report;
    report.admissibility = check_weight_monotonicity(lambda, budget, mode);
    if (!report.admissibility.admissible())
        throw InadmissibleWeight(!report.admissibility.d10_ok   ? "d10"
                                 : !report.admissibility.d01_ok ? "d01"
                                 : !report.admissibility.d11_ok ? "d11"
                                                                : "diverges",
                                 report.admissibility.first_failure);

    const DoubleSequence scaled([u, lambda](Index j, Index k) { return u(j, k) / lambda(j, k); },
                                u.name() + "/" + lambda.name());
    report.hypothesis = detect_regular(scaled, epsilon, budget);
    report.hypothesis_met = converges_regularly(report.hypothesis);

    for (const auto& [m, n] : stages) report.stages.push_back({m, n, kronecker_average(u, lambda, m, n)});

    report.monotone_trend = true;
    report.strictly_decreasing = true;
    for (std::size_t i = 1; i < report.stages.size(); ++i) {
        const double prev = std::abs(report.stages[i - 1].average);
        const double cur = std::abs(report.stages[i].average);
        if (cur > (1.0 + kDecaySlack) * prev) report.monotone_trend = false;
        if (!(cur < prev)) report.strictly_decreasing = false;
    }
    return report;
}

}  // namespace summa
