#include "summa/double_series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "summa/compensated.hpp"
#include "summa/errors.hpp"

namespace summa {

namespace {

std::string fmt_cell(Index m, Index n) {
    std::ostringstream os;
    os << '(' << m << ',' << n << ')';
    return os.str();
}

void require_budget(double epsilon, Index k_max) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (k_max < 2) throw InvalidDimension("k_max must be at least 2");
}

// First cell whose partial sum is non-finite or beyond the escape bound.
std::optional<std::pair<Index, Index>> find_escape(const Grid& sums, double bound) {
    for (Index m = 1; m <= sums.rows(); ++m) {
        const auto row = sums.row(m);
        for (Index n = 0; n < row.size(); ++n) {
            if (!std::isfinite(row[n]) || std::abs(row[n]) > bound) return std::pair{m, n + 1};
        }
    }
    return std::nullopt;
}

ConvergenceReport pringsheim_from_sums(const Grid& sums, double epsilon, double escape_bound) {
    const Index k_max = sums.rows();
    ConvergenceReport report;
    report.epsilon = epsilon;

    if (auto esc = find_escape(sums, escape_bound)) {
        report.status = ConvergenceStatus::diverged;
        report.cutoff_K = std::min(esc->first, esc->second);
        std::ostringstream os;
        os << "|S" << fmt_cell(esc->first, esc->second) << "| = " << sums(esc->first, esc->second)
           << " exceeds escape bound " << escape_bound;
        report.evidence = os.str();
        return report;
    }

    const double s = sums(k_max, k_max);
    // Largest min(m, n) over cells that miss the epsilon band around s.
    Index needed = 0;
    Index witness_m = 0, witness_n = 0;
    for (Index m = 1; m <= k_max; ++m) {
        const auto row = sums.row(m);
        for (Index n = 1; n <= k_max; ++n) {
            if (std::abs(row[n - 1] - s) >= epsilon) {
                const Index lo = std::min(m, n);
                if (lo > needed) {
                    needed = lo;
                    witness_m = m;
                    witness_n = n;
                }
            }
        }
    }

    std::ostringstream os;
    if (needed <= k_max / 2) {
        report.status = ConvergenceStatus::pringsheim;
        report.limit = s;
        report.cutoff_K = std::max<Index>(needed, 1);
        os << "|S(m,n) - S" << fmt_cell(k_max, k_max) << "| < " << epsilon << " for min(m,n) > "
           << report.cutoff_K;
        if (needed > 0) os << "; last miss at S" << fmt_cell(witness_m, witness_n);
    } else {
        report.status = ConvergenceStatus::undetermined;
        report.cutoff_K = k_max / 2;
        double lo = sums(k_max / 2 + 1, k_max / 2 + 1), hi = lo;
        for (Index m = k_max / 2 + 1; m <= k_max; ++m) {
            for (Index n = k_max / 2 + 1; n <= k_max; ++n) {
                lo = std::min(lo, sums(m, n));
                hi = std::max(hi, sums(m, n));
            }
        }
        os << "no stable window: miss at S" << fmt_cell(witness_m, witness_n)
           << "; oscillation amplitude " << (hi - lo) << " over min(m,n) > " << k_max / 2;
    }
    report.evidence = os.str();
    return report;
}

// Cauchy-tail test for one line of the term grid. `at(i)` returns the i-th
// term, 1-based. Returns an empty string on success, a failure note otherwise.
template <typename Term>
std::string line_tail_failure(Term at, Index k_max, double epsilon, double escape_bound) {
    std::vector<double> partial(k_max + 1, 0.0);
    CompensatedSum acc;
    for (Index i = 1; i <= k_max; ++i) {
        acc.add(at(i));
        partial[i] = acc.value();
        if (!std::isfinite(partial[i]) || std::abs(partial[i]) > escape_bound) {
            std::ostringstream os;
            os << "partial sum escapes bound at index " << i;
            return os.str();
        }
    }
    double worst = 0.0;
    for (Index p = k_max / 2; p <= k_max; ++p) worst = std::max(worst, std::abs(partial[p] - partial[k_max]));
    if (worst < epsilon) return {};
    std::ostringstream os;
    os << "tail oscillation " << worst << " >= " << epsilon;
    return os.str();
}

}  // namespace

DoubleSequence DoubleSequence::transposed() const {
    auto gen = gen_;
    return DoubleSequence([gen](Index j, Index k) { return gen(k, j); }, name_ + "^T");
}

Grid DoubleSequence::sample(Index rows, Index cols) const {
    Grid g(rows, cols);
    for (Index j = 1; j <= rows; ++j) {
        auto row = g.row(j);
        for (Index k = 1; k <= cols; ++k) row[k - 1] = gen_(j, k);
    }
    return g;
}

PartialSumGrid partial_sum_grid(const Grid& terms) {
    if (terms.rows() == 0 || terms.cols() == 0) throw InvalidDimension("partial sums need M, N >= 1");
    return PartialSumGrid{summed_area(terms)};
}

PartialSumGrid partial_sum_grid(const DoubleSequence& u, Index M, Index N) {
    if (M == 0 || N == 0) throw InvalidDimension("partial sums need M, N >= 1");
    return partial_sum_grid(u.sample(M, N));
}

std::string_view to_string(ConvergenceStatus s) noexcept {
    switch (s) {
        case ConvergenceStatus::pringsheim: return "pringsheim";
        case ConvergenceStatus::regular: return "regular";
        case ConvergenceStatus::absolute: return "absolute";
        case ConvergenceStatus::diverged: return "diverged";
        case ConvergenceStatus::undetermined: return "undetermined";
    }
    return "undetermined";
}

bool converges_pringsheim(const ConvergenceReport& r) noexcept {
    return r.status == ConvergenceStatus::pringsheim || converges_regularly(r);
}

bool converges_regularly(const ConvergenceReport& r) noexcept {
    return r.status == ConvergenceStatus::regular || r.status == ConvergenceStatus::absolute;
}

bool converges_absolutely(const ConvergenceReport& r) noexcept {
    return r.status == ConvergenceStatus::absolute;
}

ConvergenceReport detect_pringsheim(const DoubleSequence& u, double epsilon, Index k_max,
                                    double escape_bound) {
    require_budget(epsilon, k_max);
    const auto sums = partial_sum_grid(u, k_max, k_max);
    return pringsheim_from_sums(sums.values, epsilon, escape_bound);
}

ConvergenceReport detect_regular(const DoubleSequence& u, double epsilon, Index k_max,
                                 double escape_bound) {
    require_budget(epsilon, k_max);
    const Grid terms = u.sample(k_max, k_max);
    auto report = pringsheim_from_sums(summed_area(terms), epsilon, escape_bound);
    if (report.status != ConvergenceStatus::pringsheim) return report;

    // Row series: fixed k, summed over j. Column series: fixed j, summed over k.
    for (Index k = 1; k <= k_max; ++k) {
        auto why = line_tail_failure([&](Index j) { return terms(j, k); }, k_max, epsilon, escape_bound);
        if (!why.empty()) {
            report.evidence += "; row series k=" + std::to_string(k) + " fails: " + why;
            return report;
        }
    }
    for (Index j = 1; j <= k_max; ++j) {
        auto why = line_tail_failure([&](Index k) { return terms(j, k); }, k_max, epsilon, escape_bound);
        if (!why.empty()) {
            report.evidence += "; column series j=" + std::to_string(j) + " fails: " + why;
            return report;
        }
    }
    report.status = ConvergenceStatus::regular;
    report.evidence += "; all row and column series Cauchy-stable up to index " + std::to_string(k_max);
    return report;
}

ConvergenceReport detect_absolute(const DoubleSequence& u, Index budget, double bound,
                                  double epsilon) {
    if (budget == 0) throw InvalidDimension("budget must be at least 1");
    if (!(bound > 0.0)) throw DomainError("bound must be positive");
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");

    const Index half = budget / 2;
    CompensatedSum inner, outer, signed_sum;
    for (Index j = 1; j <= budget; ++j) {
        for (Index k = 1; k <= budget; ++k) {
            const double x = u(j, k);
            signed_sum.add(x);
            if (j <= half && k <= half)
                inner.add(std::abs(x));
            else
                outer.add(std::abs(x));
        }
    }
    const double a_half = inner.value();
    const double growth = outer.value();
    const double a_full = a_half + growth;

    ConvergenceReport report;
    report.epsilon = epsilon;
    report.cutoff_K = std::max<Index>(half, 1);
    std::ostringstream os;
    os << "sum|u| over " << half << "^2 = " << a_half << ", over " << budget << "^2 = " << a_full;
    if (!std::isfinite(a_full) || a_full > bound) {
        report.status = ConvergenceStatus::diverged;
        os << "; exceeds bound " << bound;
    } else if (growth < epsilon) {
        report.status = ConvergenceStatus::absolute;
        report.limit = signed_sum.value();
        os << "; tail-doubling growth " << growth << " < " << epsilon;
    } else {
        report.status = ConvergenceStatus::undetermined;
        os << "; tail-doubling growth " << growth << " >= " << epsilon;
    }
    report.evidence = os.str();
    return report;
}

}  // namespace summa
