#include "summa/cesaro.hpp"

#include <cmath>

#include "summa/compensated.hpp"
#include "summa/errors.hpp"

namespace summa {

namespace {

// Divides every cell of a summed-area table by its rectangle area.
Grid area_means(Grid sums) {
    for (Index m = 1; m <= sums.rows(); ++m) {
        auto row = sums.row(m);
        for (Index n = 1; n <= sums.cols(); ++n)
            row[n - 1] /= static_cast<double>(m) * static_cast<double>(n);
    }
    return sums;
}

}  // namespace

CesaroGrid cesaro_means(const PartialSumGrid& s) {
    if (s.values.empty()) throw InvalidDimension("Cesaro means of an empty grid");
    return CesaroGrid{area_means(summed_area(s.values))};
}

std::vector<double> single_cesaro_means(std::span<const double> s) {
    if (s.empty()) throw InvalidDimension("Cesaro means of an empty sequence");
    std::vector<double> out(s.size());
    CompensatedSum acc;
    for (Index m = 0; m < s.size(); ++m) {
        acc.add(s[m]);
        out[m] = acc.value() / static_cast<double>(m + 1);
    }
    return out;
}

std::vector<double> subsequence_means(std::span<const double> s, std::span<const Index> v) {
    if (v.empty()) throw InvalidSubsequence("empty index subsequence");
    std::vector<double> picked;
    picked.reserve(v.size());
    Index prev = 0;
    for (Index idx : v) {
        if (idx <= prev) throw InvalidSubsequence("subsequence indices must be strictly increasing and >= 1");
        if (idx > s.size()) throw InvalidSubsequence("subsequence index beyond the available partial sums");
        picked.push_back(s[idx - 1]);
        prev = idx;
    }
    return single_cesaro_means(picked);
}

std::string_view to_string(DeviationKind k) noexcept {
    return k == DeviationKind::vs_sigma ? "vs_sigma" : "vs_limit";
}

StrongCesaroSeries strong_deviation_vs_sigma(const PartialSumGrid& s, const CesaroGrid& sigma) {
    if (s.values.empty()) throw InvalidDimension("strong deviation of an empty grid");
    if (s.rows() != sigma.rows() || s.cols() != sigma.cols())
        throw InvalidDimension("partial-sum and Cesaro grids differ in shape");
    Grid sq(s.rows(), s.cols());
    const auto a = s.values.data();
    const auto b = sigma.sigma.data();
    auto out = sq.data();
    for (Index i = 0; i < out.size(); ++i) {
        const double d = a[i] - b[i];
        out[i] = d * d;
    }
    return {area_means(summed_area(sq)), DeviationKind::vs_sigma};
}

StrongCesaroSeries strong_deviation_vs_limit(const PartialSumGrid& s, double g_value) {
    if (s.values.empty()) throw InvalidDimension("strong deviation of an empty grid");
    Grid sq(s.rows(), s.cols());
    const auto a = s.values.data();
    auto out = sq.data();
    for (Index i = 0; i < out.size(); ++i) {
        const double d = a[i] - g_value;
        out[i] = d * d;
    }
    return {area_means(summed_area(sq)), DeviationKind::vs_limit};
}

CauchyBound cauchy_bound(std::span<const double> deviations) {
    if (deviations.empty()) throw InvalidDimension("Cauchy bound over no deviations");
    CompensatedSum abs_sum, sq_sum;
    for (double d : deviations) {
        abs_sum.add(std::abs(d));
        sq_sum.add(d * d);
    }
    const double count = static_cast<double>(deviations.size());
    CauchyBound r;
    r.lhs = abs_sum.value() / count;
    r.rhs = std::sqrt(sq_sum.value() / count);
    r.holds = r.lhs <= r.rhs + kCauchySlack;
    return r;
}

CauchyBound cauchy_bound_check(const PartialSumGrid& s, double g_value, Index M, Index N) {
    if (M == 0 || N == 0 || M > s.rows() || N > s.cols())
        throw IndexOutOfRange("Cauchy bound block exceeds the partial-sum grid");
    std::vector<double> dev;
    dev.reserve(M * N);
    for (Index m = 1; m <= M; ++m)
        for (Index n = 1; n <= N; ++n) dev.push_back(s(m, n) - g_value);
    return cauchy_bound(dev);
}

}  // namespace summa
