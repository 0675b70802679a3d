#include "summa/haar.hpp"

#include <bit>
#include <cmath>
#include <memory>
#include <sstream>

#include "summa/compensated.hpp"
#include "summa/errors.hpp"

namespace summa {

namespace {

void require_unit_interval(double x) {
    if (!(x >= 0.0 && x < 1.0)) {
        std::ostringstream os;
        os << "point " << x << " outside [0, 1)";
        throw DomainError(os.str());
    }
}

// 2^(p/2), exact for even p.
double haar_height(unsigned p) {
    return std::ldexp((p % 2 == 0) ? 1.0 : std::sqrt(2.0), static_cast<int>(p / 2));
}

double haar_value_unchecked(const HaarIndex& h, double x) {
    if (h.is_constant()) return 1.0;
    const unsigned p = h.scale();
    const double t = std::ldexp(x, static_cast<int>(p));  // exact
    const double cell = std::floor(t);
    if (cell != static_cast<double>(h.translation())) return 0.0;
    return (t - cell < 0.5) ? haar_height(p) : -haar_height(p);
}

// h_j evaluated at every cell midpoint: table[a * count + (j - 1)].
std::vector<double> midpoint_table(Index count, Index resolution) {
    std::vector<double> table(resolution * count);
    for (Index j = 1; j <= count; ++j) {
        const auto h = HaarIndex::from_linear(j);
        for (Index a = 0; a < resolution; ++a)
            table[a * count + (j - 1)] = haar_value_unchecked(h, DyadicStepFunction::midpoint(a, resolution));
    }
    return table;
}

std::vector<double> point_values(Index count, double x) {
    std::vector<double> h(count);
    for (Index j = 1; j <= count; ++j) h[j - 1] = haar_value_unchecked(HaarIndex::from_linear(j), x);
    return h;
}

void require_resolution(Index resolution, Index J, Index K) {
    if (!is_power_of_two(resolution)) throw ResolutionError("resolution must be a power of two");
    const Index need = std::max(required_resolution(J), required_resolution(K));
    if (resolution < need) {
        std::ostringstream os;
        os << "resolution " << resolution << " too coarse for indices up to (" << J << ',' << K
           << "); need at least " << need;
        throw ResolutionError(os.str());
    }
}

}  // namespace

HaarIndex HaarIndex::from_linear(Index j) {
    if (j == 0) throw IndexOutOfRange("Haar indices start at 1");
    if (j == 1) return {1, 0, 0};
    const Index r = j - 1;
    const auto p = static_cast<unsigned>(std::bit_width(r) - 1);
    return {j, p, r - (Index{1} << p)};
}

HaarIndex HaarIndex::from_scale_translation(unsigned scale, Index translation) {
    if (scale >= 63) throw IndexOutOfRange("Haar scale too large");
    const Index width = Index{1} << scale;
    if (translation >= width) throw IndexOutOfRange("Haar translation must be below 2^scale");
    return {width + translation + 1, scale, translation};
}

double haar_1d(HaarIndex j, double x) {
    require_unit_interval(x);
    return haar_value_unchecked(j, x);
}

double psi(HaarIndex j, HaarIndex k, double x1, double x2) {
    require_unit_interval(x1);
    require_unit_interval(x2);
    return haar_value_unchecked(j, x1) * haar_value_unchecked(k, x2);
}

bool is_power_of_two(Index n) noexcept { return std::has_single_bit(n); }

Index required_resolution(Index J) {
    if (J <= 1) return 1;
    return Index{2} << HaarIndex::from_linear(J).scale();
}

DyadicStepFunction::DyadicStepFunction(Index resolution, std::vector<double> cell_values)
    : resolution_(resolution), values_(std::move(cell_values)) {
    if (!is_power_of_two(resolution_)) throw ResolutionError("resolution must be a power of two");
    if (values_.size() != resolution_ * resolution_)
        throw InvalidDimension("step function needs resolution^2 cell values");
}

DyadicStepFunction DyadicStepFunction::from_midpoints(Index resolution,
                                                     const std::function<double(double, double)>& f) {
    if (!is_power_of_two(resolution)) throw ResolutionError("resolution must be a power of two");
    std::vector<double> v(resolution * resolution);
    for (Index a = 0; a < resolution; ++a)
        for (Index b = 0; b < resolution; ++b) v[a * resolution + b] = f(midpoint(a, resolution), midpoint(b, resolution));
    return DyadicStepFunction(resolution, std::move(v));
}

double DyadicStepFunction::evaluate(double x1, double x2) const {
    require_unit_interval(x1);
    require_unit_interval(x2);
    const auto R = static_cast<double>(resolution_);
    const auto a = static_cast<Index>(std::floor(x1 * R));
    const auto b = static_cast<Index>(std::floor(x2 * R));
    return cell(a, b);
}

double DyadicStepFunction::integral() const {
    return compensated_sum(values_) / static_cast<double>(values_.size());
}

double DyadicStepFunction::integral_of_square() const {
    CompensatedSum acc;
    for (double v : values_) acc.add(v * v);
    return acc.value() / static_cast<double>(values_.size());
}

CoefficientGrid analyze(const DyadicStepFunction& f, Index J, Index K) {
    if (J == 0 || K == 0) throw InvalidDimension("coefficient grid needs J, K >= 1");
    const Index R = f.resolution();
    require_resolution(R, J, K);

    const auto h1 = midpoint_table(J, R);
    const auto h2 = midpoint_table(K, R);

    // partial[j][b] = sum_a h_j(mid_a) f(a, b)
    std::vector<double> partial(J * R, 0.0);
    for (Index a = 0; a < R; ++a) {
        for (Index j = 0; j < J; ++j) {
            const double hv = h1[a * J + j];
            if (hv == 0.0) continue;
            for (Index b = 0; b < R; ++b) partial[j * R + b] += hv * f.cell(a, b);
        }
    }

    const double area = 1.0 / (static_cast<double>(R) * static_cast<double>(R));
    CoefficientGrid out{Grid(J, K)};
    for (Index j = 0; j < J; ++j) {
        for (Index k = 0; k < K; ++k) {
            double acc = 0.0;
            for (Index b = 0; b < R; ++b) acc += partial[j * R + b] * h2[b * K + k];
            out(j + 1, k + 1) = acc * area;
        }
    }
    return out;
}

double synthesize_partial(const CoefficientGrid& c, Index m, Index n, double x1, double x2) {
    if (m == 0 || n == 0 || m > c.rows() || n > c.cols())
        throw IndexOutOfRange("partial sum index outside the coefficient grid");
    require_unit_interval(x1);
    require_unit_interval(x2);
    const auto h1 = point_values(m, x1);
    const auto h2 = point_values(n, x2);
    double total = 0.0;
    for (Index j = 1; j <= m; ++j) {
        if (h1[j - 1] == 0.0) continue;
        double row = 0.0;
        for (Index k = 1; k <= n; ++k) row += c(j, k) * h2[k - 1];
        total += h1[j - 1] * row;
    }
    return total;
}

DyadicStepFunction synthesize(const CoefficientGrid& c, Index resolution) {
    require_resolution(resolution, c.rows(), c.cols());
    const Index J = c.rows(), K = c.cols(), R = resolution;
    const auto h1 = midpoint_table(J, R);
    const auto h2 = midpoint_table(K, R);
    std::vector<double> cells(R * R, 0.0);
    std::vector<double> inner(J);
    for (Index b = 0; b < R; ++b) {
        for (Index j = 0; j < J; ++j) {
            double acc = 0.0;
            for (Index k = 0; k < K; ++k) acc += c(j + 1, k + 1) * h2[b * K + k];
            inner[j] = acc;
        }
        for (Index a = 0; a < R; ++a) {
            double acc = 0.0;
            for (Index j = 0; j < J; ++j) acc += h1[a * J + j] * inner[j];
            cells[a * R + b] = acc;
        }
    }
    return DyadicStepFunction(R, std::move(cells));
}

DoubleSequence terms_at(const CoefficientGrid& c, double x1, double x2) {
    require_unit_interval(x1);
    require_unit_interval(x2);
    auto coeffs = std::make_shared<const Grid>(c.c);
    auto h1 = std::make_shared<const std::vector<double>>(point_values(c.rows(), x1));
    auto h2 = std::make_shared<const std::vector<double>>(point_values(c.cols(), x2));
    return DoubleSequence(
        [coeffs, h1, h2](Index j, Index k) {
            if (j > coeffs->rows() || k > coeffs->cols()) return 0.0;
            return (*coeffs)(j, k) * (*h1)[j - 1] * (*h2)[k - 1];
        },
        "haar_terms");
}

PartialSumGrid partial_sums_at(const CoefficientGrid& c, double x1, double x2, Index M, Index N) {
    if (M == 0 || N == 0) throw InvalidDimension("partial sums need M, N >= 1");
    require_unit_interval(x1);
    require_unit_interval(x2);
    const Index J = std::min(M, c.rows()), K = std::min(N, c.cols());
    const auto h1 = point_values(J, x1);
    const auto h2 = point_values(K, x2);
    Grid terms(M, N);
    for (Index j = 1; j <= J; ++j) {
        auto row = terms.row(j);
        for (Index k = 1; k <= K; ++k) row[k - 1] = c(j, k) * h1[j - 1] * h2[k - 1];
    }
    return partial_sum_grid(terms);
}

std::pair<Index, Index> tensor_index(Index a) {
    auto s = static_cast<Index>(std::sqrt(static_cast<double>(a)));
    while (s * s > a) --s;
    while ((s + 1) * (s + 1) <= a) ++s;
    // Shell s + 1 holds the pairs with max(j, k) = s + 1.
    const Index shell = s + 1;
    const Index r = a - s * s;
    if (r < shell - 1) return {r + 1, shell};
    return {shell, r - (shell - 1) + 1};
}

Grid gram_matrix(Index n_functions, Index resolution) {
    if (n_functions == 0) throw InvalidDimension("gram matrix needs at least one function");
    Index J = 1, K = 1;
    std::vector<std::pair<Index, Index>> idx(n_functions);
    for (Index a = 0; a < n_functions; ++a) {
        idx[a] = tensor_index(a);
        J = std::max(J, idx[a].first);
        K = std::max(K, idx[a].second);
    }
    require_resolution(resolution, J, K);

    const Index R = resolution;
    const auto h1 = midpoint_table(J, R);
    const auto h2 = midpoint_table(K, R);
    std::vector<std::vector<double>> cells(n_functions, std::vector<double>(R * R));
    for (Index a = 0; a < n_functions; ++a) {
        const auto [j, k] = idx[a];
        for (Index x = 0; x < R; ++x)
            for (Index y = 0; y < R; ++y) cells[a][x * R + y] = h1[x * J + (j - 1)] * h2[y * K + (k - 1)];
    }

    const double area = 1.0 / (static_cast<double>(R) * static_cast<double>(R));
    Grid G(n_functions, n_functions);
    for (Index a = 0; a < n_functions; ++a) {
        for (Index b = a; b < n_functions; ++b) {
            CompensatedSum acc;
            for (Index i = 0; i < R * R; ++i) acc.add(cells[a][i] * cells[b][i]);
            G(a + 1, b + 1) = acc.value() * area;
            G(b + 1, a + 1) = G(a + 1, b + 1);
        }
    }
    return G;
}

}  // namespace summa
