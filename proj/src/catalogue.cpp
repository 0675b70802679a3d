#include "summa/catalogue.hpp"

#include <algorithm>
#include <cmath>

#include "summa/errors.hpp"

namespace summa {

namespace {

double sign(Index j, Index k) { return ((j + k) % 2 == 0) ? 1.0 : -1.0; }

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
    return out;
}

}  // namespace

DoubleSequence named_sequence(std::string_view id) {
    using S = DoubleSequence;
    const std::string name(id);
    if (id == "zero") return S([](Index, Index) { return 0.0; }, name);
    if (id == "single_atom") return S([](Index j, Index k) { return (j == 1 && k == 1) ? 1.0 : 0.0; }, name);
    if (id == "geometric")
        return S([](Index j, Index k) { return std::ldexp(1.0, -static_cast<int>(j + k)); }, name);
    if (id == "alternating") return S([](Index j, Index k) { return sign(j, k); }, name);
    if (id == "alternating_harmonic")
        return S([](Index j, Index k) { return sign(j, k) / (static_cast<double>(j) * static_cast<double>(k)); },
                 name);
    if (id == "alternating_square")
        return S(
            [](Index j, Index k) {
                const double jk = static_cast<double>(j) * static_cast<double>(k);
                return sign(j, k) / (jk * jk);
            },
            name);
    if (id == "row_counterexample")
        return S([](Index j, Index) { return j == 1 ? 1.0 : (j == 2 ? -1.0 : 0.0); }, name);
    if (id == "product")
        return S([](Index j, Index k) { return static_cast<double>(j) * static_cast<double>(k); }, name);
    throw ConfigError("unknown sequence '" + name + "' (known: " + join(sequence_ids()) + ")");
}

std::vector<std::string> sequence_ids() {
    return {"zero",       "single_atom", "geometric", "alternating", "alternating_harmonic", "alternating_square",
            "row_counterexample", "product"};
}

WeightGrid named_weight(std::string_view id) {
    const std::string name(id);
    if (id == "product")
        return WeightGrid([](Index j, Index k) { return static_cast<double>(j) * static_cast<double>(k); }, name);
    if (id == "sum") return WeightGrid([](Index j, Index k) { return static_cast<double>(j + k); }, name);
    if (id == "max") return WeightGrid([](Index j, Index k) { return static_cast<double>(std::max(j, k)); }, name);
    throw ConfigError("unknown weight '" + name + "' (known: " + join(weight_ids()) + ")");
}

std::vector<std::string> weight_ids() { return {"product", "sum", "max"}; }

SeparableCoefficients coefficient_model(std::string_view id, const ModelParams& params) {
    const std::string name(id);
    if (id == "geometric") {
        if (!(params.ratio > 0.0 && params.ratio < 1.0)) throw ConfigError("geometric ratio must lie in (0, 1)");
        auto f = [r = params.ratio](Index j) { return std::pow(r, static_cast<double>(j)); };
        return {f, f, name};
    }
    if (id == "inverse-product") {
        if (!(params.exponent > 0.0)) throw ConfigError("inverse-product exponent must be positive");
        auto f = [a = params.exponent](Index j) { return std::pow(static_cast<double>(j), -a); };
        return {f, f, name};
    }
    if (id == "inverse-sqrt-log") {
        auto f = [](Index j) {
            const auto x = static_cast<double>(j);
            return 1.0 / (std::sqrt(x) * std::log2(x + 1.0));
        };
        return {f, f, name};
    }
    throw ConfigError("unknown coefficient model '" + name + "' (known: " + join(model_ids()) + ")");
}

std::vector<std::string> model_ids() { return {"geometric", "inverse-product", "inverse-sqrt-log"}; }

CoefficientGrid materialize(const SeparableCoefficients& model, Index J, Index K) {
    CoefficientGrid c{Grid(J, K)};
    for (Index j = 1; j <= J; ++j)
        for (Index k = 1; k <= K; ++k) c(j, k) = model(j, k);
    return c;
}

}  // namespace summa
