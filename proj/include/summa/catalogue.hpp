#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "summa/conditions.hpp"
#include "summa/double_series.hpp"
#include "summa/haar.hpp"
#include "summa/kronecker.hpp"

namespace summa {

/// Named double sequences used by experiments and tests:
///   zero                 u = 0
///   single_atom          u(1,1) = 1, else 0
///   geometric            2^-(j+k)
///   alternating          (-1)^(j+k)
///   alternating_harmonic (-1)^(j+k) / (jk)
///   alternating_square   (-1)^(j+k) / (j^2 k^2)
///   row_counterexample   u(1,k) = 1, u(2,k) = -1, else 0
///   product              jk
DoubleSequence named_sequence(std::string_view id);
std::vector<std::string> sequence_ids();

/// Named weights: product (jk), sum (j+k), max (max(j,k)).
WeightGrid named_weight(std::string_view id);
std::vector<std::string> weight_ids();

struct ModelParams {
    double ratio = 0.5;     ///< geometric: c = ratio^(j+k)
    double exponent = 1.0;  ///< inverse-product: c = (jk)^-exponent
};

/// Separable coefficient models:
///   geometric         ratio^j * ratio^k
///   inverse-product   (jk)^-exponent
///   inverse-sqrt-log  1 / (sqrt(jk) log2(j+1) log2(k+1))
SeparableCoefficients coefficient_model(std::string_view id, const ModelParams& params = {});
std::vector<std::string> model_ids();

/// Materialises a separable model on {1..J} x {1..K}.
CoefficientGrid materialize(const SeparableCoefficients& model, Index J, Index K);

}  // namespace summa
