#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "summa/cesaro.hpp"
#include "summa/conditions.hpp"
#include "summa/double_series.hpp"
#include "summa/haar.hpp"
#include "summa/kronecker.hpp"

namespace summa {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form; '.' separator regardless of locale.
std::string format_double(double x);

/// {status, limit, epsilon, cutoff_K, evidence}; limit is null when absent.
Json to_json(const ConvergenceReport& r);
Json to_json(const Admissibility& a);
Json to_json(const DecayReport& r);
Json to_json(const ConditionReport& r);

/// Rows "M,N,T" with a header line.
std::string to_csv(const StrongCesaroSeries& t);
/// Rows "stage_m,stage_n,average".
std::string to_csv(const DecayReport& r);

/// Coefficients as "j,k,c" rows, every entry of the grid, row-major.
std::string coefficients_to_csv(const CoefficientGrid& c);
/// {J, K, resolution}
Json coefficient_header(const CoefficientGrid& c, Index resolution);
/// Inverse of the two functions above. Entries absent from the CSV are 0;
/// indices outside the header dimensions or repeated indices are errors.
CoefficientGrid coefficients_from_csv(std::string_view csv, const Json& header);

void write_coefficients(const CoefficientGrid& c, Index resolution, const std::filesystem::path& csv_path,
                        const std::filesystem::path& header_path);
CoefficientGrid read_coefficients(const std::filesystem::path& csv_path, const std::filesystem::path& header_path);

}  // namespace summa
