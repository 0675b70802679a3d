#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "summa/grid.hpp"
#include "summa/kronecker.hpp"
#include "summa/serialize.hpp"

namespace summa {

enum class Scenario { expand, cesaro_theorem1, cesaro_theorem2, kronecker, conditions, pringsheim };

std::string_view to_string(Scenario s) noexcept;

/// Where the numbers come from. A builtin function is sampled on the dyadic
/// grid and analysed; a model gives the coefficients directly; a sequence is
/// a named double sequence for the scenarios that work on plain series.
struct SourceSpec {
    enum class Kind { builtin, model, sequence };
    Kind kind = Kind::model;
    std::string id;
    std::vector<std::tuple<Index, Index, double>> coefficients;  ///< builtin "span"
    unsigned level = 1;                                          ///< builtin "checker"
    double ratio = 0.5;                                          ///< model "geometric"
    double exponent = 1.0;                                       ///< model "inverse-product"
    std::string weight = "product";                              ///< kronecker weight grid
};

struct AcceptanceRule {
    double decreasing_fraction = 0.95;     ///< cesaro_theorem1: T(last) < T(first)
    double nonincreasing_fraction = 0.90;  ///< cesaro_theorem1: T non-increasing along stages
    double decay_ratio = 0.2;              ///< cesaro_theorem2: T(last) <= ratio * T(first)
    double decay_fraction = 1.0;           ///< cesaro_theorem2: share of points that must decay
};

struct ExperimentConfig {
    Scenario scenario = Scenario::expand;
    SourceSpec source;
    Index J = 8;
    Index K = 8;
    std::vector<std::pair<Index, Index>> stages;
    Index resolution = 0;  ///< 0 picks the coarsest exact resolution for (J, K)
    Index sample_points = 16;
    double epsilon = 1e-6;
    Index budget = 64;
    double escape_bound = 1e12;
    DivergenceMode divergence = DivergenceMode::max_index;
    AcceptanceRule acceptance;

    static ExperimentConfig from_json(const Json& j);
    Json to_json() const;
    Index effective_resolution() const;
};

/// Violated invariants, one message each. Empty means the config is valid.
std::vector<std::string> validate(const ExperimentConfig& cfg);

struct SamplePoint {
    Index cell_a = 0;
    Index cell_b = 0;
    double x1 = 0.0;
    double x2 = 0.0;
};

/// Deterministic stratified cell midpoints: point i sits in cell
/// (floor((i + 1/2) R / count), floor(frac(i * phi) R)) with phi the golden
/// ratio conjugate (a Fibonacci lattice).
std::vector<SamplePoint> sample_points(Index count, Index resolution);

enum ExitCode : int { kAccepted = 0, kViolated = 1, kUndetermined = 2 };

struct RunResult {
    int exit_code = kAccepted;
    std::string results_csv;
    std::string summary_json;
};

/// Runs the configured scenario. Throws ConfigError when validation fails.
RunResult run(const ExperimentConfig& cfg);

/// Human-readable plan; throws ConfigError when validation fails.
std::string describe(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

void write_outputs(const RunResult& r, const std::filesystem::path& out_dir);

std::string error_json(std::string_view kind, std::string_view message,
                       const std::vector<std::string>& violations = {});

}  // namespace summa
