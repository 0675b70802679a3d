#include "summa/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "summa/catalogue.hpp"
#include "summa/cesaro.hpp"
#include "summa/conditions.hpp"
#include "summa/double_series.hpp"
#include "summa/errors.hpp"
#include "summa/haar.hpp"

namespace summa {

namespace {

constexpr double kParsevalTolerance = 1e-10;
constexpr double kRepresentableTolerance = 1e-10;
constexpr Index kMaxCells = Index{1} << 24;
// T values at or below this are rounding noise (RMS deviation <= 1e-12) and
// count as already decayed in the trend rules.
constexpr double kTrendNoiseFloor = 1e-24;

const std::vector<std::string>& builtin_ids() {
    static const std::vector<std::string> ids = {"constant", "coordinate", "checker", "span"};
    return ids;
}

bool contains(const std::vector<std::string>& xs, const std::string& x) {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
}

Scenario scenario_from(const std::string& s) {
    for (auto sc : {Scenario::expand, Scenario::cesaro_theorem1, Scenario::cesaro_theorem2, Scenario::kronecker,
                    Scenario::conditions, Scenario::pringsheim})
        if (to_string(sc) == s) return sc;
    throw ConfigError("unknown scenario '" + s + "'");
}

bool uses_haar(Scenario s) {
    return s == Scenario::expand || s == Scenario::cesaro_theorem1 || s == Scenario::cesaro_theorem2 ||
           s == Scenario::conditions;
}

bool is_theorem(Scenario s) { return s == Scenario::cesaro_theorem1 || s == Scenario::cesaro_theorem2; }

std::string source_label(const SourceSpec& s) {
    std::ostringstream os;
    switch (s.kind) {
        case SourceSpec::Kind::builtin:
            os << "builtin " << s.id;
            if (s.id == "checker") os << " (level " << s.level << ')';
            if (s.id == "span") os << " (" << s.coefficients.size() << " coefficients)";
            break;
        case SourceSpec::Kind::model:
            os << "model " << s.id;
            if (s.id == "geometric") os << " (ratio " << format_double(s.ratio) << ')';
            if (s.id == "inverse-product") os << " (exponent " << format_double(s.exponent) << ')';
            break;
        case SourceSpec::Kind::sequence: os << "sequence " << s.id; break;
    }
    return os.str();
}

double builtin_value(const SourceSpec& s, double x1, double x2) {
    if (s.id == "constant") return 1.0;
    if (s.id == "coordinate") return x1;
    if (s.id == "checker") {
        const double scale = std::ldexp(1.0, static_cast<int>(s.level));
        const auto a = static_cast<long long>(std::floor(x1 * scale));
        const auto b = static_cast<long long>(std::floor(x2 * scale));
        return ((a + b) % 2 == 0) ? 1.0 : -1.0;
    }
    double total = 0.0;
    for (const auto& [j, k, c] : s.coefficients) total += c * psi(j, k, x1, x2);
    return total;
}

struct Expansion {
    CoefficientGrid coefficients;
    std::optional<DyadicStepFunction> function;  // present for builtin sources

    double limit_at(double x1, double x2) const {
        if (function) return function->evaluate(x1, x2);
        return synthesize_partial(coefficients, coefficients.rows(), coefficients.cols(), x1, x2);
    }
};

Expansion build_expansion(const ExperimentConfig& cfg) {
    const Index R = cfg.effective_resolution();
    if (cfg.source.kind == SourceSpec::Kind::builtin) {
        auto f = DyadicStepFunction::from_midpoints(R, [&](double x1, double x2) {
            return builtin_value(cfg.source, x1, x2);
        });
        auto c = analyze(f, cfg.J, cfg.K);
        return {std::move(c), std::move(f)};
    }
    const auto model = coefficient_model(cfg.source.id, {cfg.source.ratio, cfg.source.exponent});
    return {materialize(model, cfg.J, cfg.K), std::nullopt};
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return (n % 2 == 1) ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

Json stage_json(const std::pair<Index, Index>& s) { return Json::array({s.first, s.second}); }

Json base_summary(const ExperimentConfig& cfg) {
    Json j;
    j["scenario"] = std::string(to_string(cfg.scenario));
    j["source"] = source_label(cfg.source);
    j["config"] = cfg.to_json();
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- expand -----------------------------------------------------------------

RunResult run_expand(const ExperimentConfig& cfg) {
    const Index R = cfg.effective_resolution();
    const auto ex = build_expansion(cfg);
    const auto recon = synthesize(ex.coefficients, R);
    const auto& f = ex.function ? *ex.function : recon;

    double max_err = 0.0;
    for (std::size_t i = 0; i < f.cells().size(); ++i)
        max_err = std::max(max_err, std::abs(recon.cells()[i] - f.cells()[i]));
    const double coef_energy =
        weighted_square_sum(ex.coefficients, WeightKind::unit, WeightKind::unit, cfg.J, cfg.K);
    const double fn_energy = f.integral_of_square();
    const double defect = std::abs(coef_energy - fn_energy);
    const bool representable = max_err <= kRepresentableTolerance;
    const bool parseval_ok = !representable || defect <= kParsevalTolerance;

    Json s = base_summary(cfg);
    s["J"] = cfg.J;
    s["K"] = cfg.K;
    s["resolution"] = R;
    s["coefficient_energy"] = coef_energy;
    s["function_energy"] = fn_energy;
    s["parseval_defect"] = defect;
    s["reconstruction_max_error"] = max_err;
    s["representable"] = representable;
    s["verdict"] = Json{{"parseval_ok", parseval_ok}, {"tolerance", kParsevalTolerance}};

    return {parseval_ok ? kAccepted : kViolated, coefficients_to_csv(ex.coefficients), dump(s)};
}

// ---- theorem scenarios -------------------------------------------------------

RunResult run_theorem(const ExperimentConfig& cfg) {
    const Index R = cfg.effective_resolution();
    const auto ex = build_expansion(cfg);
    const auto points = sample_points(cfg.sample_points, R);
    const auto& stages = cfg.stages;
    const Index maxM = stages.back().first, maxN = stages.back().second;
    const std::size_t P = points.size(), S = stages.size();

    std::vector<double> t_sigma(P * S), t_limit(P * S);
    Index cauchy_violations = 0, negative_values = 0;

    std::string csv = "point,x1,x2,M,N,T_vs_sigma,T_vs_limit,cauchy_lhs,cauchy_rhs\n";
    for (std::size_t p = 0; p < P; ++p) {
        const auto& pt = points[p];
        const auto sums = partial_sums_at(ex.coefficients, pt.x1, pt.x2, maxM, maxN);
        const auto sigma = cesaro_means(sums);
        const auto vs_sigma = strong_deviation_vs_sigma(sums, sigma);
        const double g = ex.limit_at(pt.x1, pt.x2);
        const auto vs_limit = strong_deviation_vs_limit(sums, g);
        for (std::size_t s = 0; s < S; ++s) {
            const auto [M, N] = stages[s];
            const double a = vs_sigma(M, N), b = vs_limit(M, N);
            const auto cb = cauchy_bound_check(sums, g, M, N);
            t_sigma[p * S + s] = a;
            t_limit[p * S + s] = b;
            if (!cb.holds) ++cauchy_violations;
            if (!(a >= 0.0) || !(b >= 0.0)) ++negative_values;
            csv += std::to_string(p) + ',' + format_double(pt.x1) + ',' + format_double(pt.x2) + ',' +
                   std::to_string(M) + ',' + std::to_string(N) + ',' + format_double(a) + ',' + format_double(b) +
                   ',' + format_double(cb.lhs) + ',' + format_double(cb.rhs) + '\n';
        }
    }

    Json per_stage = Json::array();
    for (std::size_t s = 0; s < S; ++s) {
        std::vector<double> a(P), b(P);
        for (std::size_t p = 0; p < P; ++p) {
            a[p] = t_sigma[p * S + s];
            b[p] = t_limit[p * S + s];
        }
        per_stage.push_back(Json{{"stage", stage_json(stages[s])},
                                 {"T_vs_sigma_max", *std::max_element(a.begin(), a.end())},
                                 {"T_vs_sigma_median", median(a)},
                                 {"T_vs_limit_max", *std::max_element(b.begin(), b.end())},
                                 {"T_vs_limit_median", median(b)}});
    }

    Index decreasing = 0, nonincreasing = 0, decayed = 0;
    for (std::size_t p = 0; p < P; ++p) {
        const double* row = &t_sigma[p * S];
        const auto settled = [](double t) { return t <= kTrendNoiseFloor; };
        if (row[S - 1] < row[0] || settled(row[S - 1])) ++decreasing;
        bool mono = true;
        for (std::size_t s = 1; s < S; ++s) mono = mono && (row[s] <= row[s - 1] || settled(row[s]));
        if (mono) ++nonincreasing;
        const double* lim = &t_limit[p * S];
        if (lim[S - 1] <= cfg.acceptance.decay_ratio * lim[0] || settled(lim[S - 1])) ++decayed;
    }
    const auto frac = [P](Index n) { return static_cast<double>(n) / static_cast<double>(P); };

    Json verdict;
    bool accepted = false;
    if (cfg.scenario == Scenario::cesaro_theorem1) {
        verdict["functional"] = "T_vs_sigma";
        verdict["decreasing_fraction"] = frac(decreasing);
        verdict["required_decreasing_fraction"] = cfg.acceptance.decreasing_fraction;
        verdict["nonincreasing_fraction"] = frac(nonincreasing);
        verdict["required_nonincreasing_fraction"] = cfg.acceptance.nonincreasing_fraction;
        accepted = frac(decreasing) >= cfg.acceptance.decreasing_fraction &&
                   frac(nonincreasing) >= cfg.acceptance.nonincreasing_fraction;
    } else {
        verdict["functional"] = "T_vs_limit";
        verdict["decay_ratio"] = cfg.acceptance.decay_ratio;
        verdict["decayed_fraction"] = frac(decayed);
        verdict["required_decayed_fraction"] = cfg.acceptance.decay_fraction;
        accepted = frac(decayed) >= cfg.acceptance.decay_fraction;
    }
    verdict["noise_floor"] = kTrendNoiseFloor;
    verdict["cauchy_violations"] = cauchy_violations;
    verdict["negative_values"] = negative_values;
    verdict["accepted"] = accepted;

    Json s = base_summary(cfg);
    s["J"] = cfg.J;
    s["K"] = cfg.K;
    s["resolution"] = R;
    s["sample_points"] = P;
    s["limit_source"] = ex.function ? "function value" : "full truncated expansion";
    s["stages"] = std::move(per_stage);
    s["verdict"] = std::move(verdict);

    int code = accepted ? kAccepted : kUndetermined;
    if (cauchy_violations > 0 || negative_values > 0) code = kViolated;
    return {code, std::move(csv), dump(s)};
}

// ---- kronecker ---------------------------------------------------------------

RunResult run_kronecker(const ExperimentConfig& cfg) {
    const auto u = named_sequence(cfg.source.id);
    const auto lambda = named_weight(cfg.source.weight);
    const auto report = verify_kronecker_decay(u, lambda, cfg.stages, cfg.epsilon, cfg.divergence);

    Json s = base_summary(cfg);
    s["weight"] = cfg.source.weight;
    s["divergence_mode"] = std::string(to_string(cfg.divergence));
    s["verdict"] = to_json(report);

    int code = kAccepted;
    if (!report.hypothesis_met)
        code = kUndetermined;
    else if (!report.monotone_trend)
        code = kViolated;
    return {code, to_csv(report), dump(s)};
}

// ---- conditions --------------------------------------------------------------

RunResult run_conditions(const ExperimentConfig& cfg) {
    ConditionReport report;
    CoefficientGrid grid;
    if (cfg.source.kind == SourceSpec::Kind::model) {
        auto model = coefficient_model(cfg.source.id, {cfg.source.ratio, cfg.source.exponent});
        grid = materialize(model, cfg.J, cfg.K);
        report = classify_conditions(model, cfg.budget);
    } else {
        grid = build_expansion(cfg).coefficients;
        report = classify_conditions(grid, cfg.budget);
    }

    std::string csv = "condition,weight,budget,prefix_sum\n";
    for (const auto& o : report.outcomes) {
        const std::string name(to_string(o.condition));
        const std::string w(to_string(weight_of(o.condition)));
        csv += name + ',' + w + ',' + std::to_string(cfg.budget / 2) + ',' + format_double(o.half_sum) + '\n';
        csv += name + ',' + w + ',' + std::to_string(cfg.budget) + ',' + format_double(o.full_sum) + '\n';
    }

    Json s = base_summary(cfg);
    s["report"] = to_json(report);
    s["monotone_coefficients"] = monotone_check(grid);

    int code = kAccepted;
    if (!report.chain_consistent())
        code = kViolated;
    else if (std::any_of(report.outcomes.begin(), report.outcomes.end(),
                         [](const ConditionOutcome& o) { return o.verdict == Verdict::undetermined; }))
        code = kUndetermined;
    return {code, std::move(csv), dump(s)};
}

// ---- pringsheim --------------------------------------------------------------

RunResult run_pringsheim(const ExperimentConfig& cfg) {
    const auto u = named_sequence(cfg.source.id);
    const auto p = detect_pringsheim(u, cfg.epsilon, cfg.budget, cfg.escape_bound);
    const auto r = detect_regular(u, cfg.epsilon, cfg.budget, cfg.escape_bound);
    const auto a = detect_absolute(u, cfg.budget, cfg.escape_bound, cfg.epsilon);

    std::vector<std::pair<Index, Index>> cells = cfg.stages;
    if (cells.empty()) {
        for (Index m = 1; m < cfg.budget; m *= 2) cells.emplace_back(m, m);
        cells.emplace_back(cfg.budget, cfg.budget);
    }
    const auto sums = partial_sum_grid(u, cfg.budget, cfg.budget);
    std::string csv = "m,n,S\n";
    for (const auto& [m, n] : cells)
        csv += std::to_string(m) + ',' + std::to_string(n) + ',' + format_double(sums(m, n)) + '\n';

    const bool chain_ok = (!converges_absolutely(a) || converges_regularly(r)) &&
                          (!converges_regularly(r) || converges_pringsheim(p));

    Json s = base_summary(cfg);
    s["verdict"] = Json{{"pringsheim", converges_pringsheim(p)},
                        {"regular", converges_regularly(r)},
                        {"absolute", converges_absolutely(a)},
                        {"chain_consistent", chain_ok}};
    s["reports"] = Json{{"pringsheim", to_json(p)}, {"regular", to_json(r)}, {"absolute", to_json(a)}};

    int code = kAccepted;
    if (!chain_ok)
        code = kViolated;
    else if (p.status == ConvergenceStatus::undetermined)
        code = kUndetermined;
    return {code, std::move(csv), dump(s)};
}

std::vector<std::pair<Index, Index>> parse_stages(const Json& arr) {
    std::vector<std::pair<Index, Index>> out;
    for (const auto& s : arr) {
        if (!s.is_array() || s.size() != 2) throw ConfigError("each stage must be a pair [M, N]");
        out.emplace_back(s[0].get<Index>(), s[1].get<Index>());
    }
    return out;
}

}  // namespace

std::string_view to_string(Scenario s) noexcept {
    switch (s) {
        case Scenario::expand: return "expand";
        case Scenario::cesaro_theorem1: return "cesaro_theorem1";
        case Scenario::cesaro_theorem2: return "cesaro_theorem2";
        case Scenario::kronecker: return "kronecker";
        case Scenario::conditions: return "conditions";
        case Scenario::pringsheim: return "pringsheim";
    }
    return "expand";
}

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
    static const std::set<std::string> known = {"scenario",     "source", "dims",         "stages",
                                                "resolution",   "sample_points", "epsilon", "budget",
                                                "escape_bound", "divergence",    "acceptance"};
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

    try {
        ExperimentConfig cfg;
        cfg.scenario = scenario_from(j.at("scenario").get<std::string>());

        const auto& src = j.at("source");
        if (src.contains("builtin")) {
            cfg.source.kind = SourceSpec::Kind::builtin;
            cfg.source.id = src.at("builtin").get<std::string>();
            cfg.source.level = src.value("level", 1u);
            if (src.contains("coefficients"))
                for (const auto& e : src.at("coefficients")) {
                    if (!e.is_array() || e.size() != 3) throw ConfigError("span coefficients are [j, k, c] triples");
                    cfg.source.coefficients.emplace_back(e[0].get<Index>(), e[1].get<Index>(), e[2].get<double>());
                }
        } else if (src.contains("model")) {
            cfg.source.kind = SourceSpec::Kind::model;
            cfg.source.id = src.at("model").get<std::string>();
            cfg.source.ratio = src.value("ratio", 0.5);
            cfg.source.exponent = src.value("exponent", 1.0);
        } else if (src.contains("sequence")) {
            cfg.source.kind = SourceSpec::Kind::sequence;
            cfg.source.id = src.at("sequence").get<std::string>();
            cfg.source.weight = src.value("weight", std::string("product"));
        } else {
            throw ConfigError("source needs one of 'builtin', 'model', 'sequence'");
        }

        if (j.contains("dims")) {
            const auto& d = j.at("dims");
            if (!d.is_array() || d.size() != 2) throw ConfigError("dims must be [J, K]");
            cfg.J = d[0].get<Index>();
            cfg.K = d[1].get<Index>();
        }
        if (j.contains("stages")) cfg.stages = parse_stages(j.at("stages"));
        cfg.resolution = j.value("resolution", Index{0});
        cfg.sample_points = j.value("sample_points", cfg.sample_points);
        cfg.epsilon = j.value("epsilon", cfg.epsilon);
        cfg.budget = j.value("budget", cfg.budget);
        cfg.escape_bound = j.value("escape_bound", cfg.escape_bound);
        if (j.contains("divergence")) {
            const auto d = j.at("divergence").get<std::string>();
            if (d == "max")
                cfg.divergence = DivergenceMode::max_index;
            else if (d == "min")
                cfg.divergence = DivergenceMode::min_index;
            else
                throw ConfigError("divergence must be 'max' or 'min'");
        }
        if (j.contains("acceptance")) {
            const auto& a = j.at("acceptance");
            cfg.acceptance.decreasing_fraction = a.value("decreasing_fraction", cfg.acceptance.decreasing_fraction);
            cfg.acceptance.nonincreasing_fraction =
                a.value("nonincreasing_fraction", cfg.acceptance.nonincreasing_fraction);
            cfg.acceptance.decay_ratio = a.value("decay_ratio", cfg.acceptance.decay_ratio);
            cfg.acceptance.decay_fraction = a.value("decay_fraction", cfg.acceptance.decay_fraction);
        }
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

Json ExperimentConfig::to_json() const {
    Json j;
    j["scenario"] = std::string(summa::to_string(scenario));
    Json src;
    switch (source.kind) {
        case SourceSpec::Kind::builtin: {
            src["builtin"] = source.id;
            if (source.id == "checker") src["level"] = source.level;
            if (source.id == "span") {
                Json cs = Json::array();
                for (const auto& [jj, kk, c] : source.coefficients) cs.push_back(Json::array({jj, kk, c}));
                src["coefficients"] = std::move(cs);
            }
            break;
        }
        case SourceSpec::Kind::model:
            src["model"] = source.id;
            if (source.id == "geometric") src["ratio"] = source.ratio;
            if (source.id == "inverse-product") src["exponent"] = source.exponent;
            break;
        case SourceSpec::Kind::sequence:
            src["sequence"] = source.id;
            if (scenario == Scenario::kronecker) src["weight"] = source.weight;
            break;
    }
    j["source"] = std::move(src);
    j["dims"] = Json::array({J, K});
    Json st = Json::array();
    for (const auto& s : stages) st.push_back(stage_json(s));
    j["stages"] = std::move(st);
    j["resolution"] = effective_resolution();
    j["sample_points"] = sample_points;
    j["epsilon"] = epsilon;
    j["budget"] = budget;
    j["escape_bound"] = escape_bound;
    j["divergence"] = std::string(summa::to_string(divergence));
    j["acceptance"] = Json{{"decreasing_fraction", acceptance.decreasing_fraction},
                           {"nonincreasing_fraction", acceptance.nonincreasing_fraction},
                           {"decay_ratio", acceptance.decay_ratio},
                           {"decay_fraction", acceptance.decay_fraction}};
    return j;
}

Index ExperimentConfig::effective_resolution() const {
    if (resolution != 0) return resolution;
    Index r = std::max(required_resolution(J), required_resolution(K));
    if (source.kind == SourceSpec::Kind::builtin && source.id == "checker")
        r = std::max(r, Index{1} << std::min(source.level, 30u));
    return r;
}

std::vector<std::string> validate(const ExperimentConfig& cfg) {
    std::vector<std::string> v;
    const auto sc = cfg.scenario;
    const auto& src = cfg.source;

    const bool wants_sequence = sc == Scenario::kronecker || sc == Scenario::pringsheim;
    if (wants_sequence && src.kind != SourceSpec::Kind::sequence)
        v.push_back("scenario " + std::string(to_string(sc)) + " needs a 'sequence' source");
    if (!wants_sequence && src.kind == SourceSpec::Kind::sequence)
        v.push_back("scenario " + std::string(to_string(sc)) + " needs a 'builtin' or 'model' source");

    switch (src.kind) {
        case SourceSpec::Kind::builtin:
            if (!contains(builtin_ids(), src.id)) v.push_back("unknown builtin function '" + src.id + "'");
            break;
        case SourceSpec::Kind::model:
            if (!contains(model_ids(), src.id)) v.push_back("unknown coefficient model '" + src.id + "'");
            if (src.id == "geometric" && !(src.ratio > 0.0 && src.ratio < 1.0))
                v.push_back("geometric ratio must lie in (0, 1)");
            if (src.id == "inverse-product" && !(src.exponent > 0.0))
                v.push_back("inverse-product exponent must be positive");
            break;
        case SourceSpec::Kind::sequence:
            if (!contains(sequence_ids(), src.id)) v.push_back("unknown sequence '" + src.id + "'");
            if (sc == Scenario::kronecker && !contains(weight_ids(), src.weight))
                v.push_back("unknown weight '" + src.weight + "'");
            break;
    }

    if (cfg.J == 0 || cfg.K == 0) v.push_back("dims (J, K) must both be >= 1");
    if (cfg.J * cfg.K > kMaxCells) v.push_back("dims (J, K) exceed the supported grid size");

    if (uses_haar(sc) && cfg.J > 0 && cfg.K > 0 && cfg.J * cfg.K <= kMaxCells) {
        const Index R = cfg.effective_resolution();
        const Index need = std::max(required_resolution(cfg.J), required_resolution(cfg.K));
        if (!is_power_of_two(R))
            v.push_back("resolution " + std::to_string(R) + " is not a power of two");
        else if (R < need)
            v.push_back("resolution " + std::to_string(R) + " is too coarse for dims; need >= " +
                        std::to_string(need));
        if (R > 4096) v.push_back("resolution above 4096 is not supported");
        if (src.kind == SourceSpec::Kind::builtin && src.id == "checker" &&
            (src.level > 30 || (Index{1} << src.level) > R))
            v.push_back("checker level exceeds the resolution");
        if (src.kind == SourceSpec::Kind::builtin && src.id == "span") {
            if (src.coefficients.empty()) v.push_back("span source needs at least one coefficient");
            for (const auto& [j, k, c] : src.coefficients)
                if (j == 0 || k == 0 || j > cfg.J || k > cfg.K || !std::isfinite(c)) {
                    v.push_back("span coefficient (" + std::to_string(j) + "," + std::to_string(k) +
                                ") outside dims or not finite");
                    break;
                }
        }
        if (is_theorem(sc) && (cfg.sample_points == 0 || cfg.sample_points > R * R))
            v.push_back("sample_points must lie in [1, resolution^2]");
    }

    if (is_theorem(sc) || sc == Scenario::kronecker) {
        const std::size_t min_stages = is_theorem(sc) ? 2 : 1;
        if (cfg.stages.size() < min_stages)
            v.push_back("scenario needs at least " + std::to_string(min_stages) + " stage(s)");
        for (std::size_t i = 0; i < cfg.stages.size(); ++i) {
            const auto [m, n] = cfg.stages[i];
            if (m == 0 || n == 0) {
                v.push_back("stage sizes must be >= 1");
                break;
            }
            if (is_theorem(sc) && (m > cfg.J || n > cfg.K)) {
                v.push_back("stage (" + std::to_string(m) + "," + std::to_string(n) + ") outside dims (" +
                            std::to_string(cfg.J) + "," + std::to_string(cfg.K) + ")");
                break;
            }
            if (i > 0) {
                const auto [pm, pn] = cfg.stages[i - 1];
                if (m < pm || n < pn || (m == pm && n == pn)) {
                    v.push_back("stages must be strictly increasing");
                    break;
                }
            }
        }
        if (sc == Scenario::kronecker && !cfg.stages.empty() && cfg.stages.back().first * cfg.stages.back().second > kMaxCells)
            v.push_back("largest Kronecker stage exceeds the supported grid size");
    }

    if (sc == Scenario::pringsheim) {
        if (cfg.budget < 2) v.push_back("pringsheim budget must be >= 2");
        if (cfg.budget * cfg.budget > kMaxCells) v.push_back("pringsheim budget exceeds the supported grid size");
        for (const auto& [m, n] : cfg.stages)
            if (m == 0 || n == 0 || m > cfg.budget || n > cfg.budget) {
                v.push_back("pringsheim stages must lie within the budget");
                break;
            }
    }
    if (sc == Scenario::conditions && cfg.budget < 16) v.push_back("conditions budget must be >= 16");
    if (sc == Scenario::conditions && src.kind == SourceSpec::Kind::builtin && cfg.budget * cfg.budget > kMaxCells)
        v.push_back("conditions budget exceeds the supported grid size");

    if (!(cfg.epsilon > 0.0)) v.push_back("epsilon must be positive");
    if (!(cfg.escape_bound > 0.0)) v.push_back("escape_bound must be positive");
    const auto& a = cfg.acceptance;
    for (double f : {a.decreasing_fraction, a.nonincreasing_fraction, a.decay_fraction})
        if (!(f >= 0.0 && f <= 1.0)) {
            v.push_back("acceptance fractions must lie in [0, 1]");
            break;
        }
    if (!(a.decay_ratio >= 0.0)) v.push_back("acceptance decay_ratio must be non-negative");
    return v;
}

std::vector<SamplePoint> sample_points(Index count, Index resolution) {
    constexpr double phi = std::numbers::phi - 1.0;
    std::vector<SamplePoint> pts;
    pts.reserve(count);
    const auto R = static_cast<double>(resolution);
    for (Index i = 0; i < count; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(count);
        const double t = static_cast<double>(i) * phi;
        const double v = t - std::floor(t);
        const auto a = std::min(static_cast<Index>(u * R), resolution - 1);
        const auto b = std::min(static_cast<Index>(v * R), resolution - 1);
        pts.push_back({a, b, DyadicStepFunction::midpoint(a, resolution), DyadicStepFunction::midpoint(b, resolution)});
    }
    return pts;
}

RunResult run(const ExperimentConfig& cfg) {
    if (auto v = validate(cfg); !v.empty()) {
        std::string msg = "invalid config:";
        for (const auto& s : v) msg += " " + s + ";";
        throw ConfigError(msg);
    }
    switch (cfg.scenario) {
        case Scenario::expand: return run_expand(cfg);
        case Scenario::cesaro_theorem1:
        case Scenario::cesaro_theorem2: return run_theorem(cfg);
        case Scenario::kronecker: return run_kronecker(cfg);
        case Scenario::conditions: return run_conditions(cfg);
        case Scenario::pringsheim: return run_pringsheim(cfg);
    }
    throw ConfigError("unhandled scenario");
}

std::string describe(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    if (auto v = validate(cfg); !v.empty()) {
        std::string msg = "invalid config:";
        for (const auto& s : v) msg += " " + s + ";";
        throw ConfigError(msg);
    }
    std::ostringstream os;
    os << "scenario: " << to_string(cfg.scenario) << '\n';
    os << "source: " << source_label(cfg.source) << '\n';
    switch (cfg.scenario) {
        case Scenario::expand:
            os << "computes: Haar coefficients c(j,k) by exact dyadic quadrature; Parseval energy check; "
                  "reconstruction error at cell midpoints\n";
            break;
        case Scenario::cesaro_theorem1:
        case Scenario::cesaro_theorem2:
            os << "computes: rectangular partial sums s(m,n)(x); (C,1,1) means sigma(M,N)(x); strong means of "
                  "|s - sigma|^2 and |s - g|^2; Cauchy bound at every stage\n";
            os << "verdict on: "
               << (cfg.scenario == Scenario::cesaro_theorem1 ? "T_vs_sigma trend" : "T_vs_limit decay") << '\n';
            os << "sample points: " << cfg.sample_points << " cell midpoints (Fibonacci lattice)\n";
            break;
        case Scenario::kronecker:
            os << "computes: weight admissibility; regular convergence of u/lambda; Kronecker averages\n";
            os << "weight grid: " << cfg.source.weight << " (divergence mode " << to_string(cfg.divergence)
               << ")\n";
            os << "epsilon: " << format_double(cfg.epsilon) << '\n';
            break;
        case Scenario::conditions:
            os << "computes: weighted square sums (unit, loglog^2, log^2) at budgets " << cfg.budget / 2 << " and "
               << cfg.budget << "; monotone coefficient check\n";
            break;
        case Scenario::pringsheim:
            os << "computes: Pringsheim, regular and absolute convergence tests\n";
            os << "budget: " << cfg.budget << ", epsilon: " << format_double(cfg.epsilon)
               << ", escape bound: " << format_double(cfg.escape_bound) << '\n';
            break;
    }
    if (uses_haar(cfg.scenario))
        os << "coefficients: " << cfg.J << " x " << cfg.K << ", resolution " << cfg.effective_resolution() << '\n';
    for (std::size_t i = 0; i < cfg.stages.size(); ++i)
        os << "stage " << (i + 1) << ": (" << cfg.stages[i].first << ',' << cfg.stages[i].second << ")\n";
    os << "outputs: " << (out_dir / "results.csv").string() << ", " << (out_dir / "summary.json").string() << '\n';
    return os.str();
}

void write_outputs(const RunResult& r, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    for (const auto& [name, text] : {std::pair{"results.csv", &r.results_csv}, std::pair{"summary.json", &r.summary_json}}) {
        std::ofstream out(out_dir / name, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + (out_dir / name).string());
        out << *text;
    }
}

std::string error_json(std::string_view kind, std::string_view message, const std::vector<std::string>& violations) {
    Json e{{"kind", std::string(kind)}, {"message", std::string(message)}};
    if (!violations.empty()) e["violations"] = violations;
    return Json{{"error", std::move(e)}}.dump(2) + "\n";
}

}  // namespace summa
