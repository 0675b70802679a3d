#include "summa/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "summa/errors.hpp"

namespace summa {

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::filesystem::path& p, std::string_view text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + p.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

template <typename T>
T parse_number(std::string_view field, std::size_t line) {
    T value{};
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("coefficient CSV line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
    return value;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

Json to_json(const ConvergenceReport& r) {
    Json j;
    j["status"] = std::string(to_string(r.status));
    j["limit"] = r.limit ? Json(*r.limit) : Json(nullptr);
    j["epsilon"] = r.epsilon;
    j["cutoff_K"] = r.cutoff_K;
    j["evidence"] = r.evidence;
    return j;
}

Json to_json(const Admissibility& a) {
    Json j;
    j["range"] = a.range;
    j["d10_ok"] = a.d10_ok;
    j["d01_ok"] = a.d01_ok;
    j["d11_ok"] = a.d11_ok;
    j["diverges_ok"] = a.diverges_ok;
    j["admissible"] = a.admissible();
    if (!a.first_failure.empty()) j["first_failure"] = a.first_failure;
    return j;
}

Json to_json(const DecayReport& r) {
    Json j;
    j["hypothesis_met"] = r.hypothesis_met;
    j["hypothesis"] = to_json(r.hypothesis);
    j["admissibility"] = to_json(r.admissibility);
    Json stages = Json::array();
    for (const auto& s : r.stages) stages.push_back(Json{{"m", s.m}, {"n", s.n}, {"average", s.average}});
    j["stages"] = std::move(stages);
    j["monotone_trend"] = r.monotone_trend;
    j["strictly_decreasing"] = r.strictly_decreasing;
    return j;
}

Json to_json(const ConditionReport& r) {
    Json j;
    j["budget"] = r.budget;
    Json conds;
    for (const auto& o : r.outcomes) {
        conds[std::string(to_string(o.condition))] = Json{{"verdict", std::string(to_string(o.verdict))},
                                                          {"weight", std::string(to_string(weight_of(o.condition)))},
                                                          {"half_budget_sum", o.half_sum},
                                                          {"full_budget_sum", o.full_sum},
                                                          {"rule", o.rule}};
    }
    j["conditions"] = std::move(conds);
    j["chain_consistent"] = r.chain_consistent();
    return j;
}

std::string to_csv(const StrongCesaroSeries& t) {
    std::string out = "M,N,T\n";
    for (Index m = 1; m <= t.values.rows(); ++m)
        for (Index n = 1; n <= t.values.cols(); ++n)
            out += std::to_string(m) + ',' + std::to_string(n) + ',' + format_double(t(m, n)) + '\n';
    return out;
}

std::string to_csv(const DecayReport& r) {
    std::string out = "stage_m,stage_n,average\n";
    for (const auto& s : r.stages)
        out += std::to_string(s.m) + ',' + std::to_string(s.n) + ',' + format_double(s.average) + '\n';
    return out;
}

std::string coefficients_to_csv(const CoefficientGrid& c) {
    std::string out = "j,k,c\n";
    for (Index j = 1; j <= c.rows(); ++j)
        for (Index k = 1; k <= c.cols(); ++k)
            out += std::to_string(j) + ',' + std::to_string(k) + ',' + format_double(c(j, k)) + '\n';
    return out;
}

Json coefficient_header(const CoefficientGrid& c, Index resolution) {
    return Json{{"J", c.rows()}, {"K", c.cols()}, {"resolution", resolution}};
}

CoefficientGrid coefficients_from_csv(std::string_view csv, const Json& header) {
    const auto J = header.at("J").get<Index>();
    const auto K = header.at("K").get<Index>();
    if (J == 0 || K == 0) throw InvalidDimension("coefficient header needs J, K >= 1");
    CoefficientGrid c{Grid(J, K)};
    std::vector<bool> seen(J * K, false);

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        auto eol = csv.find('\n', pos);
        if (eol == std::string_view::npos) eol = csv.size();
        std::string_view line = csv.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || (line_no == 1 && line == "j,k,c")) continue;

        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string_view::npos ? c1 : c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos)
            throw ConfigError("coefficient CSV line " + std::to_string(line_no) + ": expected j,k,c");
        const auto j = parse_number<Index>(line.substr(0, c1), line_no);
        const auto k = parse_number<Index>(line.substr(c1 + 1, c2 - c1 - 1), line_no);
        const auto v = parse_number<double>(line.substr(c2 + 1), line_no);
        if (j == 0 || k == 0 || j > J || k > K)
            throw IndexOutOfRange("coefficient CSV line " + std::to_string(line_no) + ": index outside header dims");
        if (seen[(j - 1) * K + (k - 1)])
            throw ConfigError("coefficient CSV line " + std::to_string(line_no) + ": repeated index");
        seen[(j - 1) * K + (k - 1)] = true;
        c(j, k) = v;
    }
    return c;
}

void write_coefficients(const CoefficientGrid& c, Index resolution, const std::filesystem::path& csv_path,
                        const std::filesystem::path& header_path) {
    spill(csv_path, coefficients_to_csv(c));
    spill(header_path, coefficient_header(c, resolution).dump(2) + "\n");
}

CoefficientGrid read_coefficients(const std::filesystem::path& csv_path, const std::filesystem::path& header_path) {
    const auto header = Json::parse(slurp(header_path));
    return coefficients_from_csv(slurp(csv_path), header);
}

}  // namespace summa
