// Acceptance suite. Each criterion prints one line:
//   criterion N: PASS|FAIL  <name>  (<measured values>)
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "CLI11.hpp"
#include "summa/catalogue.hpp"
#include "summa/cesaro.hpp"
#include "summa/compensated.hpp"
#include "summa/conditions.hpp"
#include "summa/double_series.hpp"
#include "summa/experiment.hpp"
#include "summa/haar.hpp"
#include "summa/kronecker.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace summa;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Options {
    std::string cli;
    std::string configs;
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

CoefficientGrid random_grid(Index J, Index K, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CoefficientGrid c{Grid(J, K)};
    for (double& v : c.c.data()) v = dist(rng);
    return c;
}

oracle::Table to_table(const CoefficientGrid& c) {
    oracle::Table t(c.rows(), c.cols());
    for (Index j = 1; j <= c.rows(); ++j)
        for (Index k = 1; k <= c.cols(); ++k) t(j, k) = c(j, k);
    return t;
}

// 1 --------------------------------------------------------------------------
Outcome orthonormality(const Options&) {
    const Grid g = gram_matrix(64, 16);
    double worst = 0.0;
    for (Index a = 1; a <= 64; ++a)
        for (Index b = 1; b <= 64; ++b) worst = std::max(worst, std::abs(g(a, b) - (a == b ? 1.0 : 0.0)));
    return {worst <= 1e-12, "64 tensor functions j,k <= 8, resolution 16, max |G - I| = " + fmt(worst)};
}

// 2 --------------------------------------------------------------------------
Outcome parseval(const Options&) {
    std::mt19937_64 rng(20021);
    double worst_recon = 0.0, worst_energy = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_grid(8, 8, rng);
        const auto f = synthesize(c, 16);
        const auto back = analyze(f, 8, 8);
        for (Index a = 0; a < 16; ++a)
            for (Index b = 0; b < 16; ++b) {
                const double v = synthesize_partial(back, 8, 8, DyadicStepFunction::midpoint(a, 16),
                                                    DyadicStepFunction::midpoint(b, 16));
                worst_recon = std::max(worst_recon, std::abs(v - f.cell(a, b)));
            }
        const double energy = weighted_square_sum(back, WeightKind::unit, WeightKind::unit, 8, 8);
        worst_energy = std::max(worst_energy, std::abs(energy - f.integral_of_square()));
    }
    return {worst_recon <= 1e-10 && worst_energy <= 1e-10,
            "100 grids 8x8, max reconstruction error " + fmt(worst_recon) + ", max Parseval defect " +
                fmt(worst_energy)};
}

// 3 --------------------------------------------------------------------------
// Mean over the 16 x 16 cell midpoints of |s_{m,n} - sigma_{m,n}|^2 for all
// m, n <= 8, computed with the library's partial sums and Cesaro means.
Grid deviation_energy(const CoefficientGrid& c) {
    Grid acc(8, 8);
    std::vector<CompensatedSum> sums(64);
    for (Index a = 0; a < 16; ++a)
        for (Index b = 0; b < 16; ++b) {
            const auto s = partial_sums_at(c, DyadicStepFunction::midpoint(a, 16), DyadicStepFunction::midpoint(b, 16),
                                           8, 8);
            const auto sigma = cesaro_means(s);
            for (Index m = 1; m <= 8; ++m)
                for (Index n = 1; n <= 8; ++n) {
                    const double d = s(m, n) - sigma(m, n);
                    sums[(m - 1) * 8 + (n - 1)].add(d * d);
                }
        }
    for (Index m = 1; m <= 8; ++m)
        for (Index n = 1; n <= 8; ++n) acc(m, n) = sums[(m - 1) * 8 + (n - 1)].value() / 256.0;
    return acc;
}

Outcome deviation_identity(const Options&) {
    std::mt19937_64 rng(30031);
    double worst_interior = 0.0, worst_exact = 0.0;
    Index mismatches = 0, cases = 0;
    double scaled_lhs = 0.0, scaled_rhs = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_grid(8, 8, rng);
        const auto t = to_table(c);
        const Grid q = deviation_energy(c);
        for (Index m = 1; m <= 8; ++m)
            for (Index n = 1; n <= 8; ++n) {
                ++cases;
                const double lhs = q(m, n);
                const double interior = oracle::deviation_energy_interior(t, m, n);
                const double exact = oracle::deviation_energy_exact(t, m, n);
                const double scale = std::max({std::abs(lhs), std::abs(interior), 1e-300});
                const double rel_interior = std::abs(lhs - interior) / scale;
                worst_interior = std::max(worst_interior, rel_interior);
                if (rel_interior > 1e-10) ++mismatches;
                worst_exact = std::max(worst_exact, std::abs(lhs - exact) / std::max(std::abs(exact), 1e-300));
                if (trial == 0 && m == 8 && n == 8) {
                    // scaled form: (1/mn) * mean square against
                    // sum (j-1)^2 (k-1)^2 c^2 / (m^3 n^3)
                    scaled_lhs = lhs / double(m * n);
                    long double r = 0.0L;
                    for (Index j = 2; j <= m; ++j)
                        for (Index k = 2; k <= n; ++k)
                            r += (j - 1.0L) * (j - 1.0L) * (k - 1.0L) * (k - 1.0L) * t(j, k) * t(j, k);
                    scaled_rhs = double(r / (1.0L * m * m * m * n * n * n));
                }
            }
    }
    const bool scaled_ok = std::abs(scaled_lhs - scaled_rhs) <= 1e-10 * std::max(std::abs(scaled_lhs), 1e-300);
    std::ostringstream os;
    os << "interior-strip identity: " << mismatches << "/" << cases << " (m,n) cases off by more than 1e-10, worst "
       << fmt(worst_interior) << "; 1/(mn)-scaled form at (8,8): " << fmt(scaled_lhs) << " vs " << fmt(scaled_rhs)
       << "; [info] (a+b-ab)^2 expansion worst " << fmt(worst_exact);
    return {mismatches == 0 && scaled_ok, os.str()};
}

// 4 --------------------------------------------------------------------------
Outcome tail_bound(const Options&) {
    const Index top = 1000000;
    // suffix[j] = sum_{m=j}^{top} m^-3, smallest terms first.
    std::vector<double> suffix(1001, 0.0);
    CompensatedSum acc;
    for (Index m = top; m >= 1; --m) {
        const double x = static_cast<double>(m);
        acc.add(1.0 / (x * x * x));
        if (m <= 1000) suffix[m] = acc.value();
    }
    Index failures = 0;
    double tightest = 0.0;
    for (Index j = 2; j <= 1000; ++j) {
        const double bound = 1.0 / (2.0 * double(j - 1) * double(j - 1));
        if (!(suffix[j] <= bound)) ++failures;
        tightest = std::max(tightest, suffix[j] / bound);
    }
    return {failures == 0, "j = 2..1000, failures " + std::to_string(failures) + ", max sum/bound " + fmt(tightest)};
}

// 5, 6 -------------------------------------------------------------------------
struct TrendData {
    std::vector<std::vector<double>> t;  // [point][stage]
};

TrendData strong_means(const CoefficientGrid& c, const std::vector<std::pair<Index, Index>>& stages, bool vs_sigma,
                       const std::function<double(double, double)>& g) {
    const auto pts = sample_points(64, 128);
    TrendData out;
    for (const auto& p : pts) {
        const auto s = partial_sums_at(c, p.x1, p.x2, stages.back().first, stages.back().second);
        const auto series = vs_sigma ? strong_deviation_vs_sigma(s, cesaro_means(s))
                                     : strong_deviation_vs_limit(s, g(p.x1, p.x2));
        std::vector<double> row;
        for (const auto& [M, N] : stages) row.push_back(series(M, N));
        out.t.push_back(std::move(row));
    }
    return out;
}

Outcome theorem1_trend(const Options&) {
    const auto c = materialize(coefficient_model("inverse-product", {0.5, 0.75}), 64, 64);
    const std::vector<std::pair<Index, Index>> stages{{8, 8}, {16, 16}, {32, 32}, {64, 64}};
    const auto data = strong_means(c, stages, true, {});
    Index decreasing = 0, nonincreasing = 0;
    for (const auto& row : data.t) {
        if (row.back() < row.front()) ++decreasing;
        if (std::is_sorted(row.rbegin(), row.rend())) ++nonincreasing;
    }
    const double P = static_cast<double>(data.t.size());
    const double fd = decreasing / P, fn = nonincreasing / P;
    std::ostringstream os;
    os << "c = (jk)^-0.75, 64 points: T(64,64) < T(8,8) at " << fmt(fd) << " (need 0.95), non-increasing at "
       << fmt(fn) << " (need 0.90)";
    return {fd >= 0.95 && fn >= 0.90, os.str()};
}

Outcome theorem2_trend(const Options&) {
    std::mt19937_64 rng(60061);
    const auto small = random_grid(4, 4, rng);
    CoefficientGrid c{Grid(64, 64)};
    for (Index j = 1; j <= 4; ++j)
        for (Index k = 1; k <= 4; ++k) c(j, k) = small(j, k);
    const auto f = [&](double x1, double x2) { return synthesize_partial(small, 4, 4, x1, x2); };
    const auto data = strong_means(c, {{8, 8}, {64, 64}}, false, f);
    Index decayed = 0;
    double worst = 0.0;
    for (const auto& row : data.t) {
        const double ratio = row[1] / row[0];
        worst = std::max(worst, ratio);
        if (row[1] <= 0.2 * row[0]) ++decayed;
    }
    return {decayed == data.t.size(), "span of j,k <= 4, " + std::to_string(decayed) + "/" +
                                          std::to_string(data.t.size()) +
                                          " points with T(64,64) <= 0.2 T(8,8), worst ratio " + fmt(worst)};
}

// 7 --------------------------------------------------------------------------
Outcome cauchy(const Options&) {
    std::mt19937_64 rng(70071);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    Index violations = 0;
    double tightest = -1e300;
    for (int trial = 0; trial < 1000; ++trial) {
        Grid s(8, 8);
        for (double& v : s.data()) v = dist(rng);
        const double g = dist(rng);
        const auto r = cauchy_bound_check(PartialSumGrid{s}, g, 8, 8);
        if (!r.holds) ++violations;
        tightest = std::max(tightest, r.lhs - r.rhs);
    }
    return {violations == 0, "1000 grids 8x8, violations " + std::to_string(violations) + ", max lhs - rhs " +
                                 fmt(tightest)};
}

// 8 --------------------------------------------------------------------------
Outcome conditions(const Options&) {
    const auto geo = classify_conditions(coefficient_model("geometric"), 64);
    bool geo_ok = true;
    for (auto cond : kAllConditions) geo_ok = geo_ok && geo[cond].verdict == Verdict::holds;

    std::vector<CoefficientSource> corpus;
    for (const auto& id : model_ids()) corpus.emplace_back(coefficient_model(id));
    for (double e : {0.5, 0.6, 0.75, 1.0, 1.5}) corpus.emplace_back(coefficient_model("inverse-product", {0.5, e}));
    for (double q : {0.1, 0.5, 0.9, 0.99}) corpus.emplace_back(coefficient_model("geometric", {q, 1.0}));
    for (const auto& id : sequence_ids()) corpus.emplace_back(named_sequence(id));
    std::mt19937_64 rng(80081);
    for (int i = 0; i < 20; ++i) corpus.emplace_back(random_grid(16, 16, rng));

    Index decided = 0, broken = 0, reports = 0;
    for (const auto& src : corpus)
        for (Index budget : {16, 64, 256, 1024}) {
            const auto r = classify_conditions(src, budget);
            ++reports;
            const auto sq = r[Condition::square_summable].verdict;
            const auto mk = r[Condition::menshov_kaczmarz].verdict;
            const auto rm = r[Condition::rademacher_menshov].verdict;
            if (sq != Verdict::undetermined && mk != Verdict::undetermined && rm != Verdict::undetermined) ++decided;
            const bool chain = (rm != Verdict::holds || mk == Verdict::holds) &&
                               (mk != Verdict::holds || sq == Verdict::holds) && r.chain_consistent();
            if (!chain) ++broken;
        }
    std::ostringstream os;
    os << "geometric: all hold = " << (geo_ok ? "yes" : "no") << "; chain violations " << broken << " over "
       << reports << " reports (" << decided << " fully decided)";
    return {geo_ok && broken == 0, os.str()};
}

// 9 --------------------------------------------------------------------------
Outcome kronecker(const Options&) {
    const auto flags = check_weight_monotonicity(named_weight("product"), 1000);

    const std::vector<std::pair<Index, Index>> stages{{16, 16}, {64, 64}, {256, 256}, {1024, 1024}};
    const auto report = verify_kronecker_decay(named_sequence("alternating"), named_weight("product"), stages, 1e-2);
    bool strict = report.hypothesis_met;
    std::string averages;
    for (std::size_t i = 0; i < report.stages.size(); ++i) {
        averages += (i ? "," : "") + fmt(report.stages[i].average);
        if (i > 0 && !(std::abs(report.stages[i].average) < std::abs(report.stages[i - 1].average))) strict = false;
    }

    const std::vector<std::pair<Index, Index>> odd{{17, 17}, {65, 65}, {257, 257}, {1025, 1025}};
    const auto odd_report = verify_kronecker_decay(named_sequence("alternating"), named_weight("product"), odd, 1e-2);

    const Index n = Index{1} << 14;
    std::vector<double> u(n, 1.0), lambda(n);
    for (Index j = 1; j <= n; ++j) lambda[j - 1] = static_cast<double>(j);
    bool constant = true;
    for (Index m = 1; m <= n; ++m) constant = constant && kronecker_single(u, lambda, m) == 1.0;

    std::ostringstream os;
    os << "jk flags to 1000: " << (flags.admissible() ? "ok" : "FAIL") << "; alternating |average| at 16..1024 = ["
       << averages << "], strictly decreasing: " << (strict ? "yes" : "no")
       << " (hypothesis met: " << (report.hypothesis_met ? "yes" : "no") << ")"
       << "; u=1, lambda=j constant 1 to 2^14: " << (constant ? "yes" : "no")
       << "; [info] odd stages 17..1025 strictly decreasing: " << (odd_report.strictly_decreasing ? "yes" : "no");
    return {flags.admissible() && strict && constant, os.str()};
}

// 10 -------------------------------------------------------------------------
Outcome separation(const Options&) {
    const auto u = named_sequence("row_counterexample");
    const auto p = detect_pringsheim(u, kDefaultEpsilon, kDefaultBudget);
    const auto r = detect_regular(u, kDefaultEpsilon, kDefaultBudget);
    const auto a = detect_absolute(u, kDefaultBudget);
    const bool ok = converges_pringsheim(p) && !converges_regularly(r) && !converges_absolutely(a);
    return {ok, std::string("pringsheim=") + (converges_pringsheim(p) ? "true" : "false") +
                    " regular=" + (converges_regularly(r) ? "true" : "false") +
                    " absolute=" + (converges_absolutely(a) ? "true" : "false")};
}

// 11 -------------------------------------------------------------------------
Outcome oracle_equivalence(const Options&) {
    std::mt19937_64 rng(11011);
    double worst_cesaro = 0.0, worst_sums = 0.0;
    for (Index M = 1; M <= 12; ++M)
        for (Index N = 1; N <= 12; ++N) {
            const auto t = oracle::random_table(M, N, rng, -100.0, 100.0);
            Grid terms(M, N);
            for (Index j = 1; j <= M; ++j)
                for (Index k = 1; k <= N; ++k) terms(j, k) = t(j, k);
            const auto u = [&](Index j, Index k) { return t(j, k); };
            const auto s = partial_sum_grid(terms);
            const auto sigma = cesaro_means(s);
            for (Index m = 1; m <= M; ++m)
                for (Index n = 1; n <= N; ++n) {
                    const double mass = std::max(oracle::abs_mass(u, m, n), 1e-300);
                    worst_sums = std::max(worst_sums, std::abs(s(m, n) - oracle::naive_partial_sum(u, m, n)) / mass);
                    worst_cesaro = std::max(worst_cesaro, std::abs(sigma(m, n) - oracle::naive_cesaro(u, m, n)) / mass);
                }
        }
    return {worst_cesaro <= 1e-12 && worst_sums <= 1e-12,
            "all grids M,N <= 12, worst relative error: cesaro " + fmt(worst_cesaro) + ", partial sums " +
                fmt(worst_sums) + " (relative to sum |u|)"};
}

// 12 -------------------------------------------------------------------------
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome determinism(const Options& opt) {
    if (opt.cli.empty() || opt.configs.empty()) return {false, "needs --cli and --configs"};
    std::vector<fs::path> configs;
    for (const auto& e : fs::directory_iterator(opt.configs))
        if (e.path().extension() == ".json") configs.push_back(e.path());
    std::sort(configs.begin(), configs.end());
    if (configs.empty()) return {false, "no configs in " + opt.configs};

    const fs::path work = fs::temp_directory_path() / ("summa_acceptance_" + std::to_string(::getpid()));
    Index identical = 0;
    std::string notes;
    for (const auto& cfg : configs) {
        std::string outputs[2][2];
        int codes[2] = {0, 0};
        for (int run = 0; run < 2; ++run) {
            const fs::path out = work / (cfg.stem().string() + "_" + std::to_string(run));
            const std::string cmd = "\"" + opt.cli + "\" --config \"" + cfg.string() + "\" --out \"" + out.string() +
                                    "\" > /dev/null 2>&1";
            const int status = std::system(cmd.c_str());
            codes[run] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
            outputs[run][0] = slurp(out / "results.csv");
            outputs[run][1] = slurp(out / "summary.json");
        }
        const bool same = codes[0] == codes[1] && codes[0] >= 0 && !outputs[0][0].empty() &&
                          outputs[0][0] == outputs[1][0] && outputs[0][1] == outputs[1][1];
        if (same) ++identical;
        notes += " " + cfg.stem().string() + "=" + (same ? "same" : "DIFF") + "(exit " + std::to_string(codes[0]) + ")";
    }
    fs::remove_all(work);
    return {identical == configs.size(),
            std::to_string(identical) + "/" + std::to_string(configs.size()) + " scenarios byte-identical:" + notes};
}

struct Criterion {
    int id;
    const char* name;
    Outcome (*run)(const Options&);
};

const Criterion kCriteria[] = {
    {1, "orthonormality of the tensor Haar system", orthonormality},
    {2, "Parseval and perfect reconstruction", parseval},
    {3, "mean-square s - sigma identity (interior-strip form)", deviation_identity},
    {4, "cubic tail bound", tail_bound},
    {5, "strong (C,1,1) trend vs sigma", theorem1_trend},
    {6, "strong (C,1,1) decay vs the limit for a finite expansion", theorem2_trend},
    {7, "Cauchy-Schwarz domination", cauchy},
    {8, "condition evaluators and implication chain", conditions},
    {9, "Kronecker lemma checks", kronecker},
    {10, "Pringsheim vs regular separation", separation},
    {11, "oracle equivalence of sums and means", oracle_equivalence},
    {12, "CLI determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"summa acceptance suite"};
    std::vector<int> only;
    Options opt;
    app.add_option("--criterion", only, "run only these criteria (1-12)");
    app.add_option("--cli", opt.cli, "path to the summa executable (criterion 12)");
    app.add_option("--configs", opt.configs, "directory of scenario configs (criterion 12)");
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    for (const auto& c : kCriteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        Outcome o;
        try {
            o = c.run(opt);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  (" << o.detail
                  << ")\n";
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
