// Experiment runner: reads a JSON config, runs one scenario and writes
// results.csv and summary.json (or error.json) into the output directory.
//
// Exit status: 0 accepted, 1 invalid config or violated invariant,
// 2 undetermined within the configured budget.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "summa/errors.hpp"
#include "summa/experiment.hpp"

namespace fs = std::filesystem;

namespace {

void write_error(const fs::path& out_dir, const std::string& text) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    std::ofstream out(out_dir / "error.json", std::ios::binary);
    if (out) out << text;
    std::cerr << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"summa: summability experiments for tensor Haar series"};
    std::string config_path;
    std::string out_dir = "out";
    bool describe_only = false;
    app.add_option("--config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_flag("--describe", describe_only, "print the resolved plan without running");
    CLI11_PARSE(app, argc, argv);

    const fs::path out(out_dir);
    summa::ExperimentConfig cfg;
    try {
        std::ifstream in(config_path, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        summa::Json parsed;
        try {
            parsed = summa::Json::parse(buf.str());
        } catch (const summa::Json::parse_error& e) {
            throw summa::ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        cfg = summa::ExperimentConfig::from_json(parsed);
        if (auto violations = summa::validate(cfg); !violations.empty()) {
            write_error(out, summa::error_json("invalid_config", "config violates invariants", violations));
            return summa::kViolated;
        }
        if (describe_only) {
            std::cout << summa::describe(cfg, out);
            return summa::kAccepted;
        }
        const auto result = summa::run(cfg);
        summa::write_outputs(result, out);
        return result.exit_code;
    } catch (const summa::Error& e) {
        write_error(out, summa::error_json(e.kind(), e.what()));
        return summa::kViolated;
    } catch (const std::exception& e) {
        write_error(out, summa::error_json("error", e.what()));
        return summa::kViolated;
    }
}
