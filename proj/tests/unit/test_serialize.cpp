#include <filesystem>
#include <random>

#include "doctest.h"
#include "summa/catalogue.hpp"
#include "summa/errors.hpp"
#include "summa/serialize.hpp"
#include "support/oracles.hpp"

using namespace summa;

TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = dist(rng) * std::pow(10.0, double(i % 40) - 20.0);
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-2.0) == "-2");
    CHECK(format_double(1e-300).find(',') == std::string::npos);
}

TEST_CASE("coefficient CSV round trip") {
    std::mt19937_64 rng(73);
    const auto t = oracle::random_table(6, 9, rng);
    CoefficientGrid c{Grid(6, 9)};
    for (Index j = 1; j <= 6; ++j)
        for (Index k = 1; k <= 9; ++k) c(j, k) = t(j, k);
    const auto csv = coefficients_to_csv(c);
    CHECK(csv.rfind("j,k,c\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    const auto header = coefficient_header(c, 16);
    CHECK(header["J"] == 6);
    CHECK(header["K"] == 9);
    CHECK(header["resolution"] == 16);
    CHECK(coefficients_from_csv(csv, header).c == c.c);

    const auto dir = std::filesystem::temp_directory_path() / "summa_serialize_test";
    std::filesystem::create_directories(dir);
    write_coefficients(c, 16, dir / "c.csv", dir / "c.json");
    CHECK(read_coefficients(dir / "c.csv", dir / "c.json").c == c.c);
    std::filesystem::remove_all(dir);
}

TEST_CASE("coefficient CSV errors") {
    const Json header{{"J", 2}, {"K", 2}, {"resolution", 4}};
    const auto sparse = coefficients_from_csv("j,k,c\n2,1,0.25\n", header);
    CHECK(sparse(2, 1) == 0.25);
    CHECK(sparse(1, 1) == 0.0);
    CHECK_THROWS_AS(coefficients_from_csv("j,k,c\n3,1,1\n", header), IndexOutOfRange);
    CHECK_THROWS_AS(coefficients_from_csv("j,k,c\n1,1,1\n1,1,2\n", header), ConfigError);
    CHECK_THROWS_AS(coefficients_from_csv("j,k,c\n1,1\n", header), ConfigError);
    CHECK_THROWS_AS(coefficients_from_csv("j,k,c\n1,1,abc\n", header), ConfigError);
}

TEST_CASE("report serialization") {
    const auto rep = detect_pringsheim(named_sequence("geometric"), 1e-6, 64);
    const auto j = to_json(rep);
    CHECK(j["status"] == "pringsheim");
    CHECK(j["limit"].get<double>() == *rep.limit);
    CHECK(j.contains("cutoff_K"));
    CHECK(to_json(detect_pringsheim(named_sequence("alternating"), 1e-6, 64))["limit"].is_null());

    const auto cond = to_json(classify_conditions(coefficient_model("geometric"), 64));
    CHECK(cond.dump().find("rademacher_menshov") != std::string::npos);

    StrongCesaroSeries t{Grid(2, 2), DeviationKind::vs_limit};
    t.values(2, 1) = 0.5;
    CHECK(to_csv(t) == "M,N,T\n1,1,0\n1,2,0\n2,1,0.5\n2,2,0\n");

    const std::vector<std::pair<Index, Index>> stages{{2, 2}, {4, 4}};
    const auto decay = verify_kronecker_decay(named_sequence("zero"), named_weight("product"), stages);
    CHECK(to_csv(decay) == "stage_m,stage_n,average\n2,2,0\n4,4,0\n");
}
