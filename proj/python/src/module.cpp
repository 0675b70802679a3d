#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "summa/catalogue.hpp"
#include "summa/cesaro.hpp"
#include "summa/double_series.hpp"
#include "summa/errors.hpp"
#include "summa/experiment.hpp"
#include "summa/haar.hpp"
#include "summa/serialize.hpp"

namespace py = pybind11;
using namespace summa;

namespace {

using Rows = std::vector<std::vector<double>>;

Grid to_grid(const Rows& rows) {
    if (rows.empty() || rows.front().empty()) throw InvalidDimension("grid needs at least one row and column");
    Grid g(rows.size(), rows.front().size());
    for (Index m = 1; m <= g.rows(); ++m) {
        if (rows[m - 1].size() != g.cols()) throw InvalidDimension("ragged grid");
        for (Index n = 1; n <= g.cols(); ++n) g(m, n) = rows[m - 1][n - 1];
    }
    return g;
}

Rows to_rows(const Grid& g) {
    Rows out(g.rows(), std::vector<double>(g.cols()));
    for (Index m = 1; m <= g.rows(); ++m)
        for (Index n = 1; n <= g.cols(); ++n) out[m - 1][n - 1] = g(m, n);
    return out;
}

}  // namespace

PYBIND11_MODULE(_summa, m) {
    m.doc() = "Double series, Cesaro means and tensor Haar expansions";

    py::register_exception<Error>(m, "SummaError", PyExc_ValueError);

    m.def("haar_1d", py::overload_cast<Index, double>(&haar_1d), py::arg("j"), py::arg("x"));
    m.def("psi", py::overload_cast<Index, Index, double, double>(&psi), py::arg("j"), py::arg("k"), py::arg("x1"),
          py::arg("x2"));

    m.def("partial_sums", [](const Rows& terms) { return to_rows(partial_sum_grid(to_grid(terms)).values); },
          py::arg("terms"), "Rectangular partial sums S[m][n] of a finite table of terms.");
    m.def("cesaro_means", [](const Rows& s) { return to_rows(cesaro_means(PartialSumGrid{to_grid(s)}).sigma); },
          py::arg("partial_sums"));

    m.def("detect_json",
          [](const std::string& sequence, const std::string& mode, double epsilon, Index budget) {
              const auto u = named_sequence(sequence);
              ConvergenceReport r;
              if (mode == "pringsheim")
                  r = detect_pringsheim(u, epsilon, budget);
              else if (mode == "regular")
                  r = detect_regular(u, epsilon, budget);
              else if (mode == "absolute")
                  r = detect_absolute(u, budget, kDefaultEscapeBound, epsilon);
              else
                  throw ConfigError("mode must be pringsheim, regular or absolute");
              return to_json(r).dump();
          },
          py::arg("sequence"), py::arg("mode"), py::arg("epsilon") = kDefaultEpsilon,
          py::arg("budget") = kDefaultBudget);

    m.def("classify_json",
          [](const std::string& model, Index budget, double ratio, double exponent) {
              return to_json(classify_conditions(coefficient_model(model, {ratio, exponent}), budget)).dump();
          },
          py::arg("model"), py::arg("budget"), py::arg("ratio") = 0.5, py::arg("exponent") = 1.0);

    m.def("gram_matrix", [](Index n, Index resolution) { return to_rows(gram_matrix(n, resolution)); },
          py::arg("n_functions"), py::arg("resolution"));

    m.def("run_json",
          [](const std::string& config) {
              const auto cfg = ExperimentConfig::from_json(Json::parse(config));
              const auto r = run(cfg);
              return py::make_tuple(r.exit_code, r.results_csv, r.summary_json);
          },
          py::arg("config"));

    m.def("sequence_ids", &sequence_ids);
    m.def("model_ids", &model_ids);
}
