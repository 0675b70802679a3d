#include "summa/compensated.hpp"

#include <vector>

namespace summa {

Grid summed_area(const Grid& in) {
    Grid out(in.rows(), in.cols());
    std::vector<CompensatedSum> columns(in.cols());
    for (Index m = 1; m <= in.rows(); ++m) {
        CompensatedSum row;
        const auto src = in.row(m);
        auto dst = out.row(m);
        for (Index n = 0; n < in.cols(); ++n) {
            row.add(src[n]);
            columns[n].add(row.value());
            dst[n] = columns[n].value();
        }
    }
    return out;
}

}  // namespace summa
