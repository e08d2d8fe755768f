#include "torus4/complex.hpp"

#include <stdexcept>

namespace torus4 {

F2Matrix boundary_matrix(const Hnf& h, int k) {
    if (k < 1 || k > 4) throw std::out_of_range("boundary_matrix: k must be in 1..4");
    CellIndexer ix(h);
    F2Matrix m(static_cast<std::size_t>(ix.num_cells(k - 1)),
               static_cast<std::size_t>(ix.num_cells(k)));
    for (std::int64_t j = 0; j < ix.num_cells(k); ++j) {
        Cell c = ix.cell_at(k, j);
        for (const Cell& b : boundary_cells(h, c))
            m.row[static_cast<std::size_t>(ix.index(b))].flip(static_cast<std::size_t>(j));
    }
    return m;
}

CssCode build_css(const Hnf& h) {
    CssCode code;
    code.h = h;
    code.n = 6 * h.det();
    code.hx = boundary_matrix(h, 2);                // rows: 1-cells
    code.hz = boundary_matrix(h, 3).transposed();   // rows: 3-cells
    for (const auto& r : code.hx.row)
        if (r.popcount() < 6) code.weight_collapsed = true;
    for (const auto& r : code.hz.row)
        if (r.popcount() < 6) code.weight_collapsed = true;
    return code;
}

Redundancies stabilizer_redundancies(const Hnf& h) {
    Redundancies red;
    red.x_rel = boundary_matrix(h, 1);
    red.z_rel = boundary_matrix(h, 4).transposed();
    return red;
}

}  // namespace torus4
