#pragma once

#include "torus4/f2.hpp"
#include "torus4/lattice.hpp"

namespace torus4 {

// F2 matrix of the boundary map from k-cells to (k-1)-cells in the stable
// cell order: rows are (k-1)-cells, columns are k-cells, entries are the
// parity of the incidence count (coinciding boundary pairs cancel).
F2Matrix boundary_matrix(const Hnf& h, int k);

// CSS code on the 2-cells: X checks are 1-cell coboundaries (rows of hx),
// Z checks are 3-cell boundaries (rows of hz). Redundant rows are kept.
struct CssCode {
    Hnf h;
    std::int64_t n = 0;  // data qubits = 6 * det
    F2Matrix hx;         // 4*det x n
    F2Matrix hz;         // 4*det x n
    bool weight_collapsed = false;  // some check has weight < 6

    std::int64_t k() const { return 6; }
};

CssCode build_css(const Hnf& h);

// Relations among check rows coming from the cells one dimension further out:
// each 0-cell gives an F2 relation among hx rows, each 4-cell among hz rows.
struct Redundancies {
    F2Matrix x_rel;  // det x 4*det, row v: sum of hx rows in coboundary of v is 0
    F2Matrix z_rel;  // det x 4*det, row w: sum of hz rows in boundary of w is 0
};

Redundancies stabilizer_redundancies(const Hnf& h);

}  // namespace torus4
