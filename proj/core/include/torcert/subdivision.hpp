#pragma once

// Cells, piecewise-affine lifting functions and exact regularity checking for
// subdivisions of lattice polytopes into unit-cube pieces.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torcert/geometry.hpp"

namespace torcert {

enum class CellKind { Cube, CornerTetra, SigmaBlock, Semicube, Custom };

std::string to_string(CellKind k);

struct Cell {
    CellKind kind = CellKind::Custom;
    Vec3 anchor{};        // lattice-cube corner (i,j,k) the cell occupies
    int orientation = 0;  // corner / missing-corner / prism-axis code
    Polytope geometry;
    std::vector<Vec3> lattice;  // lattice points of the cell (== its vertices)
};

// integer affine form a·x + b
struct AffineForm {
    Int a1 = 0, a2 = 0, a3 = 0, b = 0;
    Int eval(const Vec3& p) const { return a1 * p.x + a2 * p.y + a3 * p.z + b; }
    friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

struct Subdivision {
    Polytope ambient;
    std::vector<Vec3> ambient_lattice;
    std::vector<Cell> cells;
    std::optional<std::vector<AffineForm>> lift;  // one form per cell
};

// Builds the cells of `ambient` cut along the integer grid. Every grid cube
// meeting the region must produce one of the recognized unit pieces (cube,
// corner tetrahedron, Sigma block, semicube prism, or a unimodular simplex,
// reported as Custom); anything else throws.
Subdivision subdivision_of(const Polytope& ambient);

// The standard lift: on the cube anchored at (i,j,k) the form is
// (1+2i)x + (1+2j)y + (1+2k)z - (i+j+k+i^2+j^2+k^2); cut cells inherit the
// form of their anchor cube.
AffineForm standard_form(const Vec3& anchor);
void attach_standard_lift(Subdivision& s);

// Delta_d = {x >= 0, x1+x2+x3 <= d}
Polytope simplex_polytope(Int d);
// S^1_k = {x,y >= 0, 0 <= z <= 1, x+y+z <= k}, big triangle at the bottom
Polytope layer_polytope(Int k);

Subdivision build_standard_subdivision(Int d);  // of Delta_d
Subdivision build_layer(Int k);                 // of S^1_k

struct CellCounts {
    Int cubes = 0, corner_tetras = 0, sigma_blocks = 0, semicubes = 0, custom = 0;
};
CellCounts count_cells(const Subdivision& s);

struct RegularityViolation {
    enum class Kind { FaceAgreement, Strictness, MissingLift } kind;
    int cell_a = -1, cell_b = -1;
    Vec3 point{};
};

struct RegularityReport {
    bool pass = false;
    std::optional<RegularityViolation> violation;
    Int pairs_checked = 0;
};

// (a) any two cells agree on their shared lattice points;
// (b) strict lower-envelope: for cells C != D and every vertex v of D that is
//     not a point of C, form_C(v) < form_D(v). Affine forms make vertex
//     checks sufficient: a violation inside a cell would be extremal at one
//     of its vertices.
RegularityReport check_regularity(const Subdivision& s);

}  // namespace torcert
