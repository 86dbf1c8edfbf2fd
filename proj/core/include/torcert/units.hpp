#pragma once

// Units: the placed witnesses a certificate is made of. Each unit occupies one
// cell of a subdivision and contributes points toward a secant-index claim.

#include <string>
#include <vector>

#include "torcert/subdivision.hpp"

namespace torcert {

enum class UnitKind {
    TangentTetra,          // corner tetrahedron: cell vertex + its 3 cell-edge
                           // neighbors along coordinate axes (a tangent space
                           // at a torus-fixed point); also the whole cell when
                           // the cell itself is a unit simplex
    LimitTetraInCube,      // any other affinely independent vertex quadruple
    LimitTetraInSigma,     //   (these require the limit-projection check)
    LimitTetraInSemicube,
    SegreCubePair,         // the full cube, worth two general points
};

std::string to_string(UnitKind k);
UnitKind unit_kind_from_string(const std::string& s);

struct Unit {
    UnitKind kind = UnitKind::TangentTetra;
    int cell_index = -1;
    std::vector<Vec3> vertices;  // sorted lexicographically

    Int contribution() const { return kind == UnitKind::SegreCubePair ? 2 : 1; }
    friend bool operator==(const Unit&, const Unit&) = default;
};

// Is `u` a valid unit for its cell? Checks the vertex-count/kind/cell-kind
// rules and affine independence.
bool unit_legal(const Unit& u, const Cell& cell, std::string* why = nullptr);

// True iff the quadruple is a vertex of `verts` plus its 3 axis-neighbors.
bool is_axis_corner_tetra(const std::vector<Vec3>& quad, Vec3* corner = nullptr);

// Exact closed-disjointness of two unit hulls (integer separating-axis test;
// complete for convex polytopes because all face normals and edge cross
// products are among the candidate axes).
bool units_disjoint_hulls(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

}  // namespace torcert
