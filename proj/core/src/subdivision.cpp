#include "torcert/subdivision.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace torcert {

std::string to_string(CellKind k) {
    switch (k) {
        case CellKind::Cube: return "Cube";
        case CellKind::CornerTetra: return "CornerTetra";
        case CellKind::SigmaBlock: return "SigmaBlock";
        case CellKind::Semicube: return "Semicube";
        case CellKind::Custom: return "Custom";
    }
    return "?";
}

namespace {

constexpr std::array<Vec3, 8> kCorners = {Vec3{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0},
                                          {0, 0, 1},     {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};

int corner_code(const Vec3& d) { return (int)(d.x + 2 * d.y + 4 * d.z); }

bool axis_corner_of(const std::vector<Vec3>& quad, Vec3* corner_out = nullptr) {
    // one vertex whose 3 axis-neighbors are exactly the other vertices
    for (const Vec3& v : quad) {
        int hits = 0;
        for (const Vec3& w : quad) {
            if (w == v) continue;
            Vec3 dif = w - v;
            if (std::abs(dif.x) + std::abs(dif.y) + std::abs(dif.z) == 1) ++hits;
        }
        if (hits == 3) {
            if (corner_out) *corner_out = v;
            return true;
        }
    }
    return false;
}

}  // namespace

Subdivision subdivision_of(const Polytope& ambient) {
    Subdivision s;
    s.ambient = ambient;
    s.ambient_lattice = ambient.lattice_points();
    Vec3 lo, hi;
    ambient.bbox(lo, hi);
    for (Int i = lo.x; i < hi.x; ++i)
        for (Int j = lo.y; j < hi.y; ++j)
            for (Int k = lo.z; k < hi.z; ++k) {
                const Vec3 a{i, j, k};
                std::vector<Vec3> kept;
                int missing_mask = 0;
                for (const Vec3& c : kCorners) {
                    if (ambient.contains(a + c)) kept.push_back(a + c);
                    else missing_mask |= 1 << corner_code(c);
                }
                if (kept.size() <= 3) continue;  // no full-dimensional piece
                Cell cell;
                cell.anchor = a;
                if (kept.size() == 8) {
                    cell.kind = CellKind::Cube;
                } else if (kept.size() == 7) {
                    cell.kind = CellKind::SigmaBlock;
                    for (int c = 0; c < 8; ++c)
                        if (missing_mask & (1 << c)) cell.orientation = c;
                } else if (kept.size() == 6) {
                    // the two missing corners must share an edge
                    std::array<int, 2> m{};
                    int n = 0;
                    for (int c = 0; c < 8; ++c)
                        if (missing_mask & (1 << c)) m[n++] = c;
                    int x = m[0] ^ m[1];
                    if (x != 1 && x != 2 && x != 4)
                        throw std::runtime_error("unrecognized 6-corner cell");
                    int axis = x == 1 ? 0 : (x == 2 ? 1 : 2);
                    cell.kind = CellKind::Semicube;
                    // code = prism axis + the fixed bits of the missing pair
                    int bits = 0, out = 0;
                    for (int ax = 0; ax < 3; ++ax) {
                        if (ax == axis) continue;
                        out |= ((m[0] >> ax) & 1) << bits;
                        ++bits;
                    }
                    cell.orientation = 4 * axis + out;
                } else {  // 4 kept corners
                    std::vector<Vec3> quad = kept;
                    if (orient3(quad[0], quad[1], quad[2], quad[3]) == 0)
                        continue;  // flat piece of boundary, no cell
                    Vec3 corner;
                    if (axis_corner_of(quad, &corner)) {
                        cell.kind = CellKind::CornerTetra;
                        cell.orientation = corner_code(corner - a);
                    } else if (std::abs(orient3(quad[0], quad[1], quad[2], quad[3])) == 1) {
                        cell.kind = CellKind::Custom;  // unimodular skew simplex
                    } else {
                        throw std::runtime_error("unrecognized 4-corner cell");
                    }
                }
                cell.geometry = Polytope::hull(kept);
                cell.lattice = cell.geometry.lattice_points();
                s.cells.push_back(std::move(cell));
            }
    return s;
}

AffineForm standard_form(const Vec3& anchor) {
    const Int i = anchor.x, j = anchor.y, k = anchor.z;
    return {1 + 2 * i, 1 + 2 * j, 1 + 2 * k, -(i + j + k + i * i + j * j + k * k)};
}

void attach_standard_lift(Subdivision& s) {
    std::vector<AffineForm> lift;
    lift.reserve(s.cells.size());
    for (const Cell& c : s.cells) lift.push_back(standard_form(c.anchor));
    s.lift = std::move(lift);
}

Polytope simplex_polytope(Int d) {
    return Polytope::hull({{0, 0, 0}, {d, 0, 0}, {0, d, 0}, {0, 0, d}});
}

Polytope layer_polytope(Int k) {
    std::vector<Vec3> pts = {{0, 0, 0}, {k, 0, 0}, {0, k, 0},
                             {0, 0, 1}, {k - 1, 0, 1}, {0, k - 1, 1}};
    if (k == 1) pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    return Polytope::hull(pts);
}

Subdivision build_standard_subdivision(Int d) {
    if (d < 1) throw std::invalid_argument("d >= 1 required");
    Subdivision s = subdivision_of(simplex_polytope(d));
    attach_standard_lift(s);
    return s;
}

Subdivision build_layer(Int k) {
    if (k < 1) throw std::invalid_argument("k >= 1 required");
    Subdivision s = subdivision_of(layer_polytope(k));
    attach_standard_lift(s);
    return s;
}

CellCounts count_cells(const Subdivision& s) {
    CellCounts c;
    for (const Cell& cell : s.cells) {
        switch (cell.kind) {
            case CellKind::Cube: ++c.cubes; break;
            case CellKind::CornerTetra: ++c.corner_tetras; break;
            case CellKind::SigmaBlock: ++c.sigma_blocks; break;
            case CellKind::Semicube: ++c.semicubes; break;
            case CellKind::Custom: ++c.custom; break;
        }
    }
    return c;
}

RegularityReport check_regularity(const Subdivision& s) {
    RegularityReport rep;
    if (!s.lift || s.lift->size() != s.cells.size()) {
        rep.violation = RegularityViolation{RegularityViolation::Kind::MissingLift, -1, -1, {}};
        return rep;
    }
    const auto& lift = *s.lift;
    const int n = (int)s.cells.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Cell& ci = s.cells[i];
            const Cell& cj = s.cells[j];
            ++rep.pairs_checked;
            if (i < j) {
                // (a) agreement on shared lattice points
                for (const Vec3& p : ci.lattice) {
                    if (!std::binary_search(cj.lattice.begin(), cj.lattice.end(), p)) continue;
                    if (lift[i].eval(p) != lift[j].eval(p)) {
                        rep.violation =
                            RegularityViolation{RegularityViolation::Kind::FaceAgreement, i, j, p};
                        return rep;
                    }
                }
            }
            // (b) strictness: vertices of cj not contained in ci
            for (const Vec3& v : cj.geometry.vertices()) {
                if (ci.geometry.contains(v)) continue;
                if (!(lift[i].eval(v) < lift[j].eval(v))) {
                    rep.violation = RegularityViolation{RegularityViolation::Kind::Strictness, i, j, v};
                    return rep;
                }
            }
        }
    }
    rep.pass = true;
    return rep;
}

}  // namespace torcert
