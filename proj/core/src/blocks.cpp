#include "torcert/blocks.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "torcert/packing.hpp"

namespace torcert {

namespace {

// ---- small helpers -----------------------------------------------------------

Polytope box_poly(Int sx, Int sy, Int sz) {
    return Polytope::hull({{0, 0, 0}, {sx, 0, 0}, {0, sy, 0}, {0, 0, sz},
                           {sx, sy, 0}, {sx, 0, sz}, {0, sy, sz}, {sx, sy, sz}});
}

int cell_at(const Subdivision& s, const Vec3& anchor) {
    for (int i = 0; i < (int)s.cells.size(); ++i)
        if (s.cells[i].anchor == anchor) return i;
    throw std::logic_error("no cell at requested anchor");
}

Unit whole_cell_unit(const Subdivision& s, int ci, UnitKind kind) {
    return Unit{kind, ci, s.cells[ci].lattice};
}

CertNodePtr leaf_from_solution(const std::string& name, Subdivision host, PackingOutcome out) {
    if (out.status != PackingStatus::Sat)
        throw std::runtime_error("packing search failed while building block '" + name + "'");
    return make_leaf(name, std::move(host), std::move(out.solution->units));
}

const std::vector<UnitKind> kTetraKinds = {UnitKind::TangentTetra, UnitKind::LimitTetraInCube,
                                           UnitKind::LimitTetraInSigma,
                                           UnitKind::LimitTetraInSemicube};

// ---- leaf blocks ---------------------------------------------------------------

CertNodePtr build_delta1() {
    Subdivision s = build_standard_subdivision(1);
    std::vector<Unit> us = {whole_cell_unit(s, 0, UnitKind::TangentTetra)};
    return make_leaf("delta1", std::move(s), std::move(us));
}

CertNodePtr build_cube_block() {
    Subdivision s = subdivision_of(box_poly(1, 1, 1));
    attach_standard_lift(s);
    std::vector<Unit> us = {whole_cell_unit(s, 0, UnitKind::SegreCubePair)};
    return make_leaf("cube", std::move(s), std::move(us));
}

CertNodePtr build_column7() {
    Subdivision s = subdivision_of(box_poly(1, 1, 7));
    attach_standard_lift(s);
    std::vector<Unit> us;
    for (Int z : {0, 2, 4, 6}) us.push_back(whole_cell_unit(s, cell_at(s, {0, 0, z}), UnitKind::SegreCubePair));
    return make_leaf("column7", std::move(s), std::move(us));
}

Polytope gamma7_poly() {
    return Polytope::hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 7}, {1, 0, 7}, {0, 1, 7}});
}

CertNodePtr build_gamma7() {
    Subdivision s = subdivision_of(gamma7_poly());
    attach_standard_lift(s);
    PackingProblem p;
    p.region = &s;
    p.allowed_kinds = {UnitKind::TangentTetra, UnitKind::LimitTetraInSemicube};
    p.target_contribution = 6;
    p.max_uncovered = 0;
    return leaf_from_solution("gamma7", s, solve(p, kBuildNodeBudget));
}

CertNodePtr build_layer_odd(Int k) {
    if (k < 3 || k % 2 == 0) throw std::invalid_argument("odd layer needs odd k >= 3");
    Subdivision s = build_layer(k);
    std::vector<Unit> us;
    const Int m = (k - 1) / 2;
    for (Int a = 0; 2 * a <= k - 3; ++a)
        for (Int b = 0; a + b <= m - 1; ++b)
            us.push_back(whole_cell_unit(s, cell_at(s, {2 * a, 2 * b, 0}), UnitKind::SegreCubePair));
    for (Int a = 0; a <= m; ++a)
        us.push_back(whole_cell_unit(s, cell_at(s, {2 * a, k - 1 - 2 * a, 0}), UnitKind::TangentTetra));
    std::ostringstream os;
    os << "layer_odd_" << k;
    return make_leaf(os.str(), std::move(s), std::move(us));
}

CertNodePtr build_layer8() {
    Subdivision s = build_layer(8);
    PackingProblem p;
    p.region = &s;
    p.allowed_kinds = {UnitKind::TangentTetra};
    p.target_contribution = 20;
    p.max_uncovered = 1;
    return leaf_from_solution("layer8", s, solve(p, kBuildNodeBudget));
}

CertNodePtr build_layer10() {
    Subdivision s = build_layer(10);
    PackingProblem p;
    p.region = &s;
    p.allowed_kinds = {UnitKind::TangentTetra, UnitKind::LimitTetraInCube};
    p.target_contribution = 30;
    p.max_uncovered = 1;
    p.kind_caps[UnitKind::LimitTetraInCube] = 2;
    return leaf_from_solution("layer10", s, solve(p, kBuildNodeBudget));
}

// The base d=6 configuration: 21 tetrahedra covering all 84 points, at most
// five of them limit tetrahedra and exactly one of those inside a Sigma block
// of the base layer.
CertNodePtr build_delta6() {
    Subdivision s = build_standard_subdivision(6);
    PackingProblem p;
    p.region = &s;
    p.allowed_kinds = kTetraKinds;
    p.target_contribution = 21;
    p.max_uncovered = 0;
    p.kind_caps[UnitKind::LimitTetraInCube] = 4;
    p.kind_caps[UnitKind::LimitTetraInSigma] = 1;
    std::vector<std::vector<Unit>> seeds;
    for (Unit& u : enumerate_candidate_units(s, {UnitKind::LimitTetraInSigma}))
        if (s.cells[u.cell_index].anchor.z == 0) seeds.push_back({u});
    return leaf_from_solution("delta6", s, solve_seed_sets(p, seeds, 400'000));
}

// the four lower layers of the d=12 configuration are solved jointly as the
// height-3 slab of Delta_12 (the layer above it stays empty and separates the
// slab from the stacked d=8 configuration)
CertNodePtr build_stack3_12() {
    Subdivision s = subdivision_of(Polytope::hull(
        {{0, 0, 0}, {12, 0, 0}, {0, 12, 0}, {0, 0, 3}, {9, 0, 3}, {0, 9, 3}}));
    attach_standard_lift(s);
    PackingProblem p;
    p.region = &s;
    p.allowed_kinds = {UnitKind::TangentTetra, UnitKind::LimitTetraInCube,
                       UnitKind::LimitTetraInSigma};
    p.target_contribution = 72;
    p.max_uncovered = 2;
    p.kind_caps[UnitKind::LimitTetraInCube] = 6;
    p.kind_caps[UnitKind::LimitTetraInSigma] = 2;
    // one limit tetra in a Sigma block of the S^1_10 slab and one in S^1_11
    std::vector<Unit> za, zb;
    for (Unit& u : enumerate_candidate_units(s, {UnitKind::LimitTetraInSigma})) {
        if (s.cells[u.cell_index].anchor.z == 2) za.push_back(u);
        if (s.cells[u.cell_index].anchor.z == 1) zb.push_back(u);
    }
    std::vector<std::vector<Unit>> seeds;
    for (int diag = 0; diag < 12; ++diag)
        for (int i = 0; i <= diag; ++i) {
            int j = diag - i;
            if (i < (int)za.size() && j < (int)zb.size()) seeds.push_back({za[i], zb[j]});
        }
    PackingOutcome out = solve_seed_sets(p, seeds, 2'000'000);
    if (out.status != PackingStatus::Sat) out = solve(p, 40'000'000);  // caps only, no seeds
    if (out.status != PackingStatus::Sat) {
        p.kind_caps.clear();
        out = solve(p, 80'000'000);
    }
    return leaf_from_solution("stack3_12", s, out);
}

// T*-wedges: V(h) = {A,B,C >= 0, A+C <= 6, B-A <= h-1}, h = m-5 for T*_m.
// The sharp tip where the two diagonal walls meet is a unimodular simplex
// cell; its whole-cell unit is seeded, the rest is searched.
Polytope vwedge_poly(Int h) {
    return Polytope::hull({{0, 0, 0}, {6, 0, 0}, {0, 0, 6},
                           {0, h - 1, 0}, {6, h + 5, 0}, {0, h - 1, 6}});
}

CertNodePtr build_tstar(Int m) {
    if (m != 7 && m != 9 && m != 11) throw std::invalid_argument("T* blocks exist for m in {7,9,11}");
    const Int h = m - 5;
    Subdivision s = subdivision_of(vwedge_poly(h));
    attach_standard_lift(s);
    int tip = -1;
    for (int i = 0; i < (int)s.cells.size(); ++i)
        if (s.cells[i].kind == CellKind::Custom) {
            if (tip >= 0) throw std::logic_error("unexpected extra custom cell in T* wedge");
            tip = i;
        }
    if (tip < 0) throw std::logic_error("missing tip cell in T* wedge");
    PackingProblem p;
    p.region = &s;
    p.allowed_kinds = {UnitKind::TangentTetra, UnitKind::LimitTetraInCube,
                       UnitKind::LimitTetraInSemicube};
    p.target_contribution = 14 * (h / 2 + 1);
    p.max_uncovered = 0;
    p.seeds = {whole_cell_unit(s, tip, UnitKind::TangentTetra)};
    std::ostringstream os;
    os << "Tstar" << m;
    return leaf_from_solution(os.str(), s, solve(p, kBuildNodeBudget));
}

// ---- composite blocks -----------------------------------------------------------

CertNodePtr build_P(Int m) {
    std::vector<PlacedNode> ch;
    for (Int a = 0;; a += 2) {
        if (a > m - 2) break;
        for (Int b = 0; a + b <= m - 2; b += 2)
            ch.push_back({AffineMap::translation({a, b, 0}), block("column7")});
    }
    for (Int a = 0; a <= m - 1; a += 2) {
        Int b = m - 1 - a;
        if (b < 0 || b % 2 != 0) continue;
        ch.push_back({AffineMap::translation({a, b, 0}), block("gamma7")});
    }
    std::ostringstream os;
    os << "P" << m;
    return make_composite(os.str(), std::move(ch));
}

CertNodePtr build_C7() {
    std::vector<PlacedNode> ch;
    for (Int a = 0; a <= 6; a += 2)
        for (Int b = 0; b <= 6; b += 2)
            ch.push_back({AffineMap::translation({a, b, 0}), block("column7")});
    return make_composite("C7", std::move(ch));
}

CertNodePtr build_H9() {
    std::vector<PlacedNode> ch;
    for (Int a = 0; a <= 8; a += 2)
        for (Int b = 0; b <= 8; b += 2) {
            if (a == 8 && b == 8) continue;
            ch.push_back({AffineMap::translation({a, b, 0}), block("column7")});
        }
    ch.push_back({AffineMap::translation({8, 8, 0}), block("gamma7")});
    return make_composite("H9", std::move(ch));
}

// staircase column blocks for the 10+8k and 12+8k families
CertNodePtr build_A(Int k, int family) {
    const Int beta = family == 10 ? 11 : 13;
    const Int d = family + 8 * k;
    auto col_ok = [&](Int a, Int b) {
        if (a < 0 || b < 0 || a > d - 16 || b > d - 16) return false;
        if (k == 2) return a <= beta - 1 && b <= beta - 1;
        return (a <= beta - 1 || b >= 8) && (b <= beta - 1 || a >= 8);
    };
    std::vector<PlacedNode> ch;
    Int cols = 0, gammas = 0;
    for (Int a = 0; a <= d - 9; a += 2)
        for (Int b = 0; a + b <= d - 8; b += 2) {
            if (!col_ok(a, b)) continue;
            if (a + b <= d - 9) {
                ch.push_back({AffineMap::translation({a, b, 0}), block("column7")});
                ++cols;
            } else if (a + b == d - 8) {
                ch.push_back({AffineMap::translation({a, b, 0}), block("gamma7")});
                ++gammas;
            }
        }
    if (8 * cols + 6 * gammas != alpha_count(k, family))
        throw std::logic_error("A_k layout disagrees with the alpha formula");
    std::ostringstream os;
    os << "A" << k << "_" << family;
    return make_composite(os.str(), std::move(ch));
}

// B_m = T6 + T*_{m-1} in band coordinates (u,v,z): the band is
// {u,v >= 0, u+v <= m, 0 <= z <= u+v-h} with h = m-6; T6 occupies {z <= v-h}.
CertNodePtr build_B(Int m) {
    const Int h = m - 6;
    AffineMap t6map{{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 1, 1}}, Vec3{0, h, 0}};
    AffineMap tsmap{{Vec3{1, 0, 1}, Vec3{-1, 1, 0}, Vec3{1, 0, 0}}, Vec3{h, 0, 0}};
    std::ostringstream os, ts;
    os << "B" << m;
    ts << "Tstar" << (m - 1);
    std::vector<PlacedNode> ch;
    ch.push_back({t6map, block("T6")});
    ch.push_back({tsmap, block(ts.str())});
    return make_composite(os.str(), std::move(ch));
}

CertNodePtr build_delta_odd(Int m);

// ---- registry --------------------------------------------------------------------

std::map<std::string, CertNodePtr>& registry() {
    static std::map<std::string, CertNodePtr> r;
    return r;
}

CertNodePtr build_block(const std::string& name) {
    if (name == "delta1") return build_delta1();
    if (name == "cube") return build_cube_block();
    if (name == "column7") return build_column7();
    if (name == "gamma7") return build_gamma7();
    if (name == "delta6" || name == "T6") return build_delta6();
    if (name == "delta5" || name == "T5") return build_delta_odd(5);
    if (name == "layer8") return build_layer8();
    if (name == "layer10") return build_layer10();
    if (name == "stack3_12") return build_stack3_12();
    if (name == "C7") return build_C7();
    if (name == "H9") return build_H9();
    if (name == "P7") return build_P(7);
    if (name == "P9") return build_P(9);
    if (name == "P11") return build_P(11);
    if (name == "P13") return build_P(13);
    if (name == "Tstar7") return build_tstar(7);
    if (name == "Tstar9") return build_tstar(9);
    if (name == "Tstar11") return build_tstar(11);
    if (name == "B8") return build_B(8);
    if (name == "B10") return build_B(10);
    if (name == "B12") return build_B(12);
    if (name.rfind("layer_odd_", 0) == 0) return build_layer_odd(std::stoll(name.substr(10)));
    if (name.rfind("delta_odd_", 0) == 0) return build_delta_odd(std::stoll(name.substr(10)));
    if (name.rfind("A", 0) == 0) {
        auto us = name.find('_');
        if (us != std::string::npos) {
            Int k = std::stoll(name.substr(1, us - 1));
            int fam = std::stoi(name.substr(us + 1));
            return build_A(k, fam);
        }
    }
    throw std::invalid_argument("unknown block: " + name);
}

}  // namespace

CertNodePtr block(const std::string& name) {
    auto& r = registry();
    auto it = r.find(name);
    if (it != r.end()) return it->second;
    CertNodePtr node = build_block(name);
    if (node->contribution != block_contribution(name))
        throw std::logic_error("block '" + name + "' disagrees with the catalog contribution");
    // aliases share one verified object
    r[name] = node;
    if (name == "delta6") r["T6"] = node;
    if (name == "T6") r["delta6"] = node;
    if (name == "delta5" || name == "delta_odd_5") r["T5"] = node;
    if (name == "T5") { r["delta5"] = node; r["delta_odd_5"] = node; }
    return node;
}

Int block_contribution(const std::string& name) {
    static const std::map<std::string, Int> table = {
        {"delta1", 1}, {"cube", 2},   {"column7", 8}, {"gamma7", 6}, {"delta5", 14},
        {"T5", 14},    {"delta6", 21}, {"T6", 21},     {"layer8", 20}, {"layer10", 30},
        {"stack3_12", 72}, {"C7", 128}, {"H9", 198},   {"P7", 72},    {"P9", 110},
        {"P11", 156},  {"P13", 210},  {"Tstar7", 28}, {"Tstar9", 42}, {"Tstar11", 56},
        {"B8", 49},    {"B10", 63},   {"B12", 77},
    };
    auto it = table.find(name);
    if (it != table.end()) return it->second;
    if (name.rfind("layer_odd_", 0) == 0) {
        Int k = std::stoll(name.substr(10));
        return (k + 1) * (k + 1) / 4;
    }
    if (name.rfind("delta_odd_", 0) == 0) {
        Int m = std::stoll(name.substr(10));
        return expected_dimension(m).n + 1;
    }
    if (name.rfind("A", 0) == 0) {
        auto us = name.find('_');
        if (us != std::string::npos)
            return alpha_count(std::stoll(name.substr(1, us - 1)), std::stoi(name.substr(us + 1)));
    }
    throw std::invalid_argument("unknown block: " + name);
}

std::vector<std::string> block_catalog_names() {
    return {"delta1", "cube",  "column7", "gamma7", "T5",      "T6",      "layer8",
            "layer10", "stack3_12", "C7",  "H9",     "P7",      "P9",      "P11",
            "P13",     "Tstar7", "Tstar9", "Tstar11", "B8",     "B10",     "B12",
            "A2_10",   "A3_10",  "A2_12",  "A3_12"};
}

// ---- certificate builders ----------------------------------------------------------

namespace {

CertNodePtr build_delta_odd(Int m) {
    if (m < 5 || m % 2 == 0) throw std::invalid_argument("odd simplex config needs odd m >= 5");
    std::vector<PlacedNode> ch;
    for (Int k = 3; k <= m; k += 2) {
        std::ostringstream os;
        os << "layer_odd_" << k;
        ch.push_back({AffineMap::translation({0, 0, m - k}), block(os.str())});
    }
    ch.push_back({AffineMap::translation({0, 0, m - 1}), block("delta1")});
    std::ostringstream os;
    os << "delta_odd_" << m;
    return make_composite(os.str(), std::move(ch));
}

CertNodePtr config_root(Int d);

// band pair (T6 over T5) hugging the face at corner (x0,y0), x0+y0 = d
void add_face_band(std::vector<PlacedNode>& ch, Int x0, Int y0) {
    AffineMap t6{{Vec3{-1, 0, 0}, Vec3{0, -1, 0}, Vec3{0, -1, 1}}, Vec3{x0, y0, 0}};
    AffineMap t5{{Vec3{-1, 0, 0}, Vec3{0, -1, 1}, Vec3{-1, 0, 1}}, Vec3{x0 - 1, y0, 1}};
    ch.push_back({t6, block("T6")});
    ch.push_back({t5, block("T5")});
}

void add_B_block(std::vector<PlacedNode>& ch, Int m, Int x0, Int y0) {
    AffineMap flip{{Vec3{-1, 0, 0}, Vec3{0, -1, 0}, Vec3{0, 0, 1}}, Vec3{x0, y0, 0}};
    std::ostringstream os;
    os << "B" << m;
    ch.push_back({flip, block(os.str())});
}

AffineMap down_map(Int c, Int dcoord) {  // P7 rotated: (X,Y,Z) -> (c-X, d-Y, Z)
    return {{Vec3{-1, 0, 0}, Vec3{0, -1, 0}, Vec3{0, 0, 1}}, Vec3{c, dcoord, 0}};
}

CertNodePtr build_family6(Int d) {
    const Int k = (d - 6) / 8;
    std::vector<PlacedNode> ch;
    ch.push_back({AffineMap::translation({0, 0, 8}), config_root(d - 8)});
    for (Int i = 0; 8 * i <= 8 * (k - 2); ++i)
        for (Int j = 0; i + j <= k - 2; ++j)
            ch.push_back({AffineMap::translation({8 * i, 8 * j, 0}), block("C7")});
    for (Int i = 0; i <= k - 1; ++i)
        ch.push_back({AffineMap::translation({8 * i, 8 * (k - 1 - i), 0}), block("P7")});
    ch.push_back({AffineMap::translation({d - 6, 0, 0}), block("delta6")});
    ch.push_back({AffineMap::translation({0, d - 6, 0}), block("delta6")});
    for (Int i = 1; i <= k - 1; ++i)
        ch.push_back({AffineMap::translation({8 * i, d - 6 - 8 * i, 0}), block("delta6")});
    for (Int a = 0; a <= k - 1; ++a) add_face_band(ch, d - 7 - 8 * a, 7 + 8 * a);
    std::ostringstream os;
    os << "delta" << d;
    return make_composite(os.str(), std::move(ch));
}

CertNodePtr build_family0(Int d) {
    const Int k = (d - 8) / 8;
    std::vector<PlacedNode> ch;
    ch.push_back({AffineMap::translation({0, 0, 8}), config_root(d - 8)});
    auto tr = [&](Int x, Int y, const std::string& b) {
        ch.push_back({AffineMap::translation({x, y, 0}), block(b)});
    };
    if (k == 1) {
        tr(0, 0, "P9");
        tr(10, 0, "delta6");
        tr(0, 10, "delta6");
        add_B_block(ch, 8, 9, 9);
    } else if (k == 2) {
        tr(0, 0, "H9");
        tr(10, 0, "P7");
        tr(0, 10, "P7");
        tr(18, 0, "delta6");
        tr(0, 18, "delta6");
        add_B_block(ch, 8, 17, 9);
        tr(8, 10, "delta6");
        add_face_band(ch, 7, 17);
    } else if (k == 3) {
        tr(0, 0, "H9");
        tr(10, 0, "P7");
        tr(0, 10, "P7");
        tr(18, 0, "P7");
        ch.push_back({down_map(17, 8), block("P7")});
        tr(9, 9, "P7");
        ch.push_back({down_map(8, 17), block("P7")});
        tr(0, 18, "P7");
        tr(26, 0, "delta6");
        tr(0, 26, "delta6");
        add_B_block(ch, 8, 25, 9);
        tr(16, 10, "delta6");
        add_face_band(ch, 15, 17);
        tr(8, 18, "delta6");
        add_face_band(ch, 7, 25);
    } else if (k == 4) {
        tr(0, 0, "H9");
        tr(10, 0, "P7");
        ch.push_back({down_map(17, 8), block("P7")});
        tr(18, 0, "C7");
        tr(18, 8, "P7");
        tr(26, 0, "P7");
        tr(0, 10, "P7");
        ch.push_back({down_map(8, 17), block("P7")});
        tr(0, 18, "P7");
        ch.push_back({down_map(8, 25), block("P7")});
        tr(0, 26, "P7");
        tr(9, 9, "P7");
        ch.push_back({down_map(17, 16), block("P7")});
        tr(9, 17, "P7");
        tr(34, 0, "delta6");
        tr(0, 34, "delta6");
        add_B_block(ch, 8, 33, 9);
        tr(24, 10, "delta6");
        add_face_band(ch, 23, 17);
        tr(16, 18, "delta6");
        add_face_band(ch, 15, 25);
        tr(8, 26, "delta6");
        add_face_band(ch, 7, 33);
    } else {
        throw std::invalid_argument("no catalog layout for d = 8+8k with k > 4");
    }
    std::ostringstream os;
    os << "delta" << d;
    return make_composite(os.str(), std::move(ch));
}

CertNodePtr build_family_10_12(Int d, int family) {
    const Int k = (d - family) / 8;
    const Int beta = family == 10 ? 11 : 13;
    const Int bm = family == 10 ? 10 : 12;
    std::vector<PlacedNode> ch;
    ch.push_back({AffineMap::translation({0, 0, 8}), config_root(d - 8)});
    auto tr = [&](Int x, Int y, const std::string& b) {
        ch.push_back({AffineMap::translation({x, y, 0}), block(b)});
    };
    if (k == 1) {
        tr(0, 0, family == 10 ? "P11" : "P13");
        tr(d - 6, 0, "delta6");
        tr(0, d - 6, "delta6");
        add_B_block(ch, bm, beta, beta);
        std::ostringstream os;
        os << "delta" << d;
        return make_composite(os.str(), std::move(ch));
    }
    {
        std::ostringstream an;
        an << "A" << k << "_" << family;
        ch.push_back({AffineMap::translation({0, 0, 0}), block(an.str())});
    }
    for (Int i = 0; i <= k - 3; ++i) {
        tr(beta + 1 + 8 * i, 0, "C7");
        tr(0, beta + 1 + 8 * i, "C7");
    }
    tr(beta + 1 + 8 * (k - 2), 0, "P7");
    tr(0, beta + 1 + 8 * (k - 2), "P7");
    tr(d - 6, 0, "delta6");
    tr(0, d - 6, "delta6");
    add_B_block(ch, bm, d - 7, beta);
    for (Int i = 0; i <= k - 2; ++i) {
        tr(d - (beta + 7) - 8 * i, beta + 1 + 8 * i, "delta6");
        add_face_band(ch, d - (beta + 8) - 8 * i, beta + 8 + 8 * i);
    }
    std::ostringstream os;
    os << "delta" << d;
    return make_composite(os.str(), std::move(ch));
}

std::map<Int, CertNodePtr>& config_cache() {
    static std::map<Int, CertNodePtr> c;
    return c;
}

CertNodePtr config_root(Int d) {
    auto& cache = config_cache();
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    CertNodePtr node;
    if (d % 2 == 1) {
        node = build_delta_odd(d);
    } else if (d == 6) {
        node = block("delta6");
    } else if (d == 8) {
        std::vector<PlacedNode> ch;
        ch.push_back({AffineMap::translation({0, 0, 2}), block("delta6")});
        ch.push_back({AffineMap::translation({0, 0, 0}), block("layer8")});
        node = make_composite("delta8", std::move(ch));
    } else if (d == 10) {
        std::vector<PlacedNode> ch;
        ch.push_back({AffineMap::translation({0, 0, 2}), config_root(8)});
        ch.push_back({AffineMap::translation({0, 0, 0}), block("layer10")});
        node = make_composite("delta10", std::move(ch));
    } else if (d == 12) {
        std::vector<PlacedNode> ch;
        ch.push_back({AffineMap::translation({0, 0, 4}), config_root(8)});
        ch.push_back({AffineMap::translation({0, 0, 0}), block("stack3_12")});
        node = make_composite("delta12", std::move(ch));
    } else if (d % 8 == 6) {
        node = build_family6(d);
    } else if (d % 8 == 0) {
        node = build_family0(d);
    } else {
        node = build_family_10_12(d, d % 8 == 2 ? 10 : 12);
    }
    cache[d] = node;
    return node;
}

}  // namespace

Certificate odd_layer_config(Int k) {
    if (k < 3 || k % 2 == 0) throw std::invalid_argument("k must be odd and >= 3");
    std::ostringstream os;
    os << "layer_odd_" << k;
    CertNodePtr node = block(os.str());
    return Certificate{0, node->contribution - 1, node};
}

Certificate odd_config(Int d) {
    if (d < 5 || d % 2 == 0) throw std::invalid_argument("d must be odd and >= 5");
    CertNodePtr node = config_root(d);
    return Certificate{d, expected_dimension(d).n, node};
}

Certificate even_base_config(Int d) {
    if (d != 6 && d != 8 && d != 10 && d != 12)
        throw std::invalid_argument("base configurations exist for d in {6,8,10,12}");
    CertNodePtr node = config_root(d);
    return Certificate{d, expected_dimension(d).n, node};
}

Certificate recursive_config(Int d) {
    if (d < 14 || d % 2 == 1) throw std::invalid_argument("recursive configurations need even d >= 14");
    CertNodePtr node = config_root(d);
    return Certificate{d, expected_dimension(d).n, node};
}

Certificate config_for(Int d) {
    if (d < 5) throw std::invalid_argument("certificates start at d = 5; smaller d are classical");
    CertNodePtr node = config_root(d);
    return Certificate{d, expected_dimension(d).n, node};
}

}  // namespace torcert
