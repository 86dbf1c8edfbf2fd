#include "torcert/packing.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>

namespace torcert {

// --- units ------------------------------------------------------------------

std::string to_string(UnitKind k) {
    switch (k) {
        case UnitKind::TangentTetra: return "TangentTetra";
        case UnitKind::LimitTetraInCube: return "LimitTetraInCube";
        case UnitKind::LimitTetraInSigma: return "LimitTetraInSigma";
        case UnitKind::LimitTetraInSemicube: return "LimitTetraInSemicube";
        case UnitKind::SegreCubePair: return "SegreCubePair";
    }
    return "?";
}

UnitKind unit_kind_from_string(const std::string& s) {
    if (s == "TangentTetra" || s == "tangent") return UnitKind::TangentTetra;
    if (s == "LimitTetraInCube" || s == "limit-cube") return UnitKind::LimitTetraInCube;
    if (s == "LimitTetraInSigma" || s == "limit-sigma") return UnitKind::LimitTetraInSigma;
    if (s == "LimitTetraInSemicube" || s == "limit-semicube") return UnitKind::LimitTetraInSemicube;
    if (s == "SegreCubePair" || s == "cubepair") return UnitKind::SegreCubePair;
    throw std::invalid_argument("unknown unit kind: " + s);
}

bool is_axis_corner_tetra(const std::vector<Vec3>& quad, Vec3* corner) {
    if (quad.size() != 4) return false;
    for (const Vec3& v : quad) {
        int hits = 0;
        for (const Vec3& w : quad) {
            if (w == v) continue;
            Vec3 d = w - v;
            if (std::abs(d.x) + std::abs(d.y) + std::abs(d.z) == 1) ++hits;
        }
        if (hits == 3) {
            if (corner) *corner = v;
            return true;
        }
    }
    return false;
}

namespace {
bool subset_of(const std::vector<Vec3>& sub, const std::vector<Vec3>& sorted_sup) {
    for (const Vec3& v : sub)
        if (!std::binary_search(sorted_sup.begin(), sorted_sup.end(), v)) return false;
    return true;
}
bool affinely_independent(const std::vector<Vec3>& q) {
    return q.size() == 4 && orient3(q[0], q[1], q[2], q[3]) != 0;
}
}  // namespace

bool unit_legal(const Unit& u, const Cell& cell, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::vector<Vec3> vs = u.vertices;
    if (!std::is_sorted(vs.begin(), vs.end())) return fail("vertices not sorted");
    if (!subset_of(vs, cell.lattice)) return fail("vertices not in cell");
    switch (u.kind) {
        case UnitKind::SegreCubePair:
            if (cell.kind != CellKind::Cube) return fail("cube pair outside a cube cell");
            if (vs.size() != 8 || vs != cell.lattice) return fail("cube pair must use the full cube");
            return true;
        case UnitKind::TangentTetra:
            if (vs.size() != 4) return fail("tetra needs 4 vertices");
            if (!affinely_independent(vs)) return fail("degenerate tetra");
            if (is_axis_corner_tetra(vs)) return true;
            // whole-cell unit on a unit-simplex cell (CornerTetra cells are
            // axis corners already; Custom simplex cells land here)
            if (cell.lattice.size() == 4 && vs == cell.lattice &&
                std::abs(orient3(vs[0], vs[1], vs[2], vs[3])) == 1)
                return true;
            return fail("tangent tetra is not a cell corner");
        case UnitKind::LimitTetraInCube:
            if (cell.kind != CellKind::Cube) return fail("limit-cube tetra outside a cube cell");
            break;
        case UnitKind::LimitTetraInSigma:
            if (cell.kind != CellKind::SigmaBlock) return fail("limit-sigma tetra outside a Sigma cell");
            break;
        case UnitKind::LimitTetraInSemicube:
            if (cell.kind != CellKind::Semicube) return fail("limit-semicube tetra outside a prism cell");
            break;
    }
    if (vs.size() != 4) return fail("tetra needs 4 vertices");
    if (!affinely_independent(vs)) return fail("degenerate tetra");
    return true;
}

// --- candidate enumeration ---------------------------------------------------

namespace {

int kind_rank(UnitKind k) {
    switch (k) {
        case UnitKind::TangentTetra: return 0;
        case UnitKind::LimitTetraInCube:
        case UnitKind::LimitTetraInSigma:
        case UnitKind::LimitTetraInSemicube: return 1;
        case UnitKind::SegreCubePair: return 2;
    }
    return 3;
}

}  // namespace

std::vector<Unit> enumerate_candidate_units(const Subdivision& region,
                                            const std::vector<UnitKind>& kinds) {
    std::set<UnitKind> want(kinds.begin(), kinds.end());
    std::vector<Unit> out;
    for (int ci = 0; ci < (int)region.cells.size(); ++ci) {
        const Cell& cell = region.cells[ci];
        const auto& vs = cell.lattice;
        std::vector<Unit> local;
        auto add = [&](UnitKind k, std::vector<Vec3> verts) {
            std::sort(verts.begin(), verts.end());
            local.push_back(Unit{k, ci, std::move(verts)});
        };
        // axis-corner tangent tetras (and whole-cell units on simplex cells)
        if (want.count(UnitKind::TangentTetra)) {
            if (vs.size() == 4) {
                if (affinely_independent(vs)) add(UnitKind::TangentTetra, vs);
            } else {
                for (const Vec3& v : vs) {
                    std::vector<Vec3> q{v};
                    for (const Vec3& w : vs) {
                        Vec3 d = w - v;
                        if (std::abs(d.x) + std::abs(d.y) + std::abs(d.z) == 1) q.push_back(w);
                    }
                    if (q.size() == 4 && affinely_independent(q)) add(UnitKind::TangentTetra, q);
                }
            }
        }
        UnitKind limit_kind = UnitKind::LimitTetraInCube;
        bool has_limit = false;
        switch (cell.kind) {
            case CellKind::Cube: limit_kind = UnitKind::LimitTetraInCube; has_limit = true; break;
            case CellKind::SigmaBlock: limit_kind = UnitKind::LimitTetraInSigma; has_limit = true; break;
            case CellKind::Semicube: limit_kind = UnitKind::LimitTetraInSemicube; has_limit = true; break;
            default: break;
        }
        if (has_limit && want.count(limit_kind) && vs.size() > 4) {
            const int n = (int)vs.size();
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    for (int c = b + 1; c < n; ++c)
                        for (int d = c + 1; d < n; ++d) {
                            std::vector<Vec3> q{vs[a], vs[b], vs[c], vs[d]};
                            if (!affinely_independent(q)) continue;
                            if (is_axis_corner_tetra(q)) continue;  // those are tangent
                            add(limit_kind, q);
                        }
        }
        if (cell.kind == CellKind::Cube && want.count(UnitKind::SegreCubePair))
            add(UnitKind::SegreCubePair, vs);
        std::sort(local.begin(), local.end(), [&](const Unit& x, const Unit& y) {
            int rx = kind_rank(x.kind), ry = kind_rank(y.kind);
            if (rx != ry) return rx < ry;
            return x.vertices < y.vertices;
        });
        // deduplicate identical vertex sets within the cell
        local.erase(std::unique(local.begin(), local.end(),
                                [](const Unit& x, const Unit& y) { return x.vertices == y.vertices; }),
                    local.end());
        for (Unit& u : local) out.push_back(std::move(u));
    }
    return out;
}

// --- exact disjointness for unit hulls (separating axis, all integer) --------

namespace {

void push_dirs(const std::vector<Vec3>& vs, std::vector<Vec3>& dirs) {
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j) {
            Vec3 d = reduced(vs[j] - vs[i]);
            if (d < Vec3{}) d = Vec3{} - d;
            dirs.push_back(d);
        }
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
}

}  // namespace

bool units_disjoint_hulls(const std::vector<Vec3>& A, const std::vector<Vec3>& B) {
    std::vector<Vec3> da, db;
    push_dirs(A, da);
    push_dirs(B, db);
    std::vector<Vec3> axes;
    // crosses of direction pairs from the union cover both face normals and
    // edge-cross-edge separators
    std::vector<Vec3> all = da;
    all.insert(all.end(), db.begin(), db.end());
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) {
            Vec3 n = cross(all[i], all[j]);
            if (!(n == Vec3{})) axes.push_back(n);
        }
    for (const Vec3& n : axes) {
        Int alo = dot(n, A[0]), ahi = alo;
        for (const Vec3& p : A) {
            Int v = dot(n, p);
            alo = std::min(alo, v);
            ahi = std::max(ahi, v);
        }
        Int blo = dot(n, B[0]), bhi = blo;
        for (const Vec3& p : B) {
            Int v = dot(n, p);
            blo = std::min(blo, v);
            bhi = std::max(bhi, v);
        }
        if (ahi < blo || bhi < alo) return true;
    }
    return false;
}

// --- search engine ------------------------------------------------------------

namespace {

struct Bitset {
    std::vector<std::uint64_t> w;
    explicit Bitset(size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(size_t i) { w[i >> 6] |= 1ull << (i & 63); }
    void reset(size_t i) { w[i >> 6] &= ~(1ull << (i & 63)); }
    bool test(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    int count() const {
        int c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }
};

struct Engine {
    const Subdivision* region;
    std::vector<Unit> units;
    std::vector<Vec3> pts;                     // region lattice, sorted
    std::vector<std::vector<int>> unit_pts;    // point indices per unit
    std::vector<std::vector<int>> cover;       // unit indices per point
    std::vector<std::vector<int>> conflicts;   // per unit (excluding itself)
    std::vector<char> active;
    std::vector<int> cnt;                      // active candidate count per point
    Bitset covered;
    Int nodes = 0;
    Int budget = kDefaultNodeBudget;
    bool out_of_budget = false;

    Engine(const Subdivision& r, std::vector<Unit> us) : region(&r), units(std::move(us)) {
        pts = r.ambient_lattice;
        std::map<Vec3, int> idx;
        for (int i = 0; i < (int)pts.size(); ++i) idx[pts[i]] = i;
        unit_pts.resize(units.size());
        cover.assign(pts.size(), {});
        for (int u = 0; u < (int)units.size(); ++u) {
            for (const Vec3& v : units[u].vertices) {
                auto it = idx.find(v);
                if (it == idx.end()) throw std::logic_error("unit vertex outside region lattice");
                unit_pts[u].push_back(it->second);
                cover[it->second].push_back(u);
            }
        }
        // conflicts: shared point, or overlapping hulls (bbox pre-filtered)
        conflicts.assign(units.size(), {});
        std::map<Vec3, std::vector<int>> byanchor;
        for (int u = 0; u < (int)units.size(); ++u)
            byanchor[region->cells[units[u].cell_index].anchor].push_back(u);
        for (int u = 0; u < (int)units.size(); ++u) {
            const Vec3 a = region->cells[units[u].cell_index].anchor;
            for (Int dx = -1; dx <= 1; ++dx)
                for (Int dy = -1; dy <= 1; ++dy)
                    for (Int dz = -1; dz <= 1; ++dz) {
                        auto it = byanchor.find(a + Vec3{dx, dy, dz});
                        if (it == byanchor.end()) continue;
                        for (int v : it->second) {
                            if (v <= u) continue;
                            bool share = false;
                            for (int p : unit_pts[u])
                                if (std::binary_search(unit_pts[v].begin(), unit_pts[v].end(), p)) {
                                    share = true;
                                    break;
                                }
                            if (share || !units_disjoint_hulls(units[u].vertices, units[v].vertices)) {
                                conflicts[u].push_back(v);
                                conflicts[v].push_back(u);
                            }
                        }
                    }
        }
        active.assign(units.size(), 1);
        cnt.assign(pts.size(), 0);
        for (int p = 0; p < (int)pts.size(); ++p) cnt[p] = (int)cover[p].size();
        covered = Bitset(pts.size());
    }

    void reset() {
        std::fill(active.begin(), active.end(), 1);
        for (int p = 0; p < (int)pts.size(); ++p) cnt[p] = (int)cover[p].size();
        covered = Bitset(pts.size());
        trail.clear();
        chosen.clear();
        out_of_budget = false;
    }

    std::vector<int> trail;  // deactivated unit indices, for undo
    void deactivate(int u) {
        if (!active[u]) return;
        active[u] = 0;
        trail.push_back(u);
        for (int p : unit_pts[u]) --cnt[p];
    }
    void undo_to(size_t mark) {
        while (trail.size() > mark) {
            int u = trail.back();
            trail.pop_back();
            active[u] = 1;
            for (int p : unit_pts[u]) ++cnt[p];
        }
    }

    // returns chosen unit list on success
    std::vector<int> chosen;
    bool found = false;

    bool dfs(Int got, Int target, Int unc, Int max_unc, std::map<UnitKind, int>& caps,
             std::map<UnitKind, int>& used) {
        if (++nodes > budget) {
            out_of_budget = true;
            return false;
        }
        if (got == target) {
            int rest = (int)pts.size() - covered.count();
            return rest <= max_unc - unc;
        }
        // scan uncovered points: forced-uncovered count, coverable count, MRV pick
        Int forced = 0, coverable = 0;
        int bestp = -1, bestn = 1 << 30;
        for (int p = 0; p < (int)pts.size(); ++p) {
            if (covered.test(p)) continue;
            if (cnt[p] == 0) {
                if (unc + ++forced > max_unc) return false;
                continue;
            }
            ++coverable;
            if (cnt[p] < bestn) {
                bestn = cnt[p];
                bestp = p;
            }
        }
        if (got + coverable / 4 < target) return false;
        if (bestp < 0) return false;
        for (int u : cover[bestp]) {
            if (!active[u]) continue;
            UnitKind k = units[u].kind;
            auto capit = caps.find(k);
            if (capit != caps.end() && used[k] + 1 > capit->second) continue;
            size_t mark = trail.size();
            for (int p : unit_pts[u]) covered.set(p);
            deactivate(u);
            for (int v : conflicts[u]) deactivate(v);
            ++used[k];
            chosen.push_back(u);
            if (dfs(got + units[u].contribution(), target, unc, max_unc, caps, used)) return true;
            if (out_of_budget) return false;
            chosen.pop_back();
            --used[k];
            undo_to(mark);
            for (int p : unit_pts[u]) covered.reset(p);
        }
        if (unc < max_unc) {
            covered.set(bestp);
            if (dfs(got, target, unc + 1, max_unc, caps, used)) return true;
            covered.reset(bestp);
        }
        return false;
    }

    // exhaustive maximization with admissible pruning
    Int best = -1;
    std::vector<int> best_chosen;
    void dfs_max(Int got) {
        if (++nodes > budget) {
            out_of_budget = true;
            return;
        }
        if (got > best) {
            best = got;
            best_chosen = chosen;
        }
        Int coverable = 0;
        int bestp = -1, bestn = 1 << 30;
        for (int p = 0; p < (int)pts.size(); ++p) {
            if (covered.test(p)) continue;
            if (cnt[p] == 0) continue;
            ++coverable;
            if (cnt[p] < bestn) {
                bestn = cnt[p];
                bestp = p;
            }
        }
        if (bestp < 0 || got + coverable / 4 <= best) return;
        for (int u : cover[bestp]) {
            if (!active[u]) continue;
            size_t mark = trail.size();
            for (int p : unit_pts[u]) covered.set(p);
            deactivate(u);
            for (int v : conflicts[u]) deactivate(v);
            chosen.push_back(u);
            dfs_max(got + units[u].contribution());
            chosen.pop_back();
            undo_to(mark);
            for (int p : unit_pts[u]) covered.reset(p);
            if (out_of_budget) return;
        }
        covered.set(bestp);
        dfs_max(got);
        covered.reset(bestp);
    }
};

}  // namespace

namespace {

PackingOutcome run_engine(Engine& eng, const PackingProblem& p,
                          const std::vector<Unit>& extra_seeds, Int node_budget) {
    eng.reset();
    eng.budget = eng.nodes + node_budget;
    std::map<UnitKind, int> caps = p.kind_caps;
    std::map<UnitKind, int> used;
    Int got = 0;
    std::vector<Unit> seeds = p.seeds;
    seeds.insert(seeds.end(), extra_seeds.begin(), extra_seeds.end());
    for (const Unit& s : seeds) {
        int su = -1;
        for (int u = 0; u < (int)eng.units.size(); ++u)
            if (eng.units[u].vertices == s.vertices && eng.units[u].kind == s.kind) {
                su = u;
                break;
            }
        if (su < 0) throw std::invalid_argument("seed unit is not a legal candidate");
        for (int q : eng.unit_pts[su]) eng.covered.set(q);
        eng.deactivate(su);
        for (int v : eng.conflicts[su]) eng.deactivate(v);
        ++used[eng.units[su].kind];
        eng.chosen.push_back(su);
        got += eng.units[su].contribution();
    }
    PackingOutcome out;
    bool ok = eng.dfs(got, p.target_contribution, 0, p.max_uncovered, caps, used);
    out.nodes_explored = eng.nodes;
    if (ok) {
        PackingSolution sol;
        for (int u : eng.chosen) sol.units.push_back(eng.units[u]);
        std::sort(sol.units.begin(), sol.units.end(), [](const Unit& a, const Unit& b) {
            return a.vertices < b.vertices;
        });
        Bitset cov((size_t)eng.pts.size());
        for (const Unit& u : sol.units)
            for (const Vec3& v : u.vertices) {
                auto it = std::lower_bound(eng.pts.begin(), eng.pts.end(), v);
                cov.set(it - eng.pts.begin());
            }
        for (int i = 0; i < (int)eng.pts.size(); ++i)
            if (!cov.test(i)) sol.uncovered.push_back(eng.pts[i]);
        sol.nodes_explored = eng.nodes;
        out.status = PackingStatus::Sat;
        out.solution = std::move(sol);
    } else {
        out.status = eng.out_of_budget ? PackingStatus::BudgetExhausted : PackingStatus::Unsat;
    }
    return out;
}

}  // namespace

PackingOutcome solve(const PackingProblem& p, Int node_budget) {
    if (!p.region) throw std::invalid_argument("packing problem without region");
    Engine eng(*p.region, enumerate_candidate_units(*p.region, p.allowed_kinds));
    return run_engine(eng, p, {}, node_budget);
}

PackingOutcome solve_seed_sets(const PackingProblem& p,
                               const std::vector<std::vector<Unit>>& seed_sets,
                               Int node_budget_per_try) {
    if (!p.region) throw std::invalid_argument("packing problem without region");
    Engine eng(*p.region, enumerate_candidate_units(*p.region, p.allowed_kinds));
    PackingOutcome last;
    for (const auto& seeds : seed_sets) {
        last = run_engine(eng, p, seeds, node_budget_per_try);
        if (last.status == PackingStatus::Sat) return last;
    }
    last.status = last.status == PackingStatus::Sat ? last.status : PackingStatus::Unsat;
    return last;
}

MaxContributionResult max_contribution(const Subdivision& region,
                                       const std::vector<UnitKind>& kinds, Int node_budget) {
    Engine eng(region, enumerate_candidate_units(region, kinds));
    eng.budget = node_budget;
    for (auto& v : eng.unit_pts) std::sort(v.begin(), v.end());
    eng.best = 0;
    eng.dfs_max(0);
    return {eng.best, !eng.out_of_budget, eng.nodes};
}

}  // namespace torcert
