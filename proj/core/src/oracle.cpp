#include "torcert/oracle.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <stdexcept>

#include "torcert/blocks.hpp"

namespace torcert {

std::uint64_t Rng::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t m) { return next() % m; }

Int mod_rank(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
    const size_t nr = rows.size();
    if (nr == 0) return 0;
    const size_t nc = rows[0].size();
    auto mulmod = [p](std::uint64_t a, std::uint64_t b) { return a * b % p; };
    auto invmod = [&](std::uint64_t a) {
        // Fermat: p prime
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    size_t rank = 0;
    for (size_t col = 0; col < nc && rank < nr; ++col) {
        size_t piv = rank;
        while (piv < nr && rows[piv][col] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(rows[rank], rows[piv]);
        const std::uint64_t inv = invmod(rows[rank][col]);
        for (size_t j = col; j < nc; ++j) rows[rank][j] = mulmod(rows[rank][j], inv);
        for (size_t i = rank + 1; i < nr; ++i) {
            const std::uint64_t f = rows[i][col];
            if (f == 0) continue;
            const std::uint64_t neg = p - f;
            for (size_t j = col; j < nc; ++j)
                rows[i][j] = (rows[i][j] + mulmod(neg, rows[rank][j])) % p;
        }
        ++rank;
    }
    return (Int)rank;
}

// ---- monomials -----------------------------------------------------------------

namespace {

// homogeneous exponent vectors of degree d in n+1 variables, degrevlex order
std::vector<std::vector<Int>> monomials(int n, Int d) {
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur(n + 1, 0);
    // enumerate all compositions
    std::function<void(int, Int)> rec = [&](int pos, Int left) {
        if (pos == n) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (Int v = left; v >= 0; --v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, d);
    std::sort(out.begin(), out.end(), [](const std::vector<Int>& a, const std::vector<Int>& b) {
        // degrevlex within fixed degree: a precedes b iff the last nonzero
        // entry of a-b is negative
        for (size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    });
    return out;
}

std::uint64_t powmod(std::uint64_t a, Int e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

}  // namespace

RankResult interpolation_rank(const RankProblem& pr) {
    const int n = pr.n;
    const Int cols = binomial(n + pr.d, n);
    if (cols > kMatrixColumnCeiling) throw std::invalid_argument("matrix column ceiling exceeded");
    if ((Int)pr.prime <= 2 * cols)
        throw std::invalid_argument("prime too small for the genericity margin");
    const auto mons = monomials(n, pr.d);
    RankResult res;
    res.rows = (Int)(n + 1) * (pr.k + 1);
    res.cols = cols;
    res.expected = std::min(res.rows, res.cols);
    res.trials = pr.trials;
    Rng rng(pr.seed ^ pr.prime);
    for (int trial = 0; trial < pr.trials; ++trial) {
        // sample k+1 distinct points with x0 = 1
        std::set<std::vector<std::uint64_t>> seen;
        std::vector<std::vector<std::uint64_t>> pts;
        int guard = 0;
        while ((Int)pts.size() < pr.k + 1) {
            std::vector<std::uint64_t> x(n + 1);
            x[0] = 1;
            for (int i = 1; i <= n; ++i) x[i] = rng.below(pr.prime);
            if (!seen.insert(x).second) {
                ++res.resampled;
                if (++guard > 1000) throw std::runtime_error("degenerate sampling");
                continue;
            }
            pts.push_back(std::move(x));
        }
        // rows: all first partials (d * value row is in their span by Euler)
        std::vector<std::vector<std::uint64_t>> m;
        m.reserve(res.rows);
        for (const auto& x : pts) {
            // powers[i][e] = x_i^e
            std::vector<std::vector<std::uint64_t>> pw(n + 1);
            for (int i = 0; i <= n; ++i) {
                pw[i].resize(pr.d + 1);
                pw[i][0] = 1;
                for (Int e = 1; e <= pr.d; ++e) pw[i][e] = pw[i][e - 1] * x[i] % pr.prime;
            }
            for (int j = 0; j <= n; ++j) {
                std::vector<std::uint64_t> row(cols, 0);
                for (Int c = 0; c < cols; ++c) {
                    const auto& e = mons[c];
                    if (e[j] == 0) continue;
                    std::uint64_t v = (std::uint64_t)(e[j] % (Int)pr.prime);
                    for (int i = 0; i <= n; ++i) v = v * pw[i][e[i] - (i == j ? 1 : 0)] % pr.prime;
                    row[c] = v;
                }
                m.push_back(std::move(row));
            }
        }
        res.rank = std::max(res.rank, mod_rank(std::move(m), pr.prime));
        if (res.rank == res.expected) break;  // cannot improve
    }
    res.defect = res.expected - res.rank;
    return res;
}

std::vector<SweepEntry> ah_sweep(int n, Int d_max, std::uint64_t prime, std::uint64_t seed,
                                 int trials) {
    std::vector<SweepEntry> out;
    for (Int d = 2; d <= d_max; ++d) {
        const Int cols = binomial(n + d, n);
        if (cols > kMatrixColumnCeiling) throw std::invalid_argument("matrix column ceiling exceeded");
        const Int kmax = (cols + n) / (n + 1);
        for (Int k = 1; k <= kmax; ++k) {
            RankProblem p;
            p.n = n;
            p.d = d;
            p.k = k;
            p.prime = prime;
            p.seed = seed;
            p.trials = trials;
            RankResult r = interpolation_rank(p);
            if (r.defect > 0) out.push_back({d, k, r.defect});
        }
    }
    return out;
}

// ---- toric tangents -------------------------------------------------------------

namespace {

// tangent rows of the monomial map of `model` at torus point t: the value row
// and the three logarithmic partials (exponent-weighted rows)
void tangent_rows(const std::vector<Vec3>& model, const std::array<std::uint64_t, 3>& t,
                  std::uint64_t p, std::vector<std::vector<std::uint64_t>>& out) {
    const Int lo[3] = {
        std::min_element(model.begin(), model.end(), [](auto& a, auto& b) { return a.x < b.x; })->x,
        std::min_element(model.begin(), model.end(), [](auto& a, auto& b) { return a.y < b.y; })->y,
        std::min_element(model.begin(), model.end(), [](auto& a, auto& b) { return a.z < b.z; })->z};
    std::vector<std::uint64_t> val(model.size());
    for (size_t c = 0; c < model.size(); ++c) {
        const Vec3& e = model[c];
        std::uint64_t v = powmod(t[0], e.x - lo[0], p);
        v = v * powmod(t[1], e.y - lo[1], p) % p;
        v = v * powmod(t[2], e.z - lo[2], p) % p;
        val[c] = v;
    }
    out.push_back(val);
    for (int j = 0; j < 3; ++j) {
        std::vector<std::uint64_t> row(model.size());
        for (size_t c = 0; c < model.size(); ++c) {
            const Vec3& e = model[c];
            const Int exp = j == 0 ? e.x : (j == 1 ? e.y : e.z);
            row[c] = val[c] * (std::uint64_t)((exp % (Int)p + (Int)p) % (Int)p) % p;
        }
        out.push_back(row);
    }
}

}  // namespace

Int toric_tangent_span(const std::vector<Vec3>& model, Int count, std::uint64_t prime,
                       std::uint64_t seed, int trials) {
    Rng rng(seed ^ prime);
    Int best = 0;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<std::vector<std::uint64_t>> rows;
        for (Int i = 0; i < count; ++i) {
            std::array<std::uint64_t, 3> t;
            for (auto& v : t) v = 1 + rng.below(prime - 1);
            tangent_rows(model, t, prime, rows);
        }
        best = std::max(best, mod_rank(std::move(rows), prime));
        if (best == std::min<Int>((Int)model.size(), 4 * count)) break;
    }
    return best;
}

bool segre_corner_tangent_check() {
    // exact exponent-level computation: at the corner of the cube model the
    // tangent space is spanned by the corner monomial and its three
    // neighbors along polytope edges
    std::vector<Vec3> cube;
    for (Int x = 0; x <= 1; ++x)
        for (Int y = 0; y <= 1; ++y)
            for (Int z = 0; z <= 1; ++z) cube.push_back({x, y, z});
    for (const Vec3& corner : cube) {
        std::set<Vec3> expect = {corner};
        for (const Vec3& e : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}) {
            Vec3 n1 = corner + e, n2 = corner - e;
            bool in1 = std::find(cube.begin(), cube.end(), n1) != cube.end();
            expect.insert(in1 ? n1 : n2);
        }
        // chart at the corner: substitute x_i -> corner_i == 0 ? t_i : 1/t_i;
        // monomials with positive valuation vanish at t = 0, valuation-zero
        // monomials are exactly the expected coordinate set, and the three
        // first partials pick out the expected neighbors
        std::set<Vec3> at_corner;
        for (const Vec3& m : cube) {
            Vec3 vdiff = m - corner;
            Int valuation = std::abs(vdiff.x) + std::abs(vdiff.y) + std::abs(vdiff.z);
            if (valuation <= 1) at_corner.insert(m);
        }
        if (at_corner != expect) return false;
    }
    return true;
}

bool limit_projection_check(CellKind kind, const std::vector<Vec3>& tetra_rel,
                            std::uint64_t prime, std::uint64_t seed, int trials) {
    std::vector<Vec3> model;
    switch (kind) {
        case CellKind::Cube:
            for (Int x = 0; x <= 1; ++x)
                for (Int y = 0; y <= 1; ++y)
                    for (Int z = 0; z <= 1; ++z) model.push_back({x, y, z});
            break;
        case CellKind::SigmaBlock:
            for (Int x = 0; x <= 1; ++x)
                for (Int y = 0; y <= 1; ++y)
                    for (Int z = 0; z <= 1; ++z)
                        if (!(x == 1 && y == 1 && z == 1)) model.push_back({x, y, z});
            break;
        case CellKind::Semicube:
            for (Int x = 0; x <= 1; ++x)
                for (Int y = 0; y <= 1; ++y)
                    for (Int z = 0; z <= 1; ++z)
                        if (!(x == 1 && y == 1)) model.push_back({x, y, z});
            break;
        default: throw std::invalid_argument("limit projections exist for cube/Sigma/semicube cells");
    }
    // center of projection: cell vertices off the tetra
    std::vector<size_t> center;
    for (size_t i = 0; i < model.size(); ++i)
        if (std::find(tetra_rel.begin(), tetra_rel.end(), model[i]) == tetra_rel.end())
            center.push_back(i);
    const Int need = 4 + (Int)center.size();
    Rng rng(seed ^ prime ^ (std::uint64_t)kind);
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<std::vector<std::uint64_t>> rows;
        std::array<std::uint64_t, 3> t;
        for (auto& v : t) v = 1 + rng.below(prime - 1);
        tangent_rows(model, t, prime, rows);
        for (size_t ci : center) {
            std::vector<std::uint64_t> ind(model.size(), 0);
            ind[ci] = 1;
            rows.push_back(std::move(ind));
        }
        if (mod_rank(std::move(rows), prime) == need) return true;
    }
    return false;
}

PreconditionLedger build_precondition_ledger(std::uint64_t prime, std::uint64_t seed, int trials) {
    PreconditionLedger ledger;
    struct Standard {
        CellKind kind;
        std::vector<Vec3> corners;
    };
    std::vector<Standard> cells;
    {
        std::vector<Vec3> cube, sigma, semi;
        for (Int x = 0; x <= 1; ++x)
            for (Int y = 0; y <= 1; ++y)
                for (Int z = 0; z <= 1; ++z) {
                    cube.push_back({x, y, z});
                    if (!(x == 1 && y == 1 && z == 1)) sigma.push_back({x, y, z});
                    if (!(x == 1 && y == 1)) semi.push_back({x, y, z});
                }
        cells.push_back({CellKind::Cube, cube});
        cells.push_back({CellKind::SigmaBlock, sigma});
        cells.push_back({CellKind::Semicube, semi});
    }
    for (const Standard& st : cells) {
        const auto& vs = st.corners;
        const int n = (int)vs.size();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    for (int d = c + 1; d < n; ++d) {
                        std::vector<Vec3> q = {vs[a], vs[b], vs[c], vs[d]};
                        if (orient3(q[0], q[1], q[2], q[3]) == 0) continue;
                        if (is_axis_corner_tetra(q)) continue;  // tangent, no precondition needed
                        if (limit_projection_check(st.kind, q, prime, seed, trials))
                            ledger.passed.insert(canonical_limit_signature(st.kind, vs, q));
                    }
    }
    return ledger;
}

BlockOracleResult certify_block_defectivity(const std::string& name, std::uint64_t prime,
                                            std::uint64_t seed) {
    BlockOracleResult res;
    res.name = name;
    res.claimed = block_contribution(name);
    // the block's toric model: lattice points of its region (local coordinates)
    CertNodePtr node = block(name);
    Certificate wrap{0, node->contribution - 1, node};
    std::set<Vec3> pts;
    for (const LeafInstance& li : flatten(wrap))
        for (const Vec3& p : li.node->host->ambient_lattice) pts.insert(li.map.apply(p));
    res.points = (Int)pts.size();
    if (res.points > kMatrixColumnCeiling) {
        res.skipped = true;
        return res;
    }
    std::vector<Vec3> model(pts.begin(), pts.end());
    res.rank = toric_tangent_span(model, res.claimed, prime, seed);
    res.agree = res.rank == 4 * res.claimed;
    return res;
}

}  // namespace torcert
