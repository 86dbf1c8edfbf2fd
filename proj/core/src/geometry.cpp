#include "torcert/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace torcert {

Int orient3(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    const Vec3 u = b - a, v = c - a, w = d - a;
    return dot(u, cross(v, w));
}

Vec3 reduced(Vec3 v) {
    Int g = std::gcd(std::gcd(std::abs(v.x), std::abs(v.y)), std::abs(v.z));
    if (g > 1) { v.x /= g; v.y /= g; v.z /= g; }
    return v;
}

Int AffineMap::det() const {
    return dot(cols[0], cross(cols[1], cols[2]));
}

AffineMap AffineMap::then(const AffineMap& outer) const {
    AffineMap r;
    for (int i = 0; i < 3; ++i) r.cols[i] = outer.apply(cols[i]) - outer.shift;
    r.shift = outer.apply(shift);
    return r;
}

namespace {

void sort_unique(std::vector<Vec3>& pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// some integer vector orthogonal to d, nonzero
Vec3 any_orthogonal(const Vec3& d) {
    for (Vec3 e : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}) {
        Vec3 n = cross(d, e);
        if (!(n == Vec3{})) return reduced(n);
    }
    throw std::logic_error("zero direction");
}

void push_equality(std::vector<HalfSpace>& hs, Vec3 n, Int off) {
    n = reduced(n);
    // pick the lexicographically positive representative first
    if (n < Vec3{}) { n = Vec3{} - n; off = -off; }
    hs.push_back({n, off});
    hs.push_back({Vec3{} - n, -off});
}

struct Tri {
    int a, b, c;   // indices into pts
    Vec3 n;        // outward normal (not reduced)
    Int off;       // n·x <= off on hull
    bool alive = true;
};

}  // namespace

Polytope Polytope::hull(std::vector<Vec3> pts) {
    if (pts.empty()) throw std::invalid_argument("hull of empty point set");
    sort_unique(pts);

    Polytope out;
    if (pts.size() == 1) {
        out.dim_ = 0;
        out.verts_ = pts;
        push_equality(out.facets_, {1, 0, 0}, pts[0].x);
        push_equality(out.facets_, {0, 1, 0}, pts[0].y);
        push_equality(out.facets_, {0, 0, 1}, pts[0].z);
        std::sort(out.facets_.begin(), out.facets_.end());
        return out;
    }

    const Vec3 p0 = pts[0];
    // first point not equal to p0 gives a direction
    Vec3 d = reduced(pts[1] - p0);
    bool collinear = true;
    size_t i2 = 0;
    for (size_t i = 2; i < pts.size(); ++i) {
        if (!(cross(pts[i] - p0, d) == Vec3{})) { collinear = false; i2 = i; break; }
    }
    if (collinear) {
        out.dim_ = 1;
        Int lo = dot(d, pts[0]), hi = lo;
        Vec3 plo = pts[0], phi = pts[0];
        for (const Vec3& p : pts) {
            Int v = dot(d, p);
            if (v < lo) { lo = v; plo = p; }
            if (v > hi) { hi = v; phi = p; }
        }
        out.verts_ = {plo, phi};
        sort_unique(out.verts_);
        out.facets_.push_back({d, hi});
        out.facets_.push_back({Vec3{} - d, -lo});
        Vec3 n1 = any_orthogonal(d);
        Vec3 n2 = reduced(cross(d, n1));
        push_equality(out.facets_, n1, dot(n1, p0));
        push_equality(out.facets_, n2, dot(n2, p0));
        std::sort(out.facets_.begin(), out.facets_.end());
        return out;
    }

    Vec3 pn = reduced(cross(pts[1] - p0, pts[i2] - p0));
    bool coplanar = true;
    size_t i3 = 0;
    for (size_t i = 2; i < pts.size(); ++i) {
        if (dot(pn, pts[i] - p0) != 0) { coplanar = false; i3 = i; break; }
    }
    if (coplanar) {
        out.dim_ = 2;
        // project out the axis with the largest |pn| component
        int drop = 0;
        for (int j = 1; j < 3; ++j)
            if (std::abs(pn[j]) > std::abs(pn[drop])) drop = j;
        const int u = drop == 0 ? 1 : 0, v = drop == 2 ? 1 : 2;
        auto cross2 = [&](const Vec3& o, const Vec3& a, const Vec3& b) {
            return (a[u] - o[u]) * (b[v] - o[v]) - (a[v] - o[v]) * (b[u] - o[u]);
        };
        // Andrew monotone chain on (u,v); pts already lex-sorted on (x,y,z),
        // re-sort by (u,v) for the chain
        std::vector<Vec3> s = pts;
        std::sort(s.begin(), s.end(), [&](const Vec3& a, const Vec3& b) {
            if (a[u] != b[u]) return a[u] < b[u];
            if (a[v] != b[v]) return a[v] < b[v];
            return a < b;
        });
        std::vector<Vec3> h(2 * s.size());
        size_t k = 0;
        for (size_t i = 0; i < s.size(); ++i) {  // lower chain
            while (k >= 2 && cross2(h[k - 2], h[k - 1], s[i]) <= 0) --k;
            h[k++] = s[i];
        }
        for (size_t i = s.size() - 1, t = k + 1; i > 0; --i) {  // upper chain
            while (k >= t && cross2(h[k - 2], h[k - 1], s[i - 1]) <= 0) --k;
            h[k++] = s[i - 1];
        }
        h.resize(k - 1);  // closed ring, last == first removed
        out.verts_ = h;
        sort_unique(out.verts_);
        push_equality(out.facets_, pn, dot(pn, p0));
        for (size_t i = 0; i < h.size(); ++i) {
            const Vec3 a = h[i], b = h[(i + 1) % h.size()];
            Vec3 w = reduced(cross(pn, b - a));
            Int off = dot(w, a);
            // orient outward: some hull point must be strictly inside
            bool flip = false;
            for (const Vec3& q : h)
                if (dot(w, q) > off) { flip = true; break; }
            if (flip) { w = Vec3{} - w; off = -off; }
            out.facets_.push_back({w, off});
        }
        std::sort(out.facets_.begin(), out.facets_.end());
        out.facets_.erase(std::unique(out.facets_.begin(), out.facets_.end()), out.facets_.end());
        return out;
    }

    // full-dimensional: incremental hull seeded with a tetrahedron
    out.dim_ = 3;
    std::vector<Vec3> P = pts;
    std::vector<Tri> tris;
    auto add_tri = [&](int a, int b, int c) {
        Vec3 n = cross(P[b] - P[a], P[c] - P[a]);
        tris.push_back({a, b, c, n, dot(n, P[a]), true});
    };
    {
        int a = 0, b = 1, c = (int)i2, dd = (int)i3;
        if (orient3(P[a], P[b], P[c], P[dd]) > 0) std::swap(b, c);
        add_tri(a, b, c);
        add_tri(a, c, dd);
        add_tri(c, b, dd);
        add_tri(b, a, dd);
    }
    for (size_t ip = 0; ip < P.size(); ++ip) {
        const Vec3& p = P[ip];
        std::vector<int> visible;
        for (size_t t = 0; t < tris.size(); ++t)
            if (tris[t].alive && dot(tris[t].n, p) > tris[t].off) visible.push_back((int)t);
        if (visible.empty()) continue;
        // horizon = edges of visible triangles shared with a non-visible one
        std::map<std::pair<int, int>, int> edge_count;
        for (int t : visible) {
            const Tri& tr = tris[t];
            for (auto [x, y] : {std::pair{tr.a, tr.b}, {tr.b, tr.c}, {tr.c, tr.a}}) {
                auto key = std::minmax(x, y);
                edge_count[{key.first, key.second}]++;
            }
        }
        std::vector<std::pair<int, int>> horizon;
        for (int t : visible) {
            const Tri& tr = tris[t];
            for (auto [x, y] : {std::pair{tr.a, tr.b}, {tr.b, tr.c}, {tr.c, tr.a}}) {
                auto key = std::minmax(x, y);
                if (edge_count[{key.first, key.second}] == 1) horizon.push_back({x, y});
            }
            tris[t].alive = false;
        }
        for (auto [x, y] : horizon) add_tri(x, y, (int)ip);
    }

    // merge coplanar triangles into facets by canonical (normal, offset)
    std::set<std::pair<Vec3, Int>> planes;
    for (const Tri& t : tris) {
        if (!t.alive) continue;
        Vec3 n = t.n;
        Int g = std::gcd(std::gcd(std::abs(n.x), std::abs(n.y)), std::abs(n.z));
        Int off = t.off;
        if (g > 1) { n.x /= g; n.y /= g; n.z /= g; off = t.off / g; assert(t.off % g == 0); }
        planes.insert({n, off});
    }
    for (auto& [n, off] : planes) out.facets_.push_back({n, off});
    std::sort(out.facets_.begin(), out.facets_.end());

    // vertices: points whose tight facet normals span rank 3
    for (const Vec3& p : P) {
        std::vector<Vec3> tight;
        for (const HalfSpace& h : out.facets_)
            if (dot(h.normal, p) == h.offset) tight.push_back(h.normal);
        if (tight.size() < 3) continue;
        bool rank3 = false;
        for (size_t a = 0; a < tight.size() && !rank3; ++a)
            for (size_t b = a + 1; b < tight.size() && !rank3; ++b)
                for (size_t c = b + 1; c < tight.size() && !rank3; ++c)
                    if (dot(tight[a], cross(tight[b], tight[c])) != 0) rank3 = true;
        if (rank3) out.verts_.push_back(p);
    }
    sort_unique(out.verts_);
    return out;
}

bool Polytope::contains(const Vec3& p) const {
    for (const HalfSpace& h : facets_)
        if (dot(h.normal, p) > h.offset) return false;
    return !empty();
}

bool Polytope::contains(const RationalPoint& p) const {
    for (const HalfSpace& h : facets_) {
        Rational v = h.normal.x * p[0] + h.normal.y * p[1] + h.normal.z * p[2];
        if (v > h.offset) return false;
    }
    return !empty();
}

void Polytope::bbox(Vec3& lo, Vec3& hi) const {
    lo = hi = verts_.at(0);
    for (const Vec3& v : verts_) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
}

std::vector<Vec3> Polytope::lattice_points() const {
    std::vector<Vec3> out;
    if (empty()) return out;
    Vec3 lo, hi;
    bbox(lo, hi);
    for (Int x = lo.x; x <= hi.x; ++x)
        for (Int y = lo.y; y <= hi.y; ++y)
            for (Int z = lo.z; z <= hi.z; ++z)
                if (contains(Vec3{x, y, z})) out.push_back({x, y, z});
    return out;
}

Int Polytope::lattice_point_count() const { return (Int)lattice_points().size(); }

Polytope Polytope::translated(const Vec3& t) const {
    Polytope r = *this;
    for (Vec3& v : r.verts_) v = v + t;
    for (HalfSpace& h : r.facets_) h.offset += dot(h.normal, t);
    std::sort(r.verts_.begin(), r.verts_.end());
    std::sort(r.facets_.begin(), r.facets_.end());
    return r;
}

Polytope Polytope::transformed(const AffineMap& m) const {
    if (std::abs(m.det()) != 1) throw std::invalid_argument("transform must be unimodular");
    std::vector<Vec3> pts;
    pts.reserve(verts_.size());
    for (const Vec3& v : verts_) pts.push_back(m.apply(v));
    return hull(std::move(pts));
}

// ---------------------------------------------------------------------------
// separating-axis pre-test

namespace {
void axis_extents(const std::vector<Vec3>& pts, const Vec3& n, Int& lo, Int& hi) {
    lo = hi = dot(n, pts[0]);
    for (const Vec3& p : pts) {
        Int v = dot(n, p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
}
}  // namespace

bool separated_fast(const Polytope& p, const Polytope& q) {
    std::vector<Vec3> axes;
    for (const HalfSpace& h : p.halfspaces()) axes.push_back(h.normal);
    for (const HalfSpace& h : q.halfspaces()) axes.push_back(h.normal);
    std::vector<Vec3> ep, eq;
    const auto& vp = p.vertices();
    const auto& vq = q.vertices();
    for (size_t i = 0; i < vp.size(); ++i)
        for (size_t j = i + 1; j < vp.size(); ++j) ep.push_back(vp[j] - vp[i]);
    for (size_t i = 0; i < vq.size(); ++i)
        for (size_t j = i + 1; j < vq.size(); ++j) eq.push_back(vq[j] - vq[i]);
    for (const Vec3& a : ep)
        for (const Vec3& b : eq) {
            Vec3 n = cross(a, b);
            if (!(n == Vec3{})) axes.push_back(n);
        }
    for (const Vec3& n : axes) {
        Int alo, ahi, blo, bhi;
        axis_extents(vp, n, alo, ahi);
        axis_extents(vq, n, blo, bhi);
        if (ahi < blo || bhi < alo) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin

namespace {

bool row_trivially_true(const LinearRow& r) {
    return r.a[0] == 0 && r.a[1] == 0 && r.a[2] == 0 && (r.strict ? r.b > 0 : r.b >= 0);
}
bool row_infeasible(const LinearRow& r) {
    return r.a[0] == 0 && r.a[1] == 0 && r.a[2] == 0 && (r.strict ? r.b <= 0 : r.b < 0);
}

void prune_rows(std::vector<LinearRow>& rows) {
    // normalize each row so the first nonzero coefficient is ±1... keep exact:
    // scale by 1/max|coef| is not exact-friendly; instead scale to make the
    // leading nonzero coefficient's absolute value 1 via rational division.
    for (LinearRow& r : rows) {
        Rational scale = 0;
        for (int i = 0; i < 3; ++i)
            if (r.a[i] != 0) { scale = abs(r.a[i]); break; }
        if (scale == 0) continue;
        for (auto& c : r.a) c /= scale;
        r.b /= scale;
    }
    // pairwise redundancy: identical normals keep the tightest offset
    std::sort(rows.begin(), rows.end(), [](const LinearRow& x, const LinearRow& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.strict && !y.strict;
    });
    std::vector<LinearRow> out;
    for (const LinearRow& r : rows) {
        if (!out.empty() && out.back().a == r.a) continue;  // tightest kept first
        out.push_back(r);
    }
    rows = std::move(out);
}

}  // namespace

std::optional<RationalPoint> fm_feasible_point(std::vector<LinearRow> rows) {
    std::vector<std::vector<LinearRow>> stages;  // rows before eliminating var k
    for (int var = 2; var >= 1; --var) {
        for (const LinearRow& r : rows)
            if (row_infeasible(r)) return std::nullopt;
        prune_rows(rows);
        stages.push_back(rows);
        std::vector<LinearRow> next, pos, neg;
        for (const LinearRow& r : rows) {
            if (r.a[var] > 0) pos.push_back(r);
            else if (r.a[var] < 0) neg.push_back(r);
            else if (!row_trivially_true(r)) next.push_back(r);
        }
        for (const LinearRow& rp : pos)
            for (const LinearRow& rn : neg) {
                // rp: a·x <= b with a[var] > 0 ; rn with a[var] < 0
                LinearRow c;
                Rational sp = rp.a[var], sn = -rn.a[var];
                for (int i = 0; i < 3; ++i) c.a[i] = rp.a[i] * sn + rn.a[i] * sp;
                c.b = rp.b * sn + rn.b * sp;
                c.strict = rp.strict || rn.strict;
                if (row_infeasible(c)) return std::nullopt;
                if (!row_trivially_true(c)) next.push_back(c);
            }
        rows = std::move(next);
    }
    for (const LinearRow& r : rows)
        if (row_infeasible(r)) return std::nullopt;
    stages.push_back(rows);

    // back-substitute: stages[0] holds all variables, stages[1] is free of x2,
    // stages[2] is free of x1 and x2. Solve x0 from stages[2], then up.
    RationalPoint pt{0, 0, 0};
    for (int var = 0; var < 3; ++var) {
        const std::vector<LinearRow>& st = stages[2 - var];
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const LinearRow& r : st) {
            if (r.a[var] == 0) continue;
            Rational rest = r.b;
            for (int i = 0; i < var; ++i) rest -= r.a[i] * pt[i];
            Rational bound = rest / r.a[var];
            if (r.a[var] > 0) {  // x <= bound
                if (!hi || bound < *hi || (bound == *hi && r.strict)) { hi = bound; hi_strict = r.strict; }
            } else {  // x >= bound
                if (!lo || bound > *lo || (bound == *lo && r.strict)) { lo = bound; lo_strict = r.strict; }
            }
        }
        Rational v;
        if (lo && hi) {
            if (*lo > *hi) return std::nullopt;
            if (*lo == *hi) {
                if (lo_strict || hi_strict) return std::nullopt;
                v = *lo;
            } else v = (*lo + *hi) / 2;
        } else if (lo) v = lo_strict ? *lo + 1 : *lo;
        else if (hi) v = hi_strict ? *hi - 1 : *hi;
        else v = 0;
        pt[var] = v;
    }
    return pt;
}

namespace {
std::vector<LinearRow> rows_of(const Polytope& p, bool make_strict) {
    std::vector<LinearRow> rows;
    for (const HalfSpace& h : p.halfspaces()) {
        LinearRow r;
        r.a = {Rational(h.normal.x), Rational(h.normal.y), Rational(h.normal.z)};
        r.b = h.offset;
        r.strict = h.strict || make_strict;
        rows.push_back(r);
    }
    return rows;
}
}  // namespace

DisjointResult disjoint(const Polytope& p, const Polytope& q) {
    if (p.empty() || q.empty()) return {true, std::nullopt};
    if (separated_fast(p, q)) return {true, std::nullopt};
    std::vector<LinearRow> rows = rows_of(p, false);
    auto qr = rows_of(q, false);
    rows.insert(rows.end(), qr.begin(), qr.end());
    auto w = fm_feasible_point(std::move(rows));
    if (w) return {false, w};
    return {true, std::nullopt};
}

bool interiors_disjoint(const Polytope& p, const Polytope& q) {
    if (p.dim() < 3 || q.dim() < 3) return true;
    if (separated_fast(p, q)) return true;
    std::vector<LinearRow> rows = rows_of(p, true);
    auto qr = rows_of(q, true);
    rows.insert(rows.end(), qr.begin(), qr.end());
    return !fm_feasible_point(std::move(rows)).has_value();
}

// ---------------------------------------------------------------------------

std::string to_off(const Polytope& p) {
    // vertices in lexicographic order; faces as sorted vertex-index cycles
    std::ostringstream os;
    const auto& vs = p.vertices();
    std::vector<std::vector<int>> faces;
    if (p.dim() == 3) {
        for (const HalfSpace& h : p.halfspaces()) {
            std::vector<int> face;
            for (size_t i = 0; i < vs.size(); ++i)
                if (dot(h.normal, vs[i]) == h.offset) face.push_back((int)i);
            if (face.size() < 3) continue;
            // order the cycle around the face centroid (exact: sort by angle is
            // float; instead order by walking convex polygon via cross signs)
            const Vec3 n = h.normal;
            std::vector<int> ordered;
            ordered.push_back(face[0]);
            std::vector<int> rest(face.begin() + 1, face.end());
            while (!rest.empty()) {
                int cur = ordered.back();
                // next = point such that all others are on the left of (cur->next)
                for (size_t i = 0; i < rest.size(); ++i) {
                    bool ok = true;
                    for (size_t j = 0; j < rest.size() && ok; ++j) {
                        if (i == j) continue;
                        Vec3 c = cross(vs[rest[i]] - vs[cur], vs[rest[j]] - vs[cur]);
                        if (dot(c, n) < 0) ok = false;
                    }
                    if (ok) { ordered.push_back(rest[i]); rest.erase(rest.begin() + i); break; }
                }
            }
            faces.push_back(ordered);
        }
    }
    os << "OFF\n" << vs.size() << " " << faces.size() << " 0\n";
    for (const Vec3& v : vs) os << v.x << " " << v.y << " " << v.z << "\n";
    for (const auto& f : faces) {
        os << f.size();
        for (int i : f) os << " " << i;
        os << "\n";
    }
    return os.str();
}

}  // namespace torcert
