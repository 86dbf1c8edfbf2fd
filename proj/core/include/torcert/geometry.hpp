#pragma once

// Exact lattice geometry in dimension 3: integer points, rational convex
// polytopes with V- and H-representations, enumeration, containment and
// disjointness. No floating point; every predicate is decided exactly.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace torcert {

using Int = std::int64_t;
using Rational = boost::multiprecision::cpp_rational;

struct Vec3 {
    Int x = 0, y = 0, z = 0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(Int s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Vec3& a, const Vec3& b) = default;
    friend auto operator<=>(const Vec3& a, const Vec3& b) = default;

    Int operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Int dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
// det [b-a; c-a; d-a]; sign gives orientation of d against plane (a,b,c)
Int orient3(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);
Vec3 reduced(Vec3 v);  // divide by gcd of entries, keep sign

using RationalPoint = std::array<Rational, 3>;

// Closed halfspace normal·p <= offset (strict = open, used in interior tests).
struct HalfSpace {
    Vec3 normal;
    Int offset = 0;
    bool strict = false;

    friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
    friend auto operator<=>(const HalfSpace&, const HalfSpace&) = default;
};

struct AffineMap {
    // columns of the linear part; must be unimodular (|det| == 1)
    std::array<Vec3, 3> cols = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    Vec3 shift{};

    Vec3 apply(const Vec3& p) const {
        return p.x * cols[0] + p.y * cols[1] + p.z * cols[2] + shift;
    }
    Int det() const;
    AffineMap then(const AffineMap& outer) const;  // outer ∘ this
    static AffineMap translation(const Vec3& t) { return {{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}, t}; }
};

class Polytope {
  public:
    Polytope() = default;

    // Convex hull of a nonempty integer point set; vertices are exactly the
    // extreme points, halfspaces are derived and canonicalized. Degenerate
    // (dim < 3) inputs are first-class: equalities appear as opposing pairs.
    static Polytope hull(std::vector<Vec3> pts);

    const std::vector<Vec3>& vertices() const { return verts_; }
    const std::vector<HalfSpace>& halfspaces() const { return facets_; }
    int dim() const { return dim_; }
    bool empty() const { return verts_.empty(); }

    bool contains(const Vec3& p) const;
    bool contains(const RationalPoint& p) const;
    std::vector<Vec3> lattice_points() const;
    Int lattice_point_count() const;

    Polytope translated(const Vec3& t) const;
    Polytope transformed(const AffineMap& m) const;

    void bbox(Vec3& lo, Vec3& hi) const;

    friend bool operator==(const Polytope& a, const Polytope& b) {
        return a.verts_ == b.verts_;
    }

  private:
    std::vector<Vec3> verts_;        // sorted lexicographically
    std::vector<HalfSpace> facets_;  // sorted, gcd-reduced
    int dim_ = -1;
};

// Exact closed-disjointness. `witness` is a common rational point when the
// polytopes intersect (found by Fourier-Motzkin elimination).
struct DisjointResult {
    bool disjoint = false;
    std::optional<RationalPoint> witness;
};
DisjointResult disjoint(const Polytope& p, const Polytope& q);

// Fast sound pre-test: true means certainly disjoint (separating axis found).
bool separated_fast(const Polytope& p, const Polytope& q);

// Open-interior disjointness for full-dimensional polytopes. Lower-dimensional
// inputs count as disjoint (their topological interior is empty).
bool interiors_disjoint(const Polytope& p, const Polytope& q);

// Emptiness of a rational inequality system by Fourier-Motzkin elimination
// with pairwise-redundancy pruning; returns a feasible point when nonempty.
struct LinearRow {
    std::array<Rational, 3> a;
    Rational b;
    bool strict = false;
};
std::optional<RationalPoint> fm_feasible_point(std::vector<LinearRow> rows);

// Serialization helpers (byte-deterministic; vertices sorted lexicographically)
std::string to_off(const Polytope& p);

}  // namespace torcert
