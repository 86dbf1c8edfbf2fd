#include "torcert/json_io.hpp"

#include <algorithm>

namespace torcert {

Json to_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Json to_json(const RunConfig& rc) {
    Json j;
    j["command"] = rc.command;
    if (rc.d) j["d"] = rc.d;
    if (rc.d_max) j["dmax"] = rc.d_max;
    if (rc.n) j["n"] = rc.n;
    if (rc.k) j["k"] = rc.k;
    j["prime"] = rc.prime;
    j["seed"] = rc.seed;
    j["trials"] = rc.trials;
    j["budget"] = rc.budget;
    j["format"] = rc.format;
    j["tool_version"] = "torcert 0.1.0";
    return j;
}

Json to_json(const Polytope& p) {
    Json j;
    Json verts = Json::array();
    for (const Vec3& v : p.vertices()) verts.push_back(to_json(v));
    j["vertices"] = verts;
    return j;
}

Json to_json(const Subdivision& s) {
    Json j;
    j["ambient"] = to_json(s.ambient);
    Json cells = Json::array();
    for (const Cell& c : s.cells) {
        Json jc;
        jc["kind"] = to_string(c.kind);
        jc["anchor"] = to_json(c.anchor);
        jc["orientation"] = c.orientation;
        Json vs = Json::array();
        for (const Vec3& v : c.geometry.vertices()) vs.push_back(to_json(v));
        jc["vertices"] = vs;
        cells.push_back(jc);
    }
    j["cells"] = cells;
    if (s.lift) {
        Json lf = Json::array();
        for (size_t i = 0; i < s.lift->size(); ++i) {
            const AffineForm& f = (*s.lift)[i];
            Json e;
            e["cell_index"] = i;
            e["form"] = Json::array({f.a1, f.a2, f.a3, f.b});
            lf.push_back(e);
        }
        j["lift"] = lf;
    }
    return j;
}

Json to_json(const Certificate& c) {
    Json j;
    j["d"] = c.d;
    j["claimed_k"] = c.claimed_secant_index;
    Json units = Json::array();
    for (const LeafInstance& li : flatten(c)) {
        for (const Unit& u : li.node->units) {
            Json ju;
            ju["kind"] = to_string(u.kind);
            ju["block"] = li.path;
            ju["cell"] = u.cell_index;
            Json vs = Json::array();
            std::vector<Vec3> gl;
            for (const Vec3& v : u.vertices) gl.push_back(li.map.apply(v));
            std::sort(gl.begin(), gl.end());
            for (const Vec3& v : gl) vs.push_back(to_json(v));
            ju["vertices"] = vs;
            units.push_back(ju);
        }
    }
    j["units"] = units;
    j["provenance"] = Json{{"builder", c.root ? c.root->name : ""}, {"seed", kDefaultSeed}};
    return j;
}

Json to_json(const VerificationReport& r) {
    Json j;
    j["pass"] = r.pass;
    if (!r.pass) j["failure"] = r.failure;
    j["claimed_k"] = r.claimed;
    j["total_contribution"] = r.total_contribution;
    j["unit_count"] = r.unit_count;
    j["used_region_points"] = r.used_region_points;
    j["used_region_uncovered"] = r.used_region_uncovered;
    j["ambient_points"] = r.ambient_points;
    j["ambient_uncovered"] = r.ambient_uncovered;
    Json kc;
    for (const auto& [k, v] : r.kind_counts) kc[k] = v;
    j["kind_counts"] = kc;
    Json ts = Json::array();
    for (const LeafTally& t : r.tallies) {
        Json jt;
        jt["block"] = t.path;
        jt["points"] = t.points;
        jt["covered"] = t.covered;
        jt["units"] = t.units;
        jt["contribution"] = t.contribution;
        ts.push_back(jt);
    }
    j["blocks"] = ts;
    return j;
}

Json to_json(const ClaimSet& cs) {
    Json j;
    j["d"] = cs.d;
    Json claims = Json::array();
    for (const Claim& c : cs.claims) {
        Json jc;
        jc["k_from"] = c.k_from;
        if (c.k_to >= 0) jc["k_to"] = c.k_to;
        else jc["k_to"] = "inf";
        jc["justification"] = c.justification;
        jc["oracle_required"] = c.oracle_required;
        claims.push_back(jc);
    }
    j["claims"] = claims;
    return j;
}

Json to_json(const IdentityReport& ir) {
    Json j;
    j["all_consistent"] = ir.all_consistent;
    Json fl = Json::array();
    for (Int d : ir.flagged_degrees) fl.push_back(d);
    j["flagged_degrees"] = fl;
    Json rows = Json::array();
    for (const IdentityRow& r : ir.rows) {
        Json jr;
        jr["d"] = r.d;
        jr["family"] = r.family;
        jr["lhs"] = r.lhs;
        jr["rhs"] = r.rhs;
        jr["holds"] = r.holds;
        if (r.flagged) {
            jr["flagged"] = true;
            jr["displayed_sum"] = r.displayed;
        }
        rows.push_back(jr);
    }
    j["rows"] = rows;
    return j;
}

Json to_json(const RankProblem& p, const RankResult& r) {
    Json j;
    j["n"] = p.n;
    j["d"] = p.d;
    j["k"] = p.k;
    j["prime"] = p.prime;
    j["seed"] = p.seed;
    j["trials"] = r.trials;
    j["rows"] = r.rows;
    j["cols"] = r.cols;
    j["rank"] = r.rank;
    j["expected"] = r.expected;
    j["defect"] = r.defect;
    j["resampled"] = r.resampled;
    j["monomial_order"] = "degrevlex";
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace torcert
