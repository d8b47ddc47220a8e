#pragma once

#include <set>
#include <sstream>

#include "loopfix/level.hpp"
#include "loopfix/root_system.hpp"

namespace loopfix {

// ---------------------------------------------------------------------------
// The fundamental alcove of one simple factor is the simplex cut out by the
// walls  alpha_i(xi) = 0 (i = 1..rank, here indexed by the simple roots) and
// alpha_0(xi) = 1 (wall index 0). For a product group the alcove is the
// product of the factor simplices. An open face is encoded by the set of
// walls it lies on, one sorted index list per factor; the full wall set is
// infeasible, every proper subset is a face.
// ---------------------------------------------------------------------------

struct AlcoveFace {
    std::vector<std::vector<int>> walls;  // per factor, sorted; 0 is the affine wall
    RatVec interior_point;

    bool is_interior() const {
        for (const auto& w : walls)
            if (!w.empty()) return false;
        return true;
    }

    bool is_origin_vertex(const RootSystem& rs) const {
        for (size_t f = 0; f < walls.size(); ++f) {
            if ((int)walls[f].size() != rs.factors[f].type.rank) return false;
            for (int i = 0; i < (int)walls[f].size(); ++i)
                if (walls[f][i] != i + 1) return false;
        }
        return true;
    }

    friend bool operator==(const AlcoveFace& a, const AlcoveFace& b) { return a.walls == b.walls; }
};

namespace detail {

/// Vertices of the factor simplex, embedded in full-rank coordinates:
/// index 0 is the origin, index i is the i-th fundamental coweight divided
/// by the corresponding mark of the highest root.
inline std::vector<RatVec> factor_vertices(const RootSystem& rs, int f) {
    const auto& fac = rs.factors[f];
    int n = fac.type.rank;
    std::vector<RatVec> verts(n + 1, RatVec(rs.rank, Rational(0)));
    for (int i = 1; i <= n; ++i)
        for (int r = 0; r < n; ++r)
            verts[i][fac.offset + r] =
                fac.fundamental_coweights[r][i - 1] / rat(fac.marks[i - 1]);
    return verts;
}

}  // namespace detail

/// Which open face of the closed alcove contains the point? Throws if the
/// point is outside the closed alcove.
inline AlcoveFace face_of(const RootSystem& rs, const RatVec& point) {
    if ((int)point.size() != rs.rank) throw error("alcove", "point dimension mismatch");
    if (!in_closed_alcove(rs, point)) throw error("alcove", "point outside the closed alcove");
    AlcoveFace face;
    face.walls.resize(rs.factors.size());
    for (size_t f = 0; f < rs.factors.size(); ++f) {
        const auto& fac = rs.factors[f];
        if (rs.highest_eval((int)f, point) == 1) face.walls[f].push_back(0);
        for (int i = 0; i < fac.type.rank; ++i)
            if (dot(simple_root_weight(rs, fac.offset + i), point) == 0)
                face.walls[f].push_back(i + 1);
    }
    face.interior_point = point;
    return face;
}

/// All open faces of the alcove, with an exact interior point each (the
/// barycenter of the vertices not lying on the selected walls).
inline std::vector<AlcoveFace> faces(const RootSystem& rs) {
    std::vector<std::vector<std::vector<int>>> factor_subsets;
    for (const auto& fac : rs.factors) {
        int n = fac.type.rank;
        std::vector<std::vector<int>> subsets;
        for (unsigned mask = 0; mask + 1 < (1u << (n + 1)); ++mask) {
            std::vector<int> walls;
            for (int i = 0; i <= n; ++i)
                if (mask & (1u << i)) walls.push_back(i);
            subsets.push_back(std::move(walls));
        }
        factor_subsets.push_back(std::move(subsets));
    }
    std::vector<AlcoveFace> out{AlcoveFace{{}, {}}};
    for (const auto& block : factor_subsets) {
        std::vector<AlcoveFace> next;
        for (const auto& head : out)
            for (const auto& walls : block) {
                AlcoveFace f = head;
                f.walls.push_back(walls);
                next.push_back(std::move(f));
            }
        out = std::move(next);
    }
    std::vector<std::vector<RatVec>> verts;
    for (size_t f = 0; f < rs.factors.size(); ++f)
        verts.push_back(detail::factor_vertices(rs, (int)f));
    for (auto& face : out) {
        RatVec point(rs.rank, Rational(0));
        for (size_t f = 0; f < rs.factors.size(); ++f) {
            std::set<int> on(face.walls[f].begin(), face.walls[f].end());
            long count = 0;
            RatVec sum(rs.rank, Rational(0));
            for (int i = 0; i <= rs.factors[f].type.rank; ++i) {
                if (on.count(i)) continue;
                sum = add(sum, verts[f][i]);
                ++count;
            }
            point = add(point, scale(rat(1, count), sum));
        }
        face.interior_point = point;
        // the barycenter must reproduce exactly this wall set
        if (!(face_of(rs, point) == face))
            throw error("alcove", "internal: interior point construction failed");
    }
    return out;
}

/// Does the point lie on the open face (wall equalities on the face's walls,
/// strict inequalities on all others)?
inline bool face_contains(const RootSystem& rs, const AlcoveFace& face, const RatVec& point) {
    if (!in_closed_alcove(rs, point)) return false;
    for (size_t f = 0; f < rs.factors.size(); ++f) {
        std::set<int> on(face.walls[f].begin(), face.walls[f].end());
        const auto& fac = rs.factors[f];
        Rational top = rs.highest_eval((int)f, point);
        if (on.count(0) ? top != 1 : top >= 1) return false;
        for (int i = 0; i < fac.type.rank; ++i) {
            Rational val = dot(simple_root_weight(rs, fac.offset + i), point);
            if (on.count(i + 1) ? val != 0 : val <= 0) return false;
        }
    }
    return true;
}

/// CLI face naming: sorted wall indices per factor, e.g. "A2:[0]" or
/// "A1:[]xA1:[0,1]".
inline std::string face_name(const RootSystem& rs, const AlcoveFace& face) {
    std::ostringstream os;
    for (size_t f = 0; f < rs.factors.size(); ++f) {
        if (f) os << "x";
        os << rs.factors[f].type.family << rs.factors[f].type.rank << ":[";
        for (size_t i = 0; i < face.walls[f].size(); ++i) {
            if (i) os << ",";
            os << face.walls[f][i];
        }
        os << "]";
    }
    return os.str();
}

/// Per-face structural data: the root system of the face centralizer, its
/// positive system, rho_sigma, the distinguished alcove point gamma_sigma,
/// and the subgroup W_sigma (generated by the reflections in R_sigma).
struct FaceData {
    AlcoveFace face;
    std::vector<int> r_sigma;       // indices into rs.roots
    std::vector<int> r_plus_sigma;  // indices into rs.roots
    RatVec rho_sigma;               // weight coordinates, possibly half-integral
    RatVec gamma_sigma;             // coweight coordinates
    std::vector<WeylElement> w_sigma;
};

inline FaceData face_data(const RootSystem& rs, const AlcoveFace& face) {
    FaceData fd;
    fd.face = face;

    // Vertices of the face, per factor.
    std::vector<std::vector<RatVec>> face_verts(rs.factors.size());
    for (size_t f = 0; f < rs.factors.size(); ++f) {
        auto verts = detail::factor_vertices(rs, (int)f);
        std::set<int> on(face.walls[f].begin(), face.walls[f].end());
        for (int i = 0; i <= rs.factors[f].type.rank; ++i)
            if (!on.count(i)) face_verts[f].push_back(verts[i]);
    }

    // R_sigma: roots whose restriction to the face is a constant integer.
    for (size_t idx = 0; idx < rs.roots.size(); ++idx) {
        const Root& r = rs.roots[idx];
        const auto& verts = face_verts[r.factor];
        Rational value = dot(r.weight, verts[0]);
        bool constant_integer = is_integral(value);
        for (size_t i = 1; constant_integer && i < verts.size(); ++i)
            if (dot(r.weight, verts[i]) != value) constant_integer = false;
        if (constant_integer) fd.r_sigma.push_back((int)idx);
    }

    // R_{+,sigma}: alpha with alpha(B_c^sharp rho) >= alpha|_sigma. The point
    // B_c^sharp(rho) is interior, so the comparison is never a tie.
    RatVec rho_point = b_sharp(rs, rs.dual_coxeter(), to_rat_vec(rs.rho()));
    fd.rho_sigma = RatVec(rs.rank, Rational(0));
    for (int idx : fd.r_sigma) {
        const Root& r = rs.roots[idx];
        Rational restriction = dot(r.weight, face_verts[r.factor][0]);
        Rational at_rho = dot(r.weight, rho_point);
        if (at_rho == restriction)
            throw error("alcove", "internal: tie while splitting R_sigma");
        if (at_rho > restriction) {
            fd.r_plus_sigma.push_back(idx);
            for (int i = 0; i < rs.rank; ++i) fd.rho_sigma[i] += rat(r.weight[i], 2);
        }
    }

    // gamma_sigma = B_c^sharp(rho - rho_sigma), always a point of the face.
    RatVec diff = sub(to_rat_vec(rs.rho()), fd.rho_sigma);
    fd.gamma_sigma = b_sharp(rs, rs.dual_coxeter(), diff);
    if (!face_contains(rs, face, fd.gamma_sigma))
        throw error("alcove", "internal: gamma_sigma escaped its face");

    // W_sigma: closure of the reflections in the roots of R_sigma, elements
    // keyed by the image of the integer regular coweight.
    std::vector<WeylElement> gens;
    for (int idx : fd.r_plus_sigma) gens.push_back(reflection_in_root(rs, idx));
    fd.w_sigma.push_back(weyl_identity(rs));
    std::vector<IntVec> image{rs.regular_coweight};
    std::set<IntVec> seen{rs.regular_coweight};
    for (size_t head = 0; head < fd.w_sigma.size(); ++head) {
        for (const auto& g : gens) {
            IntVec img = mat_vec(g.on_coweights, image[head]);
            if (!seen.insert(img).second) continue;
            IntMat mw = mat_mul(g.on_weights, fd.w_sigma[head].on_weights);
            IntMat mc = mat_mul(g.on_coweights, fd.w_sigma[head].on_coweights);
            image.push_back(std::move(img));
            fd.w_sigma.push_back(element_from_matrices(rs, std::move(mw), std::move(mc)));
        }
    }
    return fd;
}

/// Representatives of the cosets W / W_sigma, i.e. the w taking R_{+,sigma}
/// into the positive roots. Detected on the regular point rho^ as
/// <w alpha, rho^> > 0 for every alpha in R_{+,sigma}; a tie would contradict
/// regularity and raises an error. With this choice every element of W
/// factors uniquely as rep * w1 with w1 in W_sigma.
inline std::vector<WeylElement> coset_representatives(const RootSystem& rs,
                                                      const std::vector<WeylElement>& weyl,
                                                      const FaceData& fd) {
    std::vector<WeylElement> reps;
    for (const auto& w : weyl) {
        bool inside = true;
        for (int idx : fd.r_plus_sigma) {
            long long val = dot(act(w, rs.roots[idx].weight, Side::Weight), rs.regular_coweight);
            if (val == 0) throw error("alcove", "internal: irregular coset test point");
            if (val < 0) {
                inside = false;
                break;
            }
        }
        if (inside) reps.push_back(w);
    }
    return reps;
}

}  // namespace loopfix
