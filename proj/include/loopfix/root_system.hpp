#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>

#include "loopfix/rational.hpp"

namespace loopfix {

// ---------------------------------------------------------------------------
// Coordinate conventions, used everywhere downstream:
//   * weights live in fundamental-weight coordinates,
//   * coweights live in simple-coroot coordinates,
// so the natural pairing <mu, xi> is the plain dot product and lattice
// membership is integrality of coordinates. For a product group the
// coordinates of the factors are concatenated.
// ---------------------------------------------------------------------------

struct SimpleType {
    char family = 'A';
    int rank = 0;

    friend bool operator==(const SimpleType&, const SimpleType&) = default;
};

/// Validates the (family, rank) constraints of the simple Dynkin diagrams.
/// C2 is accepted (it coincides with B2); D requires rank at least 4.
inline bool valid_simple_type(const SimpleType& t) {
    switch (t.family) {
        case 'A': return t.rank >= 1;
        case 'B': return t.rank >= 2;
        case 'C': return t.rank >= 2;
        case 'D': return t.rank >= 4;
        case 'E': return t.rank >= 6 && t.rank <= 8;
        case 'F': return t.rank == 4;
        case 'G': return t.rank == 2;
        default: return false;
    }
}

inline Integer factorial(long n) {
    Integer f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Order of the Weyl group of one simple factor (closed form).
inline Integer weyl_order(const SimpleType& t) {
    long n = t.rank;
    switch (t.family) {
        case 'A': return factorial(n + 1);
        case 'B':
        case 'C': {
            Integer two_n = 1;
            mpz_mul_2exp(two_n.get_mpz_t(), two_n.get_mpz_t(), n);
            return two_n * factorial(n);
        }
        case 'D': {
            Integer two_n = 1;
            mpz_mul_2exp(two_n.get_mpz_t(), two_n.get_mpz_t(), n - 1);
            return two_n * factorial(n);
        }
        case 'E': return n == 6 ? Integer(51840) : n == 7 ? Integer(2903040) : Integer(696729600);
        case 'F': return Integer(1152);
        case 'G': return Integer(12);
    }
    throw error("rootsys", "unknown family");
}

/// Cartan matrix with the convention cartan[i][j] = <alpha_j, coroot_i>, so
/// the j-th column holds the fundamental-weight coordinates of alpha_j.
inline IntMat cartan_matrix(const SimpleType& t) {
    int n = t.rank;
    IntMat c(n, IntVec(n, 0));
    auto chain = [&](int a, int b) { c[a][b] = c[b][a] = -1; };
    for (int i = 0; i < n; ++i) c[i][i] = 2;
    switch (t.family) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
            break;
        case 'B':
            for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
            c[n - 1][n - 2] = -2;  // last simple root is short
            break;
        case 'C':
            for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
            c[n - 2][n - 1] = -2;  // last simple root is long
            break;
        case 'D':
            for (int i = 0; i + 1 < n - 1; ++i) chain(i, i + 1);
            chain(n - 3, n - 1);
            break;
        case 'E':
            for (int i = 0; i + 1 < n - 1; ++i) chain(i, i + 1);
            chain(2, n - 1);
            break;
        case 'F':
            for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
            c[2][1] = -2;
            break;
        case 'G':
            chain(0, 1);
            c[0][1] = -3;
            break;
    }
    return c;
}

struct Root {
    IntVec weight;   // fundamental-weight coordinates (full rank)
    IntVec coroot;   // simple-coroot coordinates of the coroot (full rank)
    IntVec simple;   // coefficients over the simple roots (full rank)
    int factor = 0;
    bool positive = false;
    long height = 0;
};

struct SimpleFactor {
    SimpleType type;
    int offset = 0;  // first coordinate index of this factor
    IntMat cartan;
    IntVec highest_root;    // local fundamental-weight coordinates
    IntVec highest_coroot;  // local coroot coordinates
    IntVec marks;           // highest root over the simple roots
    long dual_coxeter = 0;
    IntMat gram;                  // basic inner product on the coroot basis, local
    RatMat fundamental_coweights;  // column i: local coroot coordinates of the i-th
};

struct RootSystem {
    std::vector<SimpleFactor> factors;
    int rank = 0;
    std::vector<Root> roots;
    std::vector<int> positive_roots;  // indices into roots
    RatVec rho_coweight;              // sum of fundamental coweights
    IntVec regular_coweight;          // rho_coweight cleared of denominators per factor
    std::string name;

    /// rho, the half sum of positive roots: all ones in these coordinates.
    IntVec rho() const { return IntVec(rank, 1); }

    std::vector<long> dual_coxeter() const {
        std::vector<long> c;
        for (const auto& f : factors) c.push_back(f.dual_coxeter);
        return c;
    }

    /// Evaluation <alpha, xi> of a root on a coweight.
    Rational root_eval(int root_index, const RatVec& xi) const {
        return dot(roots[root_index].weight, xi);
    }

    /// Highest-root evaluation alpha_0^(f)(xi) for factor f.
    Rational highest_eval(int f, const RatVec& xi) const {
        const auto& fac = factors[f];
        Rational s = 0;
        for (int i = 0; i < fac.type.rank; ++i) s += rat(fac.highest_root[i]) * xi[fac.offset + i];
        return s;
    }
};

struct WeylElement {
    std::vector<int> word;  // reduced word in (global) simple reflections
    IntMat on_weights;
    IntMat on_coweights;

    long length() const { return (long)word.size(); }
    bool is_identity() const { return word.empty(); }
};

enum class Side { Weight, Coweight };

inline Rational pairing(const RatVec& mu, const RatVec& xi) {
    if (mu.size() != xi.size()) throw error("rootsys", "pairing dimension mismatch");
    return dot(mu, xi);
}

inline long long pairing(const IntVec& mu, const IntVec& xi) {
    if (mu.size() != xi.size()) throw error("rootsys", "pairing dimension mismatch");
    return dot(mu, xi);
}

inline RatVec act(const WeylElement& w, const RatVec& x, Side side) {
    const IntMat& m = side == Side::Weight ? w.on_weights : w.on_coweights;
    if (m.size() != x.size()) throw error("rootsys", "act dimension mismatch");
    return mat_vec(m, x);
}

inline IntVec act(const WeylElement& w, const IntVec& x, Side side) {
    const IntMat& m = side == Side::Weight ? w.on_weights : w.on_coweights;
    if (m.size() != x.size()) throw error("rootsys", "act dimension mismatch");
    return mat_vec(m, x);
}

namespace detail {

inline int factor_of_coordinate(const RootSystem& rs, int j) {
    for (size_t f = 0; f < rs.factors.size(); ++f) {
        int off = rs.factors[f].offset;
        if (j >= off && j < off + rs.factors[f].type.rank) return (int)f;
    }
    throw error("rootsys", "coordinate out of range");
}

}  // namespace detail

/// Fundamental-weight coordinates of the j-th simple root (global index).
inline IntVec simple_root_weight(const RootSystem& rs, int j) {
    int f = detail::factor_of_coordinate(rs, j);
    const auto& fac = rs.factors[f];
    int l = j - fac.offset;
    IntVec w(rs.rank, 0);
    for (int i = 0; i < fac.type.rank; ++i) w[fac.offset + i] = fac.cartan[i][l];
    return w;
}

/// Matrices of the simple reflection s_j on both coordinate systems.
inline std::pair<IntMat, IntMat> simple_reflection_matrices(const RootSystem& rs, int j) {
    IntVec alpha = simple_root_weight(rs, j);
    IntMat mw = identity_mat(rs.rank);
    IntMat mc = identity_mat(rs.rank);
    for (int r = 0; r < rs.rank; ++r) {
        mw[r][j] -= alpha[r];  // mu - <mu, coroot_j> alpha_j
        mc[j][r] -= alpha[r];  // xi - <alpha_j, xi> coroot_j
    }
    return {mw, mc};
}

/// Rebuild the reduced word of an element from its matrices by repeatedly
/// stripping descents: j is a descent of w exactly when alpha_j(w rho^) < 0,
/// tested on the integer copy of rho^.
inline WeylElement element_from_matrices(const RootSystem& rs, IntMat on_weights,
                                         IntMat on_coweights) {
    WeylElement w;
    std::vector<int> word;
    IntMat cur_c = on_coweights;
    IntVec x = mat_vec(cur_c, rs.regular_coweight);
    while (true) {
        int descent = -1;
        for (int j = 0; j < rs.rank && descent < 0; ++j) {
            if (dot(simple_root_weight(rs, j), x) < 0) descent = j;
        }
        if (descent < 0) break;
        auto [mw, mc] = simple_reflection_matrices(rs, descent);
        cur_c = mat_mul(mc, cur_c);
        x = mat_vec(mc, x);
        word.push_back(descent);
    }
    if (x != rs.regular_coweight || cur_c != identity_mat(rs.rank))
        throw error("rootsys", "matrix does not represent a Weyl element");
    w.word = std::move(word);
    w.on_weights = std::move(on_weights);
    w.on_coweights = std::move(on_coweights);
    return w;
}

inline WeylElement weyl_identity(const RootSystem& rs) {
    return WeylElement{{}, identity_mat(rs.rank), identity_mat(rs.rank)};
}

inline WeylElement compose(const RootSystem& rs, const WeylElement& a, const WeylElement& b) {
    return element_from_matrices(rs, mat_mul(a.on_weights, b.on_weights),
                                 mat_mul(a.on_coweights, b.on_coweights));
}

inline WeylElement inverse(const RootSystem& rs, const WeylElement& w) {
    WeylElement inv;
    inv.word.assign(w.word.rbegin(), w.word.rend());
    inv.on_weights = transpose(w.on_coweights);
    inv.on_coweights = transpose(w.on_weights);
    (void)rs;
    return inv;
}

/// Reflection in an arbitrary root, as a Weyl element with reduced word.
inline WeylElement reflection_in_root(const RootSystem& rs, int root_index) {
    const Root& r = rs.roots[root_index];
    IntMat mw = identity_mat(rs.rank), mc = identity_mat(rs.rank);
    for (int i = 0; i < rs.rank; ++i)
        for (int j = 0; j < rs.rank; ++j) {
            mw[i][j] -= r.weight[i] * r.coroot[j];
            mc[i][j] -= r.coroot[i] * r.weight[j];
        }
    return element_from_matrices(rs, mw, mc);
}

/// Structural data for a product of simply connected simple groups.
/// The basic inner product is derived from the symmetrized Cartan matrix and
/// normalized so that B(h_a0, h_a0) = 2 on each factor.
inline RootSystem build_root_system(const std::vector<SimpleType>& spec,
                                    const Integer& weyl_cap = Integer(1000000)) {
    if (spec.empty()) throw error("rootsys", "empty group specification");
    Integer total_order = 1;
    for (const auto& t : spec) {
        if (!valid_simple_type(t))
            throw error("rootsys", std::string("invalid Dynkin type ") + t.family +
                                       std::to_string(t.rank));
        total_order *= weyl_order(t);
    }
    if (total_order > weyl_cap)
        throw error("rootsys", "Weyl group order " + total_order.get_str() +
                                   " exceeds cap " + weyl_cap.get_str());

    RootSystem rs;
    int offset = 0;
    for (const auto& t : spec) {
        SimpleFactor f;
        f.type = t;
        f.offset = offset;
        f.cartan = cartan_matrix(t);
        rs.factors.push_back(std::move(f));
        offset += t.rank;
        if (!rs.name.empty()) rs.name += "x";
        rs.name += t.family + std::to_string(t.rank);
    }
    rs.rank = offset;

    // Close the simple root/coroot pairs under the simple reflections.
    std::map<IntVec, int> seen;
    for (int j = 0; j < rs.rank; ++j) {
        Root r;
        r.weight = simple_root_weight(rs, j);
        r.coroot = IntVec(rs.rank, 0);
        r.coroot[j] = 1;
        r.factor = detail::factor_of_coordinate(rs, j);
        seen.emplace(r.weight, (int)rs.roots.size());
        rs.roots.push_back(std::move(r));
    }
    std::vector<std::pair<IntMat, IntMat>> refl;
    for (int j = 0; j < rs.rank; ++j) refl.push_back(simple_reflection_matrices(rs, j));
    for (size_t head = 0; head < rs.roots.size(); ++head) {
        for (int j = 0; j < rs.rank; ++j) {
            IntVec w = mat_vec(refl[j].first, rs.roots[head].weight);
            if (seen.count(w)) continue;
            Root r;
            r.weight = w;
            r.coroot = mat_vec(refl[j].second, rs.roots[head].coroot);
            r.factor = rs.roots[head].factor;
            seen.emplace(r.weight, (int)rs.roots.size());
            rs.roots.push_back(std::move(r));
        }
    }

    // Simple-root coefficients, positivity, heights.
    for (auto& r : rs.roots) {
        const auto& fac = rs.factors[r.factor];
        int n = fac.type.rank;
        RatVec rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = rat(r.weight[fac.offset + i]);
        RatVec a = solve(fac.cartan, rhs);
        r.simple = IntVec(rs.rank, 0);
        bool nonneg = true;
        long h = 0;
        for (int i = 0; i < n; ++i) {
            long long c = to_ll(a[i]);
            r.simple[fac.offset + i] = c;
            if (c < 0) nonneg = false;
            h += c;
        }
        r.positive = nonneg;
        r.height = h;
    }
    for (size_t i = 0; i < rs.roots.size(); ++i)
        if (rs.roots[i].positive) rs.positive_roots.push_back((int)i);

    // Highest root, marks, dual Coxeter number per factor.
    for (auto& fac : rs.factors) {
        int fidx = (int)(&fac - rs.factors.data());
        int best = -1;
        for (int idx : rs.positive_roots) {
            const Root& r = rs.roots[idx];
            if (r.factor != fidx) continue;
            if (best < 0 || r.height > rs.roots[best].height) best = idx;
        }
        const Root& hr = rs.roots[best];
        int n = fac.type.rank;
        fac.highest_root = IntVec(n);
        fac.highest_coroot = IntVec(n);
        fac.marks = IntVec(n);
        long pairing_with_rho = 0;
        for (int i = 0; i < n; ++i) {
            fac.highest_root[i] = hr.weight[fac.offset + i];
            fac.highest_coroot[i] = hr.coroot[fac.offset + i];
            fac.marks[i] = hr.simple[fac.offset + i];
            pairing_with_rho += hr.coroot[fac.offset + i];
        }
        fac.dual_coxeter = 1 + pairing_with_rho;
    }

    // Basic inner product per factor: symmetrize the Cartan matrix by the
    // root-length ratios, then normalize the highest coroot to length 2.
    for (auto& fac : rs.factors) {
        int n = fac.type.rank;
        RatVec d(n, Rational(0));
        d[0] = 1;
        // propagate length ratios along the Dynkin graph
        for (bool changed = true; changed;) {
            changed = false;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j || fac.cartan[i][j] == 0) continue;
                    if (d[i] != 0 && d[j] == 0) {
                        d[j] = d[i] * rat(fac.cartan[i][j]) / rat(fac.cartan[j][i]);
                        changed = true;
                    }
                }
        }
        RatMat g0(n, RatVec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g0[i][j] = rat(fac.cartan[i][j]) / d[j];
        Rational q = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                q += rat(fac.highest_coroot[i]) * rat(fac.highest_coroot[j]) * g0[i][j];
        Rational s = rat(2) / q;
        fac.gram = IntMat(n, IntVec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational e = s * g0[i][j];
                if (!is_integral(e))
                    throw error("rootsys", "basic inner product is not integral on the lattice");
                fac.gram[i][j] = to_ll(e);
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (fac.gram[i][j] != fac.gram[j][i])
                    throw error("rootsys", "basic inner product is not symmetric");
    }

    // Fundamental coweights per factor, their sum (the regular dominant test
    // point rho^), and an all-integer copy of the latter (scaled per factor)
    // for fast chamber tests.
    rs.rho_coweight = RatVec(rs.rank, Rational(0));
    rs.regular_coweight = IntVec(rs.rank, 0);
    for (auto& fac : rs.factors) {
        int n = fac.type.rank;
        fac.fundamental_coweights = inverse(to_rat_mat(transpose(fac.cartan)));
        RatVec x(n, Rational(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) x[i] += fac.fundamental_coweights[i][j];
        Integer den = denominator_lcm(x);
        for (int i = 0; i < n; ++i) {
            rs.rho_coweight[fac.offset + i] = x[i];
            rs.regular_coweight[fac.offset + i] = to_ll(Rational(x[i] * Rational(den)));
        }
    }
    return rs;
}

/// Full enumeration of the Weyl group by closure of the simple reflections.
/// Elements come out in breadth-first order, so words are reduced and the
/// identity is first.
inline std::vector<WeylElement> enumerate_weyl(const RootSystem& rs,
                                               const Integer& weyl_cap = Integer(1000000)) {
    Integer expect = 1;
    for (const auto& f : rs.factors) expect *= weyl_order(f.type);
    if (expect > weyl_cap)
        throw error("rootsys", "Weyl group order " + expect.get_str() + " exceeds cap " +
                                   weyl_cap.get_str());

    std::vector<std::pair<IntMat, IntMat>> refl;
    for (int j = 0; j < rs.rank; ++j) refl.push_back(simple_reflection_matrices(rs, j));

    // Elements are keyed by the image of the integer regular coweight, which
    // identifies them uniquely and is much cheaper than a matrix key.
    std::vector<WeylElement> out;
    std::vector<IntVec> image{rs.regular_coweight};
    out.push_back(weyl_identity(rs));
    std::map<IntVec, int> seen{{image[0], 0}};
    for (size_t head = 0; head < out.size(); ++head) {
        for (int j = 0; j < rs.rank; ++j) {
            IntVec img = mat_vec(refl[j].second, image[head]);
            if (seen.count(img)) continue;
            WeylElement w;
            w.word.reserve(out[head].word.size() + 1);
            w.word.push_back(j);
            w.word.insert(w.word.end(), out[head].word.begin(), out[head].word.end());
            w.on_weights = mat_mul(refl[j].first, out[head].on_weights);
            w.on_coweights = mat_mul(refl[j].second, out[head].on_coweights);
            seen.emplace(img, (int)out.size());
            image.push_back(std::move(img));
            out.push_back(std::move(w));
        }
    }
    if (Integer((long)out.size()) != expect)
        throw error("rootsys", "Weyl enumeration produced " + std::to_string(out.size()) +
                                   " elements, expected " + expect.get_str());
    return out;
}

inline const WeylElement& longest_element(const std::vector<WeylElement>& weyl) {
    const WeylElement* best = &weyl.front();
    for (const auto& w : weyl)
        if (w.length() > best->length()) best = &w;
    return *best;
}

/// Is xi inside the closed fundamental alcove (all walls satisfied)?
inline bool in_closed_alcove(const RootSystem& rs, const RatVec& xi) {
    for (int j = 0; j < rs.rank; ++j)
        if (dot(simple_root_weight(rs, j), xi) < 0) return false;
    for (size_t f = 0; f < rs.factors.size(); ++f)
        if (rs.highest_eval((int)f, xi) > 1) return false;
    return true;
}

/// The dominant representative of a coweight under the finite Weyl group.
inline RatVec dominant_representative(const RootSystem& rs, RatVec x) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = 0; j < rs.rank; ++j) {
            if (dot(simple_root_weight(rs, j), x) < 0) {
                auto [mw, mc] = simple_reflection_matrices(rs, j);
                x = mat_vec(mc, x);
                changed = true;
            }
        }
    }
    return x;
}

/// Parse a group specifier such as "A1", "G2", "A1xA1" or "A2,B2".
inline std::vector<SimpleType> parse_group_spec(const std::string& text) {
    std::vector<SimpleType> out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) throw error("rootsys", "empty factor in group specifier");
        SimpleType t;
        t.family = (char)std::toupper((unsigned char)token[0]);
        try {
            size_t pos = 0;
            t.rank = std::stoi(token.substr(1), &pos);
            if (pos + 1 != token.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw error("rootsys", "cannot parse factor '" + token + "'");
        }
        if (!valid_simple_type(t))
            throw error("rootsys", "invalid Dynkin type '" + token + "'");
        out.push_back(t);
        token.clear();
    };
    for (char c : text) {
        if (c == 'x' || c == 'X' || c == ',') {
            flush();
        } else if (!std::isspace((unsigned char)c)) {
            token += c;
        }
    }
    flush();
    return out;
}

}  // namespace loopfix
