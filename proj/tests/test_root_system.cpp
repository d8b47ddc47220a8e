#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <random>
#include <set>

#include "loopfix/root_system.hpp"

using namespace loopfix;

namespace {

RootSystem make(const std::string& spec) { return build_root_system(parse_group_spec(spec)); }

std::mt19937 rng(987654);

RatVec random_vec(int n) {
    RatVec v(n);
    for (auto& q : v) q = rat((long long)(rng() % 19) - 9, 1 + (long long)(rng() % 4));
    return v;
}

long dim_of(const SimpleType& t) {
    long n = t.rank;
    switch (t.family) {
        case 'A': return (n + 1) * (n + 1) - 1;
        case 'B':
        case 'C': return n * (2 * n + 1);
        case 'D': return n * (2 * n - 1);
        case 'E': return n == 6 ? 78 : n == 7 ? 133 : 248;
        case 'F': return 52;
        case 'G': return 14;
    }
    return 0;
}

}  // namespace

TEST_CASE("worked small types") {
    auto a1 = make("A1");
    CHECK(a1.roots.size() == 2);
    CHECK(enumerate_weyl(a1).size() == 2);
    CHECK(a1.factors[0].dual_coxeter == 2);

    auto a2 = make("A2");
    CHECK(a2.roots.size() == 6);
    CHECK(enumerate_weyl(a2).size() == 6);
    CHECK(a2.factors[0].dual_coxeter == 3);

    auto prod = make("A1xA1");
    CHECK(prod.dual_coxeter() == std::vector<long>{2, 2});
    CHECK(prod.roots.size() == 4);
    for (const auto& r : prod.roots) {
        // disjoint union: each root is supported on a single factor
        int f = r.factor;
        for (int i = 0; i < prod.rank; ++i)
            if (i / 1 != f) CHECK((i == f ? r.weight[i] != 0 : true));
        CHECK(r.weight[1 - f] == 0);
    }
}

TEST_CASE("invalid types and caps") {
    CHECK_THROWS_AS(make("E5"), error);
    CHECK_THROWS_AS(make("G3"), error);
    CHECK_THROWS_AS(make("D3"), error);
    CHECK_THROWS_AS(make("H3"), error);
    CHECK_THROWS_AS(make("A0"), error);
    // E8 exceeds the default desk-scale cap
    CHECK_THROWS_AS(make("E8"), error);
    CHECK_THROWS_AS(build_root_system(parse_group_spec("A2"), Integer(5)), error);
    CHECK_THROWS_AS(enumerate_weyl(make("A2"), Integer(5)), error);
    // raising the cap admits E6 structure data
    auto e6 = build_root_system(parse_group_spec("E6"), Integer(100000));
    CHECK(e6.roots.size() == 72);
    CHECK(e6.factors[0].dual_coxeter == 12);
}

TEST_CASE("Weyl group orders by enumeration") {
    std::map<std::string, size_t> expect{
        {"A1", 2}, {"A2", 6}, {"B2", 8}, {"G2", 12}, {"A3", 24}};
    for (const auto& [spec, order] : expect) CHECK(enumerate_weyl(make(spec)).size() == order);
}

TEST_CASE("length histogram of A2") {
    auto rs = make("A2");
    std::map<long, int> hist;
    for (const auto& w : enumerate_weyl(rs)) hist[w.length()]++;
    CHECK(hist == std::map<long, int>{{0, 1}, {1, 2}, {2, 2}, {3, 1}});
}

TEST_CASE("enumeration is closed and duplicate free") {
    for (const std::string spec : {"A2", "B2", "A1xA1"}) {
        auto rs = make(spec);
        auto weyl = enumerate_weyl(rs);
        std::set<IntMat> mats;
        for (const auto& w : weyl) {
            CHECK((long)w.word.size() == w.length());
            mats.insert(w.on_weights);
        }
        CHECK(mats.size() == weyl.size());
        CHECK(weyl[0].is_identity());
        for (const auto& w : weyl)
            for (int j = 0; j < rs.rank; ++j) {
                auto [mw, mc] = simple_reflection_matrices(rs, j);
                CHECK(mats.count(mat_mul(mw, w.on_weights)) == 1);
            }
    }
}

TEST_CASE("length equals inversion count") {
    for (const std::string spec : {"A2", "B2", "G2"}) {
        auto rs = make(spec);
        for (const auto& w : enumerate_weyl(rs)) {
            long inversions = 0;
            for (int idx : rs.positive_roots) {
                IntVec img = act(w, rs.roots[idx].weight, Side::Weight);
                RatVec coeffs = solve(rs.factors[0].cartan, to_rat_vec(img));
                bool positive = true;
                for (const auto& c : coeffs)
                    if (c < 0) positive = false;
                if (!positive) ++inversions;
            }
            CHECK(inversions == w.length());
        }
    }
}

TEST_CASE("action and pairing") {
    auto a1 = make("A1");
    auto weyl = enumerate_weyl(a1);
    IntVec rho = a1.rho();
    CHECK(act(weyl[0], rho, Side::Weight) == rho);
    const auto& s = weyl[1];
    CHECK(act(s, rho, Side::Weight) == IntVec{-1});

    // <rho, coroot of the highest root> = 1 for A1
    CHECK(pairing(a1.rho(), a1.roots[a1.positive_roots[0]].coroot) == 1);

    auto rs = make("A2xB2");
    auto w2 = enumerate_weyl(rs);
    for (int trial = 0; trial < 20; ++trial) {
        RatVec mu = random_vec(rs.rank), xi = random_vec(rs.rank);
        const auto& w = w2[rng() % w2.size()];
        CHECK(pairing(act(w, mu, Side::Weight), act(w, xi, Side::Coweight)) == pairing(mu, xi));
    }
    CHECK(pairing(RatVec(rs.rank, Rational(0)), random_vec(rs.rank)) == 0);
    // fundamental weight i against coroot j is the Kronecker delta
    for (int i = 0; i < rs.rank; ++i)
        for (int j = 0; j < rs.rank; ++j) {
            IntVec fw(rs.rank, 0), cr(rs.rank, 0);
            fw[i] = 1;
            cr[j] = 1;
            CHECK(pairing(fw, cr) == (i == j ? 1 : 0));
        }
    CHECK_THROWS_AS(act(w2[1], RatVec(2), Side::Weight), error);
    CHECK_THROWS_AS(pairing(RatVec(2), RatVec(3)), error);
}

TEST_CASE("root counts match the group dimension") {
    for (const std::string spec :
         {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"}) {
        auto rs = make(spec);
        CHECK((long)rs.roots.size() == dim_of(rs.factors[0].type) - rs.factors[0].type.rank);
        CHECK(2 * rs.positive_roots.size() == rs.roots.size());
    }
}

TEST_CASE("dual Coxeter numbers against the classical table") {
    std::map<std::string, long> expect{{"A1", 2}, {"A2", 3}, {"A3", 4}, {"A4", 5}, {"A5", 6},
                                       {"B2", 3}, {"B3", 5}, {"B4", 7}, {"B5", 9}, {"C2", 3},
                                       {"C3", 4}, {"C4", 5}, {"C5", 6}, {"D4", 6}, {"D5", 8},
                                       {"F4", 9}, {"G2", 4}, {"E6", 12}};
    for (const auto& [spec, c] : expect) {
        auto rs = build_root_system(parse_group_spec(spec), Integer(100000));
        CHECK(rs.factors[0].dual_coxeter == c);
        // c = 1 + rho(coroot of the highest root), recomputed from stored data
        long p = 0;
        for (auto x : rs.factors[0].highest_coroot) p += x;
        CHECK(1 + p == c);
    }
}

TEST_CASE("the highest root dominates every root") {
    for (const std::string spec : {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "F4", "G2"}) {
        auto rs = make(spec);
        const auto& fac = rs.factors[0];
        for (const auto& r : rs.roots) {
            // the difference to the highest root has nonnegative simple-root
            // coefficients
            for (int i = 0; i < fac.type.rank; ++i) CHECK(fac.marks[i] >= r.simple[i]);
        }
    }
}

TEST_CASE("basic inner product normalization and invariance") {
    for (const std::string spec : {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "F4", "G2", "A1xG2"}) {
        auto rs = make(spec);
        for (const auto& fac : rs.factors) {
            int n = fac.type.rank;
            // Gram is symmetric with B(h_a0, h_a0) = 2 exactly
            long long q = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    CHECK(fac.gram[i][j] == fac.gram[j][i]);
                    q += fac.highest_coroot[i] * fac.highest_coroot[j] * fac.gram[i][j];
                }
            CHECK(q == 2);
        }
        // invariance under every simple reflection (coweight side)
        for (int j = 0; j < rs.rank; ++j) {
            auto [mw, mc] = simple_reflection_matrices(rs, j);
            // assemble the block Gram of the full group
            IntMat gram(rs.rank, IntVec(rs.rank, 0));
            for (const auto& fac : rs.factors)
                for (int a = 0; a < fac.type.rank; ++a)
                    for (int b = 0; b < fac.type.rank; ++b)
                        gram[fac.offset + a][fac.offset + b] = fac.gram[a][b];
            CHECK(mat_mul(transpose(mc), mat_mul(gram, mc)) == gram);
        }
    }
}

TEST_CASE("simple reflections permute the other positive roots") {
    for (const std::string spec : {"A2", "A3", "A4", "B2", "B3", "B4", "C3", "D4", "F4", "G2"}) {
        auto rs = make(spec);
        for (int j = 0; j < rs.rank; ++j) {
            IntVec alpha_j = simple_root_weight(rs, j);
            auto [mw, mc] = simple_reflection_matrices(rs, j);
            for (int idx : rs.positive_roots) {
                const auto& r = rs.roots[idx];
                if (r.weight == alpha_j) continue;
                IntVec img = mat_vec(mw, r.weight);
                bool found_positive = false;
                for (int k : rs.positive_roots)
                    if (rs.roots[k].weight == img) found_positive = true;
                CHECK(found_positive);
            }
        }
    }
}

TEST_CASE("element reconstruction and composition") {
    auto rs = make("B2");
    auto weyl = enumerate_weyl(rs);
    for (const auto& w : weyl) {
        auto rebuilt = element_from_matrices(rs, w.on_weights, w.on_coweights);
        CHECK(rebuilt.length() == w.length());
        CHECK(rebuilt.on_weights == w.on_weights);
        // duality of the two matrix actions
        CHECK(mat_mul(transpose(w.on_weights), w.on_coweights) == identity_mat(rs.rank));
        auto inv = inverse(rs, w);
        CHECK(compose(rs, w, inv).is_identity());
    }
    for (int trial = 0; trial < 10; ++trial) {
        const auto& a = weyl[rng() % weyl.size()];
        const auto& b = weyl[rng() % weyl.size()];
        auto c = compose(rs, a, b);
        CHECK(c.on_weights == mat_mul(a.on_weights, b.on_weights));
        CHECK((long)c.word.size() == c.length());
    }
    // a reflection in the highest root is an odd-length element of W
    int hr = -1;
    for (int idx : rs.positive_roots)
        if (rs.roots[idx].height > (hr < 0 ? -1 : rs.roots[hr].height)) hr = idx;
    auto refl = reflection_in_root(rs, hr);
    CHECK(refl.length() % 2 == 1);
    CHECK(mat_mul(refl.on_weights, refl.on_weights) == identity_mat(rs.rank));
}

TEST_CASE("longest element") {
    auto rs = make("A2");
    auto weyl = enumerate_weyl(rs);
    const auto& w0 = longest_element(weyl);
    CHECK(w0.length() == 3);
    // -w0 fixes the dominant chamber: -w0(rho) = rho
    IntVec m = act(w0, rs.rho(), Side::Weight);
    CHECK(neg(m) == rs.rho());
}

TEST_CASE("group specifier parsing") {
    CHECK(parse_group_spec("A1").size() == 1);
    CHECK(parse_group_spec("a1xg2")[1].family == 'G');
    CHECK(parse_group_spec("A2,B2").size() == 2);
    CHECK(parse_group_spec("A1xA1xA1").size() == 3);
    CHECK_THROWS_AS(parse_group_spec(""), error);
    CHECK_THROWS_AS(parse_group_spec("A"), error);
    CHECK_THROWS_AS(parse_group_spec("A1x"), error);
    CHECK_THROWS_AS(parse_group_spec("Q3"), error);
    CHECK_THROWS_AS(parse_group_spec("A1.5"), error);
}
