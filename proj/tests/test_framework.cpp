#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "rumkit/framework.hpp"

using namespace rumkit;

namespace {

ExactScalar rat(long n, long d = 1) { return ExactScalar(Rational(n, d)); }

Motif strip_motif() {
    Motif m;
    m.dimension = 2;
    m.vertices = {{rat(0), rat(0)}, {rat(0), rat(4)}, {rat(1), rat(3)}};
    m.edges = {{0, 1, {0}}, {1, 2, {0}}, {0, 2, {0}}, {0, 0, {1}}, {2, 1, {1}}};
    return m;
}

} // namespace

TEST_CASE("new_framework accepts the strip and reports bad inputs") {
    const CrystalFramework strip =
        new_framework(strip_motif(), TranslationGroup({{rat(4), rat(0)}}));
    CHECK(strip.vertex_count() == 3);
    CHECK(strip.edge_count() == 5);
    CHECK(strip.dim() == 2);
    CHECK(strip.rank() == 1);

    SUBCASE("parallel periods are rank-deficient") {
        Motif m = strip_motif();
        for (auto& e : m.edges) e.delta = {0, 0};
        m.edges[3] = {0, 0, {1, 0}};
        m.edges[4] = {2, 1, {1, 0}};
        CHECK_THROWS_WITH_AS(
            (void)new_framework(std::move(m),
                                TranslationGroup({{rat(1), rat(0)}, {rat(2), rat(0)}})),
            doctest::Contains("rank-deficient"), ValidationError);
    }
    SUBCASE("reflexive edge with zero offset") {
        Motif m = strip_motif();
        m.edges.push_back({1, 1, {0}});
        CHECK_THROWS_WITH_AS(
            (void)new_framework(std::move(m), TranslationGroup({{rat(4), rat(0)}})),
            doctest::Contains("zero edge vector"), ValidationError);
    }
    SUBCASE("zero edge vector between translates") {
        Motif m;
        m.dimension = 2;
        m.vertices = {{rat(0), rat(0)}, {rat(4), rat(0)}};
        m.edges = {{0, 1, {-1}}, {0, 1, {0}}};
        CHECK_THROWS_WITH_AS(
            (void)new_framework(std::move(m), TranslationGroup({{rat(4), rat(0)}})),
            doctest::Contains("zero edge vector"), ValidationError);
    }
    SUBCASE("coincident placed vertices") {
        Motif m = strip_motif();
        m.vertices.push_back({rat(8), rat(4)});  // p2 shifted by 2 periods
        m.edges[0] = {0, 3, {0}};
        CHECK_THROWS_WITH_AS(
            (void)new_framework(std::move(m), TranslationGroup({{rat(4), rat(0)}})),
            doctest::Contains("coincident"), ValidationError);
    }
    SUBCASE("edge index out of range") {
        Motif m = strip_motif();
        m.edges.push_back({0, 7, {0}});
        CHECK_THROWS_WITH_AS(
            (void)new_framework(std::move(m), TranslationGroup({{rat(4), rat(0)}})),
            doctest::Contains("out of range"), ValidationError);
    }
    SUBCASE("offset dimension must match the lattice rank") {
        Motif m = strip_motif();
        m.edges[0].delta = {0, 0};
        CHECK_THROWS_AS((void)new_framework(std::move(m), TranslationGroup({{rat(4), rat(0)}})),
                        ValidationError);
    }
}

TEST_CASE("place_vertex on the strip") {
    const CrystalFramework strip = make_generator("strip");
    const std::vector<int> zero = {0}, two = {2}, minus = {-1};
    CHECK(strip.place_vertex(0, zero) == ExactVec{rat(0), rat(0)});
    CHECK(strip.place_vertex(2, two) == ExactVec{rat(9), rat(3)});
    CHECK(strip.place_vertex(1, minus) == ExactVec{rat(-4), rat(4)});
    CHECK_THROWS_AS((void)strip.place_vertex(3, zero), ValidationError);
}

TEST_CASE("edge vectors on the strip match the reference values") {
    const CrystalFramework strip = make_generator("strip");
    CHECK(strip.edge_vector(0) == ExactVec{rat(0), rat(-4)});
    CHECK(strip.edge_vector(3) == ExactVec{rat(-4), rat(0)});
    CHECK(strip.edge_vector(4) == ExactVec{rat(-3), rat(-1)});
    CHECK_THROWS_AS((void)strip.edge_vector(5), ValidationError);
}

TEST_CASE("placement additivity (exact, random offsets)") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> d(-3, 3);
    for (const auto& name : generator_names()) {
        const CrystalFramework fw = make_generator(name);
        for (int trial = 0; trial < 10; ++trial) {
            const int kappa = static_cast<int>(rng() % static_cast<unsigned long>(fw.vertex_count()));
            std::vector<int> k1(static_cast<size_t>(fw.rank())), k2(static_cast<size_t>(fw.rank())),
                sum(static_cast<size_t>(fw.rank()));
            for (int i = 0; i < fw.rank(); ++i) {
                k1[static_cast<size_t>(i)] = d(rng);
                k2[static_cast<size_t>(i)] = d(rng);
                sum[static_cast<size_t>(i)] = k1[static_cast<size_t>(i)] + k2[static_cast<size_t>(i)];
            }
            const ExactVec lhs = fw.place_vertex(kappa, sum);
            const ExactVec rhs = fw.place_vertex(kappa, k1) +
                                 (fw.place_vertex(kappa, k2) -
                                  fw.motif().vertices[static_cast<size_t>(kappa)]);
            CHECK(std::equal(lhs.begin(), lhs.end(), rhs.begin()));
        }
    }
}

TEST_CASE("supercell scales counts and reduces offsets") {
    const CrystalFramework strip = make_generator("strip");
    const CrystalFramework strip2 = supercell(strip, {2});
    CHECK(strip2.vertex_count() == 6);
    CHECK(strip2.edge_count() == 10);
    CHECK(strip2.translations().period(0) == ExactVec{rat(8), rat(0)});

    const CrystalFramework kag = make_generator("kagome");
    const CrystalFramework kag22 = supercell(kag, {2, 2});
    CHECK(kag22.vertex_count() == 12);
    CHECK(kag22.edge_count() == 24);

    SUBCASE("unit multiplier is the identity") {
        const CrystalFramework same = supercell(kag, {1, 1});
        CHECK(same.motif().vertices == kag.motif().vertices);
        CHECK(same.motif().edges == kag.motif().edges);
        CHECK(same.translations().periods() == kag.translations().periods());
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS((void)supercell(kag, {0, 2}), ValidationError);
        CHECK_THROWS_AS((void)supercell(kag, {2}), ValidationError);
    }
}

TEST_CASE("supercell preserves the placed vertex and edge sets") {
    for (const char* name : {"strip", "kagome", "subdivided_grid_diag"}) {
        const CrystalFramework fw = make_generator(name);
        std::vector<int> m(static_cast<size_t>(fw.rank()), 1);
        m[0] = 2;
        if (fw.rank() > 1) m[1] = 2;
        const CrystalFramework super = supercell(fw, m);

        auto key = [](const CrystalFramework& f, int kappa, std::span<const int> cell) {
            std::string s;
            for (const auto& c : f.place_vertex(kappa, cell)) s += c.to_string() + ";";
            return s;
        };
        std::set<std::string> base_pts, super_pts;
        std::set<std::pair<std::string, std::string>> base_edges, super_edges;
        auto ekey = [](std::string a, std::string b) {
            return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
        };
        const std::vector<int> lo(static_cast<size_t>(fw.rank()), 0);
        std::vector<int> hi_super(static_cast<size_t>(fw.rank()), 1);
        for_each_cell(lo, m, [&](std::span<const int> c) {
            for (int k = 0; k < fw.vertex_count(); ++k) base_pts.insert(key(fw, k, c));
            for (int e = 0; e < fw.edge_count(); ++e) {
                const EdgeSpec& ed = fw.motif().edges[static_cast<size_t>(e)];
                std::vector<int> t(c.begin(), c.end());
                for (int i = 0; i < fw.rank(); ++i)
                    t[static_cast<size_t>(i)] += ed.delta[static_cast<size_t>(i)];
                base_edges.insert(ekey(key(fw, ed.kappa, c), key(fw, ed.tau, t)));
            }
        });
        for_each_cell(lo, hi_super, [&](std::span<const int> c) {
            for (int k = 0; k < super.vertex_count(); ++k) super_pts.insert(key(super, k, c));
            for (int e = 0; e < super.edge_count(); ++e) {
                const EdgeSpec& ed = super.motif().edges[static_cast<size_t>(e)];
                std::vector<int> t(c.begin(), c.end());
                for (int i = 0; i < fw.rank(); ++i)
                    t[static_cast<size_t>(i)] += ed.delta[static_cast<size_t>(i)];
                super_edges.insert(ekey(key(super, ed.kappa, c), key(super, ed.tau, t)));
            }
        });
        CHECK(base_pts == super_pts);
        CHECK(base_edges == super_edges);
    }
}

TEST_CASE("Maxwell counting") {
    CHECK(make_generator("kagome").maxwell_equilibrium());
    CHECK(make_generator("grid2d").maxwell_equilibrium());
    CHECK(make_generator("kagome_net").maxwell_equilibrium());
    CHECK(make_generator("subdivided_grid_diag").maxwell_equilibrium());
    CHECK_FALSE(make_generator("strip").maxwell_equilibrium());
}

TEST_CASE("kagome geometry: unit bars, degree 4") {
    const CrystalFramework kag = make_generator("kagome");
    CHECK(kag.edge_count() == 6);
    for (int e = 0; e < kag.edge_count(); ++e) {
        const ExactVec v = kag.edge_vector(e);
        CHECK(dot(v, v) == ExactScalar(1));
    }
    std::vector<int> degree(3, 0);
    for (const EdgeSpec& e : kag.motif().edges) {
        ++degree[static_cast<size_t>(e.kappa)];
        ++degree[static_cast<size_t>(e.tau)];
    }
    CHECK(degree == std::vector<int>{4, 4, 4});
    CHECK(kag.framework_radicand() == 3);
}

TEST_CASE("kagome net geometry: equal bars, pi/3 periods") {
    const CrystalFramework net = make_generator("kagome_net");
    CHECK(net.vertex_count() == 4);
    CHECK(net.edge_count() == 12);
    for (int e = 0; e < net.edge_count(); ++e) {
        const ExactVec v = net.edge_vector(e);
        CHECK(dot(v, v) == ExactScalar(Rational(1, 8)));  // (sqrt 2 / 4)^2
    }
    const auto& periods = net.translations().periods();
    for (int i = 0; i < 3; ++i) {
        CHECK(dot(periods[static_cast<size_t>(i)], periods[static_cast<size_t>(i)]) ==
              ExactScalar(Rational(1, 2)));
        for (int j = i + 1; j < 3; ++j)
            CHECK(dot(periods[static_cast<size_t>(i)], periods[static_cast<size_t>(j)]) ==
                  ExactScalar(Rational(1, 4)));  // cos(pi/3) * |a_i| * |a_j|
    }
}

TEST_CASE("generator lookup") {
    CHECK(make_generator("subdivided_grid_diag").maxwell_equilibrium());
    CHECK_THROWS_WITH_AS((void)make_generator("sodalite"), doctest::Contains("unknown generator"),
                         ValidationError);
    CHECK(generator_names().size() == 5);
}

TEST_CASE("max edge offset") {
    CHECK(make_generator("strip").max_edge_offset() == 1);
    CHECK(make_generator("kagome").max_edge_offset() == 1);
    CHECK(make_generator("subdivided_grid_diag").max_edge_offset() == 1);
}
