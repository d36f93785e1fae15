#include "rumkit/framework.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace rumkit {

void for_each_cell(std::span<const int> lo, std::span<const int> hi,
                   const std::function<void(std::span<const int>)>& fn) {
    const size_t r = lo.size();
    if (hi.size() != r) throw ValidationError("box bounds of different dimension");
    for (size_t i = 0; i < r; ++i)
        if (lo[i] >= hi[i]) throw ValidationError("empty box interval");
    std::vector<int> cell(lo.begin(), lo.end());
    while (true) {
        fn(cell);
        size_t i = r;
        while (i > 0) {
            --i;
            if (++cell[i] < hi[i]) break;
            cell[i] = lo[i];
            if (i == 0) return;
        }
    }
}

long box_cell_count(std::span<const int> lo, std::span<const int> hi) {
    if (hi.size() != lo.size()) throw ValidationError("box bounds of different dimension");
    long n = 1;
    for (size_t i = 0; i < lo.size(); ++i) {
        if (lo[i] >= hi[i]) throw ValidationError("empty box interval");
        n *= hi[i] - lo[i];
    }
    return n;
}

ExactScalar exact_determinant(const std::vector<ExactVec>& rows) {
    const size_t n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) throw ValidationError("determinant of non-square matrix");
    if (n == 0) return ExactScalar(1);
    if (n == 1) return rows[0][0];
    // Cofactor expansion along the first row; n stays tiny here (<= dim).
    ExactScalar det;
    for (size_t j = 0; j < n; ++j) {
        if (rows[0][j].is_zero()) continue;
        std::vector<ExactVec> minor;
        minor.reserve(n - 1);
        for (size_t i = 1; i < n; ++i) {
            ExactVec row;
            row.reserve(n - 1);
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(rows[i][k]);
            minor.push_back(std::move(row));
        }
        ExactScalar term = rows[0][j] * exact_determinant(minor);
        if (j % 2 == 1) term = -term;
        det += term;
    }
    return det;
}

namespace {

long scalar_radicand(const ExactScalar& s) { return s.effective_radicand(); }

long shared_radicand(const Motif& motif, const TranslationGroup& t) {
    long d = 0;
    auto merge = [&d](long r, const char* what, size_t idx) {
        if (r == 0) return;
        if (d == 0) {
            d = r;
        } else if (d != r) {
            throw ValidationError(std::string("mixed radicands: ") + what + " " +
                                  std::to_string(idx + 1) + " uses sqrt(" + std::to_string(r) +
                                  ") but the framework already uses sqrt(" + std::to_string(d) + ")");
        }
    };
    for (size_t i = 0; i < motif.vertices.size(); ++i)
        for (const auto& c : motif.vertices[i]) merge(scalar_radicand(c), "vertex", i);
    for (size_t i = 0; i < t.periods().size(); ++i)
        for (const auto& c : t.periods()[i]) merge(scalar_radicand(c), "period", i);
    return d;
}

ExactVec lattice_shift(const TranslationGroup& t, std::span<const int> cell, int dim) {
    ExactVec shift(static_cast<size_t>(dim));
    for (size_t i = 0; i < cell.size(); ++i) {
        if (cell[i] == 0) continue;
        const ExactVec& a = t.period(static_cast<int>(i));
        const ExactScalar k(static_cast<long>(cell[i]));
        for (int s = 0; s < dim; ++s) shift[static_cast<size_t>(s)] += k * a[static_cast<size_t>(s)];
    }
    return shift;
}

} // namespace

CrystalFramework CrystalFramework::create(Motif motif, TranslationGroup translations) {
    const int dim = motif.dimension;
    if (dim < 1) throw ValidationError("dimension must be positive");
    if (motif.vertices.empty()) throw ValidationError("motif needs at least one vertex");
    if (motif.edges.empty()) throw ValidationError("motif needs at least one edge");

    const int rank = translations.rank();
    if (rank < 1 || rank > dim)
        throw ValidationError("need between 1 and dim period vectors, got " + std::to_string(rank));
    for (int i = 0; i < rank; ++i)
        if (static_cast<int>(translations.period(i).size()) != dim)
            throw ValidationError("period " + std::to_string(i + 1) + " has wrong dimension");

    for (size_t i = 0; i < motif.vertices.size(); ++i)
        if (static_cast<int>(motif.vertices[i].size()) != dim)
            throw ValidationError("vertex " + std::to_string(i + 1) + " has wrong dimension");

    const int nv = static_cast<int>(motif.vertices.size());
    for (size_t e = 0; e < motif.edges.size(); ++e) {
        const EdgeSpec& ed = motif.edges[e];
        if (ed.kappa < 0 || ed.kappa >= nv || ed.tau < 0 || ed.tau >= nv)
            throw ValidationError("edge " + std::to_string(e + 1) + ": vertex index out of range");
        if (static_cast<int>(ed.delta.size()) != rank)
            throw ValidationError("edge " + std::to_string(e + 1) + ": offset has wrong dimension");
        if (ed.kappa == ed.tau &&
            std::all_of(ed.delta.begin(), ed.delta.end(), [](int d) { return d == 0; }))
            throw ValidationError("edge " + std::to_string(e + 1) +
                                  ": reflexive edge with zero offset (zero edge vector)");
    }

    const long radicand = shared_radicand(motif, translations);

    // Full row rank of the period matrix, checked exactly via the Gram
    // determinant det(A A^T).
    std::vector<ExactVec> gram(static_cast<size_t>(rank), ExactVec(static_cast<size_t>(rank)));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            gram[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                dot(translations.period(i), translations.period(j));
    if (exact_determinant(gram).is_zero())
        throw ValidationError("rank-deficient periods: period vectors are linearly dependent");

    CrystalFramework fw(std::move(motif), std::move(translations), radicand);

    for (int e = 0; e < fw.edge_count(); ++e)
        if (is_zero(fw.edge_vector(e)))
            throw ValidationError("edge " + std::to_string(e + 1) + ": zero edge vector");

    // Discreteness proxy: placed vertices with offsets in [-2,2]^rank are
    // pairwise distinct; equivalently p_kappa - p_tau != m.A for offset
    // differences m in [-4,4]^rank.
    {
        const std::vector<int> lo(static_cast<size_t>(fw.rank()), -4);
        const std::vector<int> hi(static_cast<size_t>(fw.rank()), 5);
        std::vector<ExactVec> shifts;
        std::vector<bool> is_origin;
        for_each_cell(lo, hi, [&](std::span<const int> c) {
            shifts.push_back(lattice_shift(fw.translations_, c, fw.dim()));
            is_origin.push_back(std::all_of(c.begin(), c.end(), [](int x) { return x == 0; }));
        });
        auto equal_vec = [](const ExactVec& x, const ExactVec& y) {
            for (size_t i = 0; i < x.size(); ++i)
                if (x[i] != y[i]) return false;
            return true;
        };
        for (int a = 0; a < fw.vertex_count(); ++a) {
            for (int b = a; b < fw.vertex_count(); ++b) {
                const ExactVec d0 = fw.motif_.vertices[static_cast<size_t>(a)] -
                                    fw.motif_.vertices[static_cast<size_t>(b)];
                for (size_t s = 0; s < shifts.size(); ++s) {
                    if (a == b && is_origin[s]) continue;
                    if (equal_vec(d0, shifts[s]))
                        throw ValidationError(
                            "coincident placed vertices: vertices " + std::to_string(a + 1) +
                            " and " + std::to_string(b + 1) + " collide under a lattice shift");
                }
            }
        }
    }
    return fw;
}

ExactVec CrystalFramework::place_vertex(int kappa, std::span<const int> cell) const {
    if (kappa < 0 || kappa >= vertex_count())
        throw ValidationError("vertex index out of range: " + std::to_string(kappa + 1));
    if (static_cast<int>(cell.size()) != rank())
        throw ValidationError("cell offset has wrong dimension");
    return motif_.vertices[static_cast<size_t>(kappa)] + lattice_shift(translations_, cell, dim());
}

ExactVec CrystalFramework::edge_vector(int e) const {
    if (e < 0 || e >= edge_count())
        throw ValidationError("edge index out of range: " + std::to_string(e + 1));
    const EdgeSpec& ed = motif_.edges[static_cast<size_t>(e)];
    return motif_.vertices[static_cast<size_t>(ed.kappa)] - place_vertex(ed.tau, ed.delta);
}

int CrystalFramework::max_edge_offset() const {
    int m = 0;
    for (const auto& e : motif_.edges)
        for (int d : e.delta) m = std::max(m, std::abs(d));
    return m;
}

CrystalFramework supercell(const CrystalFramework& fw, const std::vector<int>& m) {
    if (static_cast<int>(m.size()) != fw.rank())
        throw ValidationError("supercell multiplier has wrong dimension");
    for (int v : m)
        if (v < 1) throw ValidationError("supercell multipliers must be >= 1");

    const int r = fw.rank();
    const std::vector<int> lo(static_cast<size_t>(r), 0);
    std::vector<std::vector<int>> cells;
    for_each_cell(lo, m, [&](std::span<const int> c) { cells.emplace_back(c.begin(), c.end()); });
    const int ncells = static_cast<int>(cells.size());

    auto cell_rank = [&](std::span<const int> c) {
        int idx = 0;
        for (int i = 0; i < r; ++i) idx = idx * m[static_cast<size_t>(i)] + c[static_cast<size_t>(i)];
        return idx;
    };

    Motif motif;
    motif.dimension = fw.dim();
    motif.vertices.reserve(static_cast<size_t>(ncells * fw.vertex_count()));
    for (int c = 0; c < ncells; ++c)
        for (int k = 0; k < fw.vertex_count(); ++k)
            motif.vertices.push_back(fw.place_vertex(k, cells[static_cast<size_t>(c)]));

    motif.edges.reserve(static_cast<size_t>(ncells * fw.edge_count()));
    std::vector<int> target(static_cast<size_t>(r)), wrap(static_cast<size_t>(r));
    for (int c = 0; c < ncells; ++c) {
        for (const EdgeSpec& e : fw.motif().edges) {
            for (int i = 0; i < r; ++i) {
                const int t = cells[static_cast<size_t>(c)][static_cast<size_t>(i)] +
                              e.delta[static_cast<size_t>(i)];
                const int mi = m[static_cast<size_t>(i)];
                int q = t / mi;
                int rem = t % mi;
                if (rem < 0) {
                    rem += mi;
                    --q;
                }
                target[static_cast<size_t>(i)] = rem;
                wrap[static_cast<size_t>(i)] = q;
            }
            EdgeSpec ne;
            ne.kappa = c * fw.vertex_count() + e.kappa;
            ne.tau = cell_rank(target) * fw.vertex_count() + e.tau;
            ne.delta = wrap;
            motif.edges.push_back(std::move(ne));
        }
    }

    std::vector<ExactVec> periods;
    periods.reserve(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) {
        ExactVec p = fw.translations().period(i);
        const ExactScalar mi(static_cast<long>(m[static_cast<size_t>(i)]));
        for (auto& x : p) x *= mi;
        periods.push_back(std::move(p));
    }

    return CrystalFramework::create(std::move(motif), TranslationGroup(std::move(periods)));
}

namespace {

ExactScalar rat(long num, long den = 1) { return ExactScalar(Rational(num, den)); }

/// a/b + (c/d) sqrt(D)
ExactScalar surd(long a, long b, long c, long d, long D) {
    return ExactScalar(Rational(a, b), Rational(c, d), D);
}

CrystalFramework make_strip() {
    Motif m;
    m.dimension = 2;
    m.vertices = {{rat(0), rat(0)}, {rat(0), rat(4)}, {rat(1), rat(3)}};
    m.edges = {
        {0, 1, {0}},
        {1, 2, {0}},
        {0, 2, {0}},
        {0, 0, {1}},
        {2, 1, {1}},
    };
    return CrystalFramework::create(std::move(m), TranslationGroup({{rat(4), rat(0)}}));
}

CrystalFramework make_grid2d() {
    Motif m;
    m.dimension = 2;
    m.vertices = {{rat(0), rat(0)}};
    m.edges = {
        {0, 0, {1, 0}},
        {0, 0, {0, 1}},
    };
    return CrystalFramework::create(
        std::move(m), TranslationGroup({{rat(1), rat(0)}, {rat(0), rat(1)}}));
}

CrystalFramework make_kagome() {
    Motif m;
    m.dimension = 2;
    m.vertices = {
        {rat(0), rat(0)},
        {rat(1), rat(0)},
        {rat(1, 2), surd(0, 1, 1, 2, 3)},  // (1/2, sqrt(3)/2)
    };
    // In-cell triangle plus the three corner connections to neighbouring
    // triangles; every vertex class ends up with degree 4.
    m.edges = {
        {0, 1, {0, 0}},
        {1, 2, {0, 0}},
        {0, 2, {0, 0}},
        {1, 0, {1, 0}},
        {2, 0, {0, 1}},
        {2, 1, {-1, 1}},
    };
    return CrystalFramework::create(
        std::move(m),
        TranslationGroup({{rat(2), rat(0)}, {rat(1), surd(0, 1, 1, 1, 3)}}));
}

CrystalFramework make_kagome_net() {
    Motif m;
    m.dimension = 3;
    const ExactScalar h = rat(1, 2);
    const ExactScalar q = rat(1, 4);
    const ExactScalar z = rat(0);
    m.vertices = {
        {z, z, z},
        {z, q, q},  // a1/2
        {q, z, q},  // a2/2
        {q, q, z},  // a3/2
    };
    // Six edges of the up tetrahedron {p1..p4} and six of the down
    // tetrahedron {p2, p3+(1,-1,0), p4+(1,0,-1), p1+(1,0,0)}, written in
    // canonical form. All bar lengths are sqrt(2)/4.
    m.edges = {
        {0, 1, {0, 0, 0}},
        {0, 2, {0, 0, 0}},
        {0, 3, {0, 0, 0}},
        {1, 2, {0, 0, 0}},
        {1, 3, {0, 0, 0}},
        {2, 3, {0, 0, 0}},
        {1, 2, {1, -1, 0}},
        {1, 3, {1, 0, -1}},
        {1, 0, {1, 0, 0}},
        {2, 3, {0, 1, -1}},
        {2, 0, {0, 1, 0}},
        {3, 0, {0, 0, 1}},
    };
    return CrystalFramework::create(
        std::move(m), TranslationGroup({{z, h, h}, {h, z, h}, {h, h, z}}));
}

CrystalFramework make_subdivided_grid_diag() {
    Motif m;
    m.dimension = 2;
    m.vertices = {{rat(0), rat(0)}, {rat(1, 2), rat(0)}};
    // Horizontal bars subdivided by the collinear degree-2 midpoint p2,
    // plus the vertical and diagonal reflexive bars at p1. Maxwell-square
    // with a one-vertex local flex at the midpoint.
    m.edges = {
        {0, 1, {0, 0}},
        {1, 0, {1, 0}},
        {0, 0, {0, 1}},
        {0, 0, {1, 1}},
    };
    return CrystalFramework::create(
        std::move(m), TranslationGroup({{rat(1), rat(0)}, {rat(0), rat(1)}}));
}

} // namespace

const std::vector<std::string>& generator_names() {
    static const std::vector<std::string> names = {
        "strip", "grid2d", "kagome", "kagome_net", "subdivided_grid_diag"};
    return names;
}

CrystalFramework make_generator(std::string_view name) {
    if (name == "strip") return make_strip();
    if (name == "grid2d") return make_grid2d();
    if (name == "kagome") return make_kagome();
    if (name == "kagome_net") return make_kagome_net();
    if (name == "subdivided_grid_diag") return make_subdivided_grid_diag();
    std::string known;
    for (const auto& n : generator_names()) known += (known.empty() ? "" : ", ") + n;
    throw ValidationError("unknown generator '" + std::string(name) + "' (known: " + known + ")");
}

} // namespace rumkit
