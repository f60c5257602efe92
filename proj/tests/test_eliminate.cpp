#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twisthom/eliminate.hpp"
#include "twisthom/errors.hpp"
#include "twisthom/homology.hpp"

using namespace thh;

namespace {

// Dense textbook Gauss-Jordan, kept independent of the sparse Bareiss path.
// Used as the rank oracle for the randomized comparison.
int dense_rank(const MatrixQ& M) {
    std::vector<std::vector<Q>> a(static_cast<std::size_t>(M.rows()),
                                  std::vector<Q>(static_cast<std::size_t>(M.cols()), Q(0)));
    for (const auto& [rc, x] : M.entries()) a[rc.first][rc.second] = x;
    int rank = 0;
    for (int c = 0; c < M.cols() && rank < M.rows(); ++c) {
        int piv = -1;
        for (int r = rank; r < M.rows(); ++r)
            if (a[r][c] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        Q inv = Q(1) / a[rank][c];
        for (int j = 0; j < M.cols(); ++j) a[rank][j] *= inv;
        for (int r = 0; r < M.rows(); ++r) {
            if (r == rank || a[r][c] == 0) continue;
            Q f = a[r][c];
            for (int j = 0; j < M.cols(); ++j) a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

MatrixQ from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows.begin()->size()) : 0;
    MatrixQ m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (int v : row) m.set(i, j++, v);
        ++i;
    }
    return m;
}

} // namespace

TEST_CASE("proportional rows have rank 1 and the expected kernel") {
    MatrixQ m = from_rows({{1, 2}, {2, 4}});
    Elim e = eliminate(m);
    CHECK(e.rank == 1);
    REQUIRE(e.kernel_basis.size() == 1);
    // kernel spanned by (2, -1); canonical form has free coordinate 1
    SVec k = e.kernel_basis[0];
    CHECK(k[0] == Q(-2));
    CHECK(k[1] == Q(1));
    CHECK(m.apply(k).empty());
}

TEST_CASE("zero and identity matrices") {
    Elim z = eliminate(MatrixQ(3, 3));
    CHECK(z.rank == 0);
    CHECK(z.kernel_basis.size() == 3);

    Elim id = eliminate(MatrixQ::identity(4));
    CHECK(id.rank == 4);
    CHECK(id.kernel_basis.empty());
}

TEST_CASE("solve finds exact solutions and detects inconsistency") {
    MatrixQ m = from_rows({{2, 1}, {0, 3}});
    SVec b{{0, Q(1)}, {1, Q(6)}};
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Q(-1, 2));
    CHECK((*x)[1] == Q(2));

    MatrixQ sing = from_rows({{1, 1}, {1, 1}});
    SVec bad{{0, Q(1)}, {1, Q(2)}};
    CHECK(!solve(sing, bad).has_value());
}

TEST_CASE("homology_quotient on the spec cases") {
    // zero differentials on a 3-dim space
    HomologyPresentation h = homology_quotient(MatrixQ(0, 3), MatrixQ(3, 0));
    CHECK(h.betti == 3);

    // acyclic: b_out = id
    h = homology_quotient(MatrixQ::identity(3), MatrixQ(3, 0));
    CHECK(h.betti == 0);

    // b_out = 0 on 2-dim, b_in = column (1,1): betti 1, oracle by hand
    MatrixQ bin(2, 1);
    bin.set(0, 0, 1);
    bin.set(1, 0, 1);
    h = homology_quotient(MatrixQ(0, 2), bin);
    CHECK(h.betti == 1);
    REQUIRE(h.reps.size() == 1);
    // the class of (1, -1) is nonzero, the class of (1, 1) is zero
    SVec v{{0, Q(1)}, {1, Q(-1)}};
    CHECK(!h.coordinates_of(v).empty());
    SVec w{{0, Q(1)}, {1, Q(1)}};
    CHECK(h.coordinates_of(w).empty());
}

TEST_CASE("homology_quotient rejects non-complexes") {
    MatrixQ id2 = MatrixQ::identity(2);
    CHECK_THROWS_AS(homology_quotient(id2, id2), CompositionNonzero);
}

TEST_CASE("induced map: identity, zero, boundary-composed") {
    MatrixQ bin(2, 1);
    bin.set(0, 0, 1);
    bin.set(1, 0, 1);
    HomologyPresentation h = homology_quotient(MatrixQ(0, 2), bin);

    CHECK(induced_on_homology(MatrixQ::identity(2), h, h).is_identity());
    CHECK(induced_on_homology(MatrixQ(2, 2), h, h).is_zero());

    // anything composed through the boundary acts as zero on homology
    MatrixQ g(2, 2);
    g.set(0, 0, 5);
    g.set(1, 0, 5);
    g.set(0, 1, -3);
    g.set(1, 1, -3); // image contained in span{(1,1)} = boundaries
    CHECK(induced_on_homology(g, h, h).is_zero());
}

TEST_CASE("rank equals transpose rank and rank-nullity holds on random matrices") {
    std::mt19937_64 rng(20240811u);
    std::uniform_int_distribution<int> dim(1, 8), entry(-2, 2);
    for (int trial = 0; trial < 600; ++trial) {
        int r = dim(rng), c = dim(rng);
        MatrixQ m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.set(i, j, entry(rng));
        Elim e = eliminate(m);
        CHECK(e.rank + static_cast<int>(e.kernel_basis.size()) == c);
        CHECK(e.rank == eliminate(m.transpose()).rank);
        CHECK(e.rank == dense_rank(m));
        for (const SVec& k : e.kernel_basis) CHECK(m.apply(k).empty());
        // image basis columns must span the column space: rank check
        CHECK(eliminate(matrix_from_columns(e.image_basis, r)).rank == e.rank);
    }
}

TEST_CASE("homology_quotient agrees with the dense oracle on random complexes") {
    std::mt19937_64 rng(777u);
    std::uniform_int_distribution<int> dim(1, 6), entry(-2, 2), mix(-1, 1);
    int checked = 0;
    for (int trial = 0; trial < 1500; ++trial) {
        int mid = dim(rng), lo = dim(rng), hi = dim(rng);
        MatrixQ b_in(mid, hi);
        for (int i = 0; i < mid; ++i)
            for (int j = 0; j < hi; ++j) b_in.set(i, j, entry(rng));
        // rows of b_out live in the left null space of b_in
        Elim lt = eliminate(b_in.transpose());
        MatrixQ b_out(lo, mid);
        for (int i = 0; i < lo; ++i) {
            SVec row;
            for (const SVec& k : lt.kernel_basis) svec_axpy(row, mix(rng), k);
            for (const auto& [j, x] : row) b_out.set(i, j, x);
        }
        REQUIRE((b_out * b_in).is_zero());
        HomologyPresentation h = homology_quotient(b_out, b_in);
        int oracle = (mid - dense_rank(b_out)) - dense_rank(b_in);
        CHECK(h.betti == oracle);
        for (const SVec& rep : h.reps) CHECK(h.is_cycle(rep));
        ++checked;
    }
    CHECK(checked >= 1000);
}

TEST_CASE("determinism: identical inputs give identical bases") {
    std::mt19937_64 rng(42u);
    std::uniform_int_distribution<int> entry(-2, 2);
    MatrixQ m(6, 7);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 7; ++j) m.set(i, j, entry(rng));
    Elim a = eliminate(m), b = eliminate(m);
    CHECK(a.pivot_cols == b.pivot_cols);
    REQUIRE(a.kernel_basis.size() == b.kernel_basis.size());
    for (std::size_t i = 0; i < a.kernel_basis.size(); ++i)
        CHECK(a.kernel_basis[i] == b.kernel_basis[i]);
}

TEST_CASE("quotient presentation projects and lifts consistently") {
    // Q^3 modulo span{(1,1,0), (0,0,2)}: quotient dim 1
    std::vector<SVec> gens{{{0, Q(1)}, {1, Q(1)}}, {{2, Q(2)}}};
    Quotient q(gens, 3);
    CHECK(q.dim() == 1);
    SVec v{{0, Q(3)}, {1, Q(4)}, {2, Q(5)}};
    SVec cls = q.project(v);
    // v - lift(project(v)) must be in the subspace
    SVec diff = svec_sub(v, q.lift(cls));
    CHECK(q.in_subspace(diff));
    CHECK(q.project(q.lift(cls)) == cls);
    // matrices agree with the function forms
    CHECK(q.projection_matrix().apply(v) == cls);
}

TEST_CASE("sparse and dense elimination paths agree with the oracle on wide matrices") {
    // columns >= 64 route through the sparse forward pass
    std::mt19937_64 rng(99u);
    std::uniform_int_distribution<int> entry(-2, 2), coin(0, 4);
    for (int trial = 0; trial < 30; ++trial) {
        MatrixQ m(6, 70);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 70; ++j)
                if (coin(rng) == 0) m.set(i, j, entry(rng));
        Elim e = eliminate(m);
        CHECK(e.rank == dense_rank(m));
        CHECK(e.rank + static_cast<int>(e.kernel_basis.size()) == 70);
        for (const SVec& k : e.kernel_basis) CHECK(m.apply(k).empty());
    }
}
