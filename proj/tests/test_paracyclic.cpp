#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twisthom/paracyclic.hpp"

using namespace thh;

namespace {

struct Case {
    std::string label;
    AlgebraPtr A;
    Automorphism sigma;
    int wmax;
};

std::vector<Case> relation_cases() {
    std::vector<Case> cases;
    {
        BuiltinAlgebra g = builtin_family("ground", {}, Window::nat1(0));
        cases.push_back({"k, id", g.algebra, g.automorphisms.at("id"), 0});
    }
    for (const std::string& q : {std::string("1"), std::string("2"), std::string("-1")}) {
        BuiltinAlgebra p = builtin_family("poly1", {{"q", q}}, Window::nat1(8));
        cases.push_back({"poly1 q=" + q, p.algebra, p.automorphisms.at("sigma_q"), 3});
    }
    {
        BuiltinAlgebra tp = builtin_family("trunc_poly", {{"N", "2"}}, Window::nat1(3));
        cases.push_back({"k[y]/(y^2), -id", tp.algebra, tp.automorphisms.at("sigma_neg"), 1});
        cases.push_back({"k[y]/(y^2), id", tp.algebra, tp.automorphisms.at("id"), 1});
    }
    {
        BuiltinAlgebra cg = builtin_family("cyclic_group", {{"m", "3"}}, Window::nat1(0));
        cases.push_back({"kZ/3, inv", cg.algebra, cg.automorphisms.at("sigma_inv"), 0});
    }
    return cases;
}

} // namespace

TEST_CASE("spot checks of the cyclic operator and extra degeneracy") {
    BuiltinAlgebra p = builtin_family("poly1", {{"q", "2"}}, Window::nat1(6));
    ParacyclicOpsPtr ops = build_paracyclic(p.algebra, p.automorphisms.at("sigma_q"), 3, Window::nat1(2));
    const ChainWindow& cw = ops->chain();

    // t_1(1 (x) y) = -sigma(y) (x) 1 = -2 (y (x) 1)
    int c = cw.index_of(1, ChainTuple{0, {1}});
    int r = cw.index_of(1, ChainTuple{1, {0}});
    CHECK(ops->t(1, {1}).col(c) == SVec{{r, Q(-2)}});

    // t_2 carries sign (-1)^2 = +1: t_2(a0 (x) a1 (x) a2) = +sigma(a2) (x) a0 (x) a1
    int c2 = cw.index_of(2, ChainTuple{0, {0, 1}}); // 1 (x) 1 (x) y
    int r2 = cw.index_of(2, ChainTuple{1, {0, 0}}); // y (x) 1 (x) 1
    CHECK(ops->t(2, {1}).col(c2) == SVec{{r2, Q(2)}});

    // extra degeneracy at n = 0: s(a) = 1 (x) a, from s_0 = -t_1 s_{0,0}
    MatrixQ sx = ops->extra_degeneracy(0, {1});
    int src = cw.index_of(0, ChainTuple{1, {}}); // y
    CHECK(sx.col(src) == SVec{{c, Q(1)}});       // 1 (x) y

    // simplicial boundary from the faces equals the chain window boundary
    for (int n = 1; n <= 3; ++n)
        for (const Weight& w : ops->weights()) CHECK(ops->b(n, w) == cw.boundary(n, w));
}

TEST_CASE("degree-0 homotopy identity reproduces b_1 B_0 = id - sigma blockwise") {
    BuiltinAlgebra p = builtin_family("poly1", {{"q", "2"}}, Window::nat1(6));
    const Automorphism& sq = p.automorphisms.at("sigma_q");
    ParacyclicOpsPtr ops = build_paracyclic(p.algebra, sq, 2, Window::nat1(3));
    for (const Weight& w : ops->weights()) {
        // B_0(a) = 1 (x) a + sigma(a) (x) 1
        MatrixQ lhs = ops->b(1, w) * ops->connes_B(0, w);
        MatrixQ rhs = MatrixQ::identity(ops->chain().dim(0, w)) - sq.block(*p.algebra, w);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("all relation families pass exactly on the test matrix of algebras") {
    for (const Case& c : relation_cases()) {
        // n_max = 5 so homotopy checks cover relation index n <= 3
        ParacyclicOpsPtr ops = build_paracyclic(c.A, c.sigma, 5, Window::nat1(c.wmax));
        RelationReport rep = check_relations(*ops, RelationKind::all);
        INFO(c.label, ": ", rep.failures(), " failures of ", rep.results.size());
        CHECK(rep.all_pass());
        CHECK(!rep.results.empty());
    }
}

TEST_CASE("T equals the diagonal twist sigma^{(x)(n+1)} on every bidegree") {
    BuiltinAlgebra p = builtin_family("poly1", {{"q", "2"}}, Window::nat1(8));
    const Automorphism& sq = p.automorphisms.at("sigma_q");
    ParacyclicOpsPtr ops = build_paracyclic(p.algebra, sq, 4, Window::nat1(3));
    const ChainWindow& cw = ops->chain();
    for (int n = 0; n <= 4; ++n)
        for (const Weight& w : ops->weights()) {
            // on the weight-w block the diagonal twist acts by q^w
            Q scale = 1;
            for (int i = 0; i < w[0]; ++i) scale *= Q(2);
            CHECK(ops->T(n, w) == MatrixQ::identity(cw.dim(n, w)).scaled(scale));
        }
}

TEST_CASE("T induces the identity on homology (sigma-twisted coefficients)") {
    for (const Case& c : relation_cases()) {
        ParacyclicOpsPtr ops = build_paracyclic(c.A, c.sigma, 4, Window::nat1(c.wmax));
        for (int n = 0; n <= 2; ++n)
            for (const Weight& w : ops->weights()) {
                MatrixQ m = T_on_homology(*ops, n, w);
                INFO(c.label, " at (", n, ", ", wstr(w), ")");
                CHECK(m.is_identity());
            }
    }
}

TEST_CASE("quasicyclic splitting: identity, finite order, and generic q") {
    // sigma = id: ker = everything, im = 0
    BuiltinAlgebra p1 = builtin_family("poly1", {{"q", "1"}}, Window::nat1(8));
    ParacyclicOpsPtr ops1 = build_paracyclic(p1.algebra, p1.automorphisms.at("id"), 3, Window::nat1(3));
    for (int n = 0; n <= 3; ++n)
        for (const Weight& w : ops1->weights()) {
            QuasiCyclicResult r = quasicyclic_check(*ops1, n, w);
            CHECK(r.split);
            CHECK(r.dim_ker == r.dim_total);
            CHECK(r.dim_im == 0);
        }

    // finite order: k[y]/(y^2) with sigma = -id and the cyclic group
    BuiltinAlgebra tp = builtin_family("trunc_poly", {{"N", "2"}}, Window::nat1(3));
    ParacyclicOpsPtr ops2 = build_paracyclic(tp.algebra, tp.automorphisms.at("sigma_neg"), 3, Window::nat1(1));
    BuiltinAlgebra cg = builtin_family("cyclic_group", {{"m", "3"}}, Window::nat1(0));
    ParacyclicOpsPtr ops3 = build_paracyclic(cg.algebra, cg.automorphisms.at("sigma_inv"), 3, Window::nat1(0));
    for (const ParacyclicOpsPtr& ops : {ops2, ops3})
        for (int n = 0; n <= 3; ++n)
            for (const Weight& w : ops->weights()) CHECK(quasicyclic_check(*ops, n, w).split);

    // generic q = 2: id - T invertible in weights >= 1
    BuiltinAlgebra p2 = builtin_family("poly1", {{"q", "2"}}, Window::nat1(8));
    ParacyclicOpsPtr ops4 = build_paracyclic(p2.algebra, p2.automorphisms.at("sigma_q"), 3, Window::nat1(3));
    for (int n = 0; n <= 3; ++n)
        for (const Weight& w : ops4->weights()) {
            QuasiCyclicResult r = quasicyclic_check(*ops4, n, w);
            CHECK(r.split);
            if (w[0] >= 1) {
                CHECK(r.dim_ker == 0);
                CHECK(r.dim_im == r.dim_total);
            } else {
                CHECK(r.dim_ker == r.dim_total);
            }
        }
}
