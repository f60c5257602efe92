#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twisthom/cyclic.hpp"

using namespace thh;

TEST_CASE("sigma = id: quotient is the original complex") {
    BuiltinAlgebra p = builtin_family("poly1", {{"q", "1"}}, Window::nat1(8));
    ParacyclicOpsPtr ops = build_paracyclic(p.algebra, p.automorphisms.at("id"), 4, Window::nat1(2));
    CyclicQuotientPtr cq = associated_cyclic(ops);
    for (int n = 0; n <= 4; ++n)
        for (const Weight& w : cq->weights()) CHECK(cq->dim(n, w) == ops->chain().dim(n, w));
}

TEST_CASE("generic q: quotient vanishes in positive weights") {
    BuiltinAlgebra p = builtin_family("poly1", {{"q", "2"}}, Window::nat1(8));
    ParacyclicOpsPtr ops = build_paracyclic(p.algebra, p.automorphisms.at("sigma_q"), 4, Window::nat1(3));
    CyclicQuotientPtr cq = associated_cyclic(ops);
    for (int n = 0; n <= 4; ++n)
        for (const Weight& w : cq->weights()) {
            if (w[0] >= 1)
                CHECK(cq->dim(n, w) == 0);
            else
                CHECK(cq->dim(n, w) == ops->chain().dim(n, w));
        }
}

TEST_CASE("finite order: quotient dims equal ker(id - T) dims") {
    BuiltinAlgebra tp = builtin_family("trunc_poly", {{"N", "2"}}, Window::nat1(3));
    ParacyclicOpsPtr ops = build_paracyclic(tp.algebra, tp.automorphisms.at("sigma_neg"), 4, Window::nat1(1));
    CyclicQuotientPtr cq = associated_cyclic(ops);
    for (int n = 0; n <= 4; ++n)
        for (const Weight& w : cq->weights()) {
            QuasiCyclicResult r = quasicyclic_check(*ops, n, w);
            CHECK(cq->dim(n, w) == r.dim_ker);
        }
}

TEST_CASE("HC of the ground field is 1, 0, 1 against the direct total-complex oracle") {
    BuiltinAlgebra g = builtin_family("ground", {}, Window::nat1(0));
    ParacyclicOpsPtr ops = build_paracyclic(g.algebra, g.automorphisms.at("id"), 4, Window::nat1(0));
    CyclicQuotientPtr cq = associated_cyclic(ops);
    HCTable t = bicomplex_total_homology(*cq, 3);
    CHECK(t.hc_dim(0, {0}) == 1);
    CHECK(t.hc_dim(1, {0}) == 0);
    CHECK(t.hc_dim(2, {0}) == 1);
    CHECK(t.hc_dim(3, {0}) == 0);
    CHECK_THROWS_AS(bicomplex_total_homology(*cq, 4), InsufficientWindow);
}

TEST_CASE("HC of k[y] at weight 1: dims 1, 0") {
    BuiltinAlgebra p = builtin_family("poly1", {{"q", "1"}}, Window::nat1(8));
    ParacyclicOpsPtr ops = build_paracyclic(p.algebra, p.automorphisms.at("id"), 4, Window::nat1(1));
    CyclicQuotientPtr cq = associated_cyclic(ops);
    HCTable t = bicomplex_total_homology(*cq, 2);
    CHECK(t.hc_dim(0, {1}) == 1);
    CHECK(t.hc_dim(1, {1}) == 0);
}

TEST_CASE("column homology equals the plain betti table when sigma = id") {
    BuiltinAlgebra p = builtin_family("poly1", {{"q", "1"}}, Window::nat1(8));
    ParacyclicOpsPtr ops = build_paracyclic(p.algebra, p.automorphisms.at("id"), 4, Window::nat1(3));
    CyclicQuotientPtr cq = associated_cyclic(ops);
    BettiTable plain = ops->chain().betti_table();
    for (int n = 0; n <= 3; ++n)
        for (const Weight& w : cq->weights())
            CHECK(cq->column_homology(n, w).betti == plain.betti(n, w));
}

TEST_CASE("quasicyclic case: column homology of the quotient matches simplicial homology") {
    // k[y]/(y^2) with sigma = -y is quasi-cyclic; the projection is a
    // quasi-isomorphism so dims agree per bidegree
    BuiltinAlgebra tp = builtin_family("trunc_poly", {{"N", "2"}}, Window::nat1(3));
    ParacyclicOpsPtr ops = build_paracyclic(tp.algebra, tp.automorphisms.at("sigma_neg"), 4, Window::nat1(1));
    CyclicQuotientPtr cq = associated_cyclic(ops);
    for (int n = 0; n <= 3; ++n)
        for (const Weight& w : cq->weights()) {
            CHECK(quasicyclic_check(*ops, n, w).split);
            CHECK(cq->column_homology(n, w).betti == ops->chain().homology(n, w).betti);
        }
}
