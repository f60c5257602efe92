#include "twisthom/cyclic.hpp"

#include "twisthom/errors.hpp"

namespace thh {

CyclicQuotientWindow::CyclicQuotientWindow(ParacyclicOpsPtr ops) : ops_(std::move(ops)) {
    const ChainWindow& cw = ops_->chain();
    int nmax = ops_->n_max();
    for (int n = 0; n <= nmax; ++n)
        for (const Weight& w : ops_->weights()) {
            int dim = cw.dim(n, w);
            MatrixQ idT = MatrixQ::identity(dim) - ops_->T(n, w);
            Quotient q(idT.columns(), dim);
            proj_[{n, w}] = q.projection_matrix();
            lift_[{n, w}] = q.lift_matrix();
            pres_.emplace(std::make_pair(n, w), std::move(q));
        }
    // induced operators, with well-definedness checks: each operator must
    // send im(id - T) into im(id - T)
    for (int n = 0; n <= nmax; ++n)
        for (const Weight& w : ops_->weights()) {
            const Quotient& src = pres_.at({n, w});
            if (n >= 1) {
                MatrixQ bmat = ops_->b(n, w);
                const Quotient& tgt = pres_.at({n - 1, w});
                int dim = ops_->chain().dim(n, w);
                MatrixQ idT = MatrixQ::identity(dim) - ops_->T(n, w);
                MatrixQ moved = bmat * idT;
                for (const SVec& cvec : moved.columns())
                    if (!tgt.in_subspace(cvec))
                        throw Error("induced b is not well-defined on the cyclic quotient");
                b_[{n, w}] = proj_.at({n - 1, w}) * bmat * lift_.at({n, w});
            }
            if (n + 1 <= nmax) {
                MatrixQ Bmat = ops_->connes_B(n, w);
                const Quotient& tgt = pres_.at({n + 1, w});
                int dim = ops_->chain().dim(n, w);
                MatrixQ idT = MatrixQ::identity(dim) - ops_->T(n, w);
                MatrixQ moved = Bmat * idT;
                for (const SVec& cvec : moved.columns())
                    if (!tgt.in_subspace(cvec))
                        throw Error("induced B is not well-defined on the cyclic quotient");
                B_[{n, w}] = proj_.at({n + 1, w}) * Bmat * lift_.at({n, w});
            }
        }
    // quotient identities: b^2 = 0, bB + Bb = 0, B^2 = 0
    for (int n = 0; n <= nmax; ++n)
        for (const Weight& w : ops_->weights()) {
            if (n >= 2 && !(induced_b(n - 1, w) * induced_b(n, w)).is_zero())
                throw Error("induced b fails b^2 = 0 on the cyclic quotient");
            if (n + 2 <= nmax && !(induced_B(n + 1, w) * induced_B(n, w)).is_zero())
                throw Error("induced B fails B^2 = 0 on the cyclic quotient");
            if (n >= 1 && n + 1 <= nmax) {
                MatrixQ anti = induced_b(n + 1, w) * induced_B(n, w) + induced_B(n - 1, w) * induced_b(n, w);
                if (!anti.is_zero()) throw Error("induced b and B fail to anticommute on the cyclic quotient");
            }
        }
}

int CyclicQuotientWindow::dim(int n, const Weight& w) const {
    auto it = pres_.find({n, w});
    return it == pres_.end() ? 0 : it->second.dim();
}

const MatrixQ& CyclicQuotientWindow::projection(int n, const Weight& w) const {
    auto it = proj_.find({n, w});
    if (it == proj_.end())
        throw BidegreeOutOfRange("cyclic quotient projection at (" + std::to_string(n) + ", " + wstr(w) +
                                 ") not built");
    return it->second;
}

const MatrixQ& CyclicQuotientWindow::lift(int n, const Weight& w) const {
    auto it = lift_.find({n, w});
    if (it == lift_.end())
        throw BidegreeOutOfRange("cyclic quotient lift at (" + std::to_string(n) + ", " + wstr(w) +
                                 ") not built");
    return it->second;
}

const MatrixQ& CyclicQuotientWindow::induced_b(int n, const Weight& w) const {
    auto it = b_.find({n, w});
    if (it == b_.end())
        throw BidegreeOutOfRange("induced b at (" + std::to_string(n) + ", " + wstr(w) + ") not built");
    return it->second;
}

const MatrixQ& CyclicQuotientWindow::induced_B(int n, const Weight& w) const {
    auto it = B_.find({n, w});
    if (it == B_.end())
        throw BidegreeOutOfRange("induced B at (" + std::to_string(n) + ", " + wstr(w) + ") not built");
    return it->second;
}

HomologyPresentation CyclicQuotientWindow::column_homology(int n, const Weight& w) const {
    MatrixQ out = n == 0 ? MatrixQ(0, dim(0, w)) : induced_b(n, w);
    return homology_quotient(out, induced_b(n + 1, w));
}

CyclicQuotientPtr associated_cyclic(ParacyclicOpsPtr ops) {
    return std::make_shared<CyclicQuotientWindow>(std::move(ops));
}

int HCTable::hc_dim(int n, const Weight& w) const {
    auto it = hc.find({n, w});
    return it == hc.end() ? 0 : it->second;
}

namespace {

// Total differential D_n : Tot_n -> Tot_{n-1} with Tot_n = (+)_p C^cyc_{n-2p}.
// Component p carries b into component p and B into component p-1.
MatrixQ total_differential(const CyclicQuotientWindow& cqw, int n, const Weight& w) {
    auto comps = [&](int total) {
        std::vector<int> degs;
        for (int m = total; m >= 0; m -= 2) degs.push_back(m);
        return degs;
    };
    std::vector<int> src = comps(n), dst = comps(n - 1);
    std::vector<int> src_off(src.size() + 1, 0), dst_off(dst.size() + 1, 0);
    for (std::size_t p = 0; p < src.size(); ++p)
        src_off[p + 1] = src_off[p] + cqw.dim(src[p], w);
    for (std::size_t p = 0; p < dst.size(); ++p)
        dst_off[p + 1] = dst_off[p] + cqw.dim(dst[p], w);

    MatrixQ D(dst_off.back(), src_off.back());
    auto paste = [&](const MatrixQ& blk, int roff, int coff) {
        for (const auto& [rc, x] : blk.entries()) D.set(roff + rc.first, coff + rc.second, x);
    };
    for (std::size_t p = 0; p < src.size(); ++p) {
        int m = src[p];
        if (m >= 1) paste(cqw.induced_b(m, w), dst_off[p], src_off[p]); // same p: degree m-1
        if (p >= 1) paste(cqw.induced_B(m, w), dst_off[p - 1], src_off[p]);
    }
    return D;
}

} // namespace

HCTable bicomplex_total_homology(const CyclicQuotientWindow& cqw, int n_report) {
    if (n_report > cqw.n_max() - 1)
        throw InsufficientWindow("HC_n needs differentials up to degree n+1; raise n_max");
    HCTable t;
    for (const Weight& w : cqw.weights()) {
        for (int n = 0; n <= n_report; ++n) {
            MatrixQ Dn = total_differential(cqw, n, w);
            MatrixQ Dn1 = total_differential(cqw, n + 1, w);
            HomologyPresentation h = homology_quotient(Dn, Dn1);
            t.hc[{n, w}] = h.betti;
        }
        for (int n = 0; n <= n_report; ++n) t.column[{n, w}] = cqw.column_homology(n, w).betti;
    }
    return t;
}

} // namespace thh
