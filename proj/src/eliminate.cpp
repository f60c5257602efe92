#include "twisthom/eliminate.hpp"

#include <algorithm>

#include "twisthom/errors.hpp"

namespace thh {

namespace {

using ZRow = std::map<int, mpz_class>;

// Clears denominators and divides out the content, preserving the sign of
// the leading entry as given.
ZRow integerize(const SVec& v) {
    ZRow r;
    if (v.empty()) return r;
    mpz_class l = 1;
    for (const auto& [i, x] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class g = 0;
    for (const auto& [i, x] : v) {
        mpz_class e = x.get_num() * (l / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
        r.emplace(i, std::move(e));
    }
    if (g > 1)
        for (auto& [i, e] : r) e /= g;
    return r;
}

void reduce_content(ZRow& r) {
    mpz_class g = 0;
    for (const auto& [i, e] : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    if (g > 1)
        for (auto& [i, e] : r) e /= g;
}

// row := piv_lead * row - row[pc] * piv, entirely over Z.
void cross_eliminate(ZRow& row, const ZRow& piv, int pc, const mpz_class& piv_lead) {
    auto it = row.find(pc);
    if (it == row.end()) return;
    mpz_class c = it->second;
    for (auto& [i, e] : row) e *= piv_lead;
    for (const auto& [i, e] : piv) {
        auto jt = row.find(i);
        if (jt == row.end()) {
            mpz_class t = -c * e;
            if (t != 0) row.emplace(i, std::move(t));
        } else {
            jt->second -= c * e;
            if (jt->second == 0) row.erase(jt);
        }
    }
    reduce_content(row);
}

// Dense variant of the forward pass for narrow matrices, same pivot rule
// and the same cross-multiplication arithmetic.
struct DenseEch {
    std::vector<std::vector<mpz_class>> rows;
    std::vector<int> piv_cols;
};

void dense_reduce_content(std::vector<mpz_class>& r) {
    mpz_class g = 0;
    for (const mpz_class& e : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    if (g > 1)
        for (mpz_class& e : r) e /= g;
}

DenseEch dense_forward(const std::vector<SVec>& in_rows, int ncols) {
    DenseEch ech;
    for (const SVec& sr : in_rows) {
        ZRow zr = integerize(sr);
        std::vector<mpz_class> r(static_cast<std::size_t>(ncols), mpz_class(0));
        for (const auto& [i, e] : zr) r[static_cast<std::size_t>(i)] = e;
        for (std::size_t k = 0; k < ech.rows.size(); ++k) {
            int pc = ech.piv_cols[k];
            if (r[static_cast<std::size_t>(pc)] == 0) continue;
            mpz_class c = r[static_cast<std::size_t>(pc)];
            const mpz_class& lead = ech.rows[k][static_cast<std::size_t>(pc)];
            for (int j = 0; j < ncols; ++j)
                r[static_cast<std::size_t>(j)] =
                    r[static_cast<std::size_t>(j)] * lead - c * ech.rows[k][static_cast<std::size_t>(j)];
            dense_reduce_content(r);
        }
        int lead_col = -1;
        for (int j = 0; j < ncols; ++j)
            if (r[static_cast<std::size_t>(j)] != 0) { lead_col = j; break; }
        if (lead_col < 0) continue;
        ech.piv_cols.push_back(lead_col);
        ech.rows.push_back(std::move(r));
    }
    return ech;
}

constexpr int kDenseColumnThreshold = 64;

} // namespace

Rref rref_rows(const std::vector<SVec>& in_rows, int ncols) {
    // Forward pass: fraction-free echelon with deterministic pivoting.
    // Narrow matrices run on dense rows, wide ones on sparse maps.
    std::vector<ZRow> piv_rows;
    std::vector<int> piv_cols;
    if (ncols < kDenseColumnThreshold) {
        DenseEch ech = dense_forward(in_rows, ncols);
        piv_cols = std::move(ech.piv_cols);
        for (const auto& dr : ech.rows) {
            ZRow zr;
            for (int j = 0; j < ncols; ++j)
                if (dr[static_cast<std::size_t>(j)] != 0) zr.emplace(j, dr[static_cast<std::size_t>(j)]);
            piv_rows.push_back(std::move(zr));
        }
    } else {
        for (const SVec& sr : in_rows) {
            ZRow r = integerize(sr);
            for (std::size_t k = 0; k < piv_rows.size() && !r.empty(); ++k)
                cross_eliminate(r, piv_rows[k], piv_cols[k], piv_rows[k].at(piv_cols[k]));
            if (r.empty()) continue;
            piv_cols.push_back(r.begin()->first);
            piv_rows.push_back(std::move(r));
        }
    }
    // Back pass over Q: clear above pivots, normalize pivots to 1.
    std::vector<SVec> qrows(piv_rows.size());
    for (std::size_t k = 0; k < piv_rows.size(); ++k) {
        Q inv_lead = Q(1) / Q(piv_rows[k].at(piv_cols[k]));
        for (const auto& [i, e] : piv_rows[k]) qrows[k].emplace(i, Q(Q(e) * inv_lead));
    }
    for (std::size_t k = piv_rows.size(); k-- > 0;) {
        for (std::size_t j = 0; j < k; ++j) {
            auto it = qrows[j].find(piv_cols[k]);
            if (it != qrows[j].end()) {
                Q c = it->second;
                svec_axpy(qrows[j], -c, qrows[k]);
            }
        }
    }
    // Canonical order: sort by pivot column.
    std::vector<std::size_t> order(piv_rows.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return piv_cols[a] < piv_cols[b]; });

    Rref rr;
    rr.ncols = ncols;
    rr.rank = static_cast<int>(piv_rows.size());
    for (std::size_t k : order) {
        rr.pivot_cols.push_back(piv_cols[k]);
        rr.rows.push_back(std::move(qrows[k]));
    }
    std::size_t p = 0;
    for (int c = 0; c < ncols; ++c) {
        if (p < rr.pivot_cols.size() && rr.pivot_cols[p] == c)
            ++p;
        else
            rr.free_cols.push_back(c);
    }
    return rr;
}

SVec Rref::reduce(const SVec& v) const {
    SVec r = v;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        auto it = r.find(pivot_cols[k]);
        if (it == r.end()) continue;
        Q c = it->second;
        svec_axpy(r, -c, rows[k]);
    }
    return r;
}

Elim eliminate(const MatrixQ& M) {
    std::vector<SVec> rows(static_cast<std::size_t>(M.rows()));
    for (const auto& [rc, x] : M.entries()) rows[static_cast<std::size_t>(rc.first)].emplace(rc.second, x);
    Rref rr = rref_rows(rows, M.cols());

    Elim e;
    e.rank = rr.rank;
    e.pivot_cols = rr.pivot_cols;
    for (int pc : rr.pivot_cols) e.image_basis.push_back(M.col(pc));
    // Kernel: one vector per free column; x[free] = 1, x[pivot] = -row[free].
    for (int fc : rr.free_cols) {
        SVec x;
        x.emplace(fc, 1);
        for (std::size_t k = 0; k < rr.rows.size(); ++k) {
            auto it = rr.rows[k].find(fc);
            if (it != rr.rows[k].end()) x[rr.pivot_cols[k]] = -it->second;
        }
        e.kernel_basis.push_back(std::move(x));
    }
    return e;
}

std::optional<SVec> solve(const MatrixQ& M, const SVec& b) {
    // Augment with b as an extra column; a pivot there means inconsistency.
    std::vector<SVec> rows(static_cast<std::size_t>(M.rows()));
    for (const auto& [rc, x] : M.entries()) rows[static_cast<std::size_t>(rc.first)].emplace(rc.second, x);
    for (const auto& [i, x] : b) {
        if (i < 0 || i >= M.rows()) throw Error("solve: rhs index out of range");
        rows[static_cast<std::size_t>(i)].emplace(M.cols(), x);
    }
    Rref rr = rref_rows(rows, M.cols() + 1);
    SVec x;
    for (std::size_t k = 0; k < rr.rows.size(); ++k) {
        if (rr.pivot_cols[k] == M.cols()) return std::nullopt;
        auto it = rr.rows[k].find(M.cols());
        if (it != rr.rows[k].end()) x.emplace(rr.pivot_cols[k], it->second);
    }
    return x;
}

Quotient::Quotient(const std::vector<SVec>& gens, int ambient_dim) {
    rr_ = rref_rows(gens, ambient_dim);
}

SVec Quotient::project(const SVec& v) const {
    SVec rem = rr_.reduce(v);
    SVec q;
    for (std::size_t k = 0; k < rr_.free_cols.size(); ++k) {
        auto it = rem.find(rr_.free_cols[k]);
        if (it != rem.end()) {
            q.emplace(static_cast<int>(k), it->second);
            rem.erase(it);
        }
    }
    if (!rem.empty())
        throw Error("quotient projection left residue outside free columns");
    return q;
}

SVec Quotient::lift(const SVec& q) const {
    SVec v;
    for (const auto& [k, c] : q) {
        if (k < 0 || k >= dim()) throw Error("quotient lift: coordinate out of range");
        v.emplace(rr_.free_cols[static_cast<std::size_t>(k)], c);
    }
    return v;
}

MatrixQ Quotient::projection_matrix() const {
    MatrixQ P(dim(), ambient_dim());
    for (int j = 0; j < ambient_dim(); ++j) {
        SVec e;
        e.emplace(j, 1);
        for (const auto& [i, x] : project(e)) P.set(i, j, x);
    }
    return P;
}

MatrixQ Quotient::lift_matrix() const {
    MatrixQ L(ambient_dim(), dim());
    for (int k = 0; k < dim(); ++k) L.set(rr_.free_cols[static_cast<std::size_t>(k)], k, 1);
    return L;
}

} // namespace thh
