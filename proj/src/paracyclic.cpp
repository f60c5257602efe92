#include "twisthom/paracyclic.hpp"

#include "twisthom/errors.hpp"

namespace thh {

ParacyclicOps::ParacyclicOps(AlgebraPtr A, const Automorphism& sigma, int n_max, const Window& wwin)
    : A_(A), sigma_(sigma), n_max_(n_max) {
    // unnormalized complex of C_*(A, sigma-A): the extra degeneracy inserts
    // units, which the normalized complex would kill
    BimodulePtr M = twisted_bimodule(A_, sigma_, Automorphism::identity(*A_));
    cw_ = build_chain_window(A_, M, n_max_, wwin, false);

    for (const Weight& w : cw_->weights()) {
        for (int n = 1; n <= n_max_; ++n) {
            const auto& ts = cw_->tuples(n, w);
            // faces
            for (int i = 0; i <= n; ++i) {
                MatrixQ m(cw_->dim(n - 1, w), static_cast<int>(ts.size()));
                for (int col = 0; col < static_cast<int>(ts.size()); ++col) {
                    const ChainTuple& t = ts[static_cast<std::size_t>(col)];
                    SVec out;
                    if (i < n) {
                        // multiply slots i and i+1 (slot 0 is the coefficient)
                        int li = i == 0 ? t.m : t.slots[static_cast<std::size_t>(i) - 1];
                        int ri = t.slots[static_cast<std::size_t>(i)];
                        for (const auto& [p, c] : A_->product(li, ri)) {
                            ChainTuple u;
                            u.m = i == 0 ? p : t.m;
                            for (int j = 0; j < n; ++j) {
                                if (j == i) continue;
                                int v = t.slots[static_cast<std::size_t>(j)];
                                if (j == i - 1) v = p;
                                u.slots.push_back(v);
                            }
                            int row = cw_->index_of(n - 1, u);
                            if (row < 0) throw Error("face image left the window");
                            svec_axpy(out, c, SVec{{row, Q(1)}});
                        }
                    } else {
                        // d_{n,n}: sigma(a_n) a_0 (x) a_1 ... a_{n-1}
                        int an = t.slots[static_cast<std::size_t>(n) - 1];
                        SVec front = A_->multiply(sigma_.image(an), SVec{{t.m, Q(1)}});
                        for (const auto& [p, c] : front) {
                            ChainTuple u{p, {t.slots.begin(), t.slots.end() - 1}};
                            int row = cw_->index_of(n - 1, u);
                            if (row < 0) throw Error("cyclic face image left the window");
                            svec_axpy(out, c, SVec{{row, Q(1)}});
                        }
                    }
                    m.set_col(col, out);
                }
                d_[{n, i, w}] = std::move(m);
            }
        }
        // degeneracies: s_{n,j}: C_n -> C_{n+1}, inserting the unit vector
        for (int n = 0; n + 1 <= n_max_; ++n) {
            const auto& ts = cw_->tuples(n, w);
            for (int j = 0; j <= n; ++j) {
                MatrixQ m(cw_->dim(n + 1, w), static_cast<int>(ts.size()));
                for (int col = 0; col < static_cast<int>(ts.size()); ++col) {
                    const ChainTuple& t = ts[static_cast<std::size_t>(col)];
                    SVec out;
                    for (const auto& [ui, uc] : A_->unit()) {
                        ChainTuple u{t.m, {}};
                        for (int p = 0; p < j; ++p) u.slots.push_back(t.slots[static_cast<std::size_t>(p)]);
                        u.slots.push_back(ui);
                        for (int p = j; p < n; ++p) u.slots.push_back(t.slots[static_cast<std::size_t>(p)]);
                        int row = cw_->index_of(n + 1, u);
                        if (row < 0) throw Error("degeneracy image left the window");
                        svec_axpy(out, uc, SVec{{row, Q(1)}});
                    }
                    m.set_col(col, out);
                }
                s_[{n, j, w}] = std::move(m);
            }
        }
        // cyclic operators
        for (int n = 0; n <= n_max_; ++n) {
            const auto& ts = cw_->tuples(n, w);
            MatrixQ m(static_cast<int>(ts.size()), static_cast<int>(ts.size()));
            Q sign = (n % 2 == 0) ? 1 : -1;
            for (int col = 0; col < static_cast<int>(ts.size()); ++col) {
                const ChainTuple& t = ts[static_cast<std::size_t>(col)];
                SVec out;
                if (n == 0) {
                    // t_0 = sigma on the coefficient
                    for (const auto& [p, c] : sigma_.image(t.m)) svec_axpy(out, c, SVec{{cw_->index_of(0, ChainTuple{p, {}}), Q(1)}});
                } else {
                    int an = t.slots[static_cast<std::size_t>(n) - 1];
                    for (const auto& [p, c] : sigma_.image(an)) {
                        ChainTuple u{p, {}};
                        u.slots.push_back(t.m);
                        for (int j = 0; j + 1 < n; ++j) u.slots.push_back(t.slots[static_cast<std::size_t>(j)]);
                        int row = cw_->index_of(n, u);
                        if (row < 0) throw Error("cyclic operator image left the window");
                        svec_axpy(out, sign * c, SVec{{row, Q(1)}});
                    }
                }
                m.set_col(col, out);
            }
            t_[{n, w}] = std::move(m);
        }
    }
}

const MatrixQ& ParacyclicOps::d(int n, int i, const Weight& w) const {
    auto it = d_.find({n, i, w});
    if (it == d_.end())
        throw BidegreeOutOfRange("face d_{" + std::to_string(n) + "," + std::to_string(i) + "} at weight " +
                                 wstr(w) + " not built");
    return it->second;
}

const MatrixQ& ParacyclicOps::s(int n, int j, const Weight& w) const {
    auto it = s_.find({n, j, w});
    if (it == s_.end())
        throw BidegreeOutOfRange("degeneracy s_{" + std::to_string(n) + "," + std::to_string(j) +
                                 "} at weight " + wstr(w) + " not built");
    return it->second;
}

const MatrixQ& ParacyclicOps::t(int n, const Weight& w) const {
    auto it = t_.find({n, w});
    if (it == t_.end())
        throw BidegreeOutOfRange("cyclic operator t_" + std::to_string(n) + " at weight " + wstr(w) +
                                 " not built");
    return it->second;
}

MatrixQ ParacyclicOps::b(int n, const Weight& w) const {
    MatrixQ acc(cw_->dim(n - 1, w), cw_->dim(n, w));
    for (int i = 0; i <= n; ++i) acc = acc + d(n, i, w).scaled(i % 2 == 0 ? 1 : -1);
    return acc;
}

MatrixQ ParacyclicOps::bprime(int n, const Weight& w) const {
    MatrixQ acc(cw_->dim(n - 1, w), cw_->dim(n, w));
    for (int i = 0; i <= n - 1; ++i) acc = acc + d(n, i, w).scaled(i % 2 == 0 ? 1 : -1);
    return acc;
}

MatrixQ ParacyclicOps::norm(int n, const Weight& w) const {
    int dim = cw_->dim(n, w);
    MatrixQ acc(dim, dim);
    MatrixQ power = MatrixQ::identity(dim);
    const MatrixQ& tn = t(n, w);
    for (int i = 0; i <= n; ++i) {
        acc = acc + power;
        if (i < n) power = tn * power;
    }
    return acc;
}

MatrixQ ParacyclicOps::extra_degeneracy(int n, const Weight& w) const {
    // s_n := (-1)^{n+1} t_{n+1} s_{n,n}
    MatrixQ m = t(n + 1, w) * s(n, n, w);
    return m.scaled((n + 1) % 2 == 0 ? 1 : -1);
}

MatrixQ ParacyclicOps::connes_B(int n, const Weight& w) const {
    // B_n := (id - t_{n+1}) s_n N_n
    MatrixQ id1 = MatrixQ::identity(cw_->dim(n + 1, w));
    return (id1 - t(n + 1, w)) * extra_degeneracy(n, w) * norm(n, w);
}

MatrixQ ParacyclicOps::T(int n, const Weight& w) const { return t(n, w).pow(n + 1); }

ParacyclicOpsPtr build_paracyclic(AlgebraPtr A, const Automorphism& sigma, int n_max,
                                  const Window& wwin) {
    return std::make_shared<ParacyclicOps>(std::move(A), sigma, n_max, wwin);
}

bool RelationReport::all_pass() const {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

int RelationReport::failures() const {
    int f = 0;
    for (const auto& r : results) f += r.pass ? 0 : 1;
    return f;
}

namespace {

void record(RelationReport& rep, const std::string& name, int n, const Weight& w, const MatrixQ& defect) {
    RelationResult r{name, n, w, defect.is_zero(), {}};
    if (!r.pass) {
        // first nonzero column as witness
        for (int j = 0; j < defect.cols() && r.witness.empty(); ++j) r.witness = defect.col(j);
    }
    rep.results.push_back(std::move(r));
}

} // namespace

RelationReport check_relations(const ParacyclicOps& ops, RelationKind kind) {
    RelationReport rep;
    int nmax = ops.n_max();
    bool do_simpl = kind == RelationKind::simplicial || kind == RelationKind::all;
    bool do_para = kind == RelationKind::paracyclic || kind == RelationKind::all;
    bool do_homot = kind == RelationKind::homotopy || kind == RelationKind::all;
    bool do_subs = kind == RelationKind::subsidiary || kind == RelationKind::all;

    if (do_simpl) {
        // d_{n-1,i} d_{n,j} = d_{n-1,j-1} d_{n,i} for i < j
        for (int n = 2; n <= nmax; ++n)
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i)
                    for (const Weight& w : ops.weights())
                        record(rep, "d_i d_j = d_{j-1} d_i", n, w,
                               ops.d(n - 1, i, w) * ops.d(n, j, w) - ops.d(n - 1, j - 1, w) * ops.d(n, i, w));
        // s_{n+1,i} s_{n,j} = s_{n+1,j+1} s_{n,i} for i <= j
        for (int n = 0; n + 2 <= nmax; ++n)
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= j; ++i)
                    for (const Weight& w : ops.weights())
                        record(rep, "s_i s_j = s_{j+1} s_i", n, w,
                               ops.s(n + 1, i, w) * ops.s(n, j, w) - ops.s(n + 1, j + 1, w) * ops.s(n, i, w));
        // d_{n+1,i} s_{n,j}: the three cases
        for (int n = 0; n + 1 <= nmax; ++n)
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= n + 1; ++i)
                    for (const Weight& w : ops.weights()) {
                        MatrixQ lhs = ops.d(n + 1, i, w) * ops.s(n, j, w);
                        MatrixQ rhs(lhs.rows(), lhs.cols());
                        if (i == j || i == j + 1) {
                            rhs = MatrixQ::identity(lhs.cols());
                        } else if (i < j) {
                            if (n >= 1) rhs = ops.s(n - 1, j - 1, w) * ops.d(n, i, w);
                        } else {
                            if (n >= 1) rhs = ops.s(n - 1, j, w) * ops.d(n, i - 1, w);
                        }
                        record(rep, "d_i s_j cases", n, w, lhs - rhs);
                    }
    }

    if (do_para) {
        // d_{n,i} t_n = -t_{n-1} d_{n,i-1} (1 <= i <= n), d_{n,0} t_n = (-1)^n d_{n,n}
        for (int n = 1; n <= nmax; ++n)
            for (const Weight& w : ops.weights()) {
                for (int i = 1; i <= n; ++i)
                    record(rep, "d_i t = -t d_{i-1}", n, w,
                           ops.d(n, i, w) * ops.t(n, w) + ops.t(n - 1, w) * ops.d(n, i - 1, w));
                record(rep, "d_0 t = (-1)^n d_n", n, w,
                       ops.d(n, 0, w) * ops.t(n, w) - ops.d(n, n, w).scaled(n % 2 == 0 ? 1 : -1));
            }
        // s_{n,i} t_n = -t_{n+1} s_{n,i-1} (1 <= i <= n), s_{n,0} t_n = (-1)^n t_{n+1}^2 s_{n,n}
        for (int n = 0; n + 1 <= nmax; ++n)
            for (const Weight& w : ops.weights()) {
                for (int i = 1; i <= n; ++i)
                    record(rep, "s_i t = -t s_{i-1}", n, w,
                           ops.s(n, i, w) * ops.t(n, w) + ops.t(n + 1, w) * ops.s(n, i - 1, w));
                record(rep, "s_0 t = (-1)^n t^2 s_n", n, w,
                       ops.s(n, 0, w) * ops.t(n, w) -
                           (ops.t(n + 1, w) * ops.t(n + 1, w) * ops.s(n, n, w)).scaled(n % 2 == 0 ? 1 : -1));
            }
    }

    if (do_homot) {
        // b_{n+1} B_n + B_{n-1} b_n = id - T_n (n = 0 drops the second term)
        for (int n = 0; n + 1 <= nmax; ++n)
            for (const Weight& w : ops.weights()) {
                MatrixQ lhs = ops.b(n + 1, w) * ops.connes_B(n, w);
                if (n >= 1) lhs = lhs + ops.connes_B(n - 1, w) * ops.b(n, w);
                MatrixQ rhs = MatrixQ::identity(ops.chain().dim(n, w)) - ops.T(n, w);
                record(rep, "bB + Bb = id - T", n, w, lhs - rhs);
            }
        // B_{n+1} B_n = (id - T_{n+2})(id - t_{n+2}) s_{n+1} s_n N_n
        for (int n = 0; n + 2 <= nmax; ++n)
            for (const Weight& w : ops.weights()) {
                MatrixQ lhs = ops.connes_B(n + 1, w) * ops.connes_B(n, w);
                int dim2 = ops.chain().dim(n + 2, w);
                MatrixQ id2 = MatrixQ::identity(dim2);
                MatrixQ rhs = (id2 - ops.T(n + 2, w)) * (id2 - ops.t(n + 2, w)) *
                              ops.extra_degeneracy(n + 1, w) * ops.extra_degeneracy(n, w) * ops.norm(n, w);
                record(rep, "BB = (id-T)(id-t)ssN", n, w, lhs - rhs);
            }
    }

    if (do_subs) {
        // b_n (id - t_n) = (id - t_{n-1}) b'_n
        for (int n = 1; n <= nmax; ++n)
            for (const Weight& w : ops.weights()) {
                MatrixQ idn = MatrixQ::identity(ops.chain().dim(n, w));
                MatrixQ idn1 = MatrixQ::identity(ops.chain().dim(n - 1, w));
                record(rep, "b(id-t) = (id-t)b'", n, w,
                       ops.b(n, w) * (idn - ops.t(n, w)) - (idn1 - ops.t(n - 1, w)) * ops.bprime(n, w));
            }
        // b'_{n+1} s_n + s_{n-1} b'_n = id
        for (int n = 0; n + 1 <= nmax; ++n)
            for (const Weight& w : ops.weights()) {
                MatrixQ lhs = ops.bprime(n + 1, w) * ops.extra_degeneracy(n, w);
                if (n >= 1) lhs = lhs + ops.extra_degeneracy(n - 1, w) * ops.bprime(n, w);
                record(rep, "b's + sb' = id", n, w, lhs - MatrixQ::identity(ops.chain().dim(n, w)));
            }
        // b'_n N_n = N_{n-1} b_n
        for (int n = 1; n <= nmax; ++n)
            for (const Weight& w : ops.weights())
                record(rep, "b'N = Nb", n, w,
                       ops.bprime(n, w) * ops.norm(n, w) - ops.norm(n - 1, w) * ops.b(n, w));
    }
    return rep;
}

MatrixQ T_on_homology(const ParacyclicOps& ops, int n, const Weight& w) {
    HomologyPresentation h = ops.chain().homology(n, w);
    return induced_on_homology(ops.T(n, w), h, h);
}

QuasiCyclicResult quasicyclic_check(const ParacyclicOps& ops, int n, const Weight& w) {
    int dim = ops.chain().dim(n, w);
    MatrixQ idT = MatrixQ::identity(dim) - ops.T(n, w);
    Elim e = eliminate(idT);
    QuasiCyclicResult r;
    r.dim_total = dim;
    r.dim_ker = static_cast<int>(e.kernel_basis.size());
    r.dim_im = e.rank;
    std::vector<SVec> joint = e.kernel_basis;
    joint.insert(joint.end(), e.image_basis.begin(), e.image_basis.end());
    int joint_rank = eliminate(matrix_from_columns(joint, dim)).rank;
    r.dim_intersection = r.dim_ker + r.dim_im - joint_rank;
    r.split = r.dim_intersection == 0 && r.dim_ker + r.dim_im == dim;
    return r;
}

} // namespace thh
