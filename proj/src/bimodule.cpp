#include "twisthom/bimodule.hpp"

#include <set>
#include <sstream>

#include "twisthom/errors.hpp"

namespace thh {

int Bimodule::add_basis(const std::string& id, const Weight& wt) {
    if (idx_.count(id)) throw ValidationError("duplicate module basis id '" + id + "'");
    basis_.push_back({id, wt});
    int m = dim() - 1;
    idx_[id] = m;
    return m;
}

void Bimodule::finalize() {
    by_weight_.clear();
    for (int m = 0; m < dim(); ++m) by_weight_[wt(m)].push_back(m);
    if (!basis_.empty()) {
        std::size_t rank = basis_[0].wt.size();
        window.bounds.assign(rank, {basis_[0].wt[0], basis_[0].wt[0]});
        for (std::size_t c = 0; c < rank; ++c) {
            int lo = basis_[0].wt[c], hi = basis_[0].wt[c];
            for (const auto& b : basis_) {
                lo = std::min(lo, b.wt[c]);
                hi = std::max(hi, b.wt[c]);
            }
            window.bounds[c] = {lo, hi};
        }
    }
}

int Bimodule::index_of(const std::string& id) const {
    auto it = idx_.find(id);
    return it == idx_.end() ? -1 : it->second;
}

const std::vector<int>& Bimodule::at_weight(const Weight& w) const {
    static const std::vector<int> kEmpty;
    auto it = by_weight_.find(w);
    return it == by_weight_.end() ? kEmpty : it->second;
}

std::vector<Weight> Bimodule::weights_present() const {
    std::vector<Weight> ws;
    for (const auto& [w, v] : by_weight_) ws.push_back(w);
    return ws;
}

const SVec& Bimodule::left(int a, int m) const {
    auto it = lact_.find({a, m});
    if (it == lact_.end())
        throw OutOfWindow("left action " + A_->elt(a).id + " |> " + elt(m).id + " undefined in " + name);
    return it->second;
}

const SVec& Bimodule::right(int m, int a) const {
    auto it = ract_.find({m, a});
    if (it == ract_.end())
        throw OutOfWindow("right action " + elt(m).id + " <| " + A_->elt(a).id + " undefined in " + name);
    return it->second;
}

SVec Bimodule::act_left(const SVec& a, const SVec& m) const {
    SVec r;
    for (const auto& [i, c] : a)
        for (const auto& [j, d] : m) svec_axpy(r, c * d, left(i, j));
    return r;
}

SVec Bimodule::act_right(const SVec& m, const SVec& a) const {
    SVec r;
    for (const auto& [j, d] : m)
        for (const auto& [i, c] : a) svec_axpy(r, c * d, right(j, i));
    return r;
}

std::string Bimodule::describe_elt(const SVec& v) const {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : v) {
        if (!first) os << " + ";
        os << rat_str(c) << "*" << elt(i).id;
        first = false;
    }
    return os.str();
}

ValidationReport validate_bimodule(const Bimodule& M) {
    ValidationReport rep;
    const GradedAlgebra& A = M.algebra();
    auto fail = [&rep](const std::string& rule, const std::string& witness) {
        rep.issues.push_back({rule, witness});
    };

    for (int m = 0; m < M.dim(); ++m) {
        try {
            if (M.act_left(A.unit(), SVec{{m, Q(1)}}) != SVec{{m, Q(1)}})
                fail("1 |> m = m", M.elt(m).id);
            if (M.act_right(SVec{{m, Q(1)}}, A.unit()) != SVec{{m, Q(1)}})
                fail("m <| 1 = m", M.elt(m).id);
        } catch (const OutOfWindow&) {
            fail("unit action defined", M.elt(m).id);
        }
    }

    for (int a = 0; a < A.dim(); ++a)
        for (int m = 0; m < M.dim(); ++m) {
            if (M.left_defined(a, m))
                for (const auto& [t, c] : M.left(a, m))
                    if (M.wt(t) != wadd(A.wt(a), M.wt(m)))
                        fail("left action respects grading", A.elt(a).id + " |> " + M.elt(m).id);
            if (M.right_defined(m, a))
                for (const auto& [t, c] : M.right(m, a))
                    if (M.wt(t) != wadd(M.wt(m), A.wt(a)))
                        fail("right action respects grading", M.elt(m).id + " <| " + A.elt(a).id);
        }

    for (int a = 0; a < A.dim(); ++a)
        for (int b = 0; b < A.dim(); ++b) {
            bool have_prod = A.product_defined(a, b);
            for (int m = 0; m < M.dim(); ++m) {
                // (ab) |> m = a |> (b |> m)
                if (have_prod && M.left_defined(b, m)) {
                    bool inner_ok = true;
                    SVec rhs;
                    try {
                        rhs = M.act_left(SVec{{a, Q(1)}}, M.left(b, m));
                    } catch (const OutOfWindow&) {
                        inner_ok = false;
                    }
                    if (inner_ok) {
                        try {
                            SVec lhs = M.act_left(A.product(a, b), SVec{{m, Q(1)}});
                            if (lhs != rhs)
                                fail("left associativity",
                                     "(" + A.elt(a).id + "," + A.elt(b).id + ") on " + M.elt(m).id);
                        } catch (const OutOfWindow&) {
                            // the other association route leaves the window;
                            // nothing to compare
                        }
                    }
                }
                // m <| (ab) = (m <| a) <| b
                if (have_prod && M.right_defined(m, a)) {
                    bool inner_ok = true;
                    SVec rhs;
                    try {
                        rhs = M.act_right(M.right(m, a), SVec{{b, Q(1)}});
                    } catch (const OutOfWindow&) {
                        inner_ok = false;
                    }
                    if (inner_ok) {
                        try {
                            SVec lhs = M.act_right(SVec{{m, Q(1)}}, A.product(a, b));
                            if (lhs != rhs)
                                fail("right associativity",
                                     M.elt(m).id + " on (" + A.elt(a).id + "," + A.elt(b).id + ")");
                        } catch (const OutOfWindow&) {
                            // other route out of window
                        }
                    }
                }
                // a |> (m <| b) = (a |> m) <| b
                if (M.right_defined(m, b) && M.left_defined(a, m)) {
                    bool ok1 = true, ok2 = true;
                    SVec lhs, rhs;
                    try {
                        lhs = M.act_left(SVec{{a, Q(1)}}, M.right(m, b));
                    } catch (const OutOfWindow&) {
                        ok1 = false;
                    }
                    try {
                        rhs = M.act_right(M.left(a, m), SVec{{b, Q(1)}});
                    } catch (const OutOfWindow&) {
                        ok2 = false;
                    }
                    if (ok1 && ok2 && lhs != rhs)
                        fail("actions commute", A.elt(a).id + " |> " + M.elt(m).id + " <| " + A.elt(b).id);
                }
            }
        }
    return rep;
}

BimodulePtr regular_bimodule(AlgebraPtr A) {
    const GradedAlgebra& alg = *A;
    return twisted_bimodule(std::move(A), Automorphism::identity(alg), Automorphism::identity(alg));
}

BimodulePtr twisted_bimodule(AlgebraPtr A, const Automorphism& rho, const Automorphism& sigma) {
    auto M = std::make_shared<Bimodule>();
    M->set_algebra(A);
    M->name = rho.name + "|A|" + sigma.name;
    for (const auto& b : A->basis()) M->add_basis(b.id, b.wt);
    for (int a = 0; a < A->dim(); ++a)
        for (int m = 0; m < A->dim(); ++m) {
            if (!A->product_defined(a, m)) continue;
            // weight of rho(a) equals weight of a, so definedness matches
            M->set_left(a, m, A->multiply(rho.image(a), SVec{{m, Q(1)}}));
            M->set_right(m, a, A->multiply(SVec{{m, Q(1)}}, sigma.image(a)));
        }
    M->finalize();
    return M;
}

BimodulePtr side_swap(const Bimodule& M) {
    auto S = std::make_shared<Bimodule>();
    S->set_algebra(std::make_shared<GradedAlgebra>(M.algebra().opposite()));
    S->name = "swap(" + M.name + ")";
    for (const auto& b : M.basis()) S->add_basis(b.id, b.wt);
    const GradedAlgebra& A = M.algebra();
    for (int a = 0; a < A.dim(); ++a)
        for (int m = 0; m < M.dim(); ++m) {
            if (M.right_defined(m, a)) S->set_left(a, m, M.right(m, a));
            if (M.left_defined(a, m)) S->set_right(m, a, M.left(a, m));
        }
    S->finalize();
    return S;
}

SVec BimoduleMap::apply(const SVec& v) const {
    SVec out;
    // split by weight, apply blocks
    std::map<Weight, SVec> parts;
    for (const auto& [i, c] : v) parts[dom->wt(i)].emplace(i, c);
    for (const auto& [w, part] : parts) {
        auto bit = blocks.find(w);
        if (bit == blocks.end()) throw OutOfWindow("bimodule map has no block at weight " + wstr(w));
        const auto& delts = dom->at_weight(w);
        SVec local;
        for (const auto& [i, c] : part) {
            int k = -1;
            for (int p = 0; p < static_cast<int>(delts.size()); ++p)
                if (delts[static_cast<std::size_t>(p)] == i) { k = p; break; }
            local.emplace(k, c);
        }
        SVec img = bit->second.apply(local);
        const auto& celts = cod->at_weight(w);
        for (const auto& [k, c] : img) out.emplace(celts[static_cast<std::size_t>(k)], c);
    }
    return out;
}

std::string BimoduleMap::intertwining_violation() const {
    const GradedAlgebra& A = dom->algebra();
    for (int a = 0; a < A.dim(); ++a)
        for (int m = 0; m < dom->dim(); ++m) {
            SVec em{{m, Q(1)}};
            if (dom->left_defined(a, m)) {
                if (!cod->left_defined(a, m))
                    return "codomain missing left action " + A.elt(a).id + " |> " + dom->elt(m).id;
                if (apply(dom->left(a, m)) != cod->act_left(SVec{{a, Q(1)}}, apply(em)))
                    return "left action " + A.elt(a).id + " |> " + dom->elt(m).id;
            }
            if (dom->right_defined(m, a)) {
                if (!cod->right_defined(m, a))
                    return "codomain missing right action " + dom->elt(m).id + " <| " + A.elt(a).id;
                if (apply(dom->right(m, a)) != cod->act_right(apply(em), SVec{{a, Q(1)}}))
                    return "right action " + dom->elt(m).id + " <| " + A.elt(a).id;
            }
        }
    return "";
}

bool BimoduleMap::bijective() const {
    for (const auto& [w, blk] : blocks) {
        if (blk.rows() != blk.cols()) return false;
        if (eliminate(blk).rank != blk.cols()) return false;
    }
    // every codomain weight must be covered
    for (const Weight& w : cod->weights_present())
        if (!blocks.count(w)) return false;
    return true;
}

BimoduleMap twist_iso(AlgebraPtr A, const Automorphism& rho, const Automorphism& sigma,
                      const Automorphism& tau) {
    const GradedAlgebra& alg = *A;
    BimoduleMap f;
    f.dom = twisted_bimodule(A, rho, sigma);
    f.cod = twisted_bimodule(A, tau.compose_after(alg, rho, tau.name + "o" + rho.name),
                             tau.compose_after(alg, sigma, tau.name + "o" + sigma.name));
    for (const Weight& w : alg.weights_present()) f.blocks[w] = tau.block(alg, w);
    std::string bad = f.intertwining_violation();
    if (!bad.empty())
        throw IntertwinerCheckFailed("twist_iso by " + tau.name + " fails to intertwine: " + bad);
    return f;
}

TensorSquareLayout tensor_plain(BimodulePtr M, BimodulePtr N, const std::string& name) {
    if (M->algebra_ptr().get() != N->algebra_ptr().get())
        throw Error("tensor_plain: factors must share the algebra");
    TensorSquareLayout out;
    auto T = std::make_shared<Bimodule>();
    T->set_algebra(M->algebra_ptr());
    T->name = name;
    for (int m = 0; m < M->dim(); ++m)
        for (int n = 0; n < N->dim(); ++n) {
            int idx = T->add_basis(M->elt(m).id + "(x)" + N->elt(n).id, wadd(M->wt(m), N->wt(n)));
            out.pair_index[{m, n}] = idx;
            out.factors.push_back({m, n});
        }
    const GradedAlgebra& A = M->algebra();
    for (int a = 0; a < A.dim(); ++a)
        for (int m = 0; m < M->dim(); ++m)
            for (int n = 0; n < N->dim(); ++n) {
                int idx = out.pair_index.at({m, n});
                if (M->left_defined(a, m)) {
                    SVec v;
                    for (const auto& [mm, c] : M->left(a, m)) v.emplace(out.pair_index.at({mm, n}), c);
                    T->set_left(a, idx, v);
                }
                if (N->right_defined(n, a)) {
                    SVec v;
                    for (const auto& [nn, c] : N->right(n, a)) v.emplace(out.pair_index.at({m, nn}), c);
                    T->set_right(idx, a, v);
                }
            }
    T->finalize();
    out.mod = T;
    return out;
}

namespace {

struct BlockIndex {
    std::vector<int> elts;
    std::map<int, int> pos;
    explicit BlockIndex(const std::vector<int>& e) : elts(e) {
        for (int k = 0; k < static_cast<int>(elts.size()); ++k) pos[elts[static_cast<std::size_t>(k)]] = k;
    }
    SVec to_local(const SVec& v) const {
        SVec r;
        for (const auto& [i, c] : v) r.emplace(pos.at(i), c);
        return r;
    }
    SVec to_global(const SVec& v) const {
        SVec r;
        for (const auto& [k, c] : v) r.emplace(elts[static_cast<std::size_t>(k)], c);
        return r;
    }
};

} // namespace

TensorOverA tensor_over_A(BimodulePtr M, BimodulePtr N) {
    TensorOverA out;
    out.left_factor = M;
    out.right_factor = N;
    TensorSquareLayout plain = tensor_plain(M, N, M->name + "(x)" + N->name);
    out.pair_space = plain.mod;
    out.pair_index = std::move(plain.pair_index);
    out.factors = std::move(plain.factors);

    const GradedAlgebra& A = M->algebra();
    const Bimodule& T = *out.pair_space;

    // Middle relations m <| a (x) n - m (x) a |> n, grouped by weight. A
    // weight whose relation set cannot be fully formed inside the windows is
    // dropped from the quotient rather than silently under-quotiented.
    std::map<Weight, std::vector<SVec>> gens;
    std::set<Weight> incomplete;
    for (int m = 0; m < M->dim(); ++m)
        for (int a = 0; a < A.dim(); ++a)
            for (int n = 0; n < N->dim(); ++n) {
                Weight w = wadd(wadd(M->wt(m), A.wt(a)), N->wt(n));
                bool rd = M->right_defined(m, a), ld = N->left_defined(a, n);
                if (!rd || !ld) {
                    incomplete.insert(w);
                    continue;
                }
                SVec g;
                for (const auto& [mm, c] : M->right(m, a)) svec_axpy(g, c, SVec{{out.pair_index.at({mm, n}), Q(1)}});
                for (const auto& [nn, c] : N->left(a, n)) svec_axpy(g, -c, SVec{{out.pair_index.at({m, nn}), Q(1)}});
                if (!g.empty()) gens[w].push_back(std::move(g));
            }

    auto Qmod = std::make_shared<Bimodule>();
    Qmod->set_algebra(M->algebra_ptr());
    Qmod->name = M->name + "(x)_A" + N->name;

    std::map<Weight, Quotient> pres;
    std::map<Weight, BlockIndex> blocks;
    std::map<Weight, std::vector<int>> qbasis; // quotient basis indices per weight
    for (const Weight& w : T.weights_present()) {
        if (incomplete.count(w)) continue;
        BlockIndex bi(T.at_weight(w));
        std::vector<SVec> local_gens;
        auto git = gens.find(w);
        if (git != gens.end())
            for (const SVec& g : git->second) local_gens.push_back(bi.to_local(g));
        Quotient q(local_gens, static_cast<int>(bi.elts.size()));
        // sanity: the subspace must be stable under the outer actions
        for (const SVec& g : local_gens) {
            SVec gg = bi.to_global(g);
            for (int a = 0; a < A.dim(); ++a) {
                bool all_defined = true;
                SVec moved;
                for (const auto& [t, c] : gg) {
                    if (!T.left_defined(a, t)) { all_defined = false; break; }
                    svec_axpy(moved, c, T.left(a, t));
                }
                if (all_defined && !moved.empty()) {
                    Weight w2 = wadd(A.wt(a), w);
                    if (incomplete.count(w2)) continue;
                    BlockIndex b2(T.at_weight(w2));
                    std::vector<SVec> g2;
                    auto it2 = gens.find(w2);
                    if (it2 != gens.end())
                        for (const SVec& x : it2->second) g2.push_back(b2.to_local(x));
                    if (!Quotient(g2, static_cast<int>(b2.elts.size())).in_subspace(b2.to_local(moved)))
                        throw Error("tensor_over_A: relations are not stable under the left action");
                }
            }
        }
        for (int k = 0; k < q.dim(); ++k) {
            SVec rep = bi.to_global(q.lift(SVec{{k, Q(1)}}));
            int gi = rep.begin()->first; // canonical lifts are single pair basis elements
            qbasis[w].push_back(Qmod->add_basis("[" + T.elt(gi).id + "]", w));
            out.quotient_rep_pair.push_back(gi);
        }
        pres.emplace(w, std::move(q));
        blocks.emplace(w, std::move(bi));
    }
    Qmod->finalize();

    // induced actions: lift, act on the pair space, project
    auto project_global = [&](const Weight& w, const SVec& gvec) -> SVec {
        const Quotient& q = pres.at(w);
        const BlockIndex& bi = blocks.at(w);
        SVec loc = q.project(bi.to_local(gvec));
        SVec out_v;
        for (const auto& [k, c] : loc) out_v.emplace(qbasis.at(w)[static_cast<std::size_t>(k)], c);
        return out_v;
    };
    auto lift_global = [&](int qidx) -> SVec {
        const Weight& w = Qmod->wt(qidx);
        const Quotient& q = pres.at(w);
        const BlockIndex& bi = blocks.at(w);
        const auto& qb = qbasis.at(w);
        int local = -1;
        for (int k = 0; k < static_cast<int>(qb.size()); ++k)
            if (qb[static_cast<std::size_t>(k)] == qidx) { local = k; break; }
        return bi.to_global(q.lift(SVec{{local, Q(1)}}));
    };

    for (int qi = 0; qi < Qmod->dim(); ++qi) {
        SVec rep = lift_global(qi);
        for (int a = 0; a < A.dim(); ++a) {
            bool ok = true;
            SVec lmoved;
            for (const auto& [t, c] : rep) {
                if (!T.left_defined(a, t)) { ok = false; break; }
                svec_axpy(lmoved, c, T.left(a, t));
            }
            Weight wl = wadd(A.wt(a), Qmod->wt(qi));
            if (ok && pres.count(wl))
                Qmod->set_left(a, qi, project_global(wl, lmoved));
            else if (ok && lmoved.empty())
                Qmod->set_left(a, qi, SVec{});
            ok = true;
            SVec rmoved;
            for (const auto& [t, c] : rep) {
                if (!T.right_defined(t, a)) { ok = false; break; }
                svec_axpy(rmoved, c, T.right(t, a));
            }
            Weight wr = wadd(Qmod->wt(qi), A.wt(a));
            if (ok && pres.count(wr))
                Qmod->set_right(qi, a, project_global(wr, rmoved));
            else if (ok && rmoved.empty())
                Qmod->set_right(qi, a, SVec{});
        }
    }

    out.quotient = Qmod;
    out.projection.dom = out.pair_space;
    out.projection.cod = Qmod;
    for (const auto& [w, q] : pres) out.projection.blocks[w] = q.projection_matrix();
    return out;
}

EnvelopeCoefficients envelope_coefficients(AlgebraPtr A, const Automorphism& right_twist) {
    const GradedAlgebra& alg = *A;
    BimodulePtr reg = regular_bimodule(A);
    BimodulePtr tw = twisted_bimodule(A, Automorphism::identity(alg), right_twist);
    EnvelopeCoefficients env;
    env.layout = tensor_plain(reg, tw, "A(x)A_" + right_twist.name);

    auto layout = env.layout; // copy of index maps for the closures
    AlgebraPtr algp = A;
    env.inner_left = [layout, algp](int a, const SVec& v) {
        SVec r;
        for (const auto& [t, c] : v) {
            auto [u, w] = layout.factors[static_cast<std::size_t>(t)];
            SVec av = algp->multiply(SVec{{a, Q(1)}}, SVec{{w, Q(1)}});
            for (const auto& [ww, d] : av) svec_axpy(r, c * d, SVec{{layout.pair_index.at({u, ww}), Q(1)}});
        }
        return r;
    };
    env.inner_right = [layout, algp](const SVec& v, int b) {
        SVec r;
        for (const auto& [t, c] : v) {
            auto [u, w] = layout.factors[static_cast<std::size_t>(t)];
            SVec ub = algp->multiply(SVec{{u, Q(1)}}, SVec{{b, Q(1)}});
            for (const auto& [uu, d] : ub) svec_axpy(r, c * d, SVec{{layout.pair_index.at({uu, w}), Q(1)}});
        }
        return r;
    };
    return env;
}

BimoduleMap collapse_right_regular(const TensorOverA& t) {
    const Bimodule& M = *t.left_factor;
    const Bimodule& N = *t.right_factor;
    const GradedAlgebra& A = M.algebra();
    if (N.dim() != A.dim())
        throw Error("collapse_right_regular: right factor is not the regular bimodule");
    const Bimodule& Qm = *t.quotient;
    // [m (x) a] -> m <| a, computed on canonical lifts. Well-definedness on
    // the quotient holds because (m <| b) <| a = m <| (b a) = m <| (b |> a).
    BimoduleMap f;
    f.dom = t.quotient;
    f.cod = t.left_factor;
    for (const Weight& w : Qm.weights_present()) {
        const auto& qelts = Qm.at_weight(w);
        const auto& melts = M.at_weight(w);
        std::map<int, int> mpos;
        for (int k = 0; k < static_cast<int>(melts.size()); ++k) mpos[melts[static_cast<std::size_t>(k)]] = k;
        MatrixQ blk(static_cast<int>(melts.size()), static_cast<int>(qelts.size()));
        for (int k = 0; k < static_cast<int>(qelts.size()); ++k) {
            int pair = t.quotient_rep_pair[static_cast<std::size_t>(qelts[static_cast<std::size_t>(k)])];
            auto [m, a] = t.factors[static_cast<std::size_t>(pair)];
            for (const auto& [mm, c] : M.right(m, a)) blk.set(mpos.at(mm), k, c);
        }
        f.blocks[w] = blk;
    }
    return f;
}

} // namespace thh
