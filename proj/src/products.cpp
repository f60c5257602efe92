#include "twisthom/products.hpp"

#include "twisthom/errors.hpp"

namespace thh {

Cochain cup(const CochainWindow& win, const Cochain& f, const Cochain& g) {
    const GradedAlgebra& A = win.algebra();
    if (win.coefficients().dim() != A.dim())
        throw Error("cup needs a cochain window with regular coefficients");
    int n = f.degree, m = g.degree;
    Cochain r{n + m, wadd(f.s, g.s), {}};
    Q sign = (n * m) % 2 == 0 ? 1 : -1;
    for (const Weight& w : win.input_weights()) {
        const auto& ts = win.tuples(n + m, w);
        for (int ti = 0; ti < static_cast<int>(ts.size()); ++ti) {
            const std::vector<int>& u = ts[static_cast<std::size_t>(ti)];
            std::vector<int> front(u.begin(), u.begin() + n), back(u.begin() + n, u.end());
            Weight wf = wzero(A.grading_rank());
            for (int a : front) wf = wadd(wf, A.wt(a));
            Weight wb = wzero(A.grading_rank());
            for (int a : back) wb = wadd(wb, A.wt(a));
            SVec fv = win.evaluate(n, f.s, f.coords, wf, front);
            if (fv.empty()) continue;
            SVec gv = win.evaluate(m, g.s, g.coords, wb, back);
            if (gv.empty()) continue;
            SVec prod = A.multiply(fv, gv); // may throw OutOfWindow -> WindowTooSmall
            for (const auto& [ne, c] : prod) {
                int k = win.cindex(n + m, r.s, {w, ti, ne});
                if (k < 0)
                    throw WindowTooSmall("cup product leaves the coefficient window at weight " + wstr(w));
                auto it = r.coords.find(k);
                Q add = sign * c;
                if (it == r.coords.end()) {
                    if (add != 0) r.coords.emplace(k, add);
                } else {
                    it->second += add;
                    if (it->second == 0) r.coords.erase(it);
                }
            }
        }
    }
    return r;
}

CapSetup make_cap_setup(AlgebraPtr A, BimodulePtr M, BimodulePtr N, int p_max, int n_cochain_max,
                        const Window& chain_weights, const Window& input_weights,
                        const Window& internal_weights, const Window& result_weights) {
    CapSetup cs;
    cs.A = A;
    cs.M = M;
    cs.N = N;
    cs.cwM = build_chain_window(A, M, p_max, chain_weights, false);
    cs.cwN = build_cochain_window(A, N, n_cochain_max, input_weights, internal_weights);
    cs.mn = tensor_over_A(M, N);
    cs.cwQ = build_chain_window(A, cs.mn.quotient, p_max, result_weights, false);
    return cs;
}

SVec cap(const CapSetup& cs, int p, const Weight& w, const SVec& z, const Cochain& f) {
    int n = f.degree;
    if (n > p) throw DegreeMismatch("cap needs cochain degree <= chain degree");
    const GradedAlgebra& A = *cs.A;
    Weight rw = wadd(w, f.s);
    Q sign = (p * n) % 2 == 0 ? 1 : -1;
    SVec out;
    const auto& ts = cs.cwM->tuples(p, w);
    for (const auto& [col, c] : z) {
        const ChainTuple& t = ts[static_cast<std::size_t>(col)];
        std::vector<int> front(t.slots.begin(), t.slots.begin() + n);
        Weight wf = wzero(A.grading_rank());
        for (int a : front) wf = wadd(wf, A.wt(a));
        SVec fv = cs.cwN->evaluate(n, f.s, f.coords, wf, front);
        if (fv.empty()) continue;
        // project m (x) f(...) into the tensor quotient, then re-tensor the tail
        for (const auto& [ne, d] : fv) {
            int pair = cs.mn.pair_index.at({t.m, ne});
            SVec proj = cs.mn.projection.apply(SVec{{pair, Q(1)}});
            for (const auto& [qi, e] : proj) {
                ChainTuple u{qi, {t.slots.begin() + n, t.slots.end()}};
                int row = cs.cwQ->index_of(p - n, u);
                if (row < 0) throw OutOfWindow("cap result at weight " + wstr(rw) + " not in the window");
                svec_axpy(out, sign * c * d * e, SVec{{row, Q(1)}});
            }
        }
    }
    return out;
}

SVec cap_collapsed(const CapSetup& cs, int p, const Weight& w, const SVec& z, const Cochain& f) {
    int n = f.degree;
    if (n > p) throw DegreeMismatch("cap needs cochain degree <= chain degree");
    if (cs.N->dim() != cs.A->dim())
        throw Error("cap_collapsed needs regular coefficients on the cochain side");
    const GradedAlgebra& A = *cs.A;
    Q sign = (p * n) % 2 == 0 ? 1 : -1;
    SVec out;
    const auto& ts = cs.cwM->tuples(p, w);
    for (const auto& [col, c] : z) {
        const ChainTuple& t = ts[static_cast<std::size_t>(col)];
        std::vector<int> front(t.slots.begin(), t.slots.begin() + n);
        Weight wf = wzero(A.grading_rank());
        for (int a : front) wf = wadd(wf, A.wt(a));
        SVec fv = cs.cwN->evaluate(n, f.s, f.coords, wf, front);
        for (const auto& [ne, d] : fv)
            for (const auto& [mm, e] : cs.M->right(t.m, ne)) {
                ChainTuple u{mm, {t.slots.begin() + n, t.slots.end()}};
                int row = cs.cwM->index_of(p - n, u);
                if (row < 0) throw OutOfWindow("cap result leaves the chain window");
                svec_axpy(out, sign * c * d * e, SVec{{row, Q(1)}});
            }
    }
    return out;
}

SVec cap_on_homology(const CapSetup& cs, int p, const Weight& w, const SVec& z, const Cochain& f) {
    // verify representatives are closed
    if (!cs.cwM->boundary(p, w).apply(z).empty())
        throw NotACycle("cap_on_homology: chain representative is not a cycle");
    if (f.degree + 1 <= cs.cwN->n_max() && !cs.cwN->coboundary(f.degree, f.s).apply(f.coords).empty())
        throw NotACocycle("cap_on_homology: cochain representative is not a cocycle");
    SVec chain = cap_collapsed(cs, p, w, z, f);
    HomologyPresentation h = cs.cwM->homology(p - f.degree, wadd(w, f.s));
    return h.coordinates_of(chain);
}

FClassReport fclass_probe(AlgebraPtr A, const Automorphism& sigma, int d, const Weight& z_weight,
                          const SVec& z, int w_cap, int s_min, int s_max) {
    FClassReport rep;
    const GradedAlgebra& alg = *A;
    Automorphism id = Automorphism::identity(alg);
    Automorphism sinv = sigma.inverse(alg);

    BimodulePtr M = twisted_bimodule(A, sinv, id); // _{sigma^-1}A
    ChainWindowPtr cwM = build_chain_window(A, M, d + 1, Window::nat1(w_cap), false);
    rep.is_cycle = cwM->boundary(d, z_weight).apply(z).empty();

    // cocycles with coefficients A (x) A, outer actions
    EnvelopeCoefficients env = envelope_coefficients(A, id);
    CochainWindowPtr cwN =
        build_cochain_window(A, env.layout.mod, d + 1, Window::nat1(w_cap), Window{{{s_min, s_max}}});

    const auto& ts = cwM->tuples(d, z_weight);

    // kappa: m (x) (u (x) v) -> sigma^{-1}(v) m u, the canonical collapse of
    // H_0(A, M (x)_A A^e) onto A
    auto kappa = [&](int m, int ne) -> SVec {
        auto [u, v] = env.layout.factors[static_cast<std::size_t>(ne)];
        SVec mu = alg.multiply(SVec{{m, Q(1)}}, SVec{{u, Q(1)}});
        return alg.multiply(sinv.image(v), mu);
    };
    // z cap f followed by kappa, for a cocycle vector f at internal weight s
    auto pair_with = [&](const Weight& s, const SVec& fcoords) -> SVec {
        Q sign = (d * d) % 2 == 0 ? 1 : -1;
        SVec out;
        for (const auto& [col, c] : z) {
            const ChainTuple& t = ts[static_cast<std::size_t>(col)];
            Weight wf = wzero(alg.grading_rank());
            for (int a : t.slots) wf = wadd(wf, alg.wt(a));
            SVec fv = cwN->evaluate(d, s, fcoords, wf, t.slots);
            for (const auto& [ne, cc] : fv) svec_axpy(out, sign * c * cc, kappa(t.m, ne));
        }
        return out;
    };

    bool all_bij = true, all_mod = true;
    std::map<Weight, HomologyPresentation> coh;
    for (const Weight& s : cwN->internal_weights()) coh.emplace(s, cwN->cohomology(d, s));

    for (const Weight& s : cwN->internal_weights()) {
        const HomologyPresentation& h = coh.at(s);
        Weight tw = wadd(z_weight, s);
        const auto& target = alg.at_weight(tw);
        std::map<int, int> tpos;
        for (int k = 0; k < static_cast<int>(target.size()); ++k) tpos[target[static_cast<std::size_t>(k)]] = k;
        MatrixQ phi(static_cast<int>(target.size()), h.betti);
        for (int j = 0; j < h.betti; ++j) {
            SVec val = pair_with(s, h.reps[static_cast<std::size_t>(j)]);
            for (const auto& [t, c] : val) {
                auto it = tpos.find(t);
                if (it == tpos.end()) throw Error("fclass pairing left the expected weight");
                phi.set(it->second, j, c);
            }
        }
        rep.dims[s] = {h.betti, static_cast<int>(target.size())};
        bool bij = h.betti == static_cast<int>(target.size()) && eliminate(phi).rank == h.betti;
        all_bij = all_bij && bij;
        rep.pairing[s] = std::move(phi);
    }

    // residual A^e-linearity: Phi(a |> [f]) = sigma^{-1}(a) Phi([f]) and
    // Phi([f] <| b) = Phi([f]) b, using the inner actions on coefficients
    for (const Weight& s : cwN->internal_weights()) {
        const HomologyPresentation& h = coh.at(s);
        for (int a = 0; a < alg.dim(); ++a) {
            Weight s2 = wadd(s, alg.wt(a));
            auto c2 = coh.find(s2);
            if (c2 == coh.end()) continue; // shifted weight outside probe window
            for (int j = 0; j < h.betti; ++j) {
                const SVec& f = h.reps[static_cast<std::size_t>(j)];
                // push the inner actions through the cochain coordinates
                SVec fl, fr;
                const auto& cb = cwN->cbasis(d, s);
                for (const auto& [k, c] : f) {
                    const auto& e = cb[static_cast<std::size_t>(k)];
                    for (const auto& [ne2, c2v] : env.inner_left(a, SVec{{e.nelt, Q(1)}})) {
                        int k2 = cwN->cindex(d, s2, {e.w, e.tuple, ne2});
                        if (k2 < 0) throw Error("inner action left the cochain window");
                        svec_axpy(fl, c * c2v, SVec{{k2, Q(1)}});
                    }
                    for (const auto& [ne2, c2v] : env.inner_right(SVec{{e.nelt, Q(1)}}, a)) {
                        int k2 = cwN->cindex(d, s2, {e.w, e.tuple, ne2});
                        if (k2 < 0) throw Error("inner action left the cochain window");
                        svec_axpy(fr, c * c2v, SVec{{k2, Q(1)}});
                    }
                }
                SVec lhs_l = pair_with(s2, fl);
                SVec rhs_l = alg.multiply(sinv.image(a), pair_with(s, f));
                SVec lhs_r = pair_with(s2, fr);
                SVec rhs_r = alg.multiply(pair_with(s, f), SVec{{a, Q(1)}});
                if (lhs_l != rhs_l || lhs_r != rhs_r) all_mod = false;
            }
        }
    }

    rep.bijective = all_bij;
    rep.module_map = all_mod;
    bool nonzero = false;
    for (const auto& [s, m] : rep.pairing) nonzero = nonzero || !m.is_zero();
    rep.fundamental = rep.is_cycle && all_bij && all_mod && nonzero;
    if (!rep.is_cycle) rep.detail = "z is not a cycle";
    else if (!nonzero) rep.detail = "zero pairing, not fundamental";
    return rep;
}

DualityProbe dualizing_window(AlgebraPtr A, int n_max, int w_cap, int s_min, int s_max) {
    DualityProbe probe;
    EnvelopeCoefficients env = envelope_coefficients(A, Automorphism::identity(*A));
    CochainWindowPtr cw =
        build_cochain_window(A, env.layout.mod, n_max, Window::nat1(w_cap), Window{{{s_min, s_max}}});
    std::map<int, bool> any_nonzero;
    for (int i = 0; i < n_max; ++i)
        for (const Weight& s : cw->internal_weights()) {
            int b = cw->cohomology(i, s).betti;
            probe.dims[{i, s}] = b;
            if (b > 0) any_nonzero[i] = true;
        }
    if (any_nonzero.size() == 1) {
        probe.concentrated = true;
        probe.concentration_degree = any_nonzero.begin()->first;
    }
    return probe;
}

DualityTable duality_table(AlgebraPtr A, const Automorphism& sigma, int d, int w_cap, int s_min,
                           int s_max) {
    DualityTable t;
    t.d = d;
    t.s_min = s_min;
    t.s_max = s_max;
    t.w_cap = w_cap;
    const GradedAlgebra& alg = *A;
    Automorphism id = Automorphism::identity(alg);
    Automorphism sinv = sigma.inverse(alg);

    CochainWindowPtr cw = build_cochain_window(A, regular_bimodule(A), d + 2, Window::nat1(w_cap),
                                               Window{{{s_min, s_max}}});
    for (int i = 0; i <= d; ++i)
        for (const Weight& s : cw->internal_weights()) t.coh[{i, s}] = cw->cohomology(i, s).betti;

    ChainWindowPtr ch = build_chain_window(A, twisted_bimodule(A, sinv, id), d + 2, Window::nat1(w_cap), false);
    BettiTable bt = ch->betti_table();
    for (int j = 0; j <= d; ++j)
        for (const Weight& w : ch->weights()) t.hom[{j, w}] = bt.betti(j, w);

    for (int l = -2 * w_cap; l <= 2 * w_cap; ++l) {
        bool ok = true, saw_nonzero = false, compared = false;
        for (int i = 0; i <= d && ok; ++i)
            for (int s = s_min; s <= s_max; ++s) {
                int sw = s + l;
                if (sw < 0 || sw > w_cap) continue; // not comparable
                compared = true;
                int lhs = t.coh.at({i, Weight{s}});
                int rhs = t.hom.at({d - i, Weight{sw}});
                if (lhs != rhs) {
                    ok = false;
                    break;
                }
                if (lhs > 0) saw_nonzero = true;
            }
        if (ok && compared && saw_nonzero) t.matching_shifts.push_back(l);
    }
    return t;
}

} // namespace thh
