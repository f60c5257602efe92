#include "twisthom/smash.hpp"

#include "twisthom/errors.hpp"

namespace thh {

namespace {

std::string smash_id(const std::string& base_id, int k) {
    if (k == 0) return base_id;
    return base_id + ".x" + std::to_string(k);
}

// sigma powers over an exponent range, indexed by exponent
std::map<int, Automorphism> sigma_powers(const GradedAlgebra& A, const Automorphism& sigma, int lo,
                                         int hi) {
    std::map<int, Automorphism> p;
    for (int e = lo; e <= hi; ++e) p.emplace(e, sigma.power(A, e));
    return p;
}

} // namespace

SmashAlgebra smash_build(const SmashSpec& spec) {
    const GradedAlgebra& base = *spec.base;
    int xlo = 0, xhi = 0;
    switch (spec.mode) {
        case SmashSpec::Mode::nat:
            xlo = 0;
            xhi = spec.x_cap;
            break;
        case SmashSpec::Mode::integer:
            xlo = spec.x_min;
            xhi = spec.x_max;
            break;
        case SmashSpec::Mode::cyclic:
            if (spec.order < 1) throw BadParams("cyclic smash needs order >= 1");
            if (!spec.sigma.power(base, spec.order).is_identity(base))
                throw SigmaOrderMismatch("sigma^" + std::to_string(spec.order) +
                                         " is not the identity; cyclic smash undefined");
            if (!base.table_total())
                throw BadParams("cyclic smash needs a total base product table");
            xlo = 0;
            xhi = spec.order - 1;
            break;
    }

    SmashAlgebra out;
    out.base = spec.base;
    out.sigma = spec.sigma;
    out.mode = spec.mode;

    auto S = std::make_shared<GradedAlgebra>();
    S->name = base.name + "|x" + (spec.mode == SmashSpec::Mode::cyclic ? "c" : "");
    S->window = base.window;
    if (spec.mode == SmashSpec::Mode::cyclic)
        S->window.bounds.push_back({0, 0});
    else
        S->window.bounds.push_back({xlo, xhi});

    for (int k = xlo; k <= xhi; ++k)
        for (int i = 0; i < base.dim(); ++i) {
            Weight w = base.wt(i);
            w.push_back(spec.mode == SmashSpec::Mode::cyclic ? 0 : k);
            int idx = S->add_basis(smash_id(base.elt(i).id, k), w);
            out.at[{i, k}] = idx;
            out.factors.resize(static_cast<std::size_t>(idx) + 1);
            out.factors[static_cast<std::size_t>(idx)] = {i, k};
        }
    SVec unit;
    for (const auto& [i, c] : base.unit()) unit.emplace(out.at.at({i, 0}), c);
    S->set_unit(unit);

    std::map<int, Automorphism> pows = sigma_powers(base, spec.sigma, xlo, xhi);
    for (int k = xlo; k <= xhi; ++k)
        for (int l = xlo; l <= xhi; ++l) {
            int kl = k + l;
            if (spec.mode == SmashSpec::Mode::cyclic)
                kl = ((k + l) % spec.order + spec.order) % spec.order;
            else if (kl < xlo || kl > xhi)
                continue;
            for (int i = 0; i < base.dim(); ++i)
                for (int j = 0; j < base.dim(); ++j) {
                    if (!base.product_defined(i, j)) continue;
                    // (a (x) x^k)(b (x) x^l) = a sigma^k(b) (x) x^{k+l}
                    SVec prod = base.multiply(SVec{{i, Q(1)}}, pows.at(k).image(j));
                    SVec v;
                    for (const auto& [p, c] : prod) v.emplace(out.at.at({p, kl}), c);
                    S->set_product(out.at.at({i, k}), out.at.at({j, l}), v);
                }
        }
    S->finalize();
    out.S = S;
    auto uit = base.unit();
    if (uit.size() == 1 && xhi >= 1 && xlo <= 1) out.x_index = out.at.at({uit.begin()->first, 1});
    return out;
}

Thm44Module thm44_module(AlgebraPtr A, const Automorphism& sigma, int x_cap) {
    Thm44Module tm;
    SmashSpec spec{A, sigma, SmashSpec::Mode::nat, x_cap, 0, 0, 0};
    tm.smash = smash_build(spec);
    const GradedAlgebra& base = *A;
    const GradedAlgebra& S = *tm.smash.S;

    auto mod = std::make_shared<Bimodule>();
    mod->set_algebra(tm.smash.S);
    mod->name = "A(x)k[x]<=" + std::to_string(x_cap);
    for (int k = 0; k <= x_cap; ++k)
        for (int i = 0; i < base.dim(); ++i) {
            Weight w = base.wt(i);
            w.push_back(k);
            int idx = mod->add_basis(smash_id(base.elt(i).id, k) + "'", w);
            tm.at[{i, k}] = idx;
            tm.factors.resize(static_cast<std::size_t>(idx) + 1);
            tm.factors[static_cast<std::size_t>(idx)] = {i, k};
        }

    std::map<int, Automorphism> inv_pows = sigma_powers(base, sigma.inverse(base), 0, 2 * x_cap);
    // left: (b (x) x^l) |> (a (x) x^k) = sigma^{-(k+l)}(b) a (x) x^{k+l}
    // right: (a (x) x^k) <| (b (x) x^l) = sigma^{-l}(a b) (x) x^{k+l}
    for (int si = 0; si < S.dim(); ++si) {
        auto [bj, l] = tm.smash.factors[static_cast<std::size_t>(si)];
        for (int mi = 0; mi < mod->dim(); ++mi) {
            auto [ai, k] = tm.factors[static_cast<std::size_t>(mi)];
            if (k + l > x_cap) continue;
            if (base.product_defined(bj, ai)) {
                SVec prod = base.multiply(inv_pows.at(k + l).image(bj), SVec{{ai, Q(1)}});
                SVec v;
                for (const auto& [p, c] : prod) v.emplace(tm.at.at({p, k + l}), c);
                mod->set_left(si, mi, v);
            }
            if (base.product_defined(ai, bj)) {
                SVec prod = inv_pows.at(l).apply(base.multiply(SVec{{ai, Q(1)}}, SVec{{bj, Q(1)}}));
                SVec v;
                for (const auto& [p, c] : prod) v.emplace(tm.at.at({p, k + l}), c);
                mod->set_right(mi, si, v);
            }
        }
    }
    mod->finalize();
    ValidationReport rep = validate_bimodule(*mod);
    if (!rep.passed())
        throw ValidationError("transported module violates bimodule axioms:\n" + rep.str());
    tm.module = mod;
    return tm;
}

CheckReport untwist_iso_check(AlgebraPtr A, const Automorphism& sigma, int x_cap) {
    CheckReport rep;
    Thm44Module tm = thm44_module(A, sigma, x_cap);
    const GradedAlgebra& base = *A;
    const GradedAlgebra& S = *tm.smash.S;
    const Bimodule& M = *tm.module;

    std::map<int, Automorphism> pows = sigma_powers(base, sigma, 0, x_cap);
    // phi(a (x) x^k) = sigma^k(a) (x) x^k, as a vector over S's basis
    auto phi = [&](int mi) {
        auto [ai, k] = tm.factors[static_cast<std::size_t>(mi)];
        SVec img;
        for (const auto& [p, c] : pows.at(k).image(ai)) img.emplace(tm.smash.at.at({p, k}), c);
        return img;
    };
    auto phi_vec = [&](const SVec& v) {
        SVec img;
        for (const auto& [mi, c] : v) svec_axpy(img, c, phi(mi));
        return img;
    };

    long checked = 0;
    for (int u = 0; u < S.dim(); ++u)
        for (int mi = 0; mi < M.dim(); ++mi) {
            if (M.left_defined(u, mi)) {
                SVec lhs = phi_vec(M.left(u, mi));
                SVec rhs = S.multiply(SVec{{u, Q(1)}}, phi(mi));
                if (lhs != rhs)
                    rep.fail("phi(" + S.elt(u).id + " |> " + M.elt(mi).id + ") != " + S.elt(u).id +
                             " * phi(" + M.elt(mi).id + ")");
                ++checked;
            }
            if (M.right_defined(mi, u)) {
                SVec lhs = phi_vec(M.right(mi, u));
                SVec rhs = S.multiply(phi(mi), SVec{{u, Q(1)}});
                if (lhs != rhs)
                    rep.fail("phi(" + M.elt(mi).id + " <| " + S.elt(u).id + ") != phi(" + M.elt(mi).id +
                             ") * " + S.elt(u).id);
                ++checked;
            }
        }

    // bijectivity per bidegree
    for (const Weight& w : M.weights_present()) {
        const auto& melts = M.at_weight(w);
        const auto& selts = S.at_weight(w);
        if (melts.size() != selts.size()) {
            rep.fail("bidegree " + wstr(w) + ": dimension mismatch");
            continue;
        }
        std::map<int, int> spos;
        for (int k = 0; k < static_cast<int>(selts.size()); ++k) spos[selts[static_cast<std::size_t>(k)]] = k;
        MatrixQ blk(static_cast<int>(selts.size()), static_cast<int>(melts.size()));
        for (int k = 0; k < static_cast<int>(melts.size()); ++k)
            for (const auto& [si, c] : phi(melts[static_cast<std::size_t>(k)])) blk.set(spos.at(si), k, c);
        if (eliminate(blk).rank != blk.cols()) rep.fail("bidegree " + wstr(w) + ": phi not bijective");
    }
    rep.notes.push_back("checked " + std::to_string(checked) + " intertwining identities");
    return rep;
}

DiagramReport proof_diagram_check(AlgebraPtr A, const Automorphism& sigma, int d,
                                  const Weight& z_weight, const SVec& z, int w_cap, int s_min,
                                  int s_max) {
    DiagramReport rep;
    const GradedAlgebra& alg = *A;
    Automorphism sinv = sigma.inverse(alg);

    // paracyclic structure on C_*(A, _{sigma^-1}A)
    ParacyclicOpsPtr ops = build_paracyclic(A, sinv, d + 1, Window::nat1(w_cap));
    const ChainWindow& cw = ops->chain();

    EnvelopeCoefficients env = envelope_coefficients(A, sinv);
    CochainWindowPtr cwN =
        build_cochain_window(A, env.layout.mod, d, Window::nat1(w_cap), Window{{{s_min, s_max}}});

    rep.is_cycle = cw.boundary(d, z_weight).apply(z).empty();

    // z cap f collapsed into A (x) A coordinates: m (x) (u (x) v) -> m u (x) v
    Q sign = d % 2 == 0 ? 1 : -1;
    auto cap_collapse = [&](const SVec& chain, const SVec& fcoords, const Weight& s,
                            bool twist_inputs) {
        std::map<std::pair<int, int>, Q> acc;
        const auto& ts = cw.tuples(d, z_weight);
        for (const auto& [col, c] : chain) {
            const ChainTuple& t = ts[static_cast<std::size_t>(col)];
            // optionally precompose the cochain with sigma on every slot
            std::vector<std::pair<std::vector<int>, Q>> inputs{{t.slots, Q(1)}};
            if (twist_inputs) {
                std::vector<std::pair<std::vector<int>, Q>> expanded{{{}, Q(1)}};
                for (int a : t.slots) {
                    std::vector<std::pair<std::vector<int>, Q>> next;
                    for (const auto& [prefix, pc] : expanded)
                        for (const auto& [img, ic] : sigma.image(a)) {
                            std::vector<int> tup = prefix;
                            tup.push_back(img);
                            next.push_back({std::move(tup), pc * ic});
                        }
                    expanded = std::move(next);
                }
                inputs = std::move(expanded);
            }
            for (const auto& [tuple, tc] : inputs) {
                Weight wf = wzero(alg.grading_rank());
                for (int a : tuple) wf = wadd(wf, alg.wt(a));
                SVec fv = cwN->evaluate(d, s, fcoords, wf, tuple);
                for (const auto& [ne, fc] : fv) {
                    auto [u, v] = env.layout.factors[static_cast<std::size_t>(ne)];
                    // postcompose with (sigma^-1 (x) sigma^-1) when twisting
                    std::vector<std::pair<std::pair<int, int>, Q>> post{{{u, v}, Q(1)}};
                    if (twist_inputs) {
                        post.clear();
                        for (const auto& [uu, uc] : sinv.image(u))
                            for (const auto& [vv, vc] : sinv.image(v)) post.push_back({{uu, vv}, uc * vc});
                    }
                    for (const auto& [uv, pc] : post) {
                        SVec mu = alg.multiply(SVec{{t.m, Q(1)}}, SVec{{uv.first, Q(1)}});
                        for (const auto& [p, mc] : mu) acc[{p, uv.second}] += sign * c * tc * fc * pc * mc;
                    }
                }
            }
        }
        for (auto it = acc.begin(); it != acc.end();) {
            if (it->second == 0)
                it = acc.erase(it);
            else
                ++it;
        }
        return acc;
    };

    SVec Tz = ops->T(d, z_weight).apply(z);
    rep.square_commutes = true;
    for (const Weight& s : cwN->internal_weights()) {
        int dim = cwN->dim(d, s);
        for (int k = 0; k < dim; ++k) {
            SVec f{{k, Q(1)}};
            // LHS: (sigma^-1 (x) sigma^-1)(z cap f)
            auto plain = cap_collapse(z, f, s, false);
            std::map<std::pair<int, int>, Q> lhs;
            for (const auto& [uv, c] : plain)
                for (const auto& [uu, uc] : sinv.image(uv.first))
                    for (const auto& [vv, vc] : sinv.image(uv.second)) {
                        lhs[{uu, vv}] += c * uc * vc;
                    }
            for (auto it = lhs.begin(); it != lhs.end();) {
                if (it->second == 0)
                    it = lhs.erase(it);
                else
                    ++it;
            }
            // RHS: T_d(z) cap (sigma^-1 (x) sigma^-1) o f o sigma^{(x)d}
            auto rhs = cap_collapse(Tz, f, s, true);
            if (lhs != rhs) {
                rep.square_commutes = false;
                rep.violations.push_back("square fails for cochain unit " + std::to_string(k) +
                                         " at internal weight " + wstr(s));
            }
        }
    }

    if (rep.is_cycle) {
        HomologyPresentation h = cw.homology(d, z_weight);
        rep.homology_invariant = h.coordinates_of(Tz) == h.coordinates_of(z);
        if (!rep.homology_invariant) rep.violations.push_back("[T_d(z)] != [z] on homology");
    }
    rep.pass = rep.square_commutes && (!rep.is_cycle || rep.homology_invariant);
    return rep;
}

LocalisationReport localisation_mult_check(AlgebraPtr A, const Automorphism& sigma, int x_min,
                                           int x_max) {
    LocalisationReport rep;
    SmashSpec bspec{A, sigma, SmashSpec::Mode::integer, 0, x_min, x_max, 0};
    SmashAlgebra B = smash_build(bspec);
    const GradedAlgebra& Balg = *B.S;

    // the positive part A x| N inside B
    std::vector<int> subalgebra;
    for (int i = 0; i < Balg.dim(); ++i)
        if (B.factors[static_cast<std::size_t>(i)].second >= 0) subalgebra.push_back(i);

    // pair space of B (x) B grouped by combined weight
    std::map<Weight, std::vector<std::pair<int, int>>> pairs;
    for (int b = 0; b < Balg.dim(); ++b)
        for (int b2 = 0; b2 < Balg.dim(); ++b2)
            pairs[wadd(Balg.wt(b), Balg.wt(b2))].push_back({b, b2});

    // relation completeness per weight
    std::map<Weight, bool> incomplete;
    std::map<Weight, std::vector<SVec>> gens;
    std::map<Weight, std::map<std::pair<int, int>, int>> pair_pos;
    for (const auto& [w, ps] : pairs) {
        auto& pos = pair_pos[w];
        for (int k = 0; k < static_cast<int>(ps.size()); ++k) pos[ps[static_cast<std::size_t>(k)]] = k;
    }
    for (int b = 0; b < Balg.dim(); ++b)
        for (int s : subalgebra)
            for (int b2 = 0; b2 < Balg.dim(); ++b2) {
                Weight w = wadd(wadd(Balg.wt(b), Balg.wt(s)), Balg.wt(b2));
                if (!pairs.count(w)) {
                    // relation target outside any pair bidegree (cannot happen
                    // unless the window is empty); treat as inconclusive
                    incomplete[w] = true;
                    continue;
                }
                if (!Balg.product_defined(b, s) || !Balg.product_defined(s, b2)) {
                    incomplete[w] = true;
                    continue;
                }
                SVec g;
                const auto& pos = pair_pos.at(w);
                for (const auto& [p, c] : Balg.product(b, s)) svec_axpy(g, c, SVec{{pos.at({p, b2}), Q(1)}});
                for (const auto& [p, c] : Balg.product(s, b2)) svec_axpy(g, -c, SVec{{pos.at({b, p}), Q(1)}});
                if (!g.empty()) gens[w].push_back(std::move(g));
            }

    for (const auto& [w, ps] : pairs) {
        LocalisationReport::Entry e;
        e.w = w;
        e.dim_target = static_cast<int>(Balg.at_weight(w).size());
        bool mult_ok = Balg.window.contains(w);
        if (incomplete.count(w) || !mult_ok) {
            e.status = LocalisationReport::Entry::Status::inconclusive;
            e.dim_quotient = -1;
            ++rep.inconclusive;
            rep.entries.push_back(e);
            continue;
        }
        std::vector<SVec> g;
        auto git = gens.find(w);
        if (git != gens.end()) g = git->second;
        Quotient q(g, static_cast<int>(ps.size()));
        e.dim_quotient = q.dim();
        // multiplication on quotient representatives
        const auto& telts = Balg.at_weight(w);
        std::map<int, int> tpos;
        for (int k = 0; k < static_cast<int>(telts.size()); ++k) tpos[telts[static_cast<std::size_t>(k)]] = k;
        MatrixQ mu(e.dim_target, q.dim());
        for (int k = 0; k < q.dim(); ++k) {
            SVec rep_vec = q.lift(SVec{{k, Q(1)}});
            for (const auto& [pi, c] : rep_vec) {
                auto [b, b2] = ps[static_cast<std::size_t>(pi)];
                for (const auto& [p, d] : Balg.product(b, b2)) {
                    Q cur = mu.at(tpos.at(p), k);
                    mu.set(tpos.at(p), k, cur + c * d);
                }
            }
        }
        bool bij = e.dim_quotient == e.dim_target && eliminate(mu).rank == e.dim_target;
        e.status = bij ? LocalisationReport::Entry::Status::bijective
                       : LocalisationReport::Entry::Status::mismatch;
        if (!bij) rep.pass = false;
        rep.entries.push_back(e);
    }
    return rep;
}

} // namespace thh
