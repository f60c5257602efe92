// twisthom: exact-arithmetic workbench for twisted Hochschild and cyclic
// homology of structure-constant algebras over Q.
//
// Exit codes: 0 pass/success, 1 failed mathematical check, 2 invalid input.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "twisthom/algfile.hpp"
#include "twisthom/cyclic.hpp"
#include "twisthom/products.hpp"
#include "twisthom/smash.hpp"

using namespace thh;
using ojson = nlohmann::ordered_json;

namespace {

struct Report {
    std::ostringstream text;
    ojson js;

    void line(const std::string& s) { text << s << "\n"; }
    void table_entry(const std::string& table, const std::string& key, const std::string& value) {
        text << "  (" << key << ") " << value << "\n";
        js[table][key] = value;
    }
    void finish(const std::string& json_path, bool pass) {
        js["pass"] = pass;
        text << "result: " << (pass ? "pass" : "FAIL") << "\n";
        std::cout << text.str();
        if (!json_path.empty()) {
            std::ofstream out(json_path);
            out << js.dump(2) << "\n";
        }
    }
};

std::string echo_command(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) s += " ";
        s += argv[i];
    }
    return s;
}

BimodulePtr coefficients_from_flag(const AlgebraFile& f, const std::string& coeff) {
    const GradedAlgebra& A = *f.algebra;
    Automorphism id = Automorphism::identity(A);
    if (coeff == "reg") return twisted_bimodule(f.algebra, id, id);
    auto twist = [&](const std::string& name, bool invert) {
        const Automorphism& s = f.automorphism(name);
        return twisted_bimodule(f.algebra, invert ? s.inverse(A) : s, id);
    };
    if (coeff.rfind("twist:", 0) == 0) return twist(coeff.substr(6), false);
    if (coeff.rfind("twistinv:", 0) == 0) return twist(coeff.substr(9), true);
    throw BadParams("--coeff must be reg, twist:NAME or twistinv:NAME");
}

// cycle expression grammar: term ('+' term)*, term := rat '*' '(' id (';' id)* ')'
SVec parse_cycle(const std::string& expr, const ChainWindow& cw, int degree, const Weight& w) {
    SVec z;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < expr.size() && expr[pos] == ' ') ++pos;
    };
    while (pos < expr.size()) {
        skip_ws();
        std::size_t star = expr.find('*', pos);
        if (star == std::string::npos) throw ParseError("cycle term needs 'coeff*(ids)'");
        Q c = rat_parse(expr.substr(pos, star - pos));
        std::size_t open = expr.find('(', star), close = expr.find(')', star);
        if (open == std::string::npos || close == std::string::npos)
            throw ParseError("cycle term needs parentheses");
        std::string ids = expr.substr(open + 1, close - open - 1);
        ChainTuple t;
        std::size_t p = 0;
        bool first = true;
        while (p <= ids.size()) {
            std::size_t semi = ids.find(';', p);
            std::string id = ids.substr(p, semi == std::string::npos ? std::string::npos : semi - p);
            if (first) {
                int m = cw.coefficients().index_of(id);
                if (m < 0) throw ParseError("cycle: unknown coefficient id '" + id + "'");
                t.m = m;
                first = false;
            } else {
                int a = cw.algebra().index_of(id);
                if (a < 0) throw ParseError("cycle: unknown slot id '" + id + "'");
                t.slots.push_back(a);
            }
            if (semi == std::string::npos) break;
            p = semi + 1;
        }
        if (static_cast<int>(t.slots.size()) != degree)
            throw ParseError("cycle term has " + std::to_string(t.slots.size()) + " slots; degree is " +
                             std::to_string(degree));
        int idx = cw.index_of(degree, t);
        if (idx < 0) throw ParseError("cycle term is not a weight-" + wstr(w) + " basis tensor");
        svec_axpy(z, c, SVec{{idx, Q(1)}});
        pos = close + 1;
        skip_ws();
        if (pos < expr.size()) {
            if (expr[pos] != '+') throw ParseError("cycle terms must be joined by '+'");
            ++pos;
        }
    }
    return z;
}

int run(int argc, char** argv) {
    CLI::App app{"exact twisted Hochschild / cyclic homology workbench"};
    app.require_subcommand(1);

    std::string file, coeff = "reg", sigma_name = "id", relations = "all", emit_path, json_path;
    std::string cycle_expr = "auto";
    int nmax = 3, wmax = 3, smin = 0, smax = 0, xcap = 3, xmin = -2, xmax = 2, dflag = 1, zweight = 1;
    int cyclic_order = 0;
    bool normalized = false, smin_set = false, smax_set = false;

    auto add_common = [&](CLI::App* cmd, bool needs_sigma) {
        cmd->add_option("file", file, "algebra definition file")->required();
        cmd->add_option("--json", json_path, "write a machine-readable mirror of the report");
        if (needs_sigma) cmd->add_option("--sigma", sigma_name, "automorphism name (default id)");
        return cmd;
    };
    auto add_window = [&](CLI::App* cmd) {
        cmd->add_option("--nmax", nmax, "homological degree bound (default 3)");
        cmd->add_option("--wmax", wmax, "total weight bound (default 3)");
    };
    auto add_srange = [&](CLI::App* cmd) {
        cmd->add_option("--smin", smin, "internal weight lower bound (default -wmax)")
            ->each([&](const std::string&) { smin_set = true; });
        cmd->add_option("--smax", smax, "internal weight upper bound (default wmax)")
            ->each([&](const std::string&) { smax_set = true; });
    };

    CLI::App* c_check = add_common(app.add_subcommand("check", "parse and validate an algebra file"), false);
    CLI::App* c_hom = add_common(app.add_subcommand("homology", "Hochschild homology betti table"), false);
    c_hom->add_option("--coeff", coeff, "reg | twist:NAME | twistinv:NAME");
    c_hom->add_flag("--normalized", normalized, "use the normalized complex");
    add_window(c_hom);
    CLI::App* c_coh = add_common(app.add_subcommand("cohomology", "Hochschild cohomology table"), false);
    c_coh->add_option("--coeff", coeff, "reg | twist:NAME | twistinv:NAME");
    add_window(c_coh);
    add_srange(c_coh);
    CLI::App* c_para =
        add_common(app.add_subcommand("paracyclic", "verify the paracyclic operator identities"), true);
    c_para->add_option("--relations", relations, "all|simplicial|paracyclic|homotopy|subsidiary");
    add_window(c_para);
    CLI::App* c_tinv =
        add_common(app.add_subcommand("tinv", "induced action of T on twisted homology"), true);
    add_window(c_tinv);
    CLI::App* c_quasi =
        add_common(app.add_subcommand("quasicyclic", "ker/im splitting of id - T"), true);
    add_window(c_quasi);
    CLI::App* c_cyc =
        add_common(app.add_subcommand("cyclic", "associated cyclic module and HC table"), true);
    add_window(c_cyc);
    CLI::App* c_smash = add_common(app.add_subcommand("smash", "build a smash product algebra"), true);
    c_smash->add_option("--xcap", xcap, "nat mode: x-degree cap (default 3)");
    c_smash->add_option("--xmin", xmin, "integer mode lower bound");
    c_smash->add_option("--xmax", xmax, "integer mode upper bound");
    c_smash->add_option("--cyclic", cyclic_order, "cyclic mode: order m (needs sigma^m = id)");
    c_smash->add_option("--emit", emit_path, "write the result in the algebra file format");
    bool int_mode = false;
    c_smash->add_flag("--int", int_mode, "build the windowed integer-mode smash product");
    CLI::App* c_untw =
        add_common(app.add_subcommand("untwist", "machine-check the untwisting bijection"), true);
    c_untw->add_option("--xcap", xcap, "x-degree cap (default 3)");
    CLI::App* c_diag =
        add_common(app.add_subcommand("diagram", "chain-level commutative square of the main proof"), true);
    c_diag->add_option("--d", dflag, "cohomological degree d (default 1)");
    c_diag->add_option("--zweight", zweight, "weight of the candidate cycle (default 1)");
    c_diag->add_option("--cycle", cycle_expr, "cycle expression or 'auto' (default)");
    c_diag->add_option("--wmax", wmax, "total weight bound (default 3)");
    add_srange(c_diag);
    CLI::App* c_dual = add_common(app.add_subcommand("duality", "windowed twisted duality table"), true);
    c_dual->add_option("--d", dflag, "Van den Bergh dimension candidate (default 1)");
    c_dual->add_option("--wmax", wmax, "total weight bound (default 3)");
    add_srange(c_dual);
    CLI::App* c_dzw =
        add_common(app.add_subcommand("dualizing", "dimensions of H^i(A, A(x)A) on the window"), false);
    add_window(c_dzw);
    add_srange(c_dzw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // malformed command lines are invalid input
    }
    if (!smin_set) smin = -wmax;
    if (!smax_set) smax = wmax;

    Report rep;
    rep.line("command: " + echo_command(argc, argv));
    rep.js["command"] = echo_command(argc, argv);

    AlgebraFile f = parse_algebra_file(file);
    const GradedAlgebra& A = *f.algebra;
    rep.line("algebra: " + A.name + " (dim " + std::to_string(A.dim()) + ", window " + A.window.str() +
             ", source " + f.source + ")");
    rep.js["algebra"] = A.name;

    if (app.got_subcommand(c_check)) {
        std::vector<Automorphism> autos;
        std::string names;
        for (const auto& [n, a] : f.automorphisms) {
            autos.push_back(a);
            names += (names.empty() ? "" : ", ") + n;
        }
        rep.line("automorphisms: " + names);
        rep.line("validation: " + validate(A, autos).str());
        rep.finish(json_path, true);
        return 0;
    }

    if (app.got_subcommand(c_hom)) {
        BimodulePtr M = coefficients_from_flag(f, coeff);
        ChainWindowPtr cw = build_chain_window(f.algebra, M, nmax, Window::nat1(wmax), normalized);
        rep.line("coefficients: " + coeff + (normalized ? ", normalized" : ""));
        rep.line("betti table (degree, weight) -> dim");
        BettiTable t = cw->betti_table();
        for (const auto& [key, e] : t.entries)
            rep.table_entry("betti", std::to_string(key.first) + ", " + wstr(key.second),
                            std::to_string(e.betti));
        rep.finish(json_path, true);
        return 0;
    }

    if (app.got_subcommand(c_coh)) {
        BimodulePtr N = coefficients_from_flag(f, coeff);
        CochainWindowPtr cw =
            build_cochain_window(f.algebra, N, nmax, Window::nat1(wmax), Window{{{smin, smax}}});
        rep.line("coefficients: " + coeff);
        rep.line("cohomology table (degree, internal weight) -> dim");
        BettiTable t = cw->betti_table();
        for (const auto& [key, e] : t.entries)
            rep.table_entry("cohomology", std::to_string(key.first) + ", " + wstr(key.second),
                            std::to_string(e.betti));
        rep.finish(json_path, true);
        return 0;
    }

    if (app.got_subcommand(c_para)) {
        RelationKind kind;
        if (relations == "all") kind = RelationKind::all;
        else if (relations == "simplicial") kind = RelationKind::simplicial;
        else if (relations == "paracyclic") kind = RelationKind::paracyclic;
        else if (relations == "homotopy") kind = RelationKind::homotopy;
        else if (relations == "subsidiary") kind = RelationKind::subsidiary;
        else throw BadParams("--relations must be all|simplicial|paracyclic|homotopy|subsidiary");
        // operators two degrees up feed the homotopy identities at nmax
        ParacyclicOpsPtr ops =
            build_paracyclic(f.algebra, f.automorphism(sigma_name), nmax + 2, Window::nat1(wmax));
        RelationReport rr = check_relations(*ops, kind);
        rep.line("sigma: " + sigma_name + ", relations: " + relations + ", operator degrees <= " +
                 std::to_string(nmax + 2));
        std::map<std::string, std::pair<int, int>> by_name; // relation -> (checked, failed)
        for (const auto& r : rr.results) {
            auto& e = by_name[r.relation];
            ++e.first;
            if (!r.pass) ++e.second;
        }
        for (const auto& [name, cf] : by_name)
            rep.table_entry("relations", name,
                            std::to_string(cf.first) + " checked, " + std::to_string(cf.second) + " failed");
        for (const auto& r : rr.results)
            if (!r.pass)
                rep.line("  FAIL " + r.relation + " at (" + std::to_string(r.n) + ", " + wstr(r.w) + ")");
        rep.finish(json_path, rr.all_pass());
        return rr.all_pass() ? 0 : 1;
    }

    if (app.got_subcommand(c_tinv)) {
        ParacyclicOpsPtr ops =
            build_paracyclic(f.algebra, f.automorphism(sigma_name), nmax + 1, Window::nat1(wmax));
        rep.line("sigma: " + sigma_name);
        rep.line("induced T on H_n (degree, weight) -> identity?");
        bool all_id = true;
        for (int n = 0; n <= nmax; ++n)
            for (const Weight& w : ops->weights()) {
                MatrixQ m = T_on_homology(*ops, n, w);
                bool is_id = m.is_identity();
                all_id = all_id && is_id;
                rep.table_entry("tinv", std::to_string(n) + ", " + wstr(w),
                                std::string(is_id ? "identity" : "NOT identity") + " (betti " +
                                    std::to_string(m.cols()) + ")");
            }
        rep.finish(json_path, all_id);
        return all_id ? 0 : 1;
    }

    if (app.got_subcommand(c_quasi)) {
        ParacyclicOpsPtr ops =
            build_paracyclic(f.algebra, f.automorphism(sigma_name), nmax, Window::nat1(wmax));
        rep.line("sigma: " + sigma_name);
        rep.line("splitting of id - T (degree, weight) -> ker/im/total");
        bool all_split = true;
        for (int n = 0; n <= nmax; ++n)
            for (const Weight& w : ops->weights()) {
                QuasiCyclicResult r = quasicyclic_check(*ops, n, w);
                all_split = all_split && r.split;
                rep.table_entry("quasicyclic", std::to_string(n) + ", " + wstr(w),
                                std::string(r.split ? "split" : "NOT split") + " ker " +
                                    std::to_string(r.dim_ker) + " im " + std::to_string(r.dim_im) +
                                    " total " + std::to_string(r.dim_total));
            }
        rep.finish(json_path, all_split);
        return all_split ? 0 : 1;
    }

    if (app.got_subcommand(c_cyc)) {
        ParacyclicOpsPtr ops =
            build_paracyclic(f.algebra, f.automorphism(sigma_name), nmax + 1, Window::nat1(wmax));
        CyclicQuotientPtr cq = associated_cyclic(ops);
        HCTable t = bicomplex_total_homology(*cq, nmax);
        rep.line("sigma: " + sigma_name);
        rep.line("cyclic homology HC_n (degree, weight) -> dim");
        for (const auto& [key, d] : t.hc)
            rep.table_entry("HC", std::to_string(key.first) + ", " + wstr(key.second), std::to_string(d));
        rep.line("column homology (degree, weight) -> dim");
        for (const auto& [key, d] : t.column)
            rep.table_entry("column", std::to_string(key.first) + ", " + wstr(key.second),
                            std::to_string(d));
        rep.finish(json_path, true);
        return 0;
    }

    if (app.got_subcommand(c_smash)) {
        SmashSpec spec;
        spec.base = f.algebra;
        spec.sigma = f.automorphism(sigma_name);
        if (cyclic_order > 0) {
            spec.mode = SmashSpec::Mode::cyclic;
            spec.order = cyclic_order;
        } else if (int_mode) {
            spec.mode = SmashSpec::Mode::integer;
            spec.x_min = xmin;
            spec.x_max = xmax;
        } else {
            spec.mode = SmashSpec::Mode::nat;
            spec.x_cap = xcap;
        }
        SmashAlgebra sm = smash_build(spec);
        ValidationReport vr = validate(*sm.S, {});
        rep.line("sigma: " + sigma_name);
        rep.line("smash algebra: " + sm.S->name + " (dim " + std::to_string(sm.S->dim()) + ", window " +
                 sm.S->window.str() + ")");
        rep.line("validation: " + vr.str());
        if (!emit_path.empty()) {
            std::ofstream out(emit_path);
            out << emit_algebra(*sm.S, {});
            rep.line("emitted: " + emit_path);
        }
        rep.finish(json_path, vr.passed());
        return vr.passed() ? 0 : 1;
    }

    if (app.got_subcommand(c_untw)) {
        CheckReport r = untwist_iso_check(f.algebra, f.automorphism(sigma_name), xcap);
        rep.line("sigma: " + sigma_name + ", xcap: " + std::to_string(xcap));
        for (const std::string& n : r.notes) rep.line(n);
        rep.line("phi-identities and per-bidegree bijectivity:");
        if (r.violations.empty())
            rep.line("  all intertwining identities hold; phi bijective on every bidegree");
        for (const std::string& v : r.violations) rep.line("  FAIL " + v);
        rep.finish(json_path, r.pass);
        return r.pass ? 0 : 1;
    }

    if (app.got_subcommand(c_diag)) {
        const Automorphism& sg = f.automorphism(sigma_name);
        Automorphism sinv = sg.inverse(A);
        ParacyclicOpsPtr ops = build_paracyclic(f.algebra, sinv, dflag + 1, Window::nat1(wmax));
        Weight zw{zweight};
        SVec z;
        if (cycle_expr == "auto") {
            HomologyPresentation h = ops->chain().homology(dflag, zw);
            if (h.betti == 0)
                throw BadParams("no homology class at (d, zweight); pass --cycle explicitly");
            z = h.reps[0];
        } else {
            z = parse_cycle(cycle_expr, ops->chain(), dflag, zw);
        }
        DiagramReport r = proof_diagram_check(f.algebra, sg, dflag, zw, z, wmax, smin, smax);
        rep.line("sigma: " + sigma_name + ", d: " + std::to_string(dflag) + ", zweight: " +
                 std::to_string(zweight));
        rep.line(std::string("square commutes: ") + (r.square_commutes ? "yes" : "no"));
        rep.line(std::string("z is a cycle: ") + (r.is_cycle ? "yes" : "no"));
        if (r.is_cycle)
            rep.line(std::string("[T_d(z)] = [z]: ") + (r.homology_invariant ? "yes" : "no"));
        for (const std::string& v : r.violations) rep.line("  FAIL " + v);
        rep.finish(json_path, r.pass);
        return r.pass ? 0 : 1;
    }

    if (app.got_subcommand(c_dual)) {
        DualityTable t = duality_table(f.algebra, f.automorphism(sigma_name), dflag, wmax, smin, smax);
        rep.line("sigma: " + sigma_name + ", d: " + std::to_string(dflag));
        rep.line("cohomology dims H^i(A, A) (degree, internal weight) -> dim");
        for (const auto& [key, d] : t.coh)
            rep.table_entry("cohomology", std::to_string(key.first) + ", " + wstr(key.second),
                            std::to_string(d));
        rep.line("twisted homology dims H_j(A, inv-twist) (degree, weight) -> dim");
        for (const auto& [key, d] : t.hom)
            rep.table_entry("homology", std::to_string(key.first) + ", " + wstr(key.second),
                            std::to_string(d));
        std::string shifts;
        for (int l : t.matching_shifts) shifts += (shifts.empty() ? "" : ", ") + std::to_string(l);
        rep.line("matching shifts: " + (shifts.empty() ? "(none)" : shifts));
        bool pass = !t.matching_shifts.empty();
        rep.finish(json_path, pass);
        return pass ? 0 : 1;
    }

    if (app.got_subcommand(c_dzw)) {
        DualityProbe p = dualizing_window(f.algebra, nmax + 1, wmax, smin, smax);
        rep.line("dims of H^i(A, A(x)A) (degree, internal weight) -> dim");
        for (const auto& [key, d] : p.dims)
            rep.table_entry("dualizing", std::to_string(key.first) + ", " + wstr(key.second),
                            std::to_string(d));
        rep.line("concentration degree: " +
                 (p.concentrated ? std::to_string(p.concentration_degree) : std::string("(none)")));
        rep.finish(json_path, true);
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const BadParams& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 2;
    }
}
