#include "twisthom/algebra.hpp"

#include <random>
#include <sstream>

#include "twisthom/errors.hpp"

namespace thh {

std::string ValidationReport::str() const {
    if (passed()) return "valid\n";
    std::ostringstream os;
    for (const auto& i : issues) os << "violation: " << i.rule << " at " << i.witness << "\n";
    return os.str();
}

int GradedAlgebra::add_basis(const std::string& id, const Weight& wt) {
    if (idx_.count(id)) throw ValidationError("duplicate basis id '" + id + "'");
    if (static_cast<int>(wt.size()) != window.rank())
        throw ValidationError("basis '" + id + "' has weight rank " + std::to_string(wt.size()) +
                              ", window rank is " + std::to_string(window.rank()));
    basis_.push_back({id, wt});
    int i = dim() - 1;
    idx_[id] = i;
    return i;
}

void GradedAlgebra::set_product(int i, int j, const SVec& v) {
    if (!product_defined(i, j))
        throw OutOfWindow("product (" + elt(i).id + ", " + elt(j).id + ") lies outside window " +
                          window.str());
    if (v.empty())
        prod_.erase({i, j});
    else
        prod_[{i, j}] = v;
}

void GradedAlgebra::finalize() {
    by_weight_.clear();
    for (int i = 0; i < dim(); ++i) by_weight_[wt(i)].push_back(i);
}

int GradedAlgebra::index_of(const std::string& id) const {
    auto it = idx_.find(id);
    return it == idx_.end() ? -1 : it->second;
}

const SVec& GradedAlgebra::product(int i, int j) const {
    static const SVec kZero;
    if (!product_defined(i, j))
        throw OutOfWindow("product (" + elt(i).id + ", " + elt(j).id + ") undefined: weight " +
                          wstr(wadd(wt(i), wt(j))) + " outside window " + window.str());
    auto it = prod_.find({i, j});
    return it == prod_.end() ? kZero : it->second;
}

SVec GradedAlgebra::multiply(const SVec& u, const SVec& v) const {
    SVec r;
    for (const auto& [i, a] : u)
        for (const auto& [j, b] : v) svec_axpy(r, a * b, product(i, j));
    return r;
}

const std::vector<int>& GradedAlgebra::at_weight(const Weight& w) const {
    static const std::vector<int> kEmpty;
    auto it = by_weight_.find(w);
    return it == by_weight_.end() ? kEmpty : it->second;
}

std::vector<Weight> GradedAlgebra::weights_present() const {
    std::vector<Weight> ws;
    for (const auto& [w, v] : by_weight_) ws.push_back(w);
    return ws;
}

bool GradedAlgebra::connected() const {
    const auto& zero = at_weight(wzero(grading_rank()));
    if (zero.size() != 1) return false;
    auto it = unit_.find(zero[0]);
    return unit_.size() == 1 && it != unit_.end();
}

bool GradedAlgebra::table_total() const {
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
            if (!product_defined(i, j)) return false;
    return true;
}

GradedAlgebra GradedAlgebra::opposite() const {
    GradedAlgebra op;
    op.name = name + "^op";
    op.window = window;
    for (const auto& b : basis_) op.add_basis(b.id, b.wt);
    op.set_unit(unit_);
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
            if (product_defined(i, j)) op.set_product(j, i, product(i, j));
    op.finalize();
    return op;
}

std::string GradedAlgebra::describe_elt(const SVec& v) const {
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

Automorphism Automorphism::identity(const GradedAlgebra& A) {
    std::vector<SVec> img(static_cast<std::size_t>(A.dim()));
    for (int i = 0; i < A.dim(); ++i) img[static_cast<std::size_t>(i)] = SVec{{i, Q(1)}};
    return Automorphism("id", std::move(img));
}

SVec Automorphism::apply(const SVec& v) const {
    SVec r;
    for (const auto& [i, c] : v) svec_axpy(r, c, img_[static_cast<std::size_t>(i)]);
    return r;
}

MatrixQ Automorphism::block(const GradedAlgebra& A, const Weight& w) const {
    const auto& elts = A.at_weight(w);
    std::map<int, int> pos;
    for (int k = 0; k < static_cast<int>(elts.size()); ++k) pos[elts[static_cast<std::size_t>(k)]] = k;
    MatrixQ m(static_cast<int>(elts.size()), static_cast<int>(elts.size()));
    for (int k = 0; k < static_cast<int>(elts.size()); ++k)
        for (const auto& [i, c] : img_[static_cast<std::size_t>(elts[static_cast<std::size_t>(k)])]) {
            auto it = pos.find(i);
            if (it == pos.end()) throw ValidationError("automorphism " + name + " does not preserve weight " + wstr(w));
            m.set(it->second, k, c);
        }
    return m;
}

Automorphism Automorphism::compose_after(const GradedAlgebra& A, const Automorphism& first,
                                         const std::string& nm) const {
    std::vector<SVec> img(static_cast<std::size_t>(A.dim()));
    for (int i = 0; i < A.dim(); ++i) img[static_cast<std::size_t>(i)] = apply(first.image(i));
    return Automorphism(nm, std::move(img));
}

Automorphism Automorphism::inverse(const GradedAlgebra& A) const {
    std::vector<SVec> img(static_cast<std::size_t>(A.dim()));
    for (const Weight& w : A.weights_present()) {
        const auto& elts = A.at_weight(w);
        MatrixQ blk = block(A, w);
        for (int k = 0; k < static_cast<int>(elts.size()); ++k) {
            auto x = solve(blk, SVec{{k, Q(1)}});
            if (!x) throw ValidationError("automorphism " + name + " is singular on weight " + wstr(w));
            SVec im;
            for (const auto& [p, c] : *x) im.emplace(elts[static_cast<std::size_t>(p)], c);
            img[static_cast<std::size_t>(elts[static_cast<std::size_t>(k)])] = std::move(im);
        }
    }
    return Automorphism(name + "^-1", std::move(img));
}

Automorphism Automorphism::power(const GradedAlgebra& A, int k) const {
    Automorphism base = k >= 0 ? *this : inverse(A);
    int reps = k >= 0 ? k : -k;
    Automorphism acc = identity(A);
    for (int i = 0; i < reps; ++i) acc = base.compose_after(A, acc, name + "^" + std::to_string(k));
    acc.name = name + "^" + std::to_string(k);
    return acc;
}

bool Automorphism::is_identity(const GradedAlgebra& A) const {
    for (int i = 0; i < A.dim(); ++i)
        if (image(i) != SVec{{i, Q(1)}}) return false;
    return true;
}

namespace {

bool weights_homogeneous(const GradedAlgebra& A, const SVec& v, const Weight& w) {
    for (const auto& [i, c] : v)
        if (A.wt(i) != w) return false;
    return true;
}

} // namespace

ValidationReport validate(const GradedAlgebra& A, const std::vector<Automorphism>& autos) {
    ValidationReport rep;
    auto fail = [&rep](const std::string& rule, const std::string& witness) {
        rep.issues.push_back({rule, witness});
    };

    if (!weights_homogeneous(A, A.unit(), wzero(A.grading_rank()))) fail("unit has weight zero", "unit");
    if (A.unit().empty()) fail("unit is nonzero", "unit");

    for (int i = 0; i < A.dim(); ++i) {
        if (!A.window.contains(A.wt(i)))
            fail("basis weight inside window", A.elt(i).id);
        // unit acts as identity
        try {
            if (A.multiply(A.unit(), SVec{{i, Q(1)}}) != SVec{{i, Q(1)}})
                fail("1*a = a", A.elt(i).id);
            if (A.multiply(SVec{{i, Q(1)}}, A.unit()) != SVec{{i, Q(1)}})
                fail("a*1 = a", A.elt(i).id);
        } catch (const OutOfWindow&) {
            fail("unit products representable", A.elt(i).id);
        }
    }

    // grading of the table
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j) {
            if (!A.product_defined(i, j)) continue;
            if (!weights_homogeneous(A, A.product(i, j), wadd(A.wt(i), A.wt(j))))
                fail("product respects grading", A.elt(i).id + "*" + A.elt(j).id);
        }

    // associativity on every triple whose total weight is in the window
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j)
            for (int k = 0; k < A.dim(); ++k) {
                if (!A.window.contains(wadd(wadd(A.wt(i), A.wt(j)), A.wt(k)))) continue;
                if (!A.product_defined(i, j) || !A.product_defined(j, k)) continue;
                try {
                    SVec lhs = A.multiply(A.product(i, j), SVec{{k, Q(1)}});
                    SVec rhs = A.multiply(SVec{{i, Q(1)}}, A.product(j, k));
                    if (lhs != rhs)
                        fail("associativity", "(" + A.elt(i).id + "," + A.elt(j).id + "," + A.elt(k).id + ")");
                } catch (const OutOfWindow&) {
                    // a representable triple with unrepresentable association route
                    fail("association routes representable",
                         "(" + A.elt(i).id + "," + A.elt(j).id + "," + A.elt(k).id + ")");
                }
            }

    for (const Automorphism& s : autos) {
        if (s.apply(A.unit()) != A.unit()) fail("sigma(1) = 1", s.name);
        for (int i = 0; i < A.dim(); ++i)
            if (!weights_homogeneous(A, s.image(i), A.wt(i)))
                fail("sigma preserves grading", s.name + "(" + A.elt(i).id + ")");
        for (int i = 0; i < A.dim(); ++i)
            for (int j = 0; j < A.dim(); ++j) {
                if (!A.product_defined(i, j)) continue;
                try {
                    if (s.apply(A.product(i, j)) != A.multiply(s.image(i), s.image(j)))
                        fail("sigma multiplicative", s.name + " on (" + A.elt(i).id + "," + A.elt(j).id + ")");
                } catch (const OutOfWindow&) {
                    fail("sigma images representable", s.name + " on (" + A.elt(i).id + "," + A.elt(j).id + ")");
                }
            }
        for (const Weight& w : A.weights_present()) {
            try {
                MatrixQ blk = s.block(A, w);
                if (eliminate(blk).rank != blk.cols())
                    fail("sigma block invertible", s.name + " at weight " + wstr(w));
            } catch (const ValidationError&) {
                // grading failure already reported above
            }
        }
    }
    return rep;
}

namespace {

std::string pow_id(const std::string& base, int e) {
    if (e == 0) return "1";
    if (e == 1) return base;
    return base + std::to_string(e);
}

Q param_rat(const std::map<std::string, std::string>& params, const std::string& key,
            const std::string& dflt) {
    auto it = params.find(key);
    return rat_parse(it == params.end() ? dflt : it->second);
}

int param_int(const std::map<std::string, std::string>& params, const std::string& key, int dflt) {
    auto it = params.find(key);
    if (it == params.end()) return dflt;
    try {
        return std::stoi(it->second);
    } catch (...) {
        throw BadParams("parameter '" + key + "' is not an integer: " + it->second);
    }
}

Q qpow(const Q& q, int e) {
    Q r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
}

BuiltinAlgebra make_ground(const Window& win) {
    auto A = std::make_shared<GradedAlgebra>();
    A->name = "ground";
    A->window = win;
    int one = A->add_basis("1", wzero(win.rank()));
    A->set_unit(SVec{{one, Q(1)}});
    A->set_product(one, one, SVec{{one, Q(1)}});
    A->finalize();
    BuiltinAlgebra b{A, {}};
    b.automorphisms["id"] = Automorphism::identity(*A);
    return b;
}

BuiltinAlgebra make_poly1(const Q& q, const Window& win) {
    if (win.rank() != 1 || win.bounds[0].first != 0)
        throw BadParams("poly1 needs a rank-1 window starting at 0");
    int cap = win.bounds[0].second;
    auto A = std::make_shared<GradedAlgebra>();
    A->name = "poly1";
    A->window = win;
    for (int e = 0; e <= cap; ++e) A->add_basis(pow_id("y", e), Weight{e});
    A->set_unit(SVec{{0, Q(1)}});
    for (int i = 0; i <= cap; ++i)
        for (int j = 0; i + j <= cap; ++j) A->set_product(i, j, SVec{{i + j, Q(1)}});
    A->finalize();

    std::vector<SVec> img;
    for (int e = 0; e <= cap; ++e) img.push_back(SVec{{e, qpow(q, e)}});
    BuiltinAlgebra b{A, {}};
    b.automorphisms["id"] = Automorphism::identity(*A);
    b.automorphisms["sigma_q"] = Automorphism("sigma_q", std::move(img));
    return b;
}

BuiltinAlgebra make_trunc_poly(int N, const Window& win) {
    if (N < 1) throw BadParams("trunc_poly needs N >= 1");
    if (win.rank() != 1 || win.bounds[0].first != 0)
        throw BadParams("trunc_poly needs a rank-1 window starting at 0");
    // The table is total once the window reaches 2(N-1): all products of
    // basis elements (possibly zero) are then representable.
    int cap = std::max(win.bounds[0].second, 2 * (N - 1));
    auto A = std::make_shared<GradedAlgebra>();
    A->name = "trunc_poly";
    A->window = Window{{{0, cap}}};
    for (int e = 0; e < N; ++e) A->add_basis(pow_id("y", e), Weight{e});
    A->set_unit(SVec{{0, Q(1)}});
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i + j < N)
                A->set_product(i, j, SVec{{i + j, Q(1)}});
            else
                A->set_product(i, j, SVec{});
        }
    A->finalize();

    std::vector<SVec> img;
    for (int e = 0; e < N; ++e) img.push_back(SVec{{e, Q(e % 2 == 0 ? 1 : -1)}});
    BuiltinAlgebra b{A, {}};
    b.automorphisms["id"] = Automorphism::identity(*A);
    b.automorphisms["sigma_neg"] = Automorphism("sigma_neg", std::move(img));
    return b;
}

BuiltinAlgebra make_qplane(const Q& q, const Window& win) {
    if (win.rank() != 2 || win.bounds[0].first != 0 || win.bounds[1].first != 0)
        throw BadParams("qplane needs a rank-2 window starting at [0,0]");
    int wy = win.bounds[0].second, wx = win.bounds[1].second;
    // Generated as the smash product of poly1 with sigma_q: basis y^a x^b,
    // (y^a x^b)(y^c x^d) = q^{bc} y^{a+c} x^{b+d}.
    auto A = std::make_shared<GradedAlgebra>();
    A->name = "qplane";
    A->window = win;
    std::map<std::pair<int, int>, int> at;
    for (int a = 0; a <= wy; ++a)
        for (int b = 0; b <= wx; ++b) {
            std::string id = a == 0 && b == 0 ? "1" : pow_id("y", a) + (b ? "*" + pow_id("x", b) : "");
            if (a == 0 && b > 0) id = pow_id("x", b);
            at[{a, b}] = A->add_basis(id, Weight{a, b});
        }
    A->set_unit(SVec{{at[{0, 0}], Q(1)}});
    for (int a = 0; a <= wy; ++a)
        for (int b = 0; b <= wx; ++b)
            for (int c = 0; a + c <= wy; ++c)
                for (int d = 0; b + d <= wx; ++d)
                    A->set_product(at[{a, b}], at[{c, d}], SVec{{at[{a + c, b + d}], qpow(q, b * c)}});
    A->finalize();
    BuiltinAlgebra out{A, {}};
    out.automorphisms["id"] = Automorphism::identity(*A);
    return out;
}

BuiltinAlgebra make_cyclic_group(int m, const Window& win) {
    if (m < 1) throw BadParams("cyclic_group needs m >= 1");
    if (win.rank() != 1) throw BadParams("cyclic_group needs a rank-1 window");
    auto A = std::make_shared<GradedAlgebra>();
    A->name = "cyclic_group";
    A->window = win;
    for (int e = 0; e < m; ++e) A->add_basis(pow_id("g", e), Weight{0});
    A->set_unit(SVec{{0, Q(1)}});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A->set_product(i, j, SVec{{(i + j) % m, Q(1)}});
    A->finalize();

    std::vector<SVec> img;
    for (int e = 0; e < m; ++e) img.push_back(SVec{{(m - e) % m, Q(1)}});
    BuiltinAlgebra b{A, {}};
    b.automorphisms["id"] = Automorphism::identity(*A);
    b.automorphisms["sigma_inv"] = Automorphism("sigma_inv", std::move(img));
    return b;
}

} // namespace

BuiltinAlgebra builtin_family(const std::string& spec, const std::map<std::string, std::string>& params,
                              const Window& window) {
    if (spec == "ground") return make_ground(window);
    if (spec == "poly1") return make_poly1(param_rat(params, "q", "1"), window);
    if (spec == "trunc_poly") return make_trunc_poly(param_int(params, "N", 2), window);
    if (spec == "qplane") return make_qplane(param_rat(params, "q", "1"), window);
    if (spec == "cyclic_group") return make_cyclic_group(param_int(params, "m", 2), window);
    throw BadParams("unknown builtin family '" + spec + "'");
}

InnerSearch is_inner(const GradedAlgebra& A, const Automorphism& sigma) {
    if (!A.table_total())
        throw NotFiniteDimensional("is_inner requires a total product table (window exhausted)");
    int n = A.dim();
    // sigma(e_i) u - u e_i = 0 for all i, linear in the coordinates of u.
    MatrixQ M(n * n, n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            SVec lhs = A.multiply(sigma.image(i), SVec{{k, Q(1)}});
            svec_axpy(lhs, -1, A.multiply(SVec{{k, Q(1)}}, SVec{{i, Q(1)}}));
            for (const auto& [t, c] : lhs) M.set(i * n + t, k, c);
        }
    }
    Elim e = eliminate(M);
    InnerSearch out;
    out.solution_dim = static_cast<int>(e.kernel_basis.size());
    if (e.kernel_basis.empty()) {
        out.outcome = InnerSearch::Outcome::none;
        return out;
    }
    auto invertible = [&](const SVec& u) {
        MatrixQ L(n, n);
        for (int k = 0; k < n; ++k) {
            SVec uv = A.multiply(u, SVec{{k, Q(1)}});
            for (const auto& [t, c] : uv) L.set(t, k, c);
        }
        return eliminate(L).rank == n;
    };
    for (const SVec& u : e.kernel_basis)
        if (invertible(u)) {
            out.outcome = InnerSearch::Outcome::found;
            out.u = u;
            return out;
        }
    // bounded deterministic search through small rational combinations
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int attempt = 0; attempt < 200; ++attempt) {
        SVec u;
        for (const SVec& k : e.kernel_basis) svec_axpy(u, coef(rng), k);
        if (!u.empty() && invertible(u)) {
            out.outcome = InnerSearch::Outcome::found;
            out.u = u;
            return out;
        }
    }
    out.outcome = InnerSearch::Outcome::inconclusive;
    return out;
}

} // namespace thh
