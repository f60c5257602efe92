#include "twisthom/algfile.hpp"

#include <fstream>
#include <set>
#include <nlohmann/json.hpp>

#include "twisthom/errors.hpp"

namespace thh {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

const Automorphism& AlgebraFile::automorphism(const std::string& name) const {
    auto it = automorphisms.find(name);
    if (it == automorphisms.end())
        throw BadParams("unknown automorphism '" + name + "'; file provides: " + [&] {
            std::string s;
            for (const auto& [n, a] : automorphisms) s += (s.empty() ? "" : ", ") + n;
            return s.empty() ? std::string("(none)") : s;
        }());
    return it->second;
}

namespace {

Window parse_window(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) throw ParseError("field '" + field + "' must be a nonempty array");
    Window w;
    for (const auto& comp : j) {
        if (!comp.is_array() || comp.size() != 2 || !comp[0].is_number_integer() ||
            !comp[1].is_number_integer())
            throw ParseError("field '" + field + "' components must be [lo, hi] integer pairs");
        int lo = comp[0].get<int>(), hi = comp[1].get<int>();
        if (lo > hi) throw ParseError("field '" + field + "': lo > hi");
        w.bounds.push_back({lo, hi});
    }
    return w;
}

SVec parse_coeff_map(const json& j, const GradedAlgebra& A, const std::string& field) {
    if (!j.is_object()) throw ParseError("field '" + field + "' must be an object of rational strings");
    SVec v;
    for (const auto& [id, val] : j.items()) {
        int idx = A.index_of(id);
        if (idx < 0) throw ParseError("field '" + field + "': unknown basis id '" + id + "'");
        if (!val.is_string()) throw ParseError("field '" + field + "': value for '" + id + "' must be a string");
        Q c = rat_parse(val.get<std::string>());
        if (c != 0) v[idx] = c;
    }
    return v;
}

AlgebraFile from_builtin(const json& j) {
    std::map<std::string, std::string> params;
    if (j.contains("params")) {
        if (!j.at("params").is_object()) throw ParseError("field 'params' must be an object");
        for (const auto& [k, v] : j.at("params").items()) {
            if (v.is_string())
                params[k] = v.get<std::string>();
            else if (v.is_number_integer())
                params[k] = std::to_string(v.get<long long>());
            else
                throw ParseError("field 'params." + k + "' must be a string or integer");
        }
    }
    if (!j.contains("window")) throw ParseError("missing field 'window'");
    BuiltinAlgebra b = builtin_family(j.at("builtin").get<std::string>(), params,
                                      parse_window(j.at("window"), "window"));
    AlgebraFile f;
    f.algebra = b.algebra;
    f.automorphisms = b.automorphisms;
    f.source = "builtin:" + j.at("builtin").get<std::string>();
    return f;
}

AlgebraFile from_explicit(const json& j) {
    for (const char* field : {"name", "grading_rank", "window", "basis", "unit", "products"})
        if (!j.contains(field)) throw ParseError(std::string("missing field '") + field + "'");

    auto A = std::make_shared<GradedAlgebra>();
    A->name = j.at("name").get<std::string>();
    A->window = parse_window(j.at("window"), "window");
    int rank = j.at("grading_rank").get<int>();
    if (rank != A->window.rank())
        throw ParseError("field 'grading_rank' disagrees with the window rank");

    if (!j.at("basis").is_array() || j.at("basis").empty())
        throw ParseError("field 'basis' must be a nonempty array");
    for (const auto& b : j.at("basis")) {
        if (!b.contains("id") || !b.contains("weight"))
            throw ParseError("basis entries need 'id' and 'weight'");
        Weight w;
        for (const auto& c : b.at("weight")) w.push_back(c.get<int>());
        if (static_cast<int>(w.size()) != rank)
            throw ParseError("basis entry '" + b.at("id").get<std::string>() + "': weight rank mismatch");
        A->add_basis(b.at("id").get<std::string>(), w);
    }
    A->set_unit(parse_coeff_map(j.at("unit"), *A, "unit"));

    if (!j.at("products").is_array()) throw ParseError("field 'products' must be an array");
    std::set<std::pair<int, int>> listed;
    for (const auto& p : j.at("products")) {
        for (const char* field : {"left", "right", "value"})
            if (!p.contains(field)) throw ParseError(std::string("product entries need '") + field + "'");
        int l = A->index_of(p.at("left").get<std::string>());
        int r = A->index_of(p.at("right").get<std::string>());
        if (l < 0 || r < 0) throw ParseError("product entry references an unknown basis id");
        if (!A->product_defined(l, r))
            throw ParseError("product (" + A->elt(l).id + ", " + A->elt(r).id +
                             ") lies outside the declared window");
        A->set_product(l, r, parse_coeff_map(p.at("value"), *A, "products.value"));
        listed.insert({l, r});
    }
    // implied unit products when the unit is a single basis element;
    // unlisted in-window pairs default to zero
    const SVec& u = A->unit();
    if (u.size() == 1 && u.begin()->second == 1) {
        int ui = u.begin()->first;
        for (int i = 0; i < A->dim(); ++i) {
            if (!listed.count({ui, i}) && A->product_defined(ui, i)) A->set_product(ui, i, SVec{{i, Q(1)}});
            if (!listed.count({i, ui}) && A->product_defined(i, ui)) A->set_product(i, ui, SVec{{i, Q(1)}});
        }
    }
    A->finalize();

    AlgebraFile f;
    f.algebra = A;
    f.source = "explicit";
    if (j.contains("automorphisms")) {
        if (!j.at("automorphisms").is_object()) throw ParseError("field 'automorphisms' must be an object");
        for (const auto& [name, entries] : j.at("automorphisms").items()) {
            std::vector<SVec> img(static_cast<std::size_t>(A->dim()));
            std::vector<bool> seen(static_cast<std::size_t>(A->dim()), false);
            for (const auto& e : entries) {
                if (!e.contains("arg") || !e.contains("value"))
                    throw ParseError("automorphism '" + name + "' entries need 'arg' and 'value'");
                int a = A->index_of(e.at("arg").get<std::string>());
                if (a < 0) throw ParseError("automorphism '" + name + "': unknown arg id");
                img[static_cast<std::size_t>(a)] = parse_coeff_map(e.at("value"), *A, "automorphisms." + name);
                seen[static_cast<std::size_t>(a)] = true;
            }
            // sigma(1) = 1 implied for a single-element unit
            if (u.size() == 1) {
                int ui = u.begin()->first;
                if (!seen[static_cast<std::size_t>(ui)]) {
                    img[static_cast<std::size_t>(ui)] = u;
                    seen[static_cast<std::size_t>(ui)] = true;
                }
            }
            for (int i = 0; i < A->dim(); ++i)
                if (!seen[static_cast<std::size_t>(i)])
                    throw ParseError("automorphism '" + name + "' misses the image of '" + A->elt(i).id + "'");
            f.automorphisms.emplace(name, Automorphism(name, std::move(img)));
        }
    }
    return f;
}

} // namespace

AlgebraFile parse_algebra_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ParseError(origin + ": top level must be an object");
    AlgebraFile f;
    try {
        f = j.contains("builtin") ? from_builtin(j) : from_explicit(j);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!f.automorphisms.count("id")) f.automorphisms.emplace("id", Automorphism::identity(*f.algebra));

    std::vector<Automorphism> autos;
    for (const auto& [n, a] : f.automorphisms) autos.push_back(a);
    ValidationReport rep = validate(*f.algebra, autos);
    if (!rep.passed()) throw ValidationError(origin + ": " + rep.str());
    return f;
}

AlgebraFile parse_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_algebra_text(text, path);
}

std::string emit_algebra(const GradedAlgebra& A,
                         const std::map<std::string, Automorphism>& automorphisms) {
    ojson j;
    j["name"] = A.name;
    j["grading_rank"] = A.grading_rank();
    ojson win = ojson::array();
    for (const auto& [lo, hi] : A.window.bounds) win.push_back(ojson::array({lo, hi}));
    j["window"] = win;
    ojson basis = ojson::array();
    for (const auto& b : A.basis()) {
        ojson e;
        e["id"] = b.id;
        e["weight"] = b.wt;
        basis.push_back(e);
    }
    j["basis"] = basis;
    ojson unit;
    for (const auto& [i, c] : A.unit()) unit[A.elt(i).id] = rat_str(c);
    j["unit"] = unit;
    ojson prods = ojson::array();
    bool single_unit = A.unit().size() == 1 && A.unit().begin()->second == 1;
    int ui = single_unit ? A.unit().begin()->first : -1;
    for (int i = 0; i < A.dim(); ++i)
        for (int k = 0; k < A.dim(); ++k) {
            if (!A.product_defined(i, k)) continue;
            const SVec& v = A.product(i, k);
            if (v.empty()) continue;                        // zero is implied by omission
            if (single_unit && (i == ui || k == ui)) continue; // unit products are implied
            ojson e;
            e["left"] = A.elt(i).id;
            e["right"] = A.elt(k).id;
            ojson val;
            for (const auto& [t, c] : v) val[A.elt(t).id] = rat_str(c);
            e["value"] = val;
            prods.push_back(e);
        }
    j["products"] = prods;
    ojson autos = ojson::object();
    for (const auto& [name, a] : automorphisms) {
        if (name == "id") continue;
        ojson entries = ojson::array();
        for (int i = 0; i < A.dim(); ++i) {
            ojson e;
            e["arg"] = A.elt(i).id;
            ojson val;
            for (const auto& [t, c] : a.image(i)) val[A.elt(t).id] = rat_str(c);
            e["value"] = val;
            entries.push_back(e);
        }
        autos[name] = entries;
    }
    j["automorphisms"] = autos;
    return j.dump(2) + "\n";
}

} // namespace thh
