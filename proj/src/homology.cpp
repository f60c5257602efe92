#include "twisthom/homology.hpp"

#include "twisthom/errors.hpp"

namespace thh {

SVec HomologyPresentation::coordinates_of(const SVec& v) const {
    if (!is_cycle(v)) throw NotACycle("coordinates_of: vector is not a cycle");
    // Solve [B | R] x = v and return the R part.
    std::vector<SVec> cols = boundary_basis;
    cols.insert(cols.end(), reps.begin(), reps.end());
    auto x = solve(matrix_from_columns(cols, b_out.cols()), v);
    if (!x)
        throw NotACycle("coordinates_of: cycle not in span of boundaries and representatives");
    SVec coords;
    int nb = static_cast<int>(boundary_basis.size());
    for (const auto& [i, c] : *x)
        if (i >= nb) coords.emplace(i - nb, c);
    return coords;
}

HomologyPresentation homology_quotient(const MatrixQ& b_out, const MatrixQ& b_in) {
    if (b_in.cols() > 0 && !(b_out * b_in).is_zero())
        throw CompositionNonzero("homology_quotient: b_out * b_in != 0");

    Elim ko = eliminate(b_out);
    Elim io = eliminate(b_in);

    HomologyPresentation h;
    h.b_out = b_out;
    h.boundary_basis = io.image_basis;
    h.betti = static_cast<int>(ko.kernel_basis.size()) - io.rank;

    // Representatives: kernel vectors that contribute new pivots after the
    // boundary image.
    std::vector<SVec> cols = io.image_basis;
    cols.insert(cols.end(), ko.kernel_basis.begin(), ko.kernel_basis.end());
    Elim sel = eliminate(matrix_from_columns(cols, b_out.cols()));
    int nb = static_cast<int>(io.image_basis.size());
    for (int pc : sel.pivot_cols)
        if (pc >= nb) h.reps.push_back(ko.kernel_basis[static_cast<std::size_t>(pc - nb)]);
    if (static_cast<int>(h.reps.size()) != h.betti)
        throw Error("homology_quotient: representative count disagrees with betti");
    return h;
}

MatrixQ induced_on_homology(const MatrixQ& f, const HomologyPresentation& dom,
                            const HomologyPresentation& cod) {
    // Boundaries must die in homology, else the induced matrix would depend
    // on the representative choice.
    for (const SVec& b : dom.boundary_basis) {
        SVec cls;
        try {
            cls = cod.coordinates_of(f.apply(b));
        } catch (const NotACycle&) {
            throw NotAChainMap("induced_on_homology: image of a boundary is not a cycle");
        }
        if (!cls.empty())
            throw NotAChainMap("induced_on_homology: boundary maps to a nonzero class");
    }
    MatrixQ m(cod.betti, dom.betti);
    for (int j = 0; j < dom.betti; ++j) {
        SVec cls;
        try {
            cls = cod.coordinates_of(f.apply(dom.reps[static_cast<std::size_t>(j)]));
        } catch (const NotACycle&) {
            throw NotAChainMap("induced_on_homology: image of a cycle is not a cycle");
        }
        for (const auto& [i, c] : cls) m.set(i, j, c);
    }
    return m;
}

} // namespace thh
