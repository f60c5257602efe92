#pragma once

#include <vector>

#include "twisthom/eliminate.hpp"

namespace thh {

// Homology at one spot of a presented complex:  ker(b_out) / im(b_in).
// Representatives are cycles whose classes form a basis of the quotient.
struct HomologyPresentation {
    int betti = 0;
    std::vector<SVec> reps;           // cycles in ambient chain coordinates
    std::vector<SVec> boundary_basis; // image basis of b_in
    MatrixQ b_out;                    // kept to test cycle membership

    bool is_cycle(const SVec& v) const { return b_out.apply(v).empty(); }

    // Coordinates of [v] in the representative basis.
    // Throws NotACycle when v is not a cycle.
    SVec coordinates_of(const SVec& v) const;
};

// Requires b_out * b_in = 0 (throws CompositionNonzero otherwise).
// b_in maps into the domain of b_out.
HomologyPresentation homology_quotient(const MatrixQ& b_out, const MatrixQ& b_in);

// Matrix of the map induced by f on homology, in the representative bases.
// Verifies that f maps boundaries to boundaries and cycles to cycles modulo
// boundaries; throws NotAChainMap otherwise.
MatrixQ induced_on_homology(const MatrixQ& f, const HomologyPresentation& dom,
                            const HomologyPresentation& cod);

} // namespace thh
