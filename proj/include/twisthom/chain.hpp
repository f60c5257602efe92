#pragma once

#include "twisthom/bimodule.hpp"
#include "twisthom/homology.hpp"

namespace thh {

// Basis tensor m (x) a_1 (x) ... (x) a_n of the Hochschild chain complex.
struct ChainTuple {
    int m;                  // module basis index (coefficient slot)
    std::vector<int> slots; // algebra basis indices
    auto operator<=>(const ChainTuple&) const = default;
};

struct BettiEntry {
    int betti = 0;
    std::vector<SVec> reps;
};

// Exact dimensions indexed by (degree, weight or internal weight).
struct BettiTable {
    std::map<std::pair<int, Weight>, BettiEntry> entries;
    int betti(int n, const Weight& w) const;
};

// The Hochschild chain complex C_*(A, M) restricted to degrees <= n_max and
// total weights inside a window, with exact boundary matrices per bidegree.
// The normalized variant restricts tensor slots to the positive-weight part
// (which for weight-connected algebras realizes the quotient by unit slots).
class ChainWindow {
public:
    ChainWindow(AlgebraPtr A, BimodulePtr M, int n_max, const Window& wwin, bool normalized);

    const GradedAlgebra& algebra() const { return *A_; }
    const Bimodule& coefficients() const { return *M_; }
    BimodulePtr coefficients_ptr() const { return M_; }
    int n_max() const { return n_max_; }
    bool normalized() const { return normalized_; }
    const std::vector<Weight>& weights() const { return weights_; }

    int dim(int n, const Weight& w) const;
    const std::vector<ChainTuple>& tuples(int n, const Weight& w) const;
    int index_of(int n, const ChainTuple& t) const; // -1 when absent

    // b_n at weight w, mapping C_{n,w} -> C_{n-1,w}; b_0 is the 0 x dim map.
    const MatrixQ& boundary(int n, const Weight& w) const;

    HomologyPresentation homology(int n, const Weight& w) const; // n <= n_max-1
    BettiTable betti_table() const;

    std::string describe_chain(int n, const Weight& w, const SVec& v) const;

private:
    void build_basis();
    void build_boundaries();

    AlgebraPtr A_;
    BimodulePtr M_;
    int n_max_;
    Window wwin_;
    bool normalized_;
    std::vector<int> slot_basis_; // algebra indices allowed in tensor slots
    std::vector<Weight> weights_;
    std::map<std::pair<int, Weight>, std::vector<ChainTuple>> basis_;
    std::map<std::pair<int, Weight>, std::map<ChainTuple, int>> index_;
    std::map<std::pair<int, Weight>, MatrixQ> bnd_;
};

using ChainWindowPtr = std::shared_ptr<const ChainWindow>;

ChainWindowPtr build_chain_window(AlgebraPtr A, BimodulePtr M, int n_max, const Window& wwin,
                                  bool normalized);

// Verified cycles forming a basis of H_{n,w}; throws BidegreeOutOfRange when
// the bidegree was not built.
std::vector<SVec> homology_reps(const ChainWindow& cw, int n, const Weight& w);

} // namespace thh
