#pragma once

#include "twisthom/chain.hpp"
#include "twisthom/cochain.hpp"

namespace thh {

// Weight-homogeneous windowed cochain: coordinates in a CochainWindow basis.
struct Cochain {
    int degree;
    Weight s;
    SVec coords;
};

// Cup product on C^*(A, A). `win` must be a cochain window with regular
// coefficients containing degrees up to f.degree + g.degree. The result
// carries the sign (-1)^{|f||g|} from the chain-level formula.
Cochain cup(const CochainWindow& win, const Cochain& f, const Cochain& g);

// Everything needed to cap chains in C_*(A, M) against cochains in
// C^*(A, N): the tensor quotient M (x)_A N and a chain window over it.
struct CapSetup {
    AlgebraPtr A;
    BimodulePtr M, N;
    ChainWindowPtr cwM;   // chains with coefficients M
    CochainWindowPtr cwN; // cochains with coefficients N
    TensorOverA mn;       // M (x)_A N with projection
    ChainWindowPtr cwQ;   // chains with coefficients mn.quotient
};

CapSetup make_cap_setup(AlgebraPtr A, BimodulePtr M, BimodulePtr N, int p_max, int n_cochain_max,
                        const Window& chain_weights, const Window& input_weights,
                        const Window& internal_weights, const Window& result_weights);

// z in C_p(A, M) at weight w, f a degree-n cochain with coefficients N;
// returns the chain (-1)^{pn} [m (x)_A f(a_1..a_n)] (x) a_{n+1}..a_p in
// C_{p-n}(A, M (x)_A N) at weight w + s, on cs.cwQ.
// Throws DegreeMismatch when n > p.
SVec cap(const CapSetup& cs, int p, const Weight& w, const SVec& z, const Cochain& f);

// Same cap for N = A, composed with the identification M (x)_A A = M; the
// result lives back on cs.cwM.
SVec cap_collapsed(const CapSetup& cs, int p, const Weight& w, const SVec& z, const Cochain& f);

// Class-level cap with N = A: takes cycle/cocycle representatives, returns
// homology class coordinates of z cap f in H_{p-n}(A, M) at weight w + s.
// Throws NotACycle / NotACocycle when the representatives fail to be closed.
SVec cap_on_homology(const CapSetup& cs, int p, const Weight& w, const SVec& z, const Cochain& f);

// Windowed probe for the fundamental-class pairing F(z) = (z cap -):
// pairs every windowed d-cocycle class with coefficients A (x) A (outer
// actions) against z in C_d(A, _{sigma^-1}A), lands in the canonical H_0
// identification with A, and reports whether the assembled pairing is a
// weightwise bijection intertwining the residual A^e-actions — the window
// evidence for F(z) being an isomorphism, hence for z representing a
// fundamental class up to normalization.
struct FClassReport {
    bool is_cycle = false;
    std::map<Weight, MatrixQ> pairing;              // per internal weight s
    std::map<Weight, std::pair<int, int>> dims;     // s -> (dim H^d_s, dim A at w_z + s)
    bool bijective = false;
    bool module_map = false;
    bool fundamental = false;
    std::string detail;
};

FClassReport fclass_probe(AlgebraPtr A, const Automorphism& sigma, int d, const Weight& z_weight,
                          const SVec& z, int w_cap, int s_min, int s_max);

// Dimensions of H^i(A, A^e) per (degree, internal weight) on the window,
// with the unique concentration degree when one exists.
struct DualityProbe {
    std::map<std::pair<int, Weight>, int> dims;
    int concentration_degree = -1; // -1: none or not unique
    bool concentrated = false;
};

DualityProbe dualizing_window(AlgebraPtr A, int n_max, int w_cap, int s_min, int s_max);

// Compares dim_s H^i(A, A) against dim_{s+l} H_{d-i}(A, _{sigma^-1}A) over
// candidate shifts l; a shift matches when every comparable column agrees
// and at least one compared entry is nonzero.
struct DualityTable {
    int d = 0;
    std::map<std::pair<int, Weight>, int> coh; // (i, s) -> dim H^i(A, A)
    std::map<std::pair<int, Weight>, int> hom; // (j, w) -> dim H_j(A, _{sigma^-1}A)
    std::vector<int> matching_shifts;
    int s_min = 0, s_max = 0, w_cap = 0;
};

DualityTable duality_table(AlgebraPtr A, const Automorphism& sigma, int d, int w_cap, int s_min,
                           int s_max);

} // namespace thh
