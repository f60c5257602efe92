#pragma once

#include <functional>

#include "twisthom/algebra.hpp"

namespace thh {

// Weighted vector space with commuting left/right actions of a graded
// algebra. Action entries are stored explicitly; a missing (algebra basis,
// module basis) pair means the action leaves the window and requesting it
// throws OutOfWindow. A stored empty vector is an honest zero.
class Bimodule {
public:
    std::string name;
    Window window; // hull for basis weights, used by chain enumeration

    // -- construction --
    int add_basis(const std::string& id, const Weight& wt);
    void set_left(int a, int m, const SVec& v) { lact_[{a, m}] = v; }
    void set_right(int m, int a, const SVec& v) { ract_[{m, a}] = v; }
    void finalize();

    const GradedAlgebra& algebra() const { return *A_; }
    AlgebraPtr algebra_ptr() const { return A_; }
    void set_algebra(AlgebraPtr A) { A_ = std::move(A); }

    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<BasisElt>& basis() const { return basis_; }
    const BasisElt& elt(int m) const { return basis_[static_cast<std::size_t>(m)]; }
    const Weight& wt(int m) const { return basis_[static_cast<std::size_t>(m)].wt; }
    int index_of(const std::string& id) const;
    const std::vector<int>& at_weight(const Weight& w) const;
    std::vector<Weight> weights_present() const;

    bool left_defined(int a, int m) const { return lact_.count({a, m}) != 0; }
    bool right_defined(int m, int a) const { return ract_.count({m, a}) != 0; }
    const SVec& left(int a, int m) const;  // a |> e_m
    const SVec& right(int m, int a) const; // e_m <| a

    // Bilinear extensions; throw OutOfWindow for undefined needed pairs.
    SVec act_left(const SVec& a, const SVec& m) const;
    SVec act_right(const SVec& m, const SVec& a) const;

    std::string describe_elt(const SVec& v) const;

private:
    AlgebraPtr A_;
    std::vector<BasisElt> basis_;
    std::map<std::pair<int, int>, SVec> lact_, ract_;
    std::map<std::string, int> idx_;
    std::map<Weight, std::vector<int>> by_weight_;
};

using BimodulePtr = std::shared_ptr<const Bimodule>;

// Checks bimodule axioms on every representable combination: unit acts as
// the identity, both actions are associative, the actions commute, and all
// action values are weight homogeneous.
ValidationReport validate_bimodule(const Bimodule& M);

// The algebra as a bimodule over itself.
BimodulePtr regular_bimodule(AlgebraPtr A);

// rho-A-sigma: underlying space A, a |> m = rho(a) m, m <| b = m sigma(b).
BimodulePtr twisted_bimodule(AlgebraPtr A, const Automorphism& rho, const Automorphism& sigma);

// Left and right actions exchanged; the result is a bimodule over the
// opposite algebra.
BimodulePtr side_swap(const Bimodule& M);

// Weight-blockwise linear map between bimodules over the same algebra.
struct BimoduleMap {
    BimodulePtr dom, cod;
    std::map<Weight, MatrixQ> blocks; // basis-at-weight to basis-at-weight

    SVec apply(const SVec& v) const;
    // Exact intertwining check against all defined generator actions;
    // returns the first violating description or empty string.
    std::string intertwining_violation() const;
    bool bijective() const;
};

// The map a -> tau(a) from rho-A-sigma to (tau rho)-A-(tau sigma).
// Throws IntertwinerCheckFailed if the verification fails (implementation
// bug for validated inputs).
BimoduleMap twist_iso(AlgebraPtr A, const Automorphism& rho, const Automorphism& sigma,
                      const Automorphism& tau);

// Tensor product of bimodules over the acting algebra.
struct TensorOverA {
    BimodulePtr left_factor, right_factor;
    BimodulePtr pair_space; // M (x) N with the outer actions
    BimodulePtr quotient;   // M (x)_A N
    BimoduleMap projection; // pair_space -> quotient
    // pair-space index helpers
    std::map<std::pair<int, int>, int> pair_index;
    std::vector<std::pair<int, int>> factors;
    // canonical lift of each quotient basis element, as a pair-space index
    std::vector<int> quotient_rep_pair;
};
TensorOverA tensor_over_A(BimodulePtr M, BimodulePtr N);

// Plain tensor product with outer actions (no quotient).
struct TensorSquareLayout {
    BimodulePtr mod;
    std::map<std::pair<int, int>, int> pair_index;
    std::vector<std::pair<int, int>> factors;
};
TensorSquareLayout tensor_plain(BimodulePtr M, BimodulePtr N, const std::string& name);

// A (x) A_tau with the outer structure: a |> (u (x) v) = au (x) v and
// (u (x) v) <| b = u (x) v tau(b). Used as cohomology coefficients for the
// dualising-window and diagram probes. The inner (residual) actions are
// exposed as explicit operators on the pair space.
struct EnvelopeCoefficients {
    TensorSquareLayout layout;
    // residual right A^e-structure, acting on the pair space
    std::function<SVec(int /*alg*/, const SVec&)> inner_left;  // u (x) v -> u (x) a v
    std::function<SVec(const SVec&, int /*alg*/)> inner_right; // u (x) v -> u b (x) v
};
EnvelopeCoefficients envelope_coefficients(AlgebraPtr A, const Automorphism& right_twist);

// The canonical identification M (x)_A A -> M, m (x) a -> m <| a, as a
// bimodule map from the tensor quotient. Requires right_factor to be the
// regular bimodule.
BimoduleMap collapse_right_regular(const TensorOverA& t);

} // namespace thh
