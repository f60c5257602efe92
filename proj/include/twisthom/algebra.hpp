#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "twisthom/eliminate.hpp"
#include "twisthom/matrix.hpp"
#include "twisthom/weight.hpp"

namespace thh {

struct BasisElt {
    std::string id;
    Weight wt;
};

struct ValidationIssue {
    std::string rule;    // which identity failed
    std::string witness; // offending basis elements
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool passed() const { return issues.empty(); }
    std::string str() const;
};

// Unital associative algebra over Q presented by a weighted basis and a
// structure-constant table, valid inside a per-component weight window.
// Pairs whose weight sum leaves the window have no product; asking for one
// throws OutOfWindow.
class GradedAlgebra {
public:
    std::string name;
    Window window;

    // -- construction (call finalize() once, treat as immutable after) --
    int add_basis(const std::string& id, const Weight& wt);
    void set_unit(const SVec& u) { unit_ = u; }
    void set_product(int i, int j, const SVec& v);
    void finalize();

    // -- queries --
    int dim() const { return static_cast<int>(basis_.size()); }
    int grading_rank() const { return window.rank(); }
    const std::vector<BasisElt>& basis() const { return basis_; }
    const BasisElt& elt(int i) const { return basis_[static_cast<std::size_t>(i)]; }
    const Weight& wt(int i) const { return basis_[static_cast<std::size_t>(i)].wt; }
    int index_of(const std::string& id) const; // -1 when absent
    const SVec& unit() const { return unit_; }

    bool product_defined(int i, int j) const { return window.contains(wadd(wt(i), wt(j))); }
    // Structure constants of e_i * e_j. Throws OutOfWindow when undefined.
    const SVec& product(int i, int j) const;

    // Bilinear extension; throws OutOfWindow if a needed pair is undefined.
    SVec multiply(const SVec& u, const SVec& v) const;

    const std::vector<int>& at_weight(const Weight& w) const;
    std::vector<Weight> weights_present() const;

    // weight-zero part spanned by the unit
    bool connected() const;
    // every basis pair has a product inside the window
    bool table_total() const;

    GradedAlgebra opposite() const;

    std::string describe_elt(const SVec& v) const;

private:
    std::vector<BasisElt> basis_;
    SVec unit_;
    std::map<std::pair<int, int>, SVec> prod_;
    std::map<std::string, int> idx_;
    std::map<Weight, std::vector<int>> by_weight_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

// Grading-preserving algebra automorphism, stored by basis images.
class Automorphism {
public:
    std::string name;

    Automorphism() = default;
    Automorphism(std::string nm, std::vector<SVec> images)
        : name(std::move(nm)), img_(std::move(images)) {}

    static Automorphism identity(const GradedAlgebra& A);

    const SVec& image(int i) const { return img_[static_cast<std::size_t>(i)]; }
    SVec apply(const SVec& v) const;

    // Matrix of the restriction to the weight-w block, bases at_weight(w).
    MatrixQ block(const GradedAlgebra& A, const Weight& w) const;

    Automorphism compose_after(const GradedAlgebra& A, const Automorphism& first,
                               const std::string& nm) const; // this ∘ first
    Automorphism inverse(const GradedAlgebra& A) const;
    Automorphism power(const GradedAlgebra& A, int k) const; // k may be negative

    bool is_identity(const GradedAlgebra& A) const;

private:
    std::vector<SVec> img_; // img_[i] = image of basis element i
};

// Checks every algebra invariant (grading, unit, associativity) and, per
// automorphism, multiplicativity, unit fixing, grading preservation and
// blockwise invertibility. Failures become report entries.
ValidationReport validate(const GradedAlgebra& A, const std::vector<Automorphism>& autos);

struct BuiltinAlgebra {
    AlgebraPtr algebra;
    std::map<std::string, Automorphism> automorphisms;
};

// spec in {ground, poly1, trunc_poly, qplane, cyclic_group}.
//   poly1:            params q (rational string, default "1"); ships sigma_q
//   trunc_poly:       params N (>= 1); ships sigma_neg (y -> -y)
//   qplane:           params q; rank-2 window required
//   cyclic_group:     params m (>= 1); ships sigma_inv (g -> g^{m-1})
// Throws BadParams for anything else.
BuiltinAlgebra builtin_family(const std::string& spec, const std::map<std::string, std::string>& params,
                              const Window& window);

// Searches for an invertible u with sigma(a) = u a u^{-1}.
// Requires a total product table (throws NotFiniteDimensional otherwise).
struct InnerSearch {
    enum class Outcome { found, none, inconclusive } outcome;
    SVec u;           // valid when outcome == found
    int solution_dim; // dimension of { u : sigma(a) u = u a for all a }
};
InnerSearch is_inner(const GradedAlgebra& A, const Automorphism& sigma);

} // namespace thh
