#pragma once

#include "twisthom/bimodule.hpp"
#include "twisthom/chain.hpp"
#include "twisthom/homology.hpp"

namespace thh {

// The Hochschild cochain complex C^*(A, N) restricted to degrees <= n_max,
// input tensors of total weight inside `input_window`, and homogeneous
// internal weights s inside `s_window`. A degree-n, weight-s cochain is a
// map sending (A^{(x)n})_w into N_{w+s}; its basis here consists of matrix
// units (input tuple, coefficient basis element).
class CochainWindow {
public:
    CochainWindow(AlgebraPtr A, BimodulePtr N, int n_max, const Window& input_window,
                  const Window& s_window);

    struct CBasisElt {
        Weight w; // input weight
        int tuple;
        int nelt; // N basis index at weight w + s
        auto operator<=>(const CBasisElt&) const = default;
    };

    const GradedAlgebra& algebra() const { return *A_; }
    const Bimodule& coefficients() const { return *N_; }
    BimodulePtr coefficients_ptr() const { return N_; }
    int n_max() const { return n_max_; }
    const std::vector<Weight>& internal_weights() const { return svals_; }
    const std::vector<Weight>& input_weights() const { return in_weights_; }

    // A^{(x)n} tuple enumeration at a given input weight.
    const std::vector<std::vector<int>>& tuples(int n, const Weight& w) const;
    int tuple_index(int n, const std::vector<int>& t) const;

    int dim(int n, const Weight& s) const;
    const std::vector<CBasisElt>& cbasis(int n, const Weight& s) const;
    int cindex(int n, const Weight& s, const CBasisElt& e) const;

    // b^n at internal weight s, mapping C^n_s -> C^{n+1}_s; built for
    // n < n_max.
    const MatrixQ& coboundary(int n, const Weight& s) const;

    HomologyPresentation cohomology(int n, const Weight& s) const; // n <= n_max-1
    BettiTable betti_table() const;                                // keyed by (n, s)

    // Evaluation of a cochain vector on an input tuple.
    SVec evaluate(int n, const Weight& s, const SVec& f, const Weight& w,
                  const std::vector<int>& tuple) const;

private:
    void build_tuples();
    void build_basis();
    void build_coboundaries();

    AlgebraPtr A_;
    BimodulePtr N_;
    int n_max_;
    Window in_win_, s_win_;
    std::vector<Weight> svals_, in_weights_;
    std::map<std::pair<int, Weight>, std::vector<std::vector<int>>> tuples_;
    std::map<std::pair<int, Weight>, std::map<std::vector<int>, int>> tuple_idx_;
    std::map<std::pair<int, Weight>, std::vector<CBasisElt>> basis_;
    std::map<std::pair<int, Weight>, std::map<CBasisElt, int>> index_;
    std::map<std::pair<int, Weight>, MatrixQ> cob_;
};

using CochainWindowPtr = std::shared_ptr<const CochainWindow>;

CochainWindowPtr build_cochain_window(AlgebraPtr A, BimodulePtr N, int n_max,
                                      const Window& input_window, const Window& s_window);

} // namespace thh
