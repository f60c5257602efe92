#pragma once

#include "twisthom/paracyclic.hpp"

namespace thh {

// The associated cyclic module C^cyc = C / im(id - T) with the induced b and
// B, on which the two operators anticommute exactly and B squares to zero.
// Construction verifies those identities and the stability of im(id - T)
// under both operators; failures throw, since they would indicate a bug
// rather than a mathematical outcome.
class CyclicQuotientWindow {
public:
    explicit CyclicQuotientWindow(ParacyclicOpsPtr ops);

    const ParacyclicOps& ops() const { return *ops_; }
    int n_max() const { return ops_->n_max(); }
    const std::vector<Weight>& weights() const { return ops_->weights(); }

    int dim(int n, const Weight& w) const;
    const MatrixQ& projection(int n, const Weight& w) const;
    const MatrixQ& lift(int n, const Weight& w) const;
    // induced simplicial boundary, n in [1, n_max]
    const MatrixQ& induced_b(int n, const Weight& w) const;
    // induced Connes-Tsygan boundary, n in [0, n_max-1]
    const MatrixQ& induced_B(int n, const Weight& w) const;

    // homology of the quotient columns (the twisted Hochschild homology of
    // the bicomplex), n <= n_max-1
    HomologyPresentation column_homology(int n, const Weight& w) const;

private:
    ParacyclicOpsPtr ops_;
    std::map<std::pair<int, Weight>, Quotient> pres_;
    std::map<std::pair<int, Weight>, MatrixQ> proj_, lift_, b_, B_;
};

using CyclicQuotientPtr = std::shared_ptr<const CyclicQuotientWindow>;

CyclicQuotientPtr associated_cyclic(ParacyclicOpsPtr ops);

struct HCTable {
    // (total degree, weight) -> dimension
    std::map<std::pair<int, Weight>, int> hc;
    // column homology dims per (degree, weight)
    std::map<std::pair<int, Weight>, int> column;
    int hc_dim(int n, const Weight& w) const;
};

// Total homology of the mixed (b, B)-bicomplex with columns C^cyc_{n-2i}.
// Reported for total degrees n <= n_report; requires n_report <= n_max - 1
// so every needed differential exists (throws InsufficientWindow).
HCTable bicomplex_total_homology(const CyclicQuotientWindow& cqw, int n_report);

} // namespace thh
