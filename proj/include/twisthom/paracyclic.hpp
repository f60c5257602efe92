#pragma once

#include "twisthom/chain.hpp"

namespace thh {

// The paracyclic structure on the unnormalized Hochschild complex of A with
// coefficients twisted on the left by sigma:
//   d_{n,i} multiplies slots i, i+1 (slot n wraps through sigma),
//   s_{n,j} inserts the unit after slot j,
//   t_n     cyclically rotates with sign (-1)^n and sigma on the last slot.
// Derived operators are assembled from their defining expressions, not
// from simplified closed forms, so the homotopy identities stay honest
// theorem checks.
class ParacyclicOps {
public:
    ParacyclicOps(AlgebraPtr A, const Automorphism& sigma, int n_max, const Window& wwin);

    const ChainWindow& chain() const { return *cw_; }
    ChainWindowPtr chain_ptr() const { return cw_; }
    const Automorphism& sigma() const { return sigma_; }
    int n_max() const { return n_max_; }
    const std::vector<Weight>& weights() const { return cw_->weights(); }

    // n in [1, n_max], 0 <= i <= n
    const MatrixQ& d(int n, int i, const Weight& w) const;
    // n in [0, n_max-1], 0 <= j <= n (degeneracies into degree n+1)
    const MatrixQ& s(int n, int j, const Weight& w) const;
    // n in [0, n_max]
    const MatrixQ& t(int n, const Weight& w) const;

    // derived operators
    MatrixQ b(int n, const Weight& w) const;      // simplicial boundary, n >= 1
    MatrixQ bprime(int n, const Weight& w) const; // acyclic boundary, n >= 1
    MatrixQ norm(int n, const Weight& w) const;   // N_n = sum of t^i
    MatrixQ extra_degeneracy(int n, const Weight& w) const; // s_n: C_n -> C_{n+1}, n <= n_max-1
    MatrixQ connes_B(int n, const Weight& w) const;         // B_n, n <= n_max-1
    MatrixQ T(int n, const Weight& w) const;                // t_n^{n+1}

private:
    AlgebraPtr A_;
    Automorphism sigma_;
    int n_max_;
    ChainWindowPtr cw_;
    std::map<std::tuple<int, int, Weight>, MatrixQ> d_, s_;
    std::map<std::pair<int, Weight>, MatrixQ> t_;
};

using ParacyclicOpsPtr = std::shared_ptr<const ParacyclicOps>;

ParacyclicOpsPtr build_paracyclic(AlgebraPtr A, const Automorphism& sigma, int n_max,
                                  const Window& wwin);

struct RelationResult {
    std::string relation;
    int n;
    Weight w;
    bool pass;
    SVec witness; // a column of the defect matrix when failing
};

struct RelationReport {
    std::vector<RelationResult> results;
    bool all_pass() const;
    int failures() const;
};

enum class RelationKind { simplicial, paracyclic, homotopy, subsidiary, all };

// Verifies, as exact matrix identities at every built bidegree:
//   simplicial : the three face/degeneracy identity families
//   paracyclic : the d-t and s-t compatibilities
//   homotopy   : bB + Bb = id - T and BB = (id - T)(id - t) s s N
//   subsidiary : b(id-t) = (id-t)b', b's + sb' = id, b'N = Nb
RelationReport check_relations(const ParacyclicOps& ops, RelationKind kind);

// Matrix of T_n on H_n(A, sigma-A)_w in the representative basis.
MatrixQ T_on_homology(const ParacyclicOps& ops, int n, const Weight& w);

struct QuasiCyclicResult {
    bool split;
    int dim_ker, dim_im, dim_intersection, dim_total;
};

// Tests C_{n,w} = ker(id - T) (+) im(id - T) by exact rank computations.
QuasiCyclicResult quasicyclic_check(const ParacyclicOps& ops, int n, const Weight& w);

} // namespace thh
