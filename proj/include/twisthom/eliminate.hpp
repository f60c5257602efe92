#pragma once

#include <optional>
#include <vector>

#include "twisthom/matrix.hpp"

namespace thh {

// Reduced row echelon form. Rows are pivot-normalized (pivot entry 1),
// sorted by pivot column, fully reduced above and below.
struct Rref {
    int ncols = 0;
    int rank = 0;
    std::vector<int> pivot_cols;  // ascending
    std::vector<int> free_cols;   // ascending
    std::vector<SVec> rows;       // rows[k] has pivot 1 at pivot_cols[k]

    // Subtracts pivot-row multiples; the remainder vanishes on pivot columns.
    // The remainder is zero iff v lies in the row span.
    SVec reduce(const SVec& v) const;
};

// Row echelon via fraction-free cross-multiplication on integer rows
// (rows are scaled to integers up front, contents divided out after each
// combination step), then normalized to RREF over Q. Pivoting is
// deterministic: rows in input order, pivot at each row's first nonzero
// column.
Rref rref_rows(const std::vector<SVec>& rows, int ncols);

struct Elim {
    int rank = 0;
    std::vector<int> pivot_cols;
    std::vector<SVec> kernel_basis; // basis of { x : Mx = 0 }, canonical
    std::vector<SVec> image_basis;  // original pivot columns of M
};

// Rank / kernel / column-space data of M (columns as unknowns).
Elim eliminate(const MatrixQ& M);

// Solves Mx = b exactly. Free variables are set to zero.
std::optional<SVec> solve(const MatrixQ& M, const SVec& b);

// Presentation of the quotient of Q^n by the span of `gens`.
// Representative coordinates are the free columns of the span's RREF.
class Quotient {
public:
    Quotient() = default;
    Quotient(const std::vector<SVec>& gens, int ambient_dim);

    int ambient_dim() const { return rr_.ncols; }
    int dim() const { return static_cast<int>(rr_.free_cols.size()); }

    // Class coordinates of an ambient vector.
    SVec project(const SVec& v) const;
    // Canonical representative of a class.
    SVec lift(const SVec& q) const;
    // Membership in the subspace.
    bool in_subspace(const SVec& v) const { return rr_.reduce(v).empty(); }

    MatrixQ projection_matrix() const;
    MatrixQ lift_matrix() const;

private:
    Rref rr_;
};

} // namespace thh
