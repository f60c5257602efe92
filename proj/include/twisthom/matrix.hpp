#pragma once

#include <map>
#include <string>
#include <vector>

#include "twisthom/rational.hpp"

namespace thh {

// Sparse vector: index -> nonzero rational coefficient.
using SVec = std::map<int, Q>;

inline bool svec_is_zero(const SVec& v) { return v.empty(); }

// dst += c * src, dropping entries that cancel to zero.
void svec_axpy(SVec& dst, const Q& c, const SVec& src);
SVec svec_scale(const SVec& v, const Q& c);
SVec svec_add(const SVec& a, const SVec& b);
SVec svec_sub(const SVec& a, const SVec& b);
std::string svec_str(const SVec& v);

// Sparse matrix over Q. Stored entries are nonzero; absent means zero.
// Row-major entry order makes iteration deterministic.
class MatrixQ {
public:
    MatrixQ() : rows_(0), cols_(0) {}
    MatrixQ(int rows, int cols) : rows_(rows), cols_(cols) {}

    static MatrixQ identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const Q& v);
    Q at(int r, int c) const;

    const std::map<std::pair<int, int>, Q>& entries() const { return a_; }

    SVec col(int j) const;
    SVec row(int i) const;
    void set_col(int j, const SVec& v);

    SVec apply(const SVec& v) const;      // M v
    std::vector<SVec> columns() const;

    MatrixQ operator*(const MatrixQ& o) const;
    MatrixQ operator+(const MatrixQ& o) const;
    MatrixQ operator-(const MatrixQ& o) const;
    MatrixQ scaled(const Q& c) const;
    MatrixQ transpose() const;

    bool is_zero() const { return a_.empty(); }
    bool operator==(const MatrixQ& o) const;

    bool is_identity() const;

    // Power for square matrices, k >= 0.
    MatrixQ pow(int k) const;

    std::string str() const; // dense printout, for diagnostics

private:
    int rows_, cols_;
    std::map<std::pair<int, int>, Q> a_;
};

// Assembles a matrix whose columns are the given vectors.
MatrixQ matrix_from_columns(const std::vector<SVec>& cols, int nrows);

} // namespace thh
