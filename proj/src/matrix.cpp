#include "twisthom/matrix.hpp"

#include <sstream>

#include "twisthom/errors.hpp"

namespace thh {

void svec_axpy(SVec& dst, const Q& c, const SVec& src) {
    if (c == 0) return;
    for (const auto& [i, v] : src) {
        auto it = dst.find(i);
        if (it == dst.end()) {
            Q t = c * v;
            if (t != 0) dst.emplace(i, std::move(t));
        } else {
            it->second += c * v;
            if (it->second == 0) dst.erase(it);
        }
    }
}

SVec svec_scale(const SVec& v, const Q& c) {
    SVec r;
    if (c == 0) return r;
    for (const auto& [i, x] : v) r.emplace(i, Q(c * x));
    return r;
}

SVec svec_add(const SVec& a, const SVec& b) {
    SVec r = a;
    svec_axpy(r, 1, b);
    return r;
}

SVec svec_sub(const SVec& a, const SVec& b) {
    SVec r = a;
    svec_axpy(r, -1, b);
    return r;
}

std::string svec_str(const SVec& v) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, x] : v) {
        if (!first) os << " ";
        os << (first ? "" : "+ ") << rat_str(x) << "*e" << i;
        first = false;
    }
    return os.str();
}

MatrixQ MatrixQ::identity(int n) {
    MatrixQ m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void MatrixQ::set(int r, int c, const Q& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw Error("matrix index (" + std::to_string(r) + "," + std::to_string(c) +
                    ") out of bounds " + std::to_string(rows_) + "x" + std::to_string(cols_));
    if (v == 0)
        a_.erase({r, c});
    else
        a_[{r, c}] = v;
}

Q MatrixQ::at(int r, int c) const {
    auto it = a_.find({r, c});
    return it == a_.end() ? Q(0) : it->second;
}

SVec MatrixQ::col(int j) const {
    SVec v;
    for (const auto& [rc, x] : a_)
        if (rc.second == j) v.emplace(rc.first, x);
    return v;
}

SVec MatrixQ::row(int i) const {
    SVec v;
    for (auto it = a_.lower_bound({i, 0}); it != a_.end() && it->first.first == i; ++it)
        v.emplace(it->first.second, it->second);
    return v;
}

void MatrixQ::set_col(int j, const SVec& v) {
    for (auto it = a_.begin(); it != a_.end();) {
        if (it->first.second == j)
            it = a_.erase(it);
        else
            ++it;
    }
    for (const auto& [i, x] : v) set(i, j, x);
}

SVec MatrixQ::apply(const SVec& v) const {
    SVec r;
    for (const auto& [j, c] : v) svec_axpy(r, c, col(j));
    return r;
}

std::vector<SVec> MatrixQ::columns() const {
    std::vector<SVec> cs(static_cast<std::size_t>(cols_));
    for (const auto& [rc, x] : a_) cs[static_cast<std::size_t>(rc.second)].emplace(rc.first, x);
    return cs;
}

MatrixQ MatrixQ::operator*(const MatrixQ& o) const {
    if (cols_ != o.rows_)
        throw Error("matrix product shape mismatch: " + std::to_string(cols_) + " vs " +
                    std::to_string(o.rows_));
    MatrixQ r(rows_, o.cols_);
    auto ocols = o.columns();
    for (int j = 0; j < o.cols_; ++j) {
        SVec cj = apply(ocols[static_cast<std::size_t>(j)]);
        for (const auto& [i, x] : cj) r.a_[{i, j}] = x;
    }
    return r;
}

MatrixQ MatrixQ::operator+(const MatrixQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix sum shape mismatch");
    MatrixQ r = *this;
    for (const auto& [rc, x] : o.a_) {
        auto it = r.a_.find(rc);
        if (it == r.a_.end()) {
            r.a_.emplace(rc, x);
        } else {
            it->second += x;
            if (it->second == 0) r.a_.erase(it);
        }
    }
    return r;
}

MatrixQ MatrixQ::operator-(const MatrixQ& o) const { return *this + o.scaled(-1); }

MatrixQ MatrixQ::scaled(const Q& c) const {
    MatrixQ r(rows_, cols_);
    if (c == 0) return r;
    for (const auto& [rc, x] : a_) r.a_.emplace(rc, Q(c * x));
    return r;
}

MatrixQ MatrixQ::transpose() const {
    MatrixQ r(cols_, rows_);
    for (const auto& [rc, x] : a_) r.a_[{rc.second, rc.first}] = x;
    return r;
}

bool MatrixQ::operator==(const MatrixQ& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool MatrixQ::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(rows_);
}

MatrixQ MatrixQ::pow(int k) const {
    if (rows_ != cols_) throw Error("pow needs a square matrix");
    MatrixQ r = identity(rows_);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

std::string MatrixQ::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[";
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << rat_str(at(i, j));
        os << "]\n";
    }
    return os.str();
}

MatrixQ matrix_from_columns(const std::vector<SVec>& cols, int nrows) {
    MatrixQ m(nrows, static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        for (const auto& [i, x] : cols[static_cast<std::size_t>(j)]) m.set(i, j, x);
    return m;
}

} // namespace thh
