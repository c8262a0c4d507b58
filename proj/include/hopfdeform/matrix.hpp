#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hopfdeform/rational.hpp"

namespace hopfdeform {

using Index = std::size_t;

// Sparse coordinate vector: (index, value) pairs, strictly increasing
// indices, no stored zeros.
using SparseVec = std::vector<std::pair<Index, Scalar>>;

inline void sv_sort_combine(SparseVec& v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(v.size());
    for (auto& e : v) {
        if (!out.empty() && out.back().first == e.first)
            out.back().second += e.second;
        else
            out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return is_zero(e.second); }),
              out.end());
    v = std::move(out);
}

/// dst += c * src, both sparse and sorted.
inline void sv_axpy(SparseVec& dst, const Scalar& c, const SparseVec& src) {
    if (is_zero(c) || src.empty()) return;
    SparseVec out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(std::move(dst[i++]));
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, c * src[j].second);
            ++j;
        } else {
            Scalar s = dst[i].second + c * src[j].second;
            if (!is_zero(s)) out.emplace_back(dst[i].first, std::move(s));
            ++i, ++j;
        }
    }
    dst = std::move(out);
}

inline void sv_scale(SparseVec& v, const Scalar& c) {
    if (is_zero(c)) {
        v.clear();
        return;
    }
    for (auto& e : v) e.second *= c;
}

inline Scalar sv_get(const SparseVec& v, Index i) {
    auto it = std::lower_bound(v.begin(), v.end(), i,
                               [](const auto& e, Index k) { return e.first < k; });
    if (it != v.end() && it->first == i) return it->second;
    return Scalar(0);
}

inline SparseVec sv_unit(Index i) { return SparseVec{{i, Scalar(1)}}; }

inline bool sv_equal(const SparseVec& a, const SparseVec& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].first != b[i].first || a[i].second != b[i].second) return false;
    return true;
}

/// Dense column -> sparse.
inline SparseVec sv_from_dense(const std::vector<Scalar>& d) {
    SparseVec v;
    for (Index i = 0; i < d.size(); ++i)
        if (!is_zero(d[i])) v.emplace_back(i, d[i]);
    return v;
}

inline std::vector<Scalar> sv_to_dense(const SparseVec& v, Index n) {
    std::vector<Scalar> d(n, Scalar(0));
    for (const auto& e : v) d[e.first] = e.second;
    return d;
}

// Row-sparse exact rational matrix. Dimensions are fixed at construction;
// entries outside the stored pattern (or the index range) read as zero.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(Index rows, Index cols) : rows_(rows), cols_(cols), row_(rows) {}

    static Matrix identity(Index n) {
        Matrix m(n, n);
        for (Index i = 0; i < n; ++i) m.row_[i] = sv_unit(i);
        return m;
    }

    static Matrix from_columns(Index rows, const std::vector<SparseVec>& cols) {
        Matrix m(rows, cols.size());
        for (Index c = 0; c < cols.size(); ++c)
            for (const auto& e : cols[c]) m.add_to(e.first, c, e.second);
        return m;
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    void set(Index r, Index c, Scalar v) {
        check_range(r, c);
        auto& row = row_[r];
        auto it = std::lower_bound(
            row.begin(), row.end(), c,
            [](const auto& e, Index k) { return e.first < k; });
        if (it != row.end() && it->first == c) {
            if (hopfdeform::is_zero(v))
                row.erase(it);
            else
                it->second = std::move(v);
        } else if (!hopfdeform::is_zero(v)) {
            row.insert(it, {c, std::move(v)});
        }
    }

    void add_to(Index r, Index c, const Scalar& v) {
        check_range(r, c);
        auto& row = row_[r];
        auto it = std::lower_bound(
            row.begin(), row.end(), c,
            [](const auto& e, Index k) { return e.first < k; });
        if (it != row.end() && it->first == c) {
            it->second += v;
            if (hopfdeform::is_zero(it->second)) row.erase(it);
        } else if (!hopfdeform::is_zero(v)) {
            row.insert(it, {c, v});
        }
    }

    /// Zero for any out-of-range position.
    Scalar entry(Index r, Index c) const {
        if (r >= rows_ || c >= cols_) return Scalar(0);
        return sv_get(row_[r], c);
    }

    const SparseVec& row(Index r) const { return row_[r]; }
    void set_row(Index r, SparseVec v) {
        if (r >= rows_) throw std::out_of_range("matrix row out of range");
        row_[r] = std::move(v);
    }

    bool is_zero() const {
        for (const auto& r : row_)
            if (!r.empty()) return false;
        return true;
    }

    Index nnz() const {
        Index n = 0;
        for (const auto& r : row_) n += r.size();
        return n;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (Index r = 0; r < rows_; ++r)
            for (const auto& e : row_[r]) t.row_[e.first].emplace_back(r, e.second);
        return t;
    }

    /// m * v for a sparse column v of length cols().
    SparseVec apply(const SparseVec& v) const {
        // Column-wise accumulation through the transpose-free formula
        // (m v)_r = sum_c m[r,c] v_c needs column access; instead gather rows.
        SparseVec out;
        for (Index r = 0; r < rows_; ++r) {
            Scalar s(0);
            auto it = row_[r].begin();
            auto jt = v.begin();
            while (it != row_[r].end() && jt != v.end()) {
                if (it->first < jt->first)
                    ++it;
                else if (jt->first < it->first)
                    ++jt;
                else {
                    s += it->second * jt->second;
                    ++it, ++jt;
                }
            }
            if (!hopfdeform::is_zero(s)) out.emplace_back(r, std::move(s));
        }
        return out;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        Matrix out(rows_, o.cols_);
        for (Index r = 0; r < rows_; ++r) {
            SparseVec acc;
            for (const auto& e : row_[r]) sv_axpy(acc, e.second, o.row_[e.first]);
            out.row_[r] = std::move(acc);
        }
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix sum: dimension mismatch");
        Matrix out = *this;
        for (Index r = 0; r < rows_; ++r) sv_axpy(out.row_[r], Scalar(1), o.row_[r]);
        return out;
    }

    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix difference: dimension mismatch");
        Matrix out = *this;
        for (Index r = 0; r < rows_; ++r) sv_axpy(out.row_[r], Scalar(-1), o.row_[r]);
        return out;
    }

    Matrix scaled(const Scalar& c) const {
        Matrix out = *this;
        for (auto& r : out.row_) sv_scale(r, c);
        return out;
    }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (Index r = 0; r < rows_; ++r)
            if (!sv_equal(row_[r], o.row_[r])) return false;
        return true;
    }

    static Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
        Matrix out(a.rows_ + b.rows_, a.cols_);
        for (Index r = 0; r < a.rows_; ++r) out.row_[r] = a.row_[r];
        for (Index r = 0; r < b.rows_; ++r) out.row_[a.rows_ + r] = b.row_[r];
        return out;
    }

    SparseVec column(Index c) const {
        SparseVec out;
        for (Index r = 0; r < rows_; ++r) {
            Scalar v = sv_get(row_[r], c);
            if (!hopfdeform::is_zero(v)) out.emplace_back(r, std::move(v));
        }
        return out;
    }

private:
    void check_range(Index r, Index c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    }

    Index rows_, cols_;
    std::vector<SparseVec> row_;
};

// Incremental reduced-row-echelon machine. Rows are forward-reduced on
// insertion; full back-substitution runs lazily before any basis query. The
// RREF of a span is unique, so every derived basis is deterministic.
class RrefBuilder {
public:
    explicit RrefBuilder(Index cols) : cols_(cols), pivot_of_col_(cols, -1) {}

    /// Reduces and, if nonzero remains, installs the row as a new pivot row.
    /// Returns true when the rank grew.
    bool insert(SparseVec row) {
        bool canonical = true;
        for (std::size_t i = 0; i < row.size() && canonical; ++i)
            canonical = !is_zero(row[i].second) && (i == 0 || row[i - 1].first < row[i].first);
        if (!canonical) sv_sort_combine(row);
        reduce_forward(row);
        if (row.empty()) return false;
        Scalar inv = 1 / row[0].second;
        sv_scale(row, inv);
        pivot_of_col_[row[0].first] = static_cast<std::ptrdiff_t>(rows_.size());
        rows_.push_back(std::move(row));
        finalized_ = false;
        return true;
    }

    /// Canonical residue of `row` modulo the row space.
    void reduce(SparseVec& row) {
        finalize();
        reduce_forward(row);
    }

    Index rank() const { return rows_.size(); }
    Index cols() const { return cols_; }
    bool has_pivot(Index col) const { return pivot_of_col_[col] >= 0; }

    /// Pivot columns in increasing order.
    std::vector<Index> pivot_cols() const {
        std::vector<Index> out;
        out.reserve(rows_.size());
        for (Index c = 0; c < cols_; ++c)
            if (pivot_of_col_[c] >= 0) out.push_back(c);
        return out;
    }

    /// RREF rows ordered by pivot column.
    std::vector<SparseVec> echelon_rows() {
        finalize();
        std::vector<SparseVec> out;
        out.reserve(rows_.size());
        for (Index c : pivot_cols()) out.push_back(rows_[static_cast<std::size_t>(pivot_of_col_[c])]);
        return out;
    }

    /// Standard kernel basis: one vector per free column f, with v[f] = 1 and
    /// v[pivot] = -R[pivot_row][f].
    std::vector<SparseVec> kernel_basis() {
        finalize();
        std::vector<SparseVec> out;
        auto pivots = pivot_cols();
        for (Index f = 0; f < cols_; ++f) {
            if (pivot_of_col_[f] >= 0) continue;
            SparseVec v;
            for (Index p : pivots) {
                Scalar c = sv_get(rows_[static_cast<std::size_t>(pivot_of_col_[p])], f);
                if (!is_zero(c)) v.emplace_back(p, -c);
            }
            v.emplace_back(f, Scalar(1));
            sv_sort_combine(v);
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    void reduce_forward(SparseVec& row) const {
        std::size_t i = 0;
        while (i < row.size()) {
            auto p = pivot_of_col_[row[i].first];
            if (p < 0) {
                ++i;
                continue;
            }
            Scalar c = -row[i].second;
            sv_axpy(row, c, rows_[static_cast<std::size_t>(p)]);
        }
    }

    // Back-substitution in decreasing pivot order; a row being cleaned only
    // meets pivot columns of rows already cleaned.
    void finalize() {
        if (finalized_) return;
        auto pivots = pivot_cols();
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            auto& row = rows_[static_cast<std::size_t>(pivot_of_col_[*it])];
            std::size_t i = 1;
            while (i < row.size()) {
                auto p = pivot_of_col_[row[i].first];
                if (p < 0) {
                    ++i;
                    continue;
                }
                Scalar c = -row[i].second;
                sv_axpy(row, c, rows_[static_cast<std::size_t>(p)]);
            }
        }
        finalized_ = true;
    }

    Index cols_;
    std::vector<SparseVec> rows_;
    std::vector<std::ptrdiff_t> pivot_of_col_;
    bool finalized_ = true;
};

struct EchelonReport {
    Index rank = 0;
    std::vector<Index> pivot_cols;
    std::vector<SparseVec> kernel_basis;     // columns of length cols
    std::vector<SparseVec> row_space_basis;  // RREF rows
};

inline EchelonReport reduce(const Matrix& m) {
    RrefBuilder b(m.cols());
    for (Index r = 0; r < m.rows(); ++r) b.insert(m.row(r));
    EchelonReport rep;
    rep.rank = b.rank();
    rep.pivot_cols = b.pivot_cols();
    rep.kernel_basis = b.kernel_basis();
    rep.row_space_basis = b.echelon_rows();
    return rep;
}

inline Index rank(const Matrix& m) {
    RrefBuilder b(m.cols());
    for (Index r = 0; r < m.rows(); ++r) b.insert(m.row(r));
    return b.rank();
}

/// Kernel basis of m (solutions of m v = 0), deterministic.
inline std::vector<SparseVec> kernel(const Matrix& m) {
    RrefBuilder b(m.cols());
    for (Index r = 0; r < m.rows(); ++r) b.insert(m.row(r));
    return b.kernel_basis();
}

/// Particular solution of m x = b with free variables set to zero (the
/// RREF-canonical one), or nullopt when the system is inconsistent.
inline std::optional<SparseVec> solve(const Matrix& m, const SparseVec& b) {
    for (const auto& e : b)
        if (e.first >= m.rows()) throw std::invalid_argument("solve: rhs dimension mismatch");
    const Index n = m.cols();
    RrefBuilder builder(n + 1);  // last column carries the rhs
    for (Index r = 0; r < m.rows(); ++r) {
        SparseVec row = m.row(r);
        Scalar rb = sv_get(b, r);
        if (!is_zero(rb)) row.emplace_back(n, rb);
        if (!builder.insert(std::move(row))) continue;
        if (builder.has_pivot(n)) return std::nullopt;
    }
    SparseVec x;
    for (const auto& row : builder.echelon_rows()) {
        Index p = row[0].first;
        Scalar v = sv_get(row, n);
        if (!is_zero(v)) x.emplace_back(p, std::move(v));
    }
    return x;
}

struct SubquotientReport {
    Index dim = 0;
    std::vector<SparseVec> representatives;  // kernel columns of d_out
};

/// dim(ker d_out / im d_in) together with kernel columns whose classes form a
/// basis, selected by pivot completion of the image basis inside the kernel
/// basis. Throws "not a complex" when d_out * d_in != 0.
inline SubquotientReport subquotient_dim(const Matrix& d_in, const Matrix& d_out) {
    if (d_in.rows() != d_out.cols())
        throw std::invalid_argument("subquotient_dim: dimension mismatch");
    if (!(d_out * d_in).is_zero()) throw std::runtime_error("not a complex");

    std::vector<SparseVec> ker = kernel(d_out);

    RrefBuilder completion(d_out.cols());
    Matrix d_in_t = d_in.transpose();
    for (Index r = 0; r < d_in_t.rows(); ++r) completion.insert(d_in_t.row(r));
    Index im_rank = completion.rank();

    SubquotientReport rep;
    for (const auto& k : ker)
        if (completion.insert(k)) rep.representatives.push_back(k);
    rep.dim = rep.representatives.size();
    if (rep.dim != ker.size() - im_rank)
        throw std::logic_error("subquotient_dim: image not contained in kernel");
    return rep;
}

}  // namespace hopfdeform
