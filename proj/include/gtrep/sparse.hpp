#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "gtrep/rational.hpp"

namespace gtrep {

/// Sparse column vector over Rat. Zero entries are never stored.
class SparseVector {
public:
    explicit SparseVector(int dim) : dim_(dim) {
        if (dim < 0) throw std::logic_error("SparseVector: negative dimension");
    }

    static SparseVector unit(int dim, int idx) {
        SparseVector v(dim);
        v.set(idx, Rat(1));
        return v;
    }

    int dim() const { return dim_; }
    bool is_zero() const { return entries_.empty(); }
    const std::map<int, Rat>& entries() const { return entries_; }

    Rat at(int i) const {
        check_index(i);
        auto it = entries_.find(i);
        return it == entries_.end() ? Rat(0) : it->second;
    }

    void set(int i, const Rat& v) {
        check_index(i);
        if (v == 0)
            entries_.erase(i);
        else
            entries_[i] = v;
    }

    void add_to(int i, const Rat& v) {
        check_index(i);
        auto it = entries_.find(i);
        if (it == entries_.end()) {
            if (v != 0) entries_.emplace(i, v);
            return;
        }
        it->second += v;
        if (it->second == 0) entries_.erase(it);
    }

    SparseVector& operator+=(const SparseVector& o) {
        check_dim(o.dim_);
        for (const auto& [i, v] : o.entries_) add_to(i, v);
        return *this;
    }

    SparseVector& operator-=(const SparseVector& o) {
        check_dim(o.dim_);
        for (const auto& [i, v] : o.entries_) add_to(i, -v);
        return *this;
    }

    /// this += c * v
    void add_scaled(const SparseVector& v, const Rat& c) {
        check_dim(v.dim_);
        if (c == 0) return;
        for (const auto& [i, val] : v.entries_) add_to(i, c * val);
    }

    friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
    friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }

    friend SparseVector operator*(const SparseVector& v, const Rat& c) {
        SparseVector r(v.dim_);
        if (c != 0)
            for (const auto& [i, val] : v.entries_) r.entries_.emplace(i, val * c);
        return r;
    }

    SparseVector operator-() const { return *this * Rat(-1); }

    bool operator==(const SparseVector& o) const {
        return dim_ == o.dim_ && entries_ == o.entries_;
    }
    bool operator!=(const SparseVector& o) const { return !(*this == o); }

private:
    void check_index(int i) const {
        if (i < 0 || i >= dim_) throw std::logic_error("SparseVector: index out of range");
    }
    void check_dim(int d) const {
        if (d != dim_) throw std::logic_error("SparseVector: dimension mismatch");
    }

    int dim_;
    std::map<int, Rat> entries_;
};

/// Square sparse matrix over Rat, row-major ordered storage so that entry
/// iteration (and hence every export) is deterministic. Zero entries are
/// never stored.
class SparseMatrix {
public:
    explicit SparseMatrix(int dim) : dim_(dim) {
        if (dim < 0) throw std::logic_error("SparseMatrix: negative dimension");
    }

    static SparseMatrix identity(int dim) { return scalar(dim, Rat(1)); }

    static SparseMatrix scalar(int dim, const Rat& c) {
        SparseMatrix m(dim);
        if (c != 0)
            for (int i = 0; i < dim; ++i) m.rows_[i][i] = c;
        return m;
    }

    int dim() const { return dim_; }
    bool is_zero() const { return rows_.empty(); }

    bool is_identity() const {
        if (static_cast<int>(rows_.size()) != dim_) return false;
        for (const auto& [r, cols] : rows_)
            if (cols.size() != 1 || cols.begin()->first != r || cols.begin()->second != 1)
                return false;
        return true;
    }

    bool is_diagonal() const {
        for (const auto& [r, cols] : rows_)
            for (const auto& [c, v] : cols)
                if (c != r) return false;
        return true;
    }

    Rat at(int r, int c) const {
        check_index(r);
        check_index(c);
        auto it = rows_.find(r);
        if (it == rows_.end()) return Rat(0);
        auto jt = it->second.find(c);
        return jt == it->second.end() ? Rat(0) : jt->second;
    }

    void set(int r, int c, const Rat& v) {
        check_index(r);
        check_index(c);
        if (v == 0) {
            auto it = rows_.find(r);
            if (it != rows_.end()) {
                it->second.erase(c);
                if (it->second.empty()) rows_.erase(it);
            }
        } else {
            rows_[r][c] = v;
        }
    }

    void add_to(int r, int c, const Rat& v) {
        if (v == 0) return;
        check_index(r);
        check_index(c);
        auto& row = rows_[r];
        auto it = row.find(c);
        if (it == row.end()) {
            row.emplace(c, v);
            return;
        }
        it->second += v;
        if (it->second == 0) {
            row.erase(it);
            if (row.empty()) rows_.erase(r);
        }
    }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& [r, cols] : rows_) n += cols.size();
        return n;
    }

    /// Row-major visit of the stored entries: fn(row, col, value).
    template <typename Fn>
    void for_each_entry(Fn&& fn) const {
        for (const auto& [r, cols] : rows_)
            for (const auto& [c, v] : cols) fn(r, c, v);
    }

    /// First stored entry in row-major order, if any.
    std::optional<std::tuple<int, int, Rat>> first_entry() const {
        if (rows_.empty()) return std::nullopt;
        const auto& [r, cols] = *rows_.begin();
        const auto& [c, v] = *cols.begin();
        return std::make_tuple(r, c, v);
    }

    SparseMatrix& operator+=(const SparseMatrix& o) {
        check_dim(o.dim_);
        for (const auto& [r, cols] : o.rows_)
            for (const auto& [c, v] : cols) add_to(r, c, v);
        return *this;
    }

    SparseMatrix& operator-=(const SparseMatrix& o) {
        check_dim(o.dim_);
        for (const auto& [r, cols] : o.rows_)
            for (const auto& [c, v] : cols) add_to(r, c, -v);
        return *this;
    }

    friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) { return a += b; }
    friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) { return a -= b; }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        a.check_dim(b.dim_);
        SparseMatrix r(a.dim_);
        for (const auto& [i, arow] : a.rows_) {
            auto& rrow = r.rows_[i];
            for (const auto& [k, av] : arow) {
                auto it = b.rows_.find(k);
                if (it == b.rows_.end()) continue;
                for (const auto& [j, bv] : it->second) {
                    auto jt = rrow.find(j);
                    if (jt == rrow.end())
                        rrow.emplace(j, av * bv);
                    else
                        jt->second += av * bv;
                }
            }
        }
        r.strip_zeros();
        return r;
    }

    friend SparseMatrix operator*(const SparseMatrix& m, const Rat& c) {
        SparseMatrix r(m.dim_);
        if (c != 0)
            for (const auto& [i, cols] : m.rows_)
                for (const auto& [j, v] : cols) r.rows_[i].emplace(j, v * c);
        return r;
    }

    SparseMatrix operator-() const { return *this * Rat(-1); }

    SparseVector apply(const SparseVector& v) const {
        check_dim(v.dim());
        SparseVector r(dim_);
        for (const auto& [i, cols] : rows_) {
            Rat acc(0);
            for (const auto& [j, m] : cols) {
                auto it = v.entries().find(j);
                if (it != v.entries().end()) acc += m * it->second;
            }
            if (acc != 0) r.set(i, acc);
        }
        return r;
    }

    SparseVector column(int c) const {
        check_index(c);
        SparseVector v(dim_);
        for (const auto& [r, cols] : rows_) {
            auto it = cols.find(c);
            if (it != cols.end()) v.set(r, it->second);
        }
        return v;
    }

    void set_column(int c, const SparseVector& v) {
        check_dim(v.dim());
        for (auto it = rows_.begin(); it != rows_.end();) {
            it->second.erase(c);
            it = it->second.empty() ? rows_.erase(it) : std::next(it);
        }
        for (const auto& [r, val] : v.entries()) rows_[r][c] = val;
    }

    bool operator==(const SparseMatrix& o) const {
        return dim_ == o.dim_ && rows_ == o.rows_;
    }
    bool operator!=(const SparseMatrix& o) const { return !(*this == o); }

private:
    void check_index(int i) const {
        if (i < 0 || i >= dim_) throw std::logic_error("SparseMatrix: index out of range");
    }
    void check_dim(int d) const {
        if (d != dim_) throw std::logic_error("SparseMatrix: dimension mismatch");
    }
    void strip_zeros() {
        for (auto it = rows_.begin(); it != rows_.end();) {
            for (auto jt = it->second.begin(); jt != it->second.end();)
                jt = (jt->second == 0) ? it->second.erase(jt) : std::next(jt);
            it = it->second.empty() ? rows_.erase(it) : std::next(it);
        }
    }

    int dim_;
    std::map<int, std::map<int, Rat>> rows_;
};

inline SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b) {
    return a * b - b * a;
}

// zero/one prototypes, used by the generic series and polynomial code
inline Rat zero_like(const Rat&) { return Rat(0); }
inline Rat one_like(const Rat&) { return Rat(1); }
inline SparseVector zero_like(const SparseVector& v) { return SparseVector(v.dim()); }
inline SparseMatrix zero_like(const SparseMatrix& m) { return SparseMatrix(m.dim()); }
inline SparseMatrix one_like(const SparseMatrix& m) { return SparseMatrix::identity(m.dim()); }

inline bool is_zero_value(const Rat& q) { return q == 0; }
inline bool is_zero_value(const SparseVector& v) { return v.is_zero(); }
inline bool is_zero_value(const SparseMatrix& m) { return m.is_zero(); }

} // namespace gtrep
