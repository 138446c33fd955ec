#pragma once

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include "gtrep/errors.hpp"
#include "gtrep/polynomial.hpp"
#include "gtrep/pyramid.hpp"
#include "gtrep/rational.hpp"

namespace gtrep {

/// Classical triangular pattern with integer entries, stored top row first
/// (rows[0] has the full length, the last row has length 1). Entries are
/// offsets against a column-wide rational base, so interlacing is pure
/// integer arithmetic.
struct Triangle {
    std::vector<std::vector<long long>> rows;

    bool operator==(const Triangle& o) const { return rows == o.rows; }
    bool operator!=(const Triangle& o) const { return !(*this == o); }
    bool operator<(const Triangle& o) const { return rows < o.rows; }

    /// Integer interlacing below a fixed top row: a[j] >= b[j] >= a[j+1]
    /// for every pair of consecutive rows.
    bool interlaces() const {
        for (std::size_t t = 0; t + 1 < rows.size(); ++t) {
            const auto& a = rows[t];
            const auto& b = rows[t + 1];
            if (b.size() + 1 != a.size()) return false;
            for (std::size_t j = 0; j < b.size(); ++j)
                if (!(a[j] >= b[j] && b[j] >= a[j + 1])) return false;
        }
        return !rows.empty() && rows.back().size() == 1;
    }
};

namespace detail {

inline void enumerate_rows_below(Triangle& partial, std::vector<Triangle>& out) {
    // copy: the recursion below grows partial.rows, invalidating references
    const std::vector<long long> above = partial.rows.back();
    if (above.size() == 1) {
        out.push_back(partial);
        return;
    }
    std::vector<long long> row(above.size() - 1);
    // descending-first at every position gives the canonical order: the
    // first triangle emitted is the one with all entries maximal
    const auto rec = [&](auto&& self, std::size_t j) -> void {
        if (j == row.size()) {
            partial.rows.push_back(row);
            enumerate_rows_below(partial, out);
            partial.rows.pop_back();
            return;
        }
        for (long long v = above[j]; v >= above[j + 1]; --v) {
            row[j] = v;
            self(self, j + 1);
        }
    };
    rec(rec, 0);
}

} // namespace detail

/// All triangles with integer-step interlacing below the given top row,
/// in deterministic order (entries read top row to bottom row, left to
/// right, descending values first).
inline std::vector<Triangle> enumerate_triangles(const std::vector<long long>& top) {
    Triangle t;
    t.rows.push_back(top);
    std::vector<Triangle> out;
    if (top.empty()) return out;
    detail::enumerate_rows_below(t, out);
    return out;
}

/// Triangles below one pyramid column's weight vector; entries are integer
/// offsets against the column's last weight entry.
inline std::vector<Triangle> enumerate_column_patterns(const ColumnWeight& cw) {
    const Rat base = cw.weights.back();
    std::vector<long long> top;
    top.reserve(cw.weights.size());
    for (const Rat& w : cw.weights) top.push_back(to_longlong(w - base));
    return enumerate_triangles(top);
}

/// Dimension of the irreducible gl_q module with highest weight a
/// (weakly decreasing, integer steps): prod_{i<j} (a_i - a_j + j - i)/(j - i).
inline Int weyl_dimension(const std::vector<Rat>& a) {
    const int q = static_cast<int>(a.size());
    Rat acc(1);
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
            acc *= (a[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(j)] +
                    (j - i)) /
                   Rat(j - i);
    if (!is_integer(acc) || acc <= 0)
        throw Error("WeylDimension", "formula did not produce a positive integer: " +
                                         to_string(acc));
    return numerator(acc);
}

/// One Gelfand-Tsetlin pattern: per pyramid column, a classical triangle of
/// integer offsets, plus the shared rational base from the highest weight.
/// Entry (r, i, k) exists for 1 <= i <= r <= n and k <= p_i; the top row
/// (r = n) always equals the highest weight.
class GTPattern {
public:
    GTPattern(std::shared_ptr<const HighestWeightSpec> spec, std::vector<Triangle> tri)
        : spec_(std::move(spec)), tri_(std::move(tri)) {}

    const HighestWeightSpec& spec() const { return *spec_; }
    const std::vector<Triangle>& triangles() const { return tri_; }

    /// lambda_{ri}^{(k)}.
    Rat entry(int r, int i, int k) const {
        check_entry(r, i, k);
        const auto& pyr = spec_->pyramid();
        const int start = pyr.column_start_row(k);
        const auto& tri = tri_.at(static_cast<std::size_t>(k - 1));
        const long long off = tri.rows.at(static_cast<std::size_t>(pyr.height() - r))
                                  .at(static_cast<std::size_t>(i - start));
        return base(k) + off;
    }

    /// l_{ri}^{(k)} = lambda_{ri}^{(k)} - i + 1.
    Rat shifted(int r, int i, int k) const { return entry(r, i, k) - i + 1; }

    /// lambda_{ri}(u) = prod_k (u + lambda_{ri}^{(k)}), monic of degree p_i.
    RatPoly row_poly(int r, int i) const {
        if (i < 1 || r < i || r > spec_->pyramid().height())
            throw std::out_of_range("row_poly: bad (r, i)");
        RatPoly p = rat_poly({Rat(1)});
        for (int k = 1; k <= spec_->pyramid().row(i); ++k)
            p = p * linear_monic(entry(r, i, k));
        return p;
    }

    bool is_highest() const {
        const auto& pyr = spec_->pyramid();
        for (int k = 1; k <= pyr.columns(); ++k)
            for (int r = pyr.column_start_row(k); r < pyr.height(); ++r)
                for (int i = pyr.column_start_row(k); i <= r; ++i)
                    if (entry(r, i, k) != spec_->entry(i, k)) return false;
        return true;
    }

    /// Pattern with lambda_{ri}^{(k)} replaced by lambda_{ri}^{(k)} + delta
    /// (delta = +1 or -1), or nothing when interlacing would break. The top
    /// row is immutable.
    std::optional<GTPattern> moved(int r, int i, int k, int delta) const {
        const auto& pyr = spec_->pyramid();
        if (r == pyr.height())
            throw ImmutableTopRow("the top pattern row is fixed by the highest weight");
        check_entry(r, i, k);
        const int start = pyr.column_start_row(k);
        Triangle tri = tri_.at(static_cast<std::size_t>(k - 1));
        tri.rows.at(static_cast<std::size_t>(pyr.height() - r))
            .at(static_cast<std::size_t>(i - start)) += delta;
        if (!tri.interlaces()) return std::nullopt;
        std::vector<Triangle> all = tri_;
        all[static_cast<std::size_t>(k - 1)] = std::move(tri);
        return GTPattern(spec_, std::move(all));
    }

    bool operator==(const GTPattern& o) const { return tri_ == o.tri_; }

private:
    Rat base(int k) const { return spec_->entry(spec_->pyramid().height(), k); }

    void check_entry(int r, int i, int k) const {
        const auto& pyr = spec_->pyramid();
        if (i < 1 || r < i || r > pyr.height() || k < 1 || k > pyr.row(i))
            throw std::out_of_range("pattern entry (r, i, k) out of range");
    }

    std::shared_ptr<const HighestWeightSpec> spec_;
    std::vector<Triangle> tri_;
};

/// The full basis of patterns for a validated spec: per-column triangle
/// lists combined in mixed-radix order (column 1 varies slowest). The
/// ordering is deterministic, the highest pattern comes first.
class BasisIndex {
public:
    static BasisIndex enumerate(std::shared_ptr<const HighestWeightSpec> spec) {
        BasisIndex b;
        b.spec_ = std::move(spec);
        const auto& pyr = b.spec_->pyramid();
        const int l = pyr.columns();
        b.col_triangles_.resize(static_cast<std::size_t>(l));
        b.col_index_.resize(static_cast<std::size_t>(l));
        for (int k = 1; k <= l; ++k) {
            auto tris = enumerate_column_patterns(b.spec_->column_weight(k));
            auto& idx = b.col_index_[static_cast<std::size_t>(k - 1)];
            for (std::size_t t = 0; t < tris.size(); ++t) idx.emplace(tris[t], t);
            b.col_triangles_[static_cast<std::size_t>(k - 1)] = std::move(tris);
        }
        b.strides_.assign(static_cast<std::size_t>(l), 1);
        for (int k = l - 1; k >= 1; --k)
            b.strides_[static_cast<std::size_t>(k - 1)] =
                b.strides_[static_cast<std::size_t>(k)] *
                b.col_triangles_[static_cast<std::size_t>(k)].size();
        b.dim_ = b.strides_[0] * b.col_triangles_[0].size();
        return b;
    }

    const HighestWeightSpec& spec() const { return *spec_; }
    std::shared_ptr<const HighestWeightSpec> spec_ptr() const { return spec_; }

    std::size_t dimension() const { return dim_; }

    std::size_t column_count(int k) const {
        return col_triangles_.at(static_cast<std::size_t>(k - 1)).size();
    }

    GTPattern pattern(std::size_t idx) const {
        if (idx >= dim_) throw std::out_of_range("pattern index out of range");
        std::vector<Triangle> tris;
        tris.reserve(col_triangles_.size());
        for (std::size_t k = 0; k < col_triangles_.size(); ++k)
            tris.push_back(col_triangles_[k][(idx / strides_[k]) % col_triangles_[k].size()]);
        return GTPattern(spec_, std::move(tris));
    }

    std::size_t index_of(const GTPattern& p) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < col_triangles_.size(); ++k) {
            auto it = col_index_[k].find(p.triangles()[k]);
            if (it == col_index_[k].end())
                throw std::logic_error("index_of: pattern not in basis");
            idx += it->second * strides_[k];
        }
        return idx;
    }

    std::size_t highest_index() const {
        std::vector<Triangle> tris;
        const auto& pyr = spec_->pyramid();
        for (int k = 1; k <= pyr.columns(); ++k) {
            const auto cw = spec_->column_weight(k);
            const Rat base = cw.weights.back();
            Triangle t;
            for (std::size_t len = cw.weights.size(); len >= 1; --len) {
                std::vector<long long> row;
                for (std::size_t j = 0; j < len; ++j)
                    row.push_back(to_longlong(cw.weights[j] - base));
                t.rows.push_back(std::move(row));
            }
            tris.push_back(std::move(t));
        }
        return index_of(GTPattern(spec_, std::move(tris)));
    }

    /// Index of the pattern obtained by a single-entry move, or nothing when
    /// the move leaves the pattern family. Only column k is re-examined.
    std::optional<std::size_t> moved_index(std::size_t idx, int r, int i, int k,
                                           int delta) const {
        const auto& pyr = spec_->pyramid();
        if (r == pyr.height())
            throw ImmutableTopRow("the top pattern row is fixed by the highest weight");
        if (k < 1 || k > pyr.columns())
            throw std::out_of_range("moved_index: bad column k");
        const int start = pyr.column_start_row(k);
        if (i < start || i < 1 || r < i || r > pyr.height())
            throw std::out_of_range("moved_index: bad (r, i, k)");
        const auto& tris = col_triangles_[static_cast<std::size_t>(k - 1)];
        const std::size_t old_t = (idx / strides_[static_cast<std::size_t>(k - 1)]) %
                                  tris.size();
        Triangle tri = tris[old_t];
        tri.rows.at(static_cast<std::size_t>(pyr.height() - r))
            .at(static_cast<std::size_t>(i - start)) += delta;
        if (!tri.interlaces()) return std::nullopt;
        auto it = col_index_[static_cast<std::size_t>(k - 1)].find(tri);
        if (it == col_index_[static_cast<std::size_t>(k - 1)].end()) return std::nullopt;
        return idx + (it->second - old_t) * strides_[static_cast<std::size_t>(k - 1)];
    }

private:
    BasisIndex() = default;

    std::shared_ptr<const HighestWeightSpec> spec_;
    std::vector<std::vector<Triangle>> col_triangles_;
    std::vector<std::map<Triangle, std::size_t>> col_index_;
    std::vector<std::size_t> strides_;
    std::size_t dim_ = 0;
};

/// The full pattern basis of a validated spec.
inline BasisIndex enumerate_patterns(const HighestWeightSpec& spec) {
    return BasisIndex::enumerate(std::make_shared<const HighestWeightSpec>(spec));
}

/// Basis dimension by enumeration; the verification suites cross-check this
/// against the product of Weyl dimension formula values.
inline std::size_t dimension(const HighestWeightSpec& spec) {
    return enumerate_patterns(spec).dimension();
}

/// The normalization constant N_Lambda linking the raw basis family to the
/// normalized one: over all (r, i) with 1 <= i <= r <= n-1 and each k <= p_i,
/// the product of the integer-step ranges
///   (x - l_i^{(k)})(x - l_i^{(k)} + 1) ... (x - l_{ri}^{(k)} - 1)
/// with x = l_j^{(m)} over j < i (top-row values) and x = l_{r-1,j}^{(m)} over
/// i <= j <= r-1 (pattern row r-1). Ranges are empty when the pattern entry
/// equals the top-row entry; the result is never zero.
inline Rat normalization_constant(const GTPattern& p) {
    const auto& spec = p.spec();
    const auto& pyr = spec.pyramid();
    const int n = pyr.height();
    Rat acc(1);
    for (int r = 1; r <= n - 1; ++r)
        for (int i = 1; i <= r; ++i)
            for (int k = 1; k <= pyr.row(i); ++k) {
                const long long steps = to_longlong(spec.entry(i, k) - p.entry(r, i, k));
                if (steps == 0) continue;
                const Rat li = spec.shifted_entry(i, k);
                for (int j = 1; j <= i - 1; ++j)
                    for (int m = 1; m <= pyr.row(j); ++m) {
                        const Rat x = spec.shifted_entry(j, m);
                        for (long long t = 0; t < steps; ++t) acc *= x - li + t;
                    }
                for (int j = i; j <= r - 1; ++j)
                    for (int m = 1; m <= pyr.row(j); ++m) {
                        const Rat x = p.shifted(r - 1, j, m);
                        for (long long t = 0; t < steps; ++t) acc *= x - li + t;
                    }
            }
    return acc;
}

} // namespace gtrep
