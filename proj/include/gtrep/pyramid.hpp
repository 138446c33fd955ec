#pragma once

#include <numeric>
#include <sstream>
#include <vector>

#include "gtrep/errors.hpp"
#include "gtrep/polynomial.hpp"
#include "gtrep/rational.hpp"

namespace gtrep {

/// Left-justified pyramid of brick rows p_1 <= ... <= p_n. Row and column
/// indices in the public API are 1-based, matching the usual conventions
/// for these algebras.
class Pyramid {
public:
    explicit Pyramid(std::vector<int> rows) : rows_(std::move(rows)) {
        if (rows_.empty()) throw InvalidRow("pyramid needs at least one row");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (rows_[i] <= 0) {
                std::ostringstream os;
                os << "row " << i + 1 << " has non-positive length " << rows_[i];
                throw InvalidRow(os.str());
            }
            if (i > 0 && rows_[i] < rows_[i - 1]) {
                std::ostringstream os;
                os << "rows must be weakly increasing; row " << i + 1 << " ("
                   << rows_[i] << ") is shorter than row " << i << " (" << rows_[i - 1]
                   << ")";
                throw NotLeftJustified(os.str());
            }
        }
        total_ = std::accumulate(rows_.begin(), rows_.end(), 0);
        colh_.resize(static_cast<std::size_t>(rows_.back()));
        for (int k = 1; k <= rows_.back(); ++k) {
            int q = 0;
            for (int p : rows_)
                if (p >= k) ++q;
            colh_[static_cast<std::size_t>(k - 1)] = q;
        }
    }

    int height() const { return static_cast<int>(rows_.size()); }   // n
    int bricks() const { return total_; }                           // N
    int columns() const { return rows_.back(); }                    // l = p_n

    int row(int i) const { return rows_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<int>& row_lengths() const { return rows_; }

    int column_height(int k) const { return colh_.at(static_cast<std::size_t>(k - 1)); }
    const std::vector<int>& column_heights() const { return colh_; }

    /// i(k) = min{ i : p_i >= k }; the first row long enough to reach column k.
    int column_start_row(int k) const { return height() - column_height(k) + 1; }

    /// p_1 + ... + p_r.
    int degree_sum(int r) const {
        int s = 0;
        for (int i = 1; i <= r; ++i) s += row(i);
        return s;
    }

    bool is_one_column() const { return rows_.back() == 1; }

    bool operator==(const Pyramid& o) const { return rows_ == o.rows_; }
    bool operator!=(const Pyramid& o) const { return !(*this == o); }

private:
    std::vector<int> rows_;
    std::vector<int> colh_;
    int total_ = 0;
};

/// Weight vector of one pyramid column: the entries lambda_i^{(k)} for
/// i = i(k)..n, weakly decreasing with integer steps on a validated spec.
struct ColumnWeight {
    int column;                 // k
    int start_row;              // i(k)
    std::vector<Rat> weights;   // length q_k
};

/// A pyramid together with a validated grid of highest-weight parameters
/// lambda_i^{(k)} (row i holds p_i entries). Validation enforces
///   dominance:  lambda_i^{(k)} - lambda_{i+1}^{(k)} is a nonnegative integer,
///   generality: lambda_i^{(k)} - lambda_j^{(m)} is never an integer for k != m.
/// Rejection is total: no partially validated spec exists.
class HighestWeightSpec {
public:
    static HighestWeightSpec validate(Pyramid pyr, std::vector<std::vector<Rat>> grid) {
        const int n = pyr.height();
        if (static_cast<int>(grid.size()) != n) {
            std::ostringstream os;
            os << "expected " << n << " weight rows, got " << grid.size();
            throw ShapeMismatch(os.str());
        }
        for (int i = 1; i <= n; ++i) {
            if (static_cast<int>(grid[static_cast<std::size_t>(i - 1)].size()) !=
                pyr.row(i)) {
                std::ostringstream os;
                os << "weight row " << i << " must have " << pyr.row(i)
                   << " entries, got " << grid[static_cast<std::size_t>(i - 1)].size();
                throw ShapeMismatch(os.str());
            }
        }
        for (int i = 1; i < n; ++i)
            for (int k = 1; k <= pyr.row(i); ++k) {
                const Rat diff = grid[static_cast<std::size_t>(i - 1)]
                                     [static_cast<std::size_t>(k - 1)] -
                                 grid[static_cast<std::size_t>(i)]
                                     [static_cast<std::size_t>(k - 1)];
                if (!is_nonneg_integer(diff)) {
                    std::ostringstream os;
                    os << "dominance fails at row " << i << ", column " << k
                       << ": difference " << to_string(diff)
                       << " is not a nonnegative integer";
                    throw NotDominant(os.str(), i, k);
                }
            }
        for (int i = 1; i <= n; ++i)
            for (int k = 1; k <= pyr.row(i); ++k)
                for (int j = 1; j <= n; ++j)
                    for (int m = 1; m <= pyr.row(j); ++m) {
                        if (k == m) continue;
                        const Rat diff = grid[static_cast<std::size_t>(i - 1)]
                                             [static_cast<std::size_t>(k - 1)] -
                                         grid[static_cast<std::size_t>(j - 1)]
                                             [static_cast<std::size_t>(m - 1)];
                        if (is_integer(diff)) {
                            std::ostringstream os;
                            os << "generality fails: lambda_" << i << "^(" << k
                               << ") - lambda_" << j << "^(" << m << ") = "
                               << to_string(diff) << " is an integer";
                            throw NotGeneric(os.str(), i, k, j, m);
                        }
                    }
        return HighestWeightSpec(std::move(pyr), std::move(grid));
    }

    const Pyramid& pyramid() const { return pyr_; }

    /// lambda_i^{(k)}.
    const Rat& entry(int i, int k) const {
        return lam_.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(k - 1));
    }

    /// l_i^{(k)} = lambda_i^{(k)} - i + 1.
    Rat shifted_entry(int i, int k) const { return entry(i, k) - i + 1; }

    const std::vector<std::vector<Rat>>& grid() const { return lam_; }

    /// lambda_i(u) = prod_k (u + lambda_i^{(k)}), monic of degree p_i.
    RatPoly weight_poly(int i) const {
        RatPoly p = rat_poly({Rat(1)});
        for (int k = 1; k <= pyr_.row(i); ++k) p = p * linear_monic(entry(i, k));
        return p;
    }

    ColumnWeight column_weight(int k) const {
        ColumnWeight cw;
        cw.column = k;
        cw.start_row = pyr_.column_start_row(k);
        for (int i = cw.start_row; i <= pyr_.height(); ++i)
            cw.weights.push_back(entry(i, k));
        return cw;
    }

    bool operator==(const HighestWeightSpec& o) const {
        return pyr_ == o.pyr_ && lam_ == o.lam_;
    }

private:
    HighestWeightSpec(Pyramid pyr, std::vector<std::vector<Rat>> lam)
        : pyr_(std::move(pyr)), lam_(std::move(lam)) {}

    Pyramid pyr_;
    std::vector<std::vector<Rat>> lam_;
};

} // namespace gtrep
