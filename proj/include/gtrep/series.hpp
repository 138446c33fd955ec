#pragma once

#include <utility>
#include <vector>

#include "gtrep/errors.hpp"
#include "gtrep/polynomial.hpp"
#include "gtrep/rational.hpp"
#include "gtrep/sparse.hpp"

namespace gtrep {

/// Formal power series in u^{-1}, truncated at order R: coefficients of
/// u^0, u^{-1}, ..., u^{-R} are retained (densely, including zeros).
/// All operations respect the truncation order of their operands.
template <typename T>
class TruncatedSeries {
public:
    TruncatedSeries(int order, const T& zero)
        : c_(static_cast<std::size_t>(order) + 1, zero) {
        if (order < 0) throw InvalidSeries("negative truncation order");
    }

    static TruncatedSeries one(int order, const T& one_elem) {
        TruncatedSeries s(order, zero_like(one_elem));
        s.c_[0] = one_elem;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }

    const T& coeff(int m) const { return c_.at(static_cast<std::size_t>(m)); }
    void set_coeff(int m, T v) { c_.at(static_cast<std::size_t>(m)) = std::move(v); }

    bool is_zero() const {
        for (const auto& v : c_)
            if (!is_zero_value(v)) return false;
        return true;
    }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        check_order(o);
        for (std::size_t m = 0; m < c_.size(); ++m) c_[m] += o.c_[m];
        return *this;
    }

    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        check_order(o);
        for (std::size_t m = 0; m < c_.size(); ++m) c_[m] -= o.c_[m];
        return *this;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
        return a += b;
    }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
        return a -= b;
    }

    /// Cauchy product to the smaller of the two orders; coefficient
    /// multiplication keeps operand order.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        const int order = std::min(a.order(), b.order());
        TruncatedSeries r(order, zero_like(a.c_[0]));
        for (int m = 0; m <= order; ++m) {
            T acc = a.c_[0] * b.c_[static_cast<std::size_t>(m)];
            for (int t = 1; t <= m; ++t)
                acc += a.c_[static_cast<std::size_t>(t)] *
                       b.c_[static_cast<std::size_t>(m - t)];
            r.c_[static_cast<std::size_t>(m)] = std::move(acc);
        }
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const Rat& s) {
        TruncatedSeries r(a);
        for (auto& v : r.c_) v = v * s;
        return r;
    }

    /// Equality per the retained coefficients; orders must agree.
    bool operator==(const TruncatedSeries& o) const { return c_ == o.c_; }
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

private:
    void check_order(const TruncatedSeries& o) const {
        if (o.c_.size() != c_.size())
            throw InvalidSeries("truncation order mismatch");
    }

    std::vector<T> c_;
};

using RatSeries = TruncatedSeries<Rat>;
using MatrixSeries = TruncatedSeries<SparseMatrix>;

/// Multiplicative inverse of a series with unit constant term:
/// x_0 = 1, x_m = -sum_{t=1..m} s_t x_{m-t}.
template <typename T>
TruncatedSeries<T> series_invert(const TruncatedSeries<T>& s) {
    const T one = one_like(s.coeff(0));
    if (!(s.coeff(0) == one))
        throw InvalidSeries("series_invert: constant term is not the identity");
    TruncatedSeries<T> x = TruncatedSeries<T>::one(s.order(), one);
    for (int m = 1; m <= s.order(); ++m) {
        T acc = s.coeff(1) * x.coeff(m - 1);
        for (int t = 2; t <= m; ++t) acc += s.coeff(t) * x.coeff(m - t);
        x.set_coeff(m, -acc);
    }
    return x;
}

/// Re-expansion of s(u + c) in powers of u^{-1}, to the same order:
/// (u+c)^{-m} = sum_{j>=0} (-1)^j C(m+j-1, j) c^j u^{-m-j}.
template <typename T>
TruncatedSeries<T> series_shift(const TruncatedSeries<T>& s, const Rat& c) {
    if (c == 0) return s;
    TruncatedSeries<T> r(s.order(), zero_like(s.coeff(0)));
    r.set_coeff(0, s.coeff(0));
    for (int w = 1; w <= s.order(); ++w) {
        T acc = s.coeff(w);  // m = w, j = 0
        Rat cp(1);
        Rat sign(1);
        for (int m = w - 1; m >= 1; --m) {
            const int j = w - m;
            cp *= c;
            sign = -sign;
            acc += s.coeff(m) * (sign * Rat(binomial(m + j - 1, j)) * cp);
        }
        r.set_coeff(w, std::move(acc));
    }
    return r;
}

/// Retained prefix of a series at a smaller order.
template <typename T>
TruncatedSeries<T> truncate_series(const TruncatedSeries<T>& s, int R) {
    if (R > s.order())
        throw InvalidSeries("truncate_series: cannot extend the truncation order");
    TruncatedSeries<T> r(R, zero_like(s.coeff(0)));
    for (int m = 0; m <= R; ++m) r.set_coeff(m, s.coeff(m));
    return r;
}

/// Re-expansion of s(u + c) to an explicitly requested order R <= order(s).
template <typename T>
TruncatedSeries<T> series_shift(const TruncatedSeries<T>& s, const Rat& c, int R) {
    if (s.order() < R)
        throw InvalidSeries("series_shift: series order below the requested order");
    return truncate_series(series_shift(s, c), R);
}

/// p(u) u^{-normdeg} as a truncated series; requires deg p <= normdeg.
/// For a monic p of degree normdeg this yields a series with constant term 1.
template <typename T>
TruncatedSeries<T> series_from_poly(const Polynomial<T>& p, int normdeg, int order,
                                    const T& zero) {
    if (p.degree() > normdeg)
        throw InvalidSeries("series_from_poly: degree exceeds normalization");
    TruncatedSeries<T> s(order, zero);
    for (int m = 0; m <= order; ++m) {
        const int j = normdeg - m;
        if (j >= 0 && j <= p.degree()) s.set_coeff(m, p[static_cast<std::size_t>(j)]);
    }
    return s;
}

/// Lift a scalar series to a series of scalar matrices of dimension dim.
inline MatrixSeries lift(const RatSeries& s, int dim) {
    MatrixSeries r(s.order(), SparseMatrix(dim));
    for (int m = 0; m <= s.order(); ++m)
        r.set_coeff(m, SparseMatrix::scalar(dim, s.coeff(m)));
    return r;
}

/// rho(u) * S(u) for a scalar polynomial rho and a truncated series S, split
/// into the polynomial part (powers u^deg(rho) .. u^0) and the tail
/// (u^{-1} .. u^{-(R - deg rho)}). Both parts are exact; requires
/// R >= deg(rho).
inline std::pair<MatrixPoly, std::vector<SparseMatrix>> laurent_product(
    const RatPoly& rho, const MatrixSeries& s, int dim) {
    const int d = rho.degree();
    const int r = s.order();
    if (d < 0) return {MatrixPoly(), {}};
    if (r < d)
        throw TruncationTooSmall(
            "laurent_product: series order below polynomial degree");
    const auto coeff_at = [&](int t) {
        SparseMatrix acc(dim);
        for (int j = std::max(0, t); j <= d; ++j) acc += s.coeff(j - t) * rho[j];
        return acc;
    };
    std::vector<SparseMatrix> poly;
    poly.reserve(static_cast<std::size_t>(d) + 1);
    for (int t = 0; t <= d; ++t) poly.push_back(coeff_at(t));
    std::vector<SparseMatrix> tail;
    tail.reserve(static_cast<std::size_t>(r - d));
    for (int m = 1; m <= r - d; ++m) tail.push_back(coeff_at(-m));
    return {MatrixPoly(std::move(poly)), std::move(tail)};
}

} // namespace gtrep
