#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "gtrep/errors.hpp"
#include "gtrep/rational.hpp"
#include "gtrep/sparse.hpp"

namespace gtrep {

/// Dense univariate polynomial in u with coefficients in T (Rat for scalar
/// polynomials, SparseMatrix for operator polynomials, SparseVector for the
/// interpolation columns). Trailing zero coefficients are stripped, so the
/// zero polynomial is the empty coefficient list with degree() == -1.
template <typename T>
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { strip(); }

    static Polynomial constant(T v) {
        std::vector<T> c;
        c.push_back(std::move(v));
        return Polynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }

    const T& operator[](std::size_t j) const { return c_.at(j); }
    const std::vector<T>& coeffs() const { return c_; }

    /// Coefficient of u^j, with an explicit zero for j beyond the degree.
    T coeff_or(std::size_t j, T zero) const { return j < c_.size() ? c_[j] : zero; }

    Polynomial& operator+=(const Polynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), zero_like(o.c_.back()));
        for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
        strip();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), zero_like(o.c_.back()));
        for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
        strip();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& v : r.c_) v = -v;
        return r;
    }

    /// Product; coefficient multiplication keeps operand order (matters for
    /// matrix coefficients).
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        const int da = a.degree(), db = b.degree();
        std::vector<T> out;
        out.reserve(da + db + 1);
        for (int k = 0; k <= da + db; ++k) {
            const int lo = std::max(0, k - db), hi = std::min(da, k);
            T acc = a.c_[lo] * b.c_[k - lo];
            for (int j = lo + 1; j <= hi; ++j) acc += a.c_[j] * b.c_[k - j];
            out.push_back(std::move(acc));
        }
        return Polynomial(std::move(out));
    }

    friend Polynomial operator*(const Polynomial& a, const Rat& s) {
        if (s == 0) return Polynomial();
        Polynomial r(a);
        for (auto& v : r.c_) v = v * s;
        return r;
    }

    /// Evaluation by Horner's rule; `zero` supplies the result shape when the
    /// polynomial is empty.
    T eval_or(const Rat& x, T zero) const {
        if (c_.empty()) return zero;
        T acc = c_.back();
        for (int j = static_cast<int>(c_.size()) - 2; j >= 0; --j) acc = acc * x + c_[j];
        return acc;
    }

    /// p(u + c), expanded exactly: coefficient of u^j becomes
    /// sum_{m >= j} C(m, j) c^{m-j} a_m.
    Polynomial shifted(const Rat& c) const {
        if (c == 0 || c_.empty()) return *this;
        std::vector<T> out;
        out.reserve(c_.size());
        const int d = degree();
        for (int j = 0; j <= d; ++j) {
            T acc = c_[j];
            Rat cp(1);
            for (int m = j + 1; m <= d; ++m) {
                cp *= c;
                acc += c_[m] * (Rat(binomial(m, j)) * cp);
            }
            out.push_back(std::move(acc));
        }
        return Polynomial(std::move(out));
    }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    void strip() {
        while (!c_.empty() && is_zero_value(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

using RatPoly = Polynomial<Rat>;
using MatrixPoly = Polynomial<SparseMatrix>;
using VectorPoly = Polynomial<SparseVector>;

/// s(u) * p(u) where s has scalar coefficients and p coefficients in T.
template <typename T>
Polynomial<T> scale_convolve(const RatPoly& s, const Polynomial<T>& p) {
    if (s.is_zero() || p.is_zero()) return Polynomial<T>();
    const int ds = s.degree(), dp = p.degree();
    std::vector<T> out;
    out.reserve(ds + dp + 1);
    for (int k = 0; k <= ds + dp; ++k) {
        const int lo = std::max(0, k - dp), hi = std::min(ds, k);
        T acc = p[k - lo] * s[lo];
        for (int j = lo + 1; j <= hi; ++j) acc += p[k - j] * s[j];
        out.push_back(std::move(acc));
    }
    return Polynomial<T>(std::move(out));
}

inline RatPoly rat_poly(std::initializer_list<Rat> cs) {
    return RatPoly(std::vector<Rat>(cs));
}

/// Monic linear factor u + a.
inline RatPoly linear_monic(const Rat& a) { return rat_poly({a, Rat(1)}); }

inline Rat eval(const RatPoly& p, const Rat& x) { return p.eval_or(x, Rat(0)); }

/// M(x) * v for an operator polynomial, without forming M(x).
inline SparseVector apply_poly(const MatrixPoly& p, const Rat& x, const SparseVector& v) {
    if (p.is_zero()) return SparseVector(v.dim());
    SparseVector acc = p[p.size() - 1].apply(v);
    for (int j = static_cast<int>(p.size()) - 2; j >= 0; --j) {
        acc = acc * x;
        acc += p[j].apply(v);
    }
    return acc;
}

/// Exact Lagrange interpolation through (nodes[s], values[s]). The nodes must
/// be pairwise distinct; the result is the unique polynomial of degree
/// < nodes.size() through all of the points.
template <typename T>
Polynomial<T> lagrange_interpolate(const std::vector<Rat>& nodes,
                                   const std::vector<T>& values) {
    if (nodes.size() != values.size())
        throw std::logic_error("lagrange_interpolate: nodes/values size mismatch");
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b)
            if (nodes[a] == nodes[b]) {
                std::ostringstream os;
                os << "duplicate interpolation nodes at positions " << a << " and " << b
                   << ": " << to_string(nodes[a]);
                throw DegeneratePoints(os.str());
            }
    Polynomial<T> result;
    if (nodes.empty()) return result;

    // master polynomial prod_s (u - x_s)
    RatPoly master = rat_poly({Rat(1)});
    for (const Rat& x : nodes) master = master * linear_monic(-x);

    for (std::size_t s = 0; s < nodes.size(); ++s) {
        // deflate: q = master / (u - x_s), exact synthetic division
        const int d = master.degree();
        std::vector<Rat> q(static_cast<std::size_t>(d));
        Rat carry = master[d];
        for (int j = d - 1; j >= 0; --j) {
            q[j] = carry;
            carry = master[j] + nodes[s] * carry;
        }
        RatPoly qs(std::move(q));
        const Rat denom = eval(qs, nodes[s]);  // prod_{t != s} (x_s - x_t), nonzero
        const T scaled = values[s] * (Rat(1) / denom);
        if (is_zero_value(scaled)) continue;
        std::vector<T> term;
        term.reserve(qs.size());
        for (std::size_t j = 0; j < qs.size(); ++j) term.push_back(scaled * qs[j]);
        result += Polynomial<T>(std::move(term));
    }
    return result;
}

/// Location of a nonzero coefficient entry in a two-variable residual.
struct BiPolyWitness {
    int pow_u;
    int pow_v;
    int row;
    int col;
    Rat value;
};

/// Finitely supported polynomial in u and v with SparseMatrix coefficients;
/// zero coefficients are absent from the map.
class BiMatrixPoly {
public:
    explicit BiMatrixPoly(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    bool is_zero() const { return c_.empty(); }
    const std::map<std::pair<int, int>, SparseMatrix>& coeffs() const { return c_; }

    void add_to(int a, int b, const SparseMatrix& m) {
        if (m.is_zero()) return;
        auto key = std::make_pair(a, b);
        auto it = c_.find(key);
        if (it == c_.end()) {
            c_.emplace(key, m);
            return;
        }
        it->second += m;
        if (it->second.is_zero()) c_.erase(it);
    }

    BiMatrixPoly& operator+=(const BiMatrixPoly& o) {
        for (const auto& [k, m] : o.c_) add_to(k.first, k.second, m);
        return *this;
    }

    BiMatrixPoly& operator-=(const BiMatrixPoly& o) {
        for (const auto& [k, m] : o.c_) add_to(k.first, k.second, -m);
        return *this;
    }

    /// P(u) Q(v): coefficient of u^a v^b is P[a] * Q[b].
    static BiMatrixPoly product_uv(const MatrixPoly& p, const MatrixPoly& q, int dim) {
        BiMatrixPoly r(dim);
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < q.size(); ++b)
                r.add_to(static_cast<int>(a), static_cast<int>(b), p[a] * q[b]);
        return r;
    }

    /// Q(v) P(u): coefficient of u^a v^b is Q[b] * P[a].
    static BiMatrixPoly product_vu(const MatrixPoly& p, const MatrixPoly& q, int dim) {
        BiMatrixPoly r(dim);
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < q.size(); ++b)
                r.add_to(static_cast<int>(a), static_cast<int>(b), q[b] * p[a]);
        return r;
    }

    /// [P(u), Q(v)] = P(u) Q(v) - Q(v) P(u).
    static BiMatrixPoly commutator_uv(const MatrixPoly& p, const MatrixPoly& q, int dim) {
        BiMatrixPoly r(dim);
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < q.size(); ++b)
                r.add_to(static_cast<int>(a), static_cast<int>(b),
                         commutator(p[a], q[b]));
        return r;
    }

    /// (u - v) * this.
    BiMatrixPoly times_u_minus_v() const {
        BiMatrixPoly r(dim_);
        for (const auto& [k, m] : c_) {
            r.add_to(k.first + 1, k.second, m);
            r.add_to(k.first, k.second + 1, -m);
        }
        return r;
    }

    std::optional<BiPolyWitness> first_nonzero() const {
        if (c_.empty()) return std::nullopt;
        const auto& [k, m] = *c_.begin();
        auto e = m.first_entry();
        return BiPolyWitness{k.first, k.second, std::get<0>(*e), std::get<1>(*e),
                             std::get<2>(*e)};
    }

private:
    int dim_;
    std::map<std::pair<int, int>, SparseMatrix> c_;
};

} // namespace gtrep
