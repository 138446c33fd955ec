#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "gtrep/errors.hpp"
#include "gtrep/patterns.hpp"
#include "gtrep/polynomial.hpp"
#include "gtrep/pyramid.hpp"
#include "gtrep/rational.hpp"
#include "gtrep/series.hpp"
#include "gtrep/sparse.hpp"

namespace gtrep {

/// Scalar prefactor pi_i(u) = u^{p_1} (u-1)^{p_2} ... (u-i+1)^{p_i};
/// A_i(u) = pi_i(u) a_i(u).
inline RatPoly pi_prefactor(const Pyramid& pyr, int i) {
    RatPoly p = rat_poly({Rat(1)});
    for (int j = 1; j <= i; ++j)
        for (int t = 0; t < pyr.row(j); ++t) p = p * linear_monic(Rat(1 - j));
    return p;
}

/// Scalar prefactor rho_i(u) = u^{p_1} ... (u-i+2)^{p_{i-1}} (u-i+1)^{p_{i+1}};
/// B_i(u) = rho_i(u) b_i(u).
inline RatPoly rho_prefactor(const Pyramid& pyr, int i) {
    RatPoly p = rat_poly({Rat(1)});
    for (int j = 1; j <= i - 1; ++j)
        for (int t = 0; t < pyr.row(j); ++t) p = p * linear_monic(Rat(1 - j));
    for (int t = 0; t < pyr.row(i + 1); ++t) p = p * linear_monic(Rat(1 - i));
    return p;
}

/// The interpolation nodes for row r of a pattern: -l_{ri}^{(k)} over
/// i = 1..r, k = 1..p_i. There are exactly p_1 + ... + p_r of them and they
/// are pairwise distinct for every pattern of a validated spec.
inline std::vector<Rat> evaluation_points(const GTPattern& p, int r) {
    const auto& pyr = p.spec().pyramid();
    if (r < 1 || r > pyr.height() - 1)
        throw std::out_of_range("evaluation_points: r must be in 1..n-1");
    std::vector<Rat> nodes;
    nodes.reserve(static_cast<std::size_t>(pyr.degree_sum(r)));
    for (int i = 1; i <= r; ++i)
        for (int k = 1; k <= pyr.row(i); ++k) nodes.push_back(-p.shifted(r, i, k));
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b)
            if (nodes[a] == nodes[b]) {
                std::ostringstream os;
                os << "coinciding evaluation points " << to_string(nodes[a])
                   << " for row " << r;
                throw DegeneratePoints(os.str());
            }
    return nodes;
}

/// Scalar in the raising action at the node -l_{ri}^{(k)}:
///   -lambda_{r+1,1}(x) lambda_{r+1,2}(x-1) ... lambda_{r+1,r+1}(x-r).
/// Vanishes automatically when the raise would collide with row r+1.
inline Rat raise_node_value(const GTPattern& p, int r, int i, int k) {
    const Rat x = -p.shifted(r, i, k);
    Rat acc(-1);
    for (int j = 1; j <= r + 1; ++j) acc *= eval(p.row_poly(r + 1, j), x - (j - 1));
    return acc;
}

/// Scalar in the lowering action at the node -l_{ri}^{(k)}:
///   lambda_{r-1,1}(x) ... lambda_{r-1,r-1}(x-r+2); empty product for r = 1.
inline Rat lower_node_value(const GTPattern& p, int r, int i, int k) {
    const Rat x = -p.shifted(r, i, k);
    Rat acc(1);
    for (int j = 1; j <= r - 1; ++j) acc *= eval(p.row_poly(r - 1, j), x - (j - 1));
    return acc;
}

/// Truncated generating series of the algebra acting on the module, all to
/// one truncation order. Index conventions follow the algebra: d_i for
/// i = 1..n, e_i/f_i/h_i for i = 1..n-1; a_i = d_1(u) d_2(u-1)...d_i(u-i+1)
/// with a_0 = 1. The e_i series has no coefficients below order
/// p_{i+1} - p_i + 1 (checked by the verification suites).
class GeneratorTable {
public:
    int order() const { return order_; }
    int rows() const { return n_; }
    int dim() const { return dim_; }

    int e_min_order(int i) const { return pyr_->row(i + 1) - pyr_->row(i) + 1; }

    const MatrixSeries& a(int i) const { return a_.at(static_cast<std::size_t>(i)); }
    const MatrixSeries& b(int i) const { return at1(b_, i, 1); }
    const MatrixSeries& c(int i) const { return at1(c_, i, 1); }
    const MatrixSeries& d(int i) const { return at1(d_, i, 1); }
    const MatrixSeries& d_inv(int i) const { return at1(dprime_, i, 1); }
    const MatrixSeries& e(int i) const { return at1(e_, i, 1); }
    const MatrixSeries& f(int i) const { return at1(f_, i, 1); }
    const MatrixSeries& h(int i) const { return at1(h_, i, 1); }

    const SparseMatrix& d_coeff(int i, int r) const { return d(i).coeff(r); }
    const SparseMatrix& d_inv_coeff(int i, int r) const { return d_inv(i).coeff(r); }
    const SparseMatrix& e_coeff(int i, int r) const { return e(i).coeff(r); }
    const SparseMatrix& f_coeff(int i, int r) const { return f(i).coeff(r); }
    const SparseMatrix& h_coeff(int i, int r) const { return h(i).coeff(r); }

private:
    friend class Representation;
    GeneratorTable() = default;

    static const MatrixSeries& at1(const std::vector<MatrixSeries>& v, int i, int lo) {
        if (i < lo || i >= static_cast<int>(v.size()) + lo)
            throw std::out_of_range("GeneratorTable: index out of range");
        return v.at(static_cast<std::size_t>(i - lo));
    }

    int order_ = 0;
    int n_ = 0;
    int dim_ = 0;
    std::shared_ptr<const Pyramid> pyr_;
    std::vector<MatrixSeries> a_;        // index 0..n
    std::vector<MatrixSeries> b_, c_;    // index 1..n-1 (stored from 0)
    std::vector<MatrixSeries> d_, dprime_;  // index 1..n
    std::vector<MatrixSeries> e_, f_, h_;   // index 1..n-1
};

/// Branch datum for one admissible lower weight mu: the mu grid itself, the
/// generating vector in the normalized basis, and the dimension of the
/// corresponding module over the one-row-shorter algebra.
struct BranchingDatum {
    std::vector<std::vector<Rat>> mu;
    SparseVector zeta;
    std::size_t sub_dimension;
};

/// The finite-dimensional module over the algebra of a pyramid, realized as
/// exact sparse matrices in the normalized pattern basis. Operators are
/// built lazily and cached; all published values are immutable, and the
/// cache is safe to hit from multiple threads.
///
/// Construction conventions:
///  - A_r(u) is diagonal: the entry at pattern Lambda is
///    lambda_{r1}(u) lambda_{r2}(u-1) ... lambda_{rr}(u-r+1).
///  - B_r(u), C_r(u) are recovered column-by-column by exact Lagrange
///    interpolation through the pattern's nodes -l_{ri}^{(k)}, where the
///    value is the single-entry vector given by the raise/lower node scalar
///    (the zero vector when the moved pattern leaves the family).
class Representation {
public:
    explicit Representation(HighestWeightSpec spec)
        : spec_(std::make_shared<const HighestWeightSpec>(std::move(spec))),
          basis_(std::make_shared<const BasisIndex>(BasisIndex::enumerate(spec_))),
          cache_(std::make_unique<Cache>()) {
        highest_ = basis_->highest_index();
    }

    Representation(Representation&&) = default;
    Representation& operator=(Representation&&) = default;

    const HighestWeightSpec& spec() const { return *spec_; }
    const BasisIndex& basis() const { return *basis_; }
    const Pyramid& pyramid() const { return spec_->pyramid(); }
    int dim() const { return static_cast<int>(basis_->dimension()); }
    std::size_t highest_index() const { return highest_; }

    /// Default truncation order for series-derived objects: 2N + 2.
    int default_truncation() const { return 2 * pyramid().bricks() + 2; }

    const MatrixPoly& A(int r) const {
        require_range(r, 1, pyramid().height(), "A");
        return cached({'A', r}, [&] { return build_A(r); });
    }

    const MatrixPoly& B(int r) const {
        require_range(r, 1, pyramid().height() - 1, "B");
        return cached({'B', r}, [&] { return build_raise_lower(r, +1); });
    }

    const MatrixPoly& C(int r) const {
        require_range(r, 1, pyramid().height() - 1, "C");
        return cached({'C', r}, [&] { return build_raise_lower(r, -1); });
    }

    /// tau_{ni}(u) = C_{n-1}(u) C_{n-2}(u) ... C_i(u).
    const MatrixPoly& tau_lowering(int i) const {
        require_range(i, 1, pyramid().height() - 1, "tau_lowering");
        return cached({'L', i}, [&] {
            const int n = pyramid().height();
            MatrixPoly prod = C(n - 1);
            for (int j = n - 2; j >= i; --j) prod = prod * C(j);
            return prod;
        });
    }

    /// tau_{in}(u) = B_i(u) B_{i+1}(u) ... B_{n-1}(u).
    const MatrixPoly& tau_raising(int i) const {
        require_range(i, 1, pyramid().height() - 1, "tau_raising");
        return cached({'R', i}, [&] {
            const int n = pyramid().height();
            MatrixPoly prod = B(i);
            for (int j = i + 1; j <= n - 1; ++j) prod = prod * B(j);
            return prod;
        });
    }

    const GeneratorTable& generators(int R) const {
        if (R < 1) throw TruncationTooSmall("generator series need order >= 1");
        std::lock_guard<std::recursive_mutex> lock(cache_->mu);
        auto it = cache_->gens.find(R);
        if (it == cache_->gens.end()) {
            auto built = std::make_shared<const GeneratorTable>(build_generators(R));
            it = cache_->gens.emplace(R, std::move(built)).first;
        }
        return *it->second;
    }

    /// H_i(u) = u^m + u^{m-1} h_i^{(1)} + ... + h_i^{(m)} with
    /// m = p_{i+1} - p_i; leading coefficient the identity.
    const MatrixPoly& H_poly(int i, int R) const {
        require_range(i, 1, pyramid().height() - 1, "H_poly");
        const int m = pyramid().row(i + 1) - pyramid().row(i);
        if (R < m)
            throw TruncationTooSmall("H_poly: truncation below p_{i+1} - p_i");
        std::lock_guard<std::recursive_mutex> lock(cache_->mu);
        auto key = std::make_pair(i, R);
        auto it = cache_->hpoly.find(key);
        if (it == cache_->hpoly.end()) {
            const GeneratorTable& gt = generators(R);
            std::vector<SparseMatrix> coeffs;
            coeffs.reserve(static_cast<std::size_t>(m) + 1);
            for (int j = 0; j <= m; ++j)
                coeffs.push_back(j == m ? SparseMatrix::identity(dim())
                                        : gt.h_coeff(i, m - j));
            auto built = std::make_shared<const MatrixPoly>(MatrixPoly(std::move(coeffs)));
            it = cache_->hpoly.emplace(key, std::move(built)).first;
        }
        return *it->second;
    }

    /// The auxiliary polynomial A'_{i+1}(u) =
    ///   rho_i(u) a_i(u+1)^{-1} (a_{i+1}(u+1) a_{i-1}(u) + c_i(u+1) b_i(u))
    ///   - H_i(u-i+1) A_i(u),
    /// assembled from the truncated series. The series product must be a
    /// genuine polynomial; every computed negative-power coefficient is
    /// required to vanish, else TruncationTooSmall.
    const MatrixPoly& A_prime(int i, int R) const {
        require_range(i, 1, pyramid().height() - 1, "A_prime");
        std::lock_guard<std::recursive_mutex> lock(cache_->mu);
        auto key = std::make_pair(i, R);
        auto it = cache_->aprime.find(key);
        if (it == cache_->aprime.end()) {
            auto built = std::make_shared<const MatrixPoly>(build_A_prime(i, R));
            it = cache_->aprime.emplace(key, std::move(built)).first;
        }
        return *it->second;
    }

    /// All admissible branch weights mu (grids for the pyramid with the last
    /// row removed), in deterministic order with the restriction of the
    /// highest weight first.
    std::vector<std::vector<std::vector<Rat>>> branch_weights() const {
        const auto& pyr = pyramid();
        const int n = pyr.height();
        if (n < 2) throw WrongPyramid("branching needs a pyramid of height >= 2");
        struct Slot {
            int i, k;
            long long range;  // entries lambda_i^{(k)} - t for t = 0..range
        };
        std::vector<Slot> slots;
        for (int i = 1; i <= n - 1; ++i)
            for (int k = 1; k <= pyr.row(i); ++k)
                slots.push_back(
                    {i, k, to_longlong(spec_->entry(i, k) - spec_->entry(i + 1, k))});
        std::vector<long long> odo(slots.size(), 0);
        std::vector<std::vector<std::vector<Rat>>> out;
        while (true) {
            std::vector<std::vector<Rat>> mu(static_cast<std::size_t>(n - 1));
            for (int i = 1; i <= n - 1; ++i)
                mu[static_cast<std::size_t>(i - 1)].resize(
                    static_cast<std::size_t>(pyr.row(i)));
            for (std::size_t s = 0; s < slots.size(); ++s)
                mu[static_cast<std::size_t>(slots[s].i - 1)]
                  [static_cast<std::size_t>(slots[s].k - 1)] =
                      spec_->entry(slots[s].i, slots[s].k) - odo[s];
            out.push_back(std::move(mu));
            std::size_t s = slots.size();
            while (s > 0) {
                --s;
                if (odo[s] < slots[s].range) {
                    ++odo[s];
                    for (std::size_t t = s + 1; t < slots.size(); ++t) odo[t] = 0;
                    break;
                }
                if (s == 0) return out;
            }
            if (slots.empty()) return out;
        }
    }

    /// The branch vector zeta_mu: the ordered product of lowering evaluations
    ///   tau_{ni}(-m_i^{(k)}-1) ... tau_{ni}(-l_i^{(k)}+1) tau_{ni}(-l_i^{(k)})
    /// over (i, k) in increasing order, applied to the highest vector.
    BranchingDatum branching_vector(const std::vector<std::vector<Rat>>& mu) const {
        const auto& pyr = pyramid();
        const int n = pyr.height();
        if (n < 2) throw WrongPyramid("branching needs a pyramid of height >= 2");
        if (static_cast<int>(mu.size()) != n - 1)
            throw ShapeMismatch("branch weight must have n-1 rows");
        for (int i = 1; i <= n - 1; ++i)
            if (static_cast<int>(mu[static_cast<std::size_t>(i - 1)].size()) !=
                pyr.row(i))
                throw ShapeMismatch("branch weight row length mismatch");
        for (int i = 1; i <= n - 1; ++i)
            for (int k = 1; k <= pyr.row(i); ++k) {
                const Rat m = mu[static_cast<std::size_t>(i - 1)]
                                [static_cast<std::size_t>(k - 1)];
                if (!is_nonneg_integer(spec_->entry(i, k) - m) ||
                    !is_nonneg_integer(m - spec_->entry(i + 1, k))) {
                    std::ostringstream os;
                    os << "branch weight entry (" << i << "," << k
                       << ") does not interlace the highest weight";
                    throw InvalidBranchingWeight(os.str());
                }
            }

        SparseVector v = SparseVector::unit(dim(), static_cast<int>(highest_));
        // rightmost factor of the written product acts first
        for (int i = n - 1; i >= 1; --i) {
            const MatrixPoly& tau = tau_lowering(i);
            for (int k = pyr.row(i); k >= 1; --k) {
                const Rat l = spec_->shifted_entry(i, k);
                const Rat m = mu[static_cast<std::size_t>(i - 1)]
                                [static_cast<std::size_t>(k - 1)] -
                              i + 1;
                for (Rat x = -l; x <= -m - 1; x += 1) v = apply_poly(tau, x, v);
            }
        }

        Pyramid sub(std::vector<int>(pyr.row_lengths().begin(),
                                     pyr.row_lengths().end() - 1));
        auto sub_spec = HighestWeightSpec::validate(std::move(sub), mu);
        const std::size_t sub_dim = dimension(sub_spec);
        return BranchingDatum{mu, std::move(v), sub_dim};
    }

    /// Copy of this representation with one stored operator replaced; used
    /// by the mutation-sensitivity harness. Every derived object (series,
    /// tau products, auxiliary polynomials) is rebuilt from the replaced set.
    Representation with_operator_override(char op, int r, MatrixPoly m) const {
        const int n = pyramid().height();
        Representation out(spec_, basis_, highest_);
        for (int i = 1; i <= n; ++i) out.cached({'A', i}, [&] { return A(i); });
        for (int i = 1; i <= n - 1; ++i) {
            out.cached({'B', i}, [&] { return B(i); });
            out.cached({'C', i}, [&] { return C(i); });
        }
        std::lock_guard<std::recursive_mutex> lock(out.cache_->mu);
        out.cache_->ops[{op, r}] = std::make_shared<const MatrixPoly>(std::move(m));
        return out;
    }

private:
    struct Cache {
        std::recursive_mutex mu;
        std::map<std::pair<char, int>, std::shared_ptr<const MatrixPoly>> ops;
        std::map<int, std::shared_ptr<const GeneratorTable>> gens;
        std::map<std::pair<int, int>, std::shared_ptr<const MatrixPoly>> hpoly;
        std::map<std::pair<int, int>, std::shared_ptr<const MatrixPoly>> aprime;
    };

    Representation(std::shared_ptr<const HighestWeightSpec> spec,
                   std::shared_ptr<const BasisIndex> basis, std::size_t highest)
        : spec_(std::move(spec)), basis_(std::move(basis)),
          cache_(std::make_unique<Cache>()), highest_(highest) {}

    static void require_range(int v, int lo, int hi, const char* what) {
        if (v < lo || v > hi) {
            std::ostringstream os;
            os << what << ": index " << v << " outside [" << lo << ", " << hi << "]";
            throw std::out_of_range(os.str());
        }
    }

    template <typename Fn>
    const MatrixPoly& cached(std::pair<char, int> key, Fn&& build) const {
        std::lock_guard<std::recursive_mutex> lock(cache_->mu);
        auto it = cache_->ops.find(key);
        if (it == cache_->ops.end()) {
            auto built = std::make_shared<const MatrixPoly>(build());
            it = cache_->ops.emplace(key, std::move(built)).first;
        }
        return *it->second;
    }

    MatrixPoly build_A(int r) const {
        const int d = dim();
        const int deg = pyramid().degree_sum(r);
        std::vector<SparseMatrix> coeffs(static_cast<std::size_t>(deg) + 1,
                                         SparseMatrix(d));
        for (int t = 0; t < d; ++t) {
            const GTPattern p = basis_->pattern(static_cast<std::size_t>(t));
            RatPoly eig = rat_poly({Rat(1)});
            for (int j = 1; j <= r; ++j)
                eig = eig * p.row_poly(r, j).shifted(Rat(1 - j));
            for (std::size_t m = 0; m < eig.size(); ++m)
                coeffs[m].set(t, t, eig[m]);
        }
        return MatrixPoly(std::move(coeffs));
    }

    /// Shared body of B_r (direction +1) and C_r (direction -1).
    MatrixPoly build_raise_lower(int r, int direction) const {
        const int d = dim();
        std::vector<VectorPoly> cols;
        cols.reserve(static_cast<std::size_t>(d));
        int maxdeg = -1;
        for (int t = 0; t < d; ++t) {
            const GTPattern p = basis_->pattern(static_cast<std::size_t>(t));
            const std::vector<Rat> nodes = evaluation_points(p, r);
            std::vector<SparseVector> values;
            values.reserve(nodes.size());
            for (int i = 1; i <= r; ++i)
                for (int k = 1; k <= pyramid().row(i); ++k) {
                    auto target = basis_->moved_index(static_cast<std::size_t>(t), r, i,
                                                      k, direction);
                    SparseVector val(d);
                    if (target) {
                        const Rat coeff = direction > 0 ? raise_node_value(p, r, i, k)
                                                        : lower_node_value(p, r, i, k);
                        val.set(static_cast<int>(*target), coeff);
                    }
                    values.push_back(std::move(val));
                }
            VectorPoly col = lagrange_interpolate(nodes, values);
            maxdeg = std::max(maxdeg, col.degree());
            cols.push_back(std::move(col));
        }
        std::vector<SparseMatrix> coeffs(static_cast<std::size_t>(maxdeg + 1),
                                         SparseMatrix(d));
        for (int t = 0; t < d; ++t)
            for (std::size_t j = 0; j < cols[static_cast<std::size_t>(t)].size(); ++j)
                coeffs[j].set_column(t, cols[static_cast<std::size_t>(t)][j]);
        return MatrixPoly(std::move(coeffs));
    }

    GeneratorTable build_generators(int R) const {
        const auto& pyr = pyramid();
        const int n = pyr.height();
        const int d = dim();
        const SparseMatrix zero(d);

        GeneratorTable gt;
        gt.order_ = R;
        gt.n_ = n;
        gt.dim_ = d;
        gt.pyr_ = std::make_shared<const Pyramid>(pyr);

        gt.a_.push_back(MatrixSeries::one(R, SparseMatrix::identity(d)));
        for (int i = 1; i <= n; ++i) {
            const RatPoly pi = pi_prefactor(pyr, i);
            const RatSeries pi_inv =
                series_invert(series_from_poly(pi, pi.degree(), R, Rat(0)));
            gt.a_.push_back(series_from_poly(A(i), pi.degree(), R, zero) *
                            lift(pi_inv, d));
        }
        for (int i = 1; i <= n; ++i) {
            gt.d_.push_back(series_shift(series_invert(gt.a(i - 1)) * gt.a(i),
                                         Rat(i - 1)));
            gt.dprime_.push_back(series_invert(gt.d_.back()));
        }
        for (int i = 1; i <= n - 1; ++i) {
            const RatPoly pi = pi_prefactor(pyr, i);
            const RatPoly rho = rho_prefactor(pyr, i);
            const RatSeries pi_inv =
                series_invert(series_from_poly(pi, pi.degree(), R, Rat(0)));
            const RatSeries rho_inv =
                series_invert(series_from_poly(rho, rho.degree(), R, Rat(0)));
            gt.b_.push_back(series_from_poly(B(i), rho.degree(), R, zero) *
                            lift(rho_inv, d));
            gt.c_.push_back(series_from_poly(C(i), pi.degree(), R, zero) *
                            lift(pi_inv, d));
            gt.e_.push_back(
                series_shift(series_invert(gt.a(i)) * gt.b_.back(), Rat(i - 1)));
            gt.f_.push_back(
                series_shift(gt.c_.back() * series_invert(gt.a(i)), Rat(i - 1)));
            gt.h_.push_back(series_invert(gt.d(i)) * gt.d(i + 1));
        }
        return gt;
    }

    MatrixPoly build_A_prime(int i, int R) const {
        const auto& pyr = pyramid();
        const RatPoly rho = rho_prefactor(pyr, i);
        if (R < rho.degree() + 1) {
            std::ostringstream os;
            os << "A_prime: truncation " << R << " leaves no negative-power "
               << "coefficients to certify (need > " << rho.degree() << ")";
            throw TruncationTooSmall(os.str());
        }
        const GeneratorTable& gt = generators(R);
        const MatrixSeries a_up = series_shift(gt.a(i), Rat(1));
        const MatrixSeries inner = series_shift(gt.a(i + 1), Rat(1)) * gt.a(i - 1) +
                                   series_shift(gt.c(i), Rat(1)) * gt.b(i);
        const MatrixSeries assembled = series_invert(a_up) * inner;
        auto [poly, tail] = laurent_product(rho, assembled, dim());
        for (std::size_t m = 0; m < tail.size(); ++m)
            if (!tail[m].is_zero()) {
                std::ostringstream os;
                os << "A_prime: coefficient of u^-" << m + 1
                   << " is nonzero; series tail is not certifiably zero";
                throw TruncationTooSmall(os.str());
            }
        return poly - H_poly(i, R).shifted(Rat(1 - i)) * A(i);
    }

    std::shared_ptr<const HighestWeightSpec> spec_;
    std::shared_ptr<const BasisIndex> basis_;
    std::unique_ptr<Cache> cache_;
    std::size_t highest_ = 0;
};

} // namespace gtrep
