#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtrep/parallel.hpp"
#include "gtrep/patterns.hpp"
#include "gtrep/polynomial.hpp"
#include "gtrep/repbuild.hpp"

namespace gtrep {

/// One checked identity instance. `observed` marks computed facts that are
/// reported but not asserted; they never affect a suite verdict.
struct IdentityResult {
    std::string id;
    std::map<std::string, long long> params;
    bool pass = false;
    bool observed = false;
    std::map<std::string, std::string> witness;  // empty unless the check failed
};

/// A suite run: every identity's residual must be exactly zero for the
/// suite to pass. No tolerances exist anywhere.
struct VerificationReport {
    std::string suite;
    std::vector<IdentityResult> results;
    double elapsed_ms = 0.0;

    bool passed() const {
        for (const auto& r : results)
            if (!r.observed && !r.pass) return false;
        return true;
    }

    std::size_t failure_count() const {
        std::size_t c = 0;
        for (const auto& r : results)
            if (!r.observed && !r.pass) ++c;
        return c;
    }
};

enum class PolySuite { abc, lemma22, center };

inline std::string poly_suite_name(PolySuite s) {
    switch (s) {
        case PolySuite::abc: return "abc";
        case PolySuite::lemma22: return "lemma22";
        case PolySuite::center: return "center";
    }
    return "?";
}

namespace detail {

using Task = std::function<IdentityResult()>;

inline IdentityResult run_guarded(const Task& t) {
    try {
        return t();
    } catch (const Error& e) {
        IdentityResult r;
        r.id = "error";
        r.pass = false;
        r.witness["error"] = e.code() + ": " + e.what();
        return r;
    }
}

inline VerificationReport run_tasks(std::string suite, std::vector<Task> tasks,
                                    int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<IdentityResult> results(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        IdentityResult r = run_guarded(tasks[i]);
        results[i] = std::move(r);
    });
    const auto t1 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.suite = std::move(suite);
    rep.results = std::move(results);
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

/// Suite failures are report entries, never exceptions: a domain error
/// raised while building the objects a suite needs (series inversion on a
/// corrupted operator, an uncertifiable truncation) comes back as a single
/// failed "setup" entry carrying the error text.
template <typename Body>
VerificationReport guarded_suite(const std::string& suite, Body&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        return body();
    } catch (const Error& e) {
        VerificationReport rep;
        rep.suite = suite;
        IdentityResult r;
        r.id = "setup";
        r.pass = false;
        r.witness["error"] = e.code() + ": " + e.what();
        rep.results.push_back(std::move(r));
        rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        return rep;
    }
}

inline IdentityResult from_bipoly(std::string id,
                                  std::map<std::string, long long> params,
                                  const BiMatrixPoly& residual, bool observed = false) {
    IdentityResult r;
    r.id = std::move(id);
    r.params = std::move(params);
    r.observed = observed;
    r.pass = residual.is_zero();
    if (auto w = residual.first_nonzero()) {
        r.witness["pow_u"] = std::to_string(w->pow_u);
        r.witness["pow_v"] = std::to_string(w->pow_v);
        r.witness["row"] = std::to_string(w->row);
        r.witness["col"] = std::to_string(w->col);
        r.witness["value"] = to_string(w->value);
    }
    return r;
}

inline IdentityResult from_poly(std::string id,
                                std::map<std::string, long long> params,
                                const MatrixPoly& residual) {
    IdentityResult r;
    r.id = std::move(id);
    r.params = std::move(params);
    r.pass = residual.is_zero();
    for (std::size_t j = 0; j < residual.size(); ++j)
        if (auto e = residual[j].first_entry()) {
            r.witness["pow_u"] = std::to_string(j);
            r.witness["row"] = std::to_string(std::get<0>(*e));
            r.witness["col"] = std::to_string(std::get<1>(*e));
            r.witness["value"] = to_string(std::get<2>(*e));
            break;
        }
    return r;
}

inline IdentityResult from_matrix(std::string id,
                                  std::map<std::string, long long> params,
                                  const SparseMatrix& residual) {
    IdentityResult r;
    r.id = std::move(id);
    r.params = std::move(params);
    r.pass = residual.is_zero();
    if (auto e = residual.first_entry()) {
        r.witness["row"] = std::to_string(std::get<0>(*e));
        r.witness["col"] = std::to_string(std::get<1>(*e));
        r.witness["value"] = to_string(std::get<2>(*e));
    }
    return r;
}

inline IdentityResult from_vector(std::string id,
                                  std::map<std::string, long long> params,
                                  const SparseVector& residual) {
    IdentityResult r;
    r.id = std::move(id);
    r.params = std::move(params);
    r.pass = residual.is_zero();
    if (!residual.is_zero()) {
        const auto& [idx, v] = *residual.entries().begin();
        r.witness["index"] = std::to_string(idx);
        r.witness["value"] = to_string(v);
    }
    return r;
}

inline IdentityResult from_flag(std::string id,
                                std::map<std::string, long long> params, bool pass,
                                std::string note = {}) {
    IdentityResult r;
    r.id = std::move(id);
    r.params = std::move(params);
    r.pass = pass;
    if (!pass && !note.empty()) r.witness["detail"] = std::move(note);
    return r;
}

/// Canonical text key of a scalar polynomial, for multiset comparisons.
inline std::string poly_key(const RatPoly& p) {
    std::string s;
    for (std::size_t j = 0; j < p.size(); ++j) {
        s += to_string(p[j]);
        s += ',';
    }
    return s;
}

/// Diagonal entry (t, t) of an operator polynomial as a scalar polynomial.
inline RatPoly diagonal_entry_poly(const MatrixPoly& m, int t) {
    std::vector<Rat> cs;
    cs.reserve(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) cs.push_back(m[j].at(t, t));
    return RatPoly(std::move(cs));
}

/// w lies on the line spanned by z (z = 0 forces w = 0).
inline bool proportional(const SparseVector& w, const SparseVector& z) {
    if (z.is_zero()) return w.is_zero();
    if (w.is_zero()) return true;
    const auto& [pos, zval] = *z.entries().begin();
    const Rat alpha = w.at(pos) / zval;
    return w == z * alpha;
}

} // namespace detail

/// The polynomial relation suites on the capitalized operators.
///  - abc: commutation facts between the diagonal family and the
///    raising/lowering families, plus the two-point exchange identity.
///  - lemma22: the bilinear exchange identity linking [B_i(u), C_i(v)] to
///    the auxiliary polynomials, and its one-variable product companion.
///  - center: every coefficient of A_n commutes with everything.
inline VerificationReport verify_polynomial_identities(const Representation& rep,
                                                       PolySuite suite,
                                                       int threads = 1) {
    return detail::guarded_suite(poly_suite_name(suite), [&] {
    using detail::Task;
    const int n = rep.pyramid().height();
    const int dim = rep.dim();
    std::vector<Task> tasks;

    // build operators up front so parallel tasks only read the cache
    for (int i = 1; i <= n; ++i) rep.A(i);
    for (int i = 1; i + 1 <= n; ++i) {
        rep.B(i);
        rep.C(i);
    }

    if (suite == PolySuite::abc) {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n - 1; ++j) {
                if (i == j) continue;
                tasks.push_back([&rep, i, j, dim] {
                    return detail::from_bipoly(
                        "ac-commute", {{"i", i}, {"j", j}},
                        BiMatrixPoly::commutator_uv(rep.A(i), rep.C(j), dim));
                });
            }
        for (int i = 1; i <= n - 1; ++i)
            for (int j = 1; j <= n - 1; ++j) {
                if (i == j) continue;
                tasks.push_back([&rep, i, j, dim] {
                    return detail::from_bipoly(
                        "bc-commute", {{"i", i}, {"j", j}},
                        BiMatrixPoly::commutator_uv(rep.B(i), rep.C(j), dim));
                });
            }
        for (int i = 1; i <= n - 1; ++i)
            for (int j = i; j <= n - 1; ++j) {
                if (j - i == 1) continue;
                tasks.push_back([&rep, i, j, dim] {
                    return detail::from_bipoly(
                        "cc-commute", {{"i", i}, {"j", j}},
                        BiMatrixPoly::commutator_uv(rep.C(i), rep.C(j), dim));
                });
            }
        for (int i = 1; i <= n - 1; ++i)
            tasks.push_back([&rep, i, dim] {
                BiMatrixPoly res =
                    BiMatrixPoly::commutator_uv(rep.A(i), rep.C(i), dim)
                        .times_u_minus_v();
                res -= BiMatrixPoly::product_uv(rep.C(i), rep.A(i), dim);
                res += BiMatrixPoly::product_vu(rep.A(i), rep.C(i), dim);
                return detail::from_bipoly("ac-exchange", {{"i", i}}, res);
            });
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j)
                tasks.push_back([&rep, i, j, dim] {
                    return detail::from_bipoly(
                        "aa-commute", {{"i", i}, {"j", j}},
                        BiMatrixPoly::commutator_uv(rep.A(i), rep.A(j), dim));
                });
        // not among the asserted relations; computed and reported only
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n - 1; ++j) {
                if (i == j) continue;
                tasks.push_back([&rep, i, j, dim] {
                    return detail::from_bipoly(
                        "ab-commute-observed", {{"i", i}, {"j", j}},
                        BiMatrixPoly::commutator_uv(rep.A(i), rep.B(j), dim), true);
                });
            }
    } else if (suite == PolySuite::lemma22) {
        const int R = rep.default_truncation();
        for (int i = 1; i <= n - 1; ++i) {
            rep.A_prime(i, R);  // build before the parallel section
            tasks.push_back([&rep, i, R, dim] {
                const MatrixPoly& ap = rep.A_prime(i, R);
                BiMatrixPoly res =
                    BiMatrixPoly::commutator_uv(rep.B(i), rep.C(i), dim)
                        .times_u_minus_v();
                res -= BiMatrixPoly::product_uv(ap, rep.A(i), dim);
                res += BiMatrixPoly::product_vu(rep.A(i), ap, dim);
                return detail::from_bipoly("bc-exchange", {{"i", i}}, res);
            });
            tasks.push_back([&rep, i, R, dim] {
                const MatrixPoly& ap = rep.A_prime(i, R);
                const MatrixPoly a_lower =
                    i == 1 ? MatrixPoly::constant(SparseMatrix::identity(dim))
                           : rep.A(i - 1);
                MatrixPoly res = rep.B(i) * rep.C(i).shifted(Rat(-1));
                res -= ap * rep.A(i).shifted(Rat(-1));
                res += rep.A(i + 1) * a_lower.shifted(Rat(-1));
                res -= rep.H_poly(i, R).shifted(Rat(-i)) * rep.A(i) *
                       rep.A(i).shifted(Rat(-1));
                return detail::from_poly("bc-product", {{"i", i}}, res);
            });
        }
    } else {  // center
        for (int r = 1; r <= n; ++r)
            tasks.push_back([&rep, r, n, dim] {
                return detail::from_bipoly(
                    "center-aa", {{"r", r}},
                    BiMatrixPoly::commutator_uv(rep.A(n), rep.A(r), dim));
            });
        for (int r = 1; r <= n - 1; ++r) {
            tasks.push_back([&rep, r, n, dim] {
                return detail::from_bipoly(
                    "center-ab", {{"r", r}},
                    BiMatrixPoly::commutator_uv(rep.A(n), rep.B(r), dim));
            });
            tasks.push_back([&rep, r, n, dim] {
                return detail::from_bipoly(
                    "center-ac", {{"r", r}},
                    BiMatrixPoly::commutator_uv(rep.A(n), rep.C(r), dim));
            });
        }
    }
    return detail::run_tasks(poly_suite_name(suite), std::move(tasks), threads);
    });
}

/// Every defining relation instance of the algebra whose participating
/// coefficients exist in the generator table of order R, checked as an
/// exact matrix identity, plus the low-order support of the e and f series.
inline VerificationReport check_defining_relations(const Representation& rep, int R,
                                                   int threads = 1) {
    return detail::guarded_suite("defining", [&] {
    using detail::Task;
    const GeneratorTable& gt = rep.generators(R);
    const int n = rep.pyramid().height();
    std::vector<Task> tasks;

    const auto sigma = [&](int i) { return gt.e_min_order(i); };

    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int r = 1; r <= R; ++r)
                for (int s = (i == j ? r : 1); r + s - 1 <= R; ++s)
                    tasks.push_back([&gt, i, j, r, s] {
                        return detail::from_matrix(
                            "dd", {{"i", i}, {"j", j}, {"r", r}, {"s", s}},
                            commutator(gt.d_coeff(i, r), gt.d_coeff(j, s)));
                    });

    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= n - 1; ++j)
            for (int r = sigma(i); r <= R; ++r)
                for (int s = 1; r + s - 1 <= R; ++s)
                    tasks.push_back([&gt, i, j, r, s] {
                        SparseMatrix res =
                            commutator(gt.e_coeff(i, r), gt.f_coeff(j, s));
                        if (i == j)
                            for (int t = 0; t <= r + s - 1; ++t)
                                res += gt.d_inv_coeff(i, t) *
                                       gt.d_coeff(i + 1, r + s - 1 - t);
                        return detail::from_matrix(
                            "ef", {{"i", i}, {"j", j}, {"r", r}, {"s", s}}, res);
                    });

    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n - 1; ++j)
            for (int r = 1; r <= R; ++r)
                for (int s = sigma(j); r + s - 1 <= R; ++s)
                    tasks.push_back([&gt, i, j, r, s] {
                        SparseMatrix res =
                            commutator(gt.d_coeff(i, r), gt.e_coeff(j, s));
                        const int sign = (i == j ? 1 : 0) - (i == j + 1 ? 1 : 0);
                        if (sign != 0)
                            for (int t = 0; t <= r - 1; ++t)
                                res -= (gt.d_coeff(i, t) *
                                        gt.e_coeff(j, r + s - 1 - t)) *
                                       Rat(sign);
                        return detail::from_matrix(
                            "de", {{"i", i}, {"j", j}, {"r", r}, {"s", s}}, res);
                    });

    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n - 1; ++j)
            for (int r = 1; r <= R; ++r)
                for (int s = 1; r + s - 1 <= R; ++s)
                    tasks.push_back([&gt, i, j, r, s] {
                        SparseMatrix res =
                            commutator(gt.d_coeff(i, r), gt.f_coeff(j, s));
                        const int sign = (i == j + 1 ? 1 : 0) - (i == j ? 1 : 0);
                        if (sign != 0)
                            for (int t = 0; t <= r - 1; ++t)
                                res -= (gt.f_coeff(j, r + s - 1 - t) *
                                        gt.d_coeff(i, t)) *
                                       Rat(sign);
                        return detail::from_matrix(
                            "df", {{"i", i}, {"j", j}, {"r", r}, {"s", s}}, res);
                    });

    for (int i = 1; i <= n - 1; ++i)
        for (int r = sigma(i); r + 1 <= R; ++r)
            for (int s = r; s + 1 <= R; ++s)
                tasks.push_back([&gt, i, r, s] {
                    SparseMatrix res =
                        commutator(gt.e_coeff(i, r), gt.e_coeff(i, s + 1)) -
                        commutator(gt.e_coeff(i, r + 1), gt.e_coeff(i, s)) -
                        gt.e_coeff(i, r) * gt.e_coeff(i, s) -
                        gt.e_coeff(i, s) * gt.e_coeff(i, r);
                    return detail::from_matrix("ee-ladder",
                                               {{"i", i}, {"r", r}, {"s", s}}, res);
                });

    for (int i = 1; i <= n - 1; ++i)
        for (int r = 1; r + 1 <= R; ++r)
            for (int s = r; s + 1 <= R; ++s)
                tasks.push_back([&gt, i, r, s] {
                    SparseMatrix res =
                        commutator(gt.f_coeff(i, r + 1), gt.f_coeff(i, s)) -
                        commutator(gt.f_coeff(i, r), gt.f_coeff(i, s + 1)) -
                        gt.f_coeff(i, r) * gt.f_coeff(i, s) -
                        gt.f_coeff(i, s) * gt.f_coeff(i, r);
                    return detail::from_matrix("ff-ladder",
                                               {{"i", i}, {"r", r}, {"s", s}}, res);
                });

    for (int i = 1; i <= n - 2; ++i) {
        for (int r = sigma(i); r + 1 <= R; ++r)
            for (int s = sigma(i + 1); s + 1 <= R; ++s)
                tasks.push_back([&gt, i, r, s] {
                    SparseMatrix res =
                        commutator(gt.e_coeff(i, r), gt.e_coeff(i + 1, s + 1)) -
                        commutator(gt.e_coeff(i, r + 1), gt.e_coeff(i + 1, s)) +
                        gt.e_coeff(i, r) * gt.e_coeff(i + 1, s);
                    return detail::from_matrix("ee-adjacent",
                                               {{"i", i}, {"r", r}, {"s", s}}, res);
                });
        for (int r = 1; r + 1 <= R; ++r)
            for (int s = 1; s + 1 <= R; ++s)
                tasks.push_back([&gt, i, r, s] {
                    SparseMatrix res =
                        commutator(gt.f_coeff(i, r + 1), gt.f_coeff(i + 1, s)) -
                        commutator(gt.f_coeff(i, r), gt.f_coeff(i + 1, s + 1)) +
                        gt.f_coeff(i + 1, s) * gt.f_coeff(i, r);
                    return detail::from_matrix("ff-adjacent",
                                               {{"i", i}, {"r", r}, {"s", s}}, res);
                });
    }

    for (int i = 1; i <= n - 1; ++i)
        for (int j = i + 2; j <= n - 1; ++j) {
            for (int r = sigma(i); r <= R; ++r)
                for (int s = sigma(j); s <= R; ++s)
                    tasks.push_back([&gt, i, j, r, s] {
                        return detail::from_matrix(
                            "ee-locality", {{"i", i}, {"j", j}, {"r", r}, {"s", s}},
                            commutator(gt.e_coeff(i, r), gt.e_coeff(j, s)));
                    });
            for (int r = 1; r <= R; ++r)
                for (int s = 1; s <= R; ++s)
                    tasks.push_back([&gt, i, j, r, s] {
                        return detail::from_matrix(
                            "ff-locality", {{"i", i}, {"j", j}, {"r", r}, {"s", s}},
                            commutator(gt.f_coeff(i, r), gt.f_coeff(j, s)));
                    });
        }

    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= n - 1; ++j) {
            if (std::abs(i - j) != 1) continue;
            for (int r = sigma(i); r <= R; ++r)
                for (int s = r; s <= R; ++s)
                    for (int t = sigma(j); t <= R; ++t)
                        tasks.push_back([&gt, i, j, r, s, t] {
                            const SparseMatrix inner_s =
                                commutator(gt.e_coeff(i, s), gt.e_coeff(j, t));
                            const SparseMatrix inner_r =
                                commutator(gt.e_coeff(i, r), gt.e_coeff(j, t));
                            return detail::from_matrix(
                                "serre-e",
                                {{"i", i}, {"j", j}, {"r", r}, {"s", s}, {"t", t}},
                                commutator(gt.e_coeff(i, r), inner_s) +
                                    commutator(gt.e_coeff(i, s), inner_r));
                        });
            for (int r = 1; r <= R; ++r)
                for (int s = r; s <= R; ++s)
                    for (int t = 1; t <= R; ++t)
                        tasks.push_back([&gt, i, j, r, s, t] {
                            const SparseMatrix inner_s =
                                commutator(gt.f_coeff(i, s), gt.f_coeff(j, t));
                            const SparseMatrix inner_r =
                                commutator(gt.f_coeff(i, r), gt.f_coeff(j, t));
                            return detail::from_matrix(
                                "serre-f",
                                {{"i", i}, {"j", j}, {"r", r}, {"s", s}, {"t", t}},
                                commutator(gt.f_coeff(i, r), inner_s) +
                                    commutator(gt.f_coeff(i, s), inner_r));
                        });
        }

    // series support: e_i has no coefficients below p_{i+1} - p_i + 1,
    // f_i none below 1
    for (int i = 1; i <= n - 1; ++i) {
        for (int r = 0; r < sigma(i) && r <= R; ++r)
            tasks.push_back([&gt, i, r] {
                return detail::from_matrix("e-support", {{"i", i}, {"r", r}},
                                           gt.e_coeff(i, r));
            });
        tasks.push_back([&gt, i] {
            return detail::from_matrix("f-support", {{"i", i}, {"r", 0}},
                                       gt.f_coeff(i, 0));
        });
    }

    return detail::run_tasks("defining", std::move(tasks), threads);
    });
}

/// Highest-vector conditions and the quotient condition: the raising family
/// annihilates the highest vector, the diagonal series act on it through the
/// highest weight, and the first-row diagonal series terminates.
inline VerificationReport check_highest_vector(const Representation& rep, int R) {
    return detail::guarded_suite("highest", [&] {
    using detail::Task;
    const GeneratorTable& gt = rep.generators(R);
    const auto& pyr = rep.pyramid();
    const int n = pyr.height();
    const int top = static_cast<int>(rep.highest_index());
    const SparseVector xi_top = SparseVector::unit(rep.dim(), top);
    std::vector<Task> tasks;

    for (int r = 1; r <= n - 1; ++r)
        tasks.push_back([&rep, r, top] {
            const MatrixPoly& b = rep.B(r);
            IdentityResult res;
            res.id = "b-annihilates-top";
            res.params = {{"r", r}};
            res.pass = true;
            for (std::size_t j = 0; j < b.size(); ++j) {
                const SparseVector col = b[j].column(top);
                if (!col.is_zero()) {
                    res.pass = false;
                    res.witness["pow_u"] = std::to_string(j);
                    res.witness["row"] = std::to_string(col.entries().begin()->first);
                    res.witness["value"] = to_string(col.entries().begin()->second);
                    break;
                }
            }
            return res;
        });

    for (int i = 1; i <= n; ++i) {
        const RatPoly wp = rep.spec().weight_poly(i);
        const int pi = pyr.row(i);
        for (int r = 0; r <= R; ++r)
            tasks.push_back([&gt, &xi_top, wp, pi, i, r] {
                const Rat expected =
                    (pi - r >= 0) ? wp.coeff_or(static_cast<std::size_t>(pi - r), Rat(0))
                                  : Rat(0);
                SparseVector res = gt.d_coeff(i, r).apply(xi_top);
                res.add_scaled(xi_top, -expected);
                return detail::from_vector("d-eigen-top", {{"i", i}, {"r", r}}, res);
            });
    }

    for (int r = pyr.row(1) + 1; r <= R; ++r)
        tasks.push_back([&gt, r] {
            return detail::from_matrix("d1-quotient", {{"r", r}}, gt.d_coeff(1, r));
        });

    return detail::run_tasks("highest", std::move(tasks), 1);
    });
}

/// Dimension oracle: the enumerated pattern count must equal the product of
/// Weyl-formula dimensions, per column and in total; distinct patterns must
/// carry distinct tuples of diagonal eigenvalue polynomials.
inline VerificationReport check_dimension(const Representation& rep) {
    using detail::Task;
    const auto& pyr = rep.pyramid();
    const int n = pyr.height();
    std::vector<Task> tasks;

    for (int k = 1; k <= pyr.columns(); ++k)
        tasks.push_back([&rep, k] {
            const auto cw = rep.spec().column_weight(k);
            const Int weyl = weyl_dimension(cw.weights);
            const Int count = Int(rep.basis().column_count(k));
            std::ostringstream note;
            note << "enumerated " << count << ", Weyl formula " << weyl;
            return detail::from_flag("column-dim", {{"k", k}}, count == weyl,
                                     note.str());
        });

    tasks.push_back([&rep, &pyr] {
        Int prod(1);
        for (int k = 1; k <= pyr.columns(); ++k)
            prod *= weyl_dimension(rep.spec().column_weight(k).weights);
        const Int count = Int(rep.basis().dimension());
        std::ostringstream note;
        note << "enumerated " << count << ", Weyl product " << prod;
        return detail::from_flag("total-dim", {}, count == prod, note.str());
    });

    tasks.push_back([&rep, n] {
        std::set<std::string> keys;
        bool distinct = true;
        std::string clash;
        for (int t = 0; t < rep.dim() && distinct; ++t) {
            std::string key;
            for (int r = 1; r <= n; ++r)
                key += detail::poly_key(detail::diagonal_entry_poly(rep.A(r), t)) + "|";
            if (!keys.insert(key).second) {
                distinct = false;
                clash = "pattern index " + std::to_string(t);
            }
        }
        return detail::from_flag("a-spectra-distinct", {}, distinct, clash);
    });

    return detail::run_tasks("dimension", std::move(tasks), 1);
}

/// The branching decomposition: admissible lower weights, their dimension
/// count, the eigen/annihilation facts for each branch vector, and the
/// single-step moves along branch lines.
inline VerificationReport check_branching(const Representation& rep, int threads = 1) {
    using detail::Task;
    const auto& pyr = rep.pyramid();
    const int n = pyr.height();
    if (n < 2) throw WrongPyramid("branching needs a pyramid of height >= 2");

    return detail::guarded_suite("branching", [&]() -> VerificationReport {
    const auto mus = rep.branch_weights();
    std::vector<BranchingDatum> data;
    data.reserve(mus.size());
    for (const auto& mu : mus) data.push_back(rep.branching_vector(mu));

    std::map<std::vector<std::vector<Rat>>, std::size_t> mu_index;
    for (std::size_t m = 0; m < mus.size(); ++m) mu_index.emplace(mus[m], m);

    std::vector<Task> tasks;

    tasks.push_back([&rep, &data] {
        std::size_t sum = 0;
        for (const auto& d : data) sum += d.sub_dimension;
        std::ostringstream note;
        note << "sum of branch dimensions " << sum << ", module dimension "
             << rep.basis().dimension();
        return detail::from_flag("branch-dim-sum", {}, sum == rep.basis().dimension(),
                                 note.str());
    });

    for (std::size_t m = 0; m < data.size(); ++m) {
        const long long mi = static_cast<long long>(m);
        tasks.push_back([&data, m, mi] {
            return detail::from_flag("zeta-nonzero", {{"mu", mi}},
                                     !data[m].zeta.is_zero());
        });
        for (int r = 1; r <= n - 1; ++r)
            tasks.push_back([&rep, &data, m, mi, r] {
                const auto& mu = data[m].mu;
                RatPoly expected = rat_poly({Rat(1)});
                for (int j = 1; j <= r; ++j) {
                    RatPoly mj = rat_poly({Rat(1)});
                    for (const Rat& v : mu[static_cast<std::size_t>(j - 1)])
                        mj = mj * linear_monic(v);
                    expected = expected * mj.shifted(Rat(1 - j));
                }
                const MatrixPoly& a = rep.A(r);
                const std::size_t width = std::max(a.size(), expected.size());
                for (std::size_t j = 0; j < width; ++j) {
                    SparseVector res = j < a.size()
                                           ? a[j].apply(data[m].zeta)
                                           : SparseVector(rep.dim());
                    res.add_scaled(data[m].zeta,
                                   -expected.coeff_or(j, Rat(0)));
                    if (!res.is_zero()) {
                        auto out = detail::from_vector("branch-a-eigen",
                                                       {{"mu", mi}, {"r", r}}, res);
                        out.witness["pow_u"] = std::to_string(j);
                        return out;
                    }
                }
                return detail::from_flag("branch-a-eigen", {{"mu", mi}, {"r", r}},
                                         true);
            });
        for (int r = 1; r <= n - 2; ++r)
            tasks.push_back([&rep, &data, m, mi, r] {
                const MatrixPoly& b = rep.B(r);
                for (std::size_t j = 0; j < b.size(); ++j) {
                    const SparseVector res = b[j].apply(data[m].zeta);
                    if (!res.is_zero()) {
                        auto out = detail::from_vector("branch-b-kill",
                                                       {{"mu", mi}, {"r", r}}, res);
                        out.witness["pow_u"] = std::to_string(j);
                        return out;
                    }
                }
                return detail::from_flag("branch-b-kill", {{"mu", mi}, {"r", r}}, true);
            });
        for (int i = 1; i <= n - 1; ++i)
            for (int k = 1; k <= pyr.row(i); ++k) {
                const Rat mv = data[m].mu[static_cast<std::size_t>(i - 1)]
                                        [static_cast<std::size_t>(k - 1)];
                const Rat node = -(mv - i + 1);
                auto lowered = mus[m];
                lowered[static_cast<std::size_t>(i - 1)]
                       [static_cast<std::size_t>(k - 1)] -= 1;
                if (auto it = mu_index.find(lowered); it != mu_index.end()) {
                    const std::size_t tgt = it->second;
                    tasks.push_back([&rep, &data, m, mi, i, k, node, tgt] {
                        const SparseVector w =
                            apply_poly(rep.tau_lowering(i), node, data[m].zeta);
                        return detail::from_flag(
                            "branch-tau-lower", {{"mu", mi}, {"i", i}, {"k", k}},
                            detail::proportional(w, data[tgt].zeta),
                            "image leaves the branch line");
                    });
                }
                auto raised = mus[m];
                raised[static_cast<std::size_t>(i - 1)]
                      [static_cast<std::size_t>(k - 1)] += 1;
                if (auto it = mu_index.find(raised); it != mu_index.end()) {
                    const std::size_t tgt = it->second;
                    tasks.push_back([&rep, &data, m, mi, i, k, node, tgt] {
                        const SparseVector w =
                            apply_poly(rep.tau_raising(i), node, data[m].zeta);
                        return detail::from_flag(
                            "branch-tau-raise", {{"mu", mi}, {"i", i}, {"k", k}},
                            detail::proportional(w, data[tgt].zeta),
                            "image leaves the branch line");
                    });
                }
            }
    }

    return detail::run_tasks("branching", std::move(tasks), threads);
    });
}

/// One-column specialization: the level-1 generator matrices satisfy the
/// classical gl_n relations, and the module recovers the classical pattern
/// count and spectra.
inline VerificationReport check_gln_specialization(const Representation& rep) {
    using detail::Task;
    const auto& pyr = rep.pyramid();
    if (!pyr.is_one_column())
        throw WrongPyramid("gln suite requires the one-column pyramid (1,...,1)");
    return detail::guarded_suite("gln", [&] {
    const int n = pyr.height();
    const GeneratorTable& gt = rep.generators(rep.default_truncation());

    std::vector<SparseMatrix> D, E, F;
    D.push_back(SparseMatrix(rep.dim()));  // slot 0 unused
    E.push_back(SparseMatrix(rep.dim()));
    F.push_back(SparseMatrix(rep.dim()));
    for (int i = 1; i <= n; ++i) D.push_back(gt.d_coeff(i, 1));
    for (int i = 1; i <= n - 1; ++i) {
        E.push_back(gt.e_coeff(i, 1));
        F.push_back(gt.f_coeff(i, 1));
    }

    std::vector<Task> tasks;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            tasks.push_back([&D, i, j] {
                return detail::from_matrix("gl-dd", {{"i", i}, {"j", j}},
                                           commutator(D[i], D[j]));
            });
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n - 1; ++j) {
            tasks.push_back([&D, &E, i, j] {
                const int sign = (i == j ? 1 : 0) - (i == j + 1 ? 1 : 0);
                return detail::from_matrix(
                    "gl-de", {{"i", i}, {"j", j}},
                    commutator(D[i], E[j]) - E[j] * Rat(sign));
            });
            tasks.push_back([&D, &F, i, j] {
                const int sign = (i == j + 1 ? 1 : 0) - (i == j ? 1 : 0);
                return detail::from_matrix(
                    "gl-df", {{"i", i}, {"j", j}},
                    commutator(D[i], F[j]) - F[j] * Rat(sign));
            });
        }
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= n - 1; ++j)
            tasks.push_back([&D, &E, &F, i, j] {
                SparseMatrix res = commutator(E[i], F[j]);
                if (i == j) res -= D[i] - D[i + 1];
                return detail::from_matrix("gl-ef", {{"i", i}, {"j", j}}, res);
            });
    for (int i = 1; i <= n - 1; ++i)
        for (int j = i + 2; j <= n - 1; ++j) {
            tasks.push_back([&E, i, j] {
                return detail::from_matrix("gl-ee-locality", {{"i", i}, {"j", j}},
                                           commutator(E[i], E[j]));
            });
            tasks.push_back([&F, i, j] {
                return detail::from_matrix("gl-ff-locality", {{"i", i}, {"j", j}},
                                           commutator(F[i], F[j]));
            });
        }
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= n - 1; ++j) {
            if (std::abs(i - j) != 1) continue;
            tasks.push_back([&E, i, j] {
                return detail::from_matrix(
                    "gl-serre-e", {{"i", i}, {"j", j}},
                    commutator(E[i], commutator(E[i], E[j])));
            });
            tasks.push_back([&F, i, j] {
                return detail::from_matrix(
                    "gl-serre-f", {{"i", i}, {"j", j}},
                    commutator(F[i], commutator(F[i], F[j])));
            });
        }

    const auto classical = enumerate_column_patterns(rep.spec().column_weight(1));
    tasks.push_back([&rep, &classical] {
        const Int weyl = weyl_dimension(rep.spec().column_weight(1).weights);
        const bool ok = Int(classical.size()) == weyl &&
                        Int(rep.basis().dimension()) == weyl;
        std::ostringstream note;
        note << "classical count " << classical.size() << ", Weyl " << weyl
             << ", module " << rep.basis().dimension();
        return detail::from_flag("gl-dimension", {}, ok, note.str());
    });

    const Rat base = rep.spec().column_weight(1).weights.back();
    for (int r = 1; r <= n; ++r)
        tasks.push_back([&rep, &classical, base, r, n] {
            std::vector<std::string> module_keys, classical_keys;
            for (int t = 0; t < rep.dim(); ++t)
                module_keys.push_back(
                    detail::poly_key(detail::diagonal_entry_poly(rep.A(r), t)));
            for (const Triangle& tri : classical) {
                RatPoly p = rat_poly({Rat(1)});
                for (int j = 1; j <= r; ++j) {
                    const long long off =
                        tri.rows[static_cast<std::size_t>(n - r)]
                                [static_cast<std::size_t>(j - 1)];
                    p = p * linear_monic(base + off - j + 1);
                }
                classical_keys.push_back(detail::poly_key(p));
            }
            std::sort(module_keys.begin(), module_keys.end());
            std::sort(classical_keys.begin(), classical_keys.end());
            return detail::from_flag("gl-a-spectra", {{"r", r}},
                                     module_keys == classical_keys,
                                     "spectral multisets differ");
        });

    return detail::run_tasks("gln", std::move(tasks), 1);
    });
}

} // namespace gtrep
