#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhcq/algebra.hpp"
#include "mhcq/linalg.hpp"

namespace mhcq::mult {

using exactalg::Algebra;
using exactalg::BasisKey;
using exactalg::FinTensor;
using exactalg::FinVec;
using exactalg::Scalar;
using exactalg::TensorKey;
using exactalg::VecKernel;

/// Element of M(A): a compatible pair of action maps, never materialized as
/// a coefficient list.  Over an infinite basis the underlying "element" may
/// have unbounded support while both actions stay finite.
struct Multiplier {
    VecKernel left;  // b |-> m*b
    VecKernel right; // b |-> b*m

    FinVec act_left(const FinVec& v) const { return left.apply(v); }
    FinVec act_right(const FinVec& v) const { return right.apply(v); }
};

inline Multiplier embed(const Algebra& A, const FinVec& x) {
    A.require_valid(x);
    return {VecKernel([&A, x](BasisKey b) { return A.mul(x, basis_vec(b)); }),
            VecKernel([&A, x](BasisKey b) { return A.mul(basis_vec(b), x); })};
}

inline Multiplier unit_multiplier() {
    return {VecKernel([](BasisKey b) { return basis_vec(b); }),
            VecKernel([](BasisKey b) { return basis_vec(b); })};
}

inline Multiplier multiplier_product(const Multiplier& m, const Multiplier& n) {
    return {VecKernel([m, n](BasisKey b) { return m.left.apply(n.left(b)); }),
            VecKernel([m, n](BasisKey b) { return n.right.apply(m.right(b)); })};
}

/// Element of M(A (x) A): compatible action pair on basis tensors.  Both
/// kernels take the two legs of a basis tensor.
struct TensorMultiplier {
    exactalg::TensorKernel left;  // (u,v) |-> m * (u (x) v)
    exactalg::TensorKernel right; // (u,v) |-> (u (x) v) * m
};

struct WindowWitness {
    std::vector<BasisKey> keys;
    std::string lhs, rhs;
};

struct WindowReport {
    bool pass{true};
    long tuples{0};
    std::optional<WindowWitness> witness;
};

/// a*(m*b) = (a*m)*b on all window pairs.
inline WindowReport check_multiplier_compat(const Algebra& A, const Multiplier& m,
                                            const std::vector<BasisKey>& window) {
    WindowReport r;
    for (const auto& a : window)
        for (const auto& b : window) {
            ++r.tuples;
            FinVec lhs = A.mul(a, m.left(b));
            FinVec rhs = A.mul(m.right(a), b);
            if (lhs != rhs) {
                r.pass = false;
                r.witness = {{a, b}, to_string(lhs, A.label), to_string(rhs, A.label)};
                return r;
            }
        }
    return r;
}

inline bool multipliers_equal_on_window(const Multiplier& m, const Multiplier& n,
                                        const std::vector<BasisKey>& window) {
    for (const auto& b : window)
        if (m.left(b) != n.left(b) || m.right(b) != n.right(b)) return false;
    return true;
}

/// Recover the underlying element of a multiplier when one exists: act on a
/// local unit, then verify against both actions on the window.
inline std::optional<FinVec> materialize(const Algebra& A, const Multiplier& m,
                                         const std::vector<BasisKey>& window) {
    if (!A.local_unit) return std::nullopt;
    FinVec u = A.local_unit(window);
    FinVec x = m.act_left(u); // m*u; if u is a right local unit for m this is m itself
    for (const auto& b : window) {
        if (A.mul(x, basis_vec(b)) != m.left(b)) return std::nullopt;
        if (A.mul(basis_vec(b), x) != m.right(b)) return std::nullopt;
    }
    return x;
}

// -------------------------------------------------------------------------
// Completed modules M0(X): pairs (lambda, rho) with a.lambda(a') = rho(a).a'.
// X is anything with exact equality and a bimodule action (FinVec for M(A)
// itself, FinTensor for coactions).
// -------------------------------------------------------------------------

template <class X>
struct BimoduleOps {
    std::function<X(BasisKey, const X&)> act_left;
    std::function<X(const X&, BasisKey)> act_right;
    std::function<std::string(const X&)> print;
};

template <class X>
struct CompletedElement {
    std::function<X(BasisKey)> lambda; // a |-> z*a
    std::function<X(BasisKey)> rho;    // a |-> a*z
};

template <class X>
CompletedElement<X> completed_from_element(const BimoduleOps<X>& ops, X x) {
    return {[ops, x](BasisKey a) { return ops.act_right(x, a); },
            [ops, x](BasisKey a) { return ops.act_left(a, x); }};
}

/// Verifies the defining relation of M0(X) plus the derived one-sided module
/// laws on the window.
template <class X>
WindowReport completed_module_check(const Algebra& A, const BimoduleOps<X>& ops,
                                    const CompletedElement<X>& z,
                                    const std::vector<BasisKey>& window) {
    WindowReport r;
    for (const auto& a : window)
        for (const auto& a2 : window) {
            ++r.tuples;
            X lhs = ops.act_left(a, z.lambda(a2));
            X rhs = ops.act_right(z.rho(a), a2);
            if (!(lhs == rhs)) {
                r.pass = false;
                r.witness = {{a, a2}, ops.print(lhs), ops.print(rhs)};
                return r;
            }
            // rho(a a') = a . rho(a');  lambda(a a') = lambda(a) . a'
            FinVec prod = A.mul(a, a2);
            X rho_lhs{}, lam_lhs{};
            for (const auto& [k, c] : prod) {
                X t = z.rho(k);
                t *= c;
                rho_lhs += t;
                X s = z.lambda(k);
                s *= c;
                lam_lhs += s;
            }
            X rho_rhs = ops.act_left(a, z.rho(a2));
            if (!(rho_lhs == rho_rhs)) {
                r.pass = false;
                r.witness = {{a, a2}, ops.print(rho_lhs), ops.print(rho_rhs)};
                return r;
            }
            X lam_rhs = ops.act_right(z.lambda(a), a2);
            if (!(lam_lhs == lam_rhs)) {
                r.pass = false;
                r.witness = {{a, a2}, ops.print(lam_lhs), ops.print(lam_rhs)};
                return r;
            }
        }
    return r;
}

inline BimoduleOps<FinVec> algebra_bimodule(const Algebra& A) {
    return {[&A](BasisKey a, const FinVec& x) { return A.mul(basis_vec(a), x); },
            [&A](const FinVec& x, BasisKey a) { return A.mul(x, basis_vec(a)); },
            [&A](const FinVec& x) { return to_string(x, A.label); }};
}

// -------------------------------------------------------------------------
// Extension of nondegenerate homomorphisms f: A -> M(B) to M(A) -> M(B),
// computed constructively through decompositions x = sum f(a_i) b_i found by
// greedy basis matching (full exact solve as fallback).
// -------------------------------------------------------------------------

struct HomExtensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Hom {
    const Algebra* source{nullptr};
    const Algebra* target{nullptr};
    std::function<Multiplier(BasisKey)> on_basis;

    Multiplier of(const FinVec& v) const {
        std::vector<std::pair<Multiplier, Scalar>> parts;
        for (const auto& [k, c] : v) parts.emplace_back(on_basis(k), c);
        return {VecKernel([parts](BasisKey b) {
                    FinVec out;
                    for (const auto& [m, c] : parts) {
                        FinVec t = m.left(b);
                        t *= c;
                        out += t;
                    }
                    return out;
                }),
                VecKernel([parts](BasisKey b) {
                    FinVec out;
                    for (const auto& [m, c] : parts) {
                        FinVec t = m.right(b);
                        t *= c;
                        out += t;
                    }
                    return out;
                })};
    }
};

namespace detail {

// One decomposition term: x += coef * f(a) * b  (or b * f(a) on the right).
struct DecompTerm {
    Scalar coef;
    BasisKey a;
    BasisKey b;

    friend bool operator==(const DecompTerm&, const DecompTerm&) = default;
};

enum class Side { left, right };

inline FinVec hom_product(const Hom& f, Side side, BasisKey a, BasisKey b) {
    Multiplier fa = f.on_basis(a);
    return side == Side::left ? fa.left(b) : fa.right(b);
}

/// Find x = sum coef_i f(a_i) b_i over the windows.  Greedy single-column
/// matching first (covers the diagonal-heavy algebras in this repository),
/// exact linear solve as fallback.  `reverse` flips the candidate scan order
/// to produce an independent decomposition for well-definedness checks.
inline std::optional<std::vector<DecompTerm>> decompose(
    const Hom& f, Side side, const FinVec& x, const std::vector<BasisKey>& awin,
    const std::vector<BasisKey>& bwin, bool reverse) {
    std::vector<std::pair<BasisKey, BasisKey>> cands;
    for (const auto& a : awin)
        for (const auto& b : bwin) cands.emplace_back(a, b);
    if (reverse) std::reverse(cands.begin(), cands.end());

    // greedy: peel off the leading term of the residual with single columns
    FinVec r = x;
    std::vector<DecompTerm> terms;
    std::size_t guard = 0;
    while (!r.is_zero() && guard++ < 4 * cands.size()) {
        const auto& [lead_key, lead_coef] = r[0];
        bool found = false;
        for (const auto& [a, b] : cands) {
            FinVec col = hom_product(f, side, a, b);
            if (col.size() != 1) continue;
            if (col[0].first != lead_key) continue;
            Scalar c = lead_coef / col[0].second;
            terms.push_back({c, a, b});
            col *= c;
            r -= col;
            found = true;
            break;
        }
        if (!found) break;
    }
    if (r.is_zero()) return terms;

    // fallback: full solve over all candidate columns
    exactalg::LinearSystem<BasisKey> sys;
    for (const auto& [a, b] : cands) sys.add_column(exactalg::to_column(hom_product(f, side, a, b)));
    auto sol = sys.solve(exactalg::to_column(x));
    if (!sol) return std::nullopt;
    terms.clear();
    for (std::size_t j = 0; j < cands.size(); ++j)
        if (!(*sol)[j].is_zero()) terms.push_back({(*sol)[j], cands[j].first, cands[j].second});
    return terms;
}

} // namespace detail

/// Unique extension of a nondegenerate f: A -> M(B) applied to m in M(A).
/// Nondegeneracy is verified on the windows (every window basis element of B
/// decomposes on both sides); well-definedness is checked by comparing two
/// independently found decompositions, and a mismatch is reported as an
/// inconsistent-decomposition error.
inline Multiplier extend_hom(const Hom& f, const Multiplier& m,
                             const std::vector<BasisKey>& awin,
                             const std::vector<BasisKey>& bwin) {
    const Algebra& B = *f.target;

    auto act = [&, f, m](detail::Side side, BasisKey x) {
        auto terms = detail::decompose(f, side, basis_vec(x), awin, bwin, false);
        if (!terms)
            throw HomExtensionError("f not nondegenerate on window: cannot decompose " +
                                    B.label(x));
        auto apply = [&](const std::vector<detail::DecompTerm>& ts) {
            FinVec out;
            for (const auto& t : ts) {
                FinVec ma = side == detail::Side::left ? m.left(t.a) : m.right(t.a);
                Multiplier fma = f.of(ma);
                FinVec part = side == detail::Side::left ? fma.left(t.b) : fma.right(t.b);
                part *= t.coef;
                out += part;
            }
            return out;
        };
        FinVec out = apply(*terms);
        auto terms2 = detail::decompose(f, side, basis_vec(x), awin, bwin, true);
        if (terms2 && !(*terms2 == *terms)) {
            FinVec out2 = apply(*terms2);
            if (out2 != out)
                throw HomExtensionError(
                    "inconsistent decompositions at " + B.label(x) +
                    " (f not nondegenerate or not a homomorphism on the window)");
        }
        return out;
    };

    return {VecKernel([act](BasisKey b) { return act(detail::Side::left, b); }),
            VecKernel([act](BasisKey b) { return act(detail::Side::right, b); })};
}

// -------------------------------------------------------------------------
// Window-identity probe: the minimal element acting as a two-sided identity
// on a window, if any.  Used for the unital-collapse check and the
// no-global-unit evidence on oracle algebras.
// -------------------------------------------------------------------------

inline std::optional<FinVec> solve_unit_on_window(const Algebra& A,
                                                  const std::vector<BasisKey>& window) {
    // unknowns: coefficients over the window; rows: (side, h, outkey)
    using Row = std::tuple<int, BasisKey, BasisKey>;
    exactalg::LinearSystem<Row> sys;
    for (const auto& g : window) {
        std::map<Row, Scalar> col;
        for (const auto& h : window) {
            for (const auto& [k, c] : A.mul(g, h)) col[{0, h, k}] += c;
            for (const auto& [k, c] : A.mul(h, g)) col[{1, h, k}] += c;
        }
        sys.add_column(std::move(col));
    }
    std::map<Row, Scalar> target;
    for (const auto& h : window) {
        target[{0, h, h}] = Scalar::one();
        target[{1, h, h}] = Scalar::one();
    }
    auto sol = sys.solve(target);
    if (!sol) return std::nullopt;
    FinVec u;
    for (std::size_t j = 0; j < window.size(); ++j) u.add(window[j], (*sol)[j]);
    return u;
}

} // namespace mhcq::mult
