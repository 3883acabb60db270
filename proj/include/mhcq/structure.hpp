#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mhcq/algebra.hpp"
#include "mhcq/mult.hpp"

namespace mhcq::coquasi {

using exactalg::Algebra;
using exactalg::BasisKey;
using exactalg::FinTensor;
using exactalg::FinVec;
using exactalg::Scalar;
using exactalg::ScalarKernel;
using exactalg::TensorKernel;
using exactalg::VecKernel;

struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Antilinear algebra involution: a basis permutation plus scalar
/// conjugation, extended antilinearly.
struct StarStructure {
    std::function<BasisKey(BasisKey)> on_basis;

    FinVec apply(const FinVec& v) const {
        FinVec out;
        for (const auto& [k, c] : v) out.add(on_basis(k), c.conj());
        return out;
    }
};

/// A multiplier bialgebra presented by its Galois kernels.  T1, T2 and their
/// inverses are required; T3, T4 (the other two damping shapes, needed for
/// the cop structure and the regularity checks) are optional.  All kernels
/// are total maps on basis pairs: the verification window only bounds the
/// quantifiers, never the kernels.
struct CoquasiStructure {
    Algebra A;
    TensorKernel T1;    // (a,b) -> Delta(a)(1 (x) b)
    TensorKernel T2;    // (a,b) -> (a (x) 1)Delta(b)
    TensorKernel T1inv;
    TensorKernel T2inv;
    TensorKernel T3;    // (a,b) -> (1 (x) a)Delta(b)
    TensorKernel T4;    // (a,b) -> Delta(a)(b (x) 1)
    TensorKernel T3inv;
    TensorKernel T4inv;
    ScalarKernel counit;
    std::optional<StarStructure> star;
    int default_radius{3};

    bool has_t34() const {
        return T3.valid() && T4.valid() && T3inv.valid() && T4inv.valid();
    }

    std::vector<BasisKey> window(int radius) const { return A.window(radius); }

    /// The cop structure: under Delta^cop = flip . Delta the four damping
    /// shapes permute as (T1,T2,T3,T4) -> (flip.T4, flip.T3, flip.T2,
    /// flip.T1), with the counit unchanged.
    CoquasiStructure cop() const {
        if (!has_t34())
            throw StructureError("cop structure requires the T3/T4 kernels");
        using exactalg::flip;
        CoquasiStructure c;
        c.A = A;
        TensorKernel t1 = T1, t2 = T2, t3 = T3, t4 = T4;
        TensorKernel i1 = T1inv, i2 = T2inv, i3 = T3inv, i4 = T4inv;
        c.T1 = TensorKernel([t4](BasisKey a, BasisKey b) { return flip(t4(a, b)); });
        c.T1inv = TensorKernel([i4](BasisKey a, BasisKey b) { return i4(b, a); });
        c.T2 = TensorKernel([t3](BasisKey a, BasisKey b) { return flip(t3(a, b)); });
        c.T2inv = TensorKernel([i3](BasisKey a, BasisKey b) { return i3(b, a); });
        c.T3 = TensorKernel([t2](BasisKey a, BasisKey b) { return flip(t2(a, b)); });
        c.T3inv = TensorKernel([i2](BasisKey a, BasisKey b) { return i2(b, a); });
        c.T4 = TensorKernel([t1](BasisKey a, BasisKey b) { return flip(t1(a, b)); });
        c.T4inv = TensorKernel([i1](BasisKey a, BasisKey b) { return i1(b, a); });
        c.counit = counit;
        c.star = star;
        c.default_radius = default_radius;
        return c;
    }
};

// -------------------------------------------------------------------------
// Builders: the loop bridge is the single trusted path from combinatorics
// to kernels.
// -------------------------------------------------------------------------

/// Function algebra k(L) of a loop oracle.  Writing g/h for rdiv and g\h for
/// ldiv, the generated kernels are
///   T1(g,h) = d_{g/h} (x) d_h        T1inv(g,h) = d_{g*h} (x) d_h
///   T2(g,h) = d_g (x) d_{g\h}        T2inv(g,h) = d_g (x) d_{g*h}
///   T3(g,h) = d_{h/g} (x) d_g        T3inv(u,v) = d_v (x) d_{u*v}
///   T4(g,h) = d_h (x) d_{h\g}        T4inv(u,v) = d_{u*v} (x) d_u
/// and the counit is evaluation at the loop identity.
inline CoquasiStructure loop_function_structure(
    std::shared_ptr<const loopcore::LoopOracle> O, std::string name = "") {
    CoquasiStructure S;
    S.A = exactalg::function_algebra(O, std::move(name));
    using exactalg::basis_tensor;
    S.T1 = TensorKernel(
        [O](BasisKey a, BasisKey b) { return basis_tensor(O->rdiv(a, b), b); });
    S.T1inv = TensorKernel(
        [O](BasisKey a, BasisKey b) { return basis_tensor(O->mul(a, b), b); });
    S.T2 = TensorKernel(
        [O](BasisKey a, BasisKey b) { return basis_tensor(a, O->ldiv(a, b)); });
    S.T2inv = TensorKernel(
        [O](BasisKey a, BasisKey b) { return basis_tensor(a, O->mul(a, b)); });
    S.T3 = TensorKernel(
        [O](BasisKey a, BasisKey b) { return basis_tensor(O->rdiv(b, a), a); });
    S.T3inv = TensorKernel(
        [O](BasisKey u, BasisKey v) { return basis_tensor(v, O->mul(u, v)); });
    S.T4 = TensorKernel(
        [O](BasisKey a, BasisKey b) { return basis_tensor(b, O->ldiv(b, a)); });
    S.T4inv = TensorKernel(
        [O](BasisKey u, BasisKey v) { return basis_tensor(O->mul(u, v), u); });
    BasisKey e = O->identity();
    S.counit = ScalarKernel(
        [e](BasisKey k) { return k == e ? Scalar::one() : Scalar::zero(); });
    S.star = StarStructure{[](BasisKey k) { return k; }};
    return S;
}

/// Group algebra k[G] with the group-like comultiplication Delta(g) = g(x)g.
inline CoquasiStructure group_algebra_structure(loopcore::LoopTable G,
                                                std::string name = "") {
    auto rep = loopcore::validate_table(G);
    if (rep.associative.value != loopcore::Tri::yes)
        throw StructureError("group algebra requires an associative table");
    auto tab = std::make_shared<loopcore::LoopTable>(std::move(G));

    CoquasiStructure S;
    S.A = exactalg::group_algebra(*tab, std::move(name));
    using exactalg::basis_tensor;
    auto mul = [tab](BasisKey x, BasisKey y) { return BasisKey{tab->mul(x.i, y.i), 0}; };
    auto inv = [tab](BasisKey x) { return BasisKey{tab->right_inverse(x.i), 0}; };
    S.T1 = TensorKernel(
        [mul](BasisKey a, BasisKey b) { return basis_tensor(a, mul(a, b)); });
    S.T1inv = TensorKernel([mul, inv](BasisKey a, BasisKey b) {
        return basis_tensor(a, mul(inv(a), b));
    });
    S.T2 = TensorKernel(
        [mul](BasisKey a, BasisKey b) { return basis_tensor(mul(a, b), b); });
    S.T2inv = TensorKernel([mul, inv](BasisKey a, BasisKey b) {
        return basis_tensor(mul(a, inv(b)), b);
    });
    S.T3 = TensorKernel(
        [mul](BasisKey a, BasisKey b) { return basis_tensor(b, mul(a, b)); });
    S.T3inv = TensorKernel([mul, inv](BasisKey u, BasisKey v) {
        return basis_tensor(mul(v, inv(u)), u);
    });
    S.T4 = TensorKernel(
        [mul](BasisKey a, BasisKey b) { return basis_tensor(mul(a, b), a); });
    S.T4inv = TensorKernel([mul, inv](BasisKey u, BasisKey v) {
        return basis_tensor(v, mul(inv(v), u));
    });
    S.counit = ScalarKernel([](BasisKey) { return Scalar::one(); });
    S.star = StarStructure{[tab](BasisKey k) {
        return BasisKey{tab->right_inverse(k.i), 0};
    }};
    return S;
}

// -------------------------------------------------------------------------
// Delta(a) as an element of M(A (x) A)
// -------------------------------------------------------------------------

/// Full-tensor actions of Delta(a), assembled bilinearly from the Galois
/// kernels: Delta(a)(u (x) v) routes through T1 with the first leg
/// multiplied back, (u (x) v)Delta(a) through T2 with the second leg.
inline mult::TensorMultiplier delta_as_multiplier(const CoquasiStructure& S, FinVec a) {
    S.A.require_valid(a);
    const Algebra* A = &S.A;
    TensorKernel t1 = S.T1, t2 = S.T2;
    return {TensorKernel([A, t1, a](BasisKey u, BasisKey v) {
                FinTensor out;
                for (const auto& [k, c] : a)
                    for (const auto& [kk, s] : t1(k, v))
                        for (const auto& [p, cp] : A->mul(kk.first, u))
                            out.add({p, kk.second}, c * s * cp);
                return out;
            }),
            TensorKernel([A, t2, a](BasisKey u, BasisKey v) {
                FinTensor out;
                for (const auto& [k, c] : a)
                    for (const auto& [kk, s] : t2(u, k))
                        for (const auto& [q, cq] : A->mul(v, kk.second))
                            out.add({kk.first, q}, c * s * cq);
                return out;
            })};
}

enum class DampShape {
    times_one_b, // Delta(a)(1 (x) b)
    b_one_times, // (b (x) 1)Delta(a)
    one_b_times, // (1 (x) b)Delta(a)   -- needs T3
    times_b_one, // Delta(a)(b (x) 1)   -- needs T4
};

/// Half-damped products of Delta(a) with one-legged elements.  The first
/// two shapes are definitional; the other two need the extra kernels and
/// are refused otherwise (over an infinite basis there is no fallback).
inline FinTensor delta_half_damped(const CoquasiStructure& S, const FinVec& a,
                                   BasisKey b, DampShape shape) {
    FinTensor out;
    switch (shape) {
        case DampShape::times_one_b:
            for (const auto& [k, c] : a) {
                FinTensor t = S.T1(k, b);
                t *= c;
                out += t;
            }
            return out;
        case DampShape::b_one_times:
            for (const auto& [k, c] : a) {
                FinTensor t = S.T2(b, k);
                t *= c;
                out += t;
            }
            return out;
        case DampShape::one_b_times:
            if (!S.T3.valid())
                throw StructureError("(1 (x) b)Delta(a) requested but the T3 kernel is missing");
            for (const auto& [k, c] : a) {
                FinTensor t = S.T3(b, k);
                t *= c;
                out += t;
            }
            return out;
        case DampShape::times_b_one:
            if (!S.T4.valid())
                throw StructureError("Delta(a)(b (x) 1) requested but the T4 kernel is missing");
            for (const auto& [k, c] : a) {
                FinTensor t = S.T4(k, b);
                t *= c;
                out += t;
            }
            return out;
    }
    return out;
}

/// Patch a tensor kernel on finitely many basis pairs (violation fixtures
/// and explicit file overrides).
inline TensorKernel patch_kernel(TensorKernel base,
                                 std::vector<std::pair<exactalg::TensorKey, FinTensor>> entries) {
    return TensorKernel([base, entries](BasisKey a, BasisKey b) {
        for (const auto& [k, t] : entries)
            if (k.first == a && k.second == b) return t;
        return base(a, b);
    });
}

// -------------------------------------------------------------------------
// Antipode
// -------------------------------------------------------------------------

struct BasisKeyHash {
    std::size_t operator()(const BasisKey& k) const {
        return std::hash<std::int64_t>()((static_cast<std::int64_t>(k.i) << 32) ^
                                         (k.n * 0x9e3779b97f4a7c15LL));
    }
};

/// The antipode of the Galois construction, materialized as an honest map
/// A -> A on (a padded superset of) the verification window.  S(a) is
/// recovered by letting the left multiplier S(a)b = (eps (x) id)T1inv(a(x)b)
/// act on a local unit; the builder in verify.hpp checks the result against
/// the defining formula on the window.  Self-contained value type so cop
/// antipodes and inverse antipodes can outlive their structures.
class Antipode {
public:
    Antipode() = default;

    Antipode(const CoquasiStructure& S, int radius) : radius_(radius) {
        t1inv_ = S.T1inv;
        counit_ = S.counit;
        window_ = S.A.window_fn;
        local_unit_ = S.A.local_unit;
        if (!local_unit_)
            throw StructureError("antipode materialization needs local units");
        // precompute on a padded window: sweep expressions reach keys whose
        // unbounded coordinate is at most ~2x the window radius
        auto padded = window_(2 * radius + 2);
        auto cache = std::make_shared<std::unordered_map<BasisKey, FinVec, BasisKeyHash>>();
        for (const auto& k : padded) cache->emplace(k, compute(k));
        cache_ = std::move(cache);
    }

    bool valid() const { return t1inv_.valid(); }

    FinVec operator()(BasisKey k) const {
        if (cache_) {
            auto it = cache_->find(k);
            if (it != cache_->end()) return it->second;
        }
        return compute(k);
    }

    FinVec apply(const FinVec& v) const {
        FinVec out;
        for (const auto& [k, c] : v) {
            FinVec t = (*this)(k);
            t *= c;
            out += t;
        }
        return out;
    }

    VecKernel kernel() const {
        return VecKernel([self = *this](BasisKey k) { return self(k); });
    }

private:
    FinVec compute(BasisKey a) const {
        int r = static_cast<int>(std::max<std::int64_t>(radius_, std::abs(a.n) + 1));
        FinVec e = local_unit_(window_(r + 1));
        // S(a) = S(a) * e = (eps (x) id) T1inv(a (x) e)
        return contract_leg1(counit_, t1inv_.apply(outer(basis_vec(a), e)));
    }

    TensorKernel t1inv_;
    ScalarKernel counit_;
    std::function<std::vector<BasisKey>(int)> window_;
    std::function<FinVec(std::span<const BasisKey>)> local_unit_;
    int radius_{3};
    std::shared_ptr<const std::unordered_map<BasisKey, FinVec, BasisKeyHash>> cache_;
};

} // namespace mhcq::coquasi
