#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhcq/finvec.hpp"
#include "mhcq/loop.hpp"

namespace mhcq::exactalg {

struct BasisMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A nondegenerate algebra presented by its structure constants on an
/// ordered (possibly infinite) basis.  Oracle-backed bases expose a finite
/// window per support radius; finite algebras ignore the radius.
class Algebra {
public:
    std::string name;
    bool finite{false};
    std::function<FinVec(BasisKey, BasisKey)> product_on_basis;
    std::function<std::vector<BasisKey>(int)> window_fn;
    std::function<bool(BasisKey)> valid_key;
    LabelFn label = default_label;
    /// Element acting as a two-sided identity on everything supported in the
    /// given keys.  For unital algebras this is the global unit.
    std::function<FinVec(std::span<const BasisKey>)> local_unit;

    std::vector<BasisKey> window(int radius) const { return window_fn(radius); }

    void require_valid(const FinVec& v) const {
        if (!valid_key) return;
        for (const auto& [k, c] : v)
            if (!valid_key(k))
                throw BasisMismatch(name + ": basis mismatch at key " + default_label(k));
    }

    FinVec mul(BasisKey x, BasisKey y) const { return product_on_basis(x, y); }

    FinVec mul(const FinVec& x, const FinVec& y) const {
        require_valid(x);
        require_valid(y);
        FinVec out;
        for (const auto& [kx, cx] : x)
            for (const auto& [ky, cy] : y) {
                FinVec t = product_on_basis(kx, ky);
                t *= cx * cy;
                out += t;
            }
        return out;
    }

    FinVec mul(BasisKey x, const FinVec& y) const {
        FinVec out;
        for (const auto& [ky, cy] : y) {
            FinVec t = product_on_basis(x, ky);
            t *= cy;
            out += t;
        }
        return out;
    }

    FinVec mul(const FinVec& x, BasisKey y) const {
        FinVec out;
        for (const auto& [kx, cx] : x) {
            FinVec t = product_on_basis(kx, y);
            t *= cx;
            out += t;
        }
        return out;
    }
};

/// Function algebra k(L): delta functions with pointwise product.  Works for
/// any loop oracle, finite or not.
inline Algebra function_algebra(std::shared_ptr<const loopcore::LoopOracle> O,
                                std::string name = "") {
    Algebra A;
    A.name = name.empty() ? "k(L)" : std::move(name);
    A.finite = O->finite();
    A.product_on_basis = [](BasisKey x, BasisKey y) {
        return x == y ? basis_vec(x) : FinVec();
    };
    A.window_fn = [O](int radius) { return O->window(radius); };
    A.valid_key = [O](BasisKey k) {
        if (O->finite()) return k.n == 0 && k.i >= 0 && !O->label(k).empty();
        return k.i >= 0;
    };
    A.label = [O](const BasisKey& k) { return O->label(k); };
    A.local_unit = [](std::span<const BasisKey> keys) {
        FinVec u;
        for (const auto& k : keys) u.add(k, Scalar::one());
        return u;
    };
    return A;
}

/// Group algebra k[G].  The table must be associative; that is the caller's
/// obligation (checked by the file loaders via the predicate report).
inline Algebra group_algebra(loopcore::LoopTable G, std::string name = "") {
    auto tab = std::make_shared<loopcore::LoopTable>(std::move(G));
    Algebra A;
    A.name = name.empty() ? "k[G]" : std::move(name);
    A.finite = true;
    A.product_on_basis = [tab](BasisKey x, BasisKey y) {
        return basis_vec(BasisKey{tab->mul(x.i, y.i), 0});
    };
    A.window_fn = [tab](int) {
        std::vector<BasisKey> w;
        for (int g = 0; g < tab->order; ++g) w.push_back({g, 0});
        return w;
    };
    A.valid_key = [tab](BasisKey k) { return k.n == 0 && k.i >= 0 && k.i < tab->order; };
    A.label = [tab](const BasisKey& k) { return tab->label(k.i); };
    A.local_unit = [tab](std::span<const BasisKey>) {
        return basis_vec(BasisKey{tab->identity, 0});
    };
    return A;
}

/// Degenerate fixture: every product is zero.
inline Algebra zero_product_algebra(int dim) {
    Algebra A;
    A.name = "zero-product";
    A.finite = true;
    A.product_on_basis = [](BasisKey, BasisKey) { return FinVec(); };
    A.window_fn = [dim](int) {
        std::vector<BasisKey> w;
        for (int g = 0; g < dim; ++g) w.push_back({g, 0});
        return w;
    };
    A.valid_key = [dim](BasisKey k) { return k.n == 0 && k.i >= 0 && k.i < dim; };
    return A;
}

struct NondegeneracyReport {
    bool pass{true};
    std::optional<BasisKey> witness; // an element annihilating the window
    std::string side;                // "left" or "right"
};

/// Basis-level probe of the nondegeneracy requirement: every window basis
/// element must have a nonzero product with something in the window, on
/// both sides.
inline NondegeneracyReport check_nondegeneracy(const Algebra& A,
                                               const std::vector<BasisKey>& window) {
    for (const auto& g : window) {
        bool right_ok = false, left_ok = false;
        for (const auto& b : window) {
            if (!right_ok && !A.mul(g, b).is_zero()) right_ok = true;
            if (!left_ok && !A.mul(b, g).is_zero()) left_ok = true;
            if (right_ok && left_ok) break;
        }
        if (!right_ok) return {false, g, "right"};
        if (!left_ok) return {false, g, "left"};
    }
    return {};
}

} // namespace mhcq::exactalg
