#pragma once

#include <algorithm>
#include <array>
#include <boost/container/small_vector.hpp>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>

#include "mhcq/basis.hpp"
#include "mhcq/scalar.hpp"

namespace mhcq::exactalg {

namespace detail {

// Sorted, zero-free term list; the canonical form makes equality structural.
template <class Key>
class SparseCombo {
public:
    using Term = std::pair<Key, Scalar>;
    using Storage = boost::container::small_vector<Term, 2>;

    SparseCombo() = default;
    SparseCombo(Key k, Scalar c) {
        if (!c.is_zero()) terms_.emplace_back(std::move(k), std::move(c));
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    const Term& operator[](std::size_t j) const { return terms_[j]; }

    Scalar coeff(const Key& k) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const Term& t, const Key& key) { return t.first < key; });
        if (it != terms_.end() && it->first == k) return it->second;
        return Scalar::zero();
    }

    void add(const Key& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const Term& t, const Key& key) { return t.first < key; });
        if (it != terms_.end() && it->first == k) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        } else {
            terms_.insert(it, Term(k, c));
        }
    }

    SparseCombo& operator+=(const SparseCombo& o) {
        for (const auto& [k, c] : o) add(k, c);
        return *this;
    }
    SparseCombo& operator-=(const SparseCombo& o) {
        for (const auto& [k, c] : o) add(k, -c);
        return *this;
    }
    SparseCombo& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }

    friend SparseCombo operator+(SparseCombo a, const SparseCombo& b) { return a += b; }
    friend SparseCombo operator-(SparseCombo a, const SparseCombo& b) { return a -= b; }
    friend SparseCombo operator*(const Scalar& s, SparseCombo v) { return v *= s; }

    friend bool operator==(const SparseCombo&, const SparseCombo&) = default;

private:
    Storage terms_;
};

} // namespace detail

using FinVec = detail::SparseCombo<BasisKey>;
using TensorKey = std::pair<BasisKey, BasisKey>;
using FinTensor = detail::SparseCombo<TensorKey>;
using Tensor3Key = std::array<BasisKey, 3>;
using Tensor3 = detail::SparseCombo<Tensor3Key>;

inline FinVec basis_vec(BasisKey k) { return FinVec(k, Scalar::one()); }
inline FinTensor basis_tensor(BasisKey a, BasisKey b) {
    return FinTensor({a, b}, Scalar::one());
}

inline FinTensor outer(const FinVec& x, const FinVec& y) {
    FinTensor out;
    for (const auto& [kx, cx] : x)
        for (const auto& [ky, cy] : y) out.add({kx, ky}, cx * cy);
    return out;
}

inline Tensor3 outer3(const FinVec& x, const FinVec& y, const FinVec& z) {
    Tensor3 out;
    for (const auto& [kx, cx] : x)
        for (const auto& [ky, cy] : y)
            for (const auto& [kz, cz] : z) out.add({kx, ky, kz}, cx * cy * cz);
    return out;
}

inline FinTensor flip(const FinTensor& t) {
    FinTensor out;
    for (const auto& [k, c] : t) out.add({k.second, k.first}, c);
    return out;
}

// -------------------------------------------------------------------------
// Kernel maps: specified on basis elements, extended linearly.  Finite
// propagation is implicit: a basis input always yields a finite combination.
// -------------------------------------------------------------------------

/// A -> A kernel (antipode, module actions on a fixed leg, ...).
class VecKernel {
public:
    VecKernel() = default;
    explicit VecKernel(std::function<FinVec(BasisKey)> f) : f_(std::move(f)) {}

    bool valid() const { return static_cast<bool>(f_); }

    FinVec operator()(BasisKey k) const { return f_(k); }

    FinVec apply(const FinVec& v) const {
        FinVec out;
        for (const auto& [k, c] : v) {
            FinVec t = f_(k);
            t *= c;
            out += t;
        }
        return out;
    }

private:
    std::function<FinVec(BasisKey)> f_;
};

/// A (x) A -> A (x) A kernel (the Galois maps and their inverses).
class TensorKernel {
public:
    TensorKernel() = default;
    explicit TensorKernel(std::function<FinTensor(BasisKey, BasisKey)> f) : f_(std::move(f)) {}

    bool valid() const { return static_cast<bool>(f_); }

    FinTensor operator()(BasisKey a, BasisKey b) const { return f_(a, b); }

    FinTensor apply(const FinTensor& t) const {
        FinTensor out;
        for (const auto& [k, c] : t) {
            FinTensor u = f_(k.first, k.second);
            u *= c;
            out += u;
        }
        return out;
    }

private:
    std::function<FinTensor(BasisKey, BasisKey)> f_;
};

/// A -> k kernel (the counit).
class ScalarKernel {
public:
    ScalarKernel() = default;
    explicit ScalarKernel(std::function<Scalar(BasisKey)> f) : f_(std::move(f)) {}

    bool valid() const { return static_cast<bool>(f_); }

    Scalar operator()(BasisKey k) const { return f_(k); }

    Scalar apply(const FinVec& v) const {
        Scalar out;
        for (const auto& [k, c] : v) out += c * f_(k);
        return out;
    }

private:
    std::function<Scalar(BasisKey)> f_;
};

// Leg-wise application.  (f (x) id) and (id (x) g); arity safety comes from
// the kernel types themselves.
inline FinTensor apply_leg1(const VecKernel& f, const FinTensor& t) {
    FinTensor out;
    for (const auto& [k, c] : t)
        for (const auto& [k1, c1] : f(k.first)) out.add({k1, k.second}, c * c1);
    return out;
}

inline FinTensor apply_leg2(const VecKernel& f, const FinTensor& t) {
    FinTensor out;
    for (const auto& [k, c] : t)
        for (const auto& [k2, c2] : f(k.second)) out.add({k.first, k2}, c * c2);
    return out;
}

/// (eps (x) id): contract the first leg with a scalar kernel.
inline FinVec contract_leg1(const ScalarKernel& eps, const FinTensor& t) {
    FinVec out;
    for (const auto& [k, c] : t) out.add(k.second, c * eps(k.first));
    return out;
}

/// (id (x) eps): contract the second leg.
inline FinVec contract_leg2(const ScalarKernel& eps, const FinTensor& t) {
    FinVec out;
    for (const auto& [k, c] : t) out.add(k.first, c * eps(k.second));
    return out;
}

// -------------------------------------------------------------------------
// Canonical serialization: sorted support, scalars as integer fraction
// pairs.  Witness fidelity in the verification reports depends on this
// being the one and only printer.
// -------------------------------------------------------------------------

inline std::string to_string(const FinVec& v, const LabelFn& label = default_label) {
    if (v.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : v) {
        if (!out.empty()) out += " + ";
        out += to_string(c) + "*[" + label(k) + "]";
    }
    return out;
}

inline std::string to_string(const FinTensor& t, const LabelFn& label = default_label) {
    if (t.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : t) {
        if (!out.empty()) out += " + ";
        out += to_string(c) + "*[" + label(k.first) + "|" + label(k.second) + "]";
    }
    return out;
}

inline std::string to_string(const Tensor3& t, const LabelFn& label = default_label) {
    if (t.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : t) {
        if (!out.empty()) out += " + ";
        out += to_string(c) + "*[" + label(k[0]) + "|" + label(k[1]) + "|" + label(k[2]) + "]";
    }
    return out;
}

} // namespace mhcq::exactalg
