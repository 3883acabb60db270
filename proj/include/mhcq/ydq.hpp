#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhcq/verify.hpp"

namespace mhcq::ydq {

using coquasi::Antipode;
using coquasi::CoquasiStructure;
using coquasi::VerificationReport;
using coquasi::Witness;
using exactalg::BasisKey;
using exactalg::FinTensor;
using exactalg::FinVec;
using exactalg::Scalar;
using exactalg::Tensor3;
using exactalg::VecKernel;

struct YdqError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Side { left, right };
enum class Variant { LL, RL, LR, RR };

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::LL: return "LL";
        case Variant::RL: return "RL";
        case Variant::LR: return "LR";
        default: return "RR";
    }
}

inline Variant parse_variant(const std::string& s) {
    if (s == "LL") return Variant::LL;
    if (s == "RL") return Variant::RL;
    if (s == "LR") return Variant::LR;
    if (s == "RR") return Variant::RR;
    throw YdqError("unknown variant '" + s + "'");
}

inline Side module_side(Variant v) {
    return (v == Variant::LL || v == Variant::LR) ? Side::left : Side::right;
}
inline Side coaction_side(Variant v) {
    return (v == Variant::LL || v == Variant::RL) ? Side::left : Side::right;
}

/// Quasi-coaction valued in the completed module, given by its two damped
/// kernels.  Left coactions produce tensors in A (x) V, right coactions in
/// V (x) A.
///   left:  rho(a,v) = (d_a (x) 1)Gamma(v),  lam(a,v) = Gamma(v)(d_a (x) 1)
///   right: rho(a,v) = (1 (x) d_a)Gamma(v),  lam(a,v) = Gamma(v)(1 (x) d_a)
struct QuasiCoaction {
    Side side{Side::left};
    std::function<FinTensor(BasisKey, BasisKey)> rho, lam;

    FinTensor rho_lin(const FinVec& a, BasisKey v) const {
        FinTensor out;
        for (const auto& [k, c] : a) {
            FinTensor t = rho(k, v);
            t *= c;
            out += t;
        }
        return out;
    }
    FinTensor lam_lin(const FinVec& a, BasisKey v) const {
        FinTensor out;
        for (const auto& [k, c] : a) {
            FinTensor t = lam(k, v);
            t *= c;
            out += t;
        }
        return out;
    }
};

/// Unital module over the algebra.  act(a, v) means a.v for left modules
/// and v.a for right modules.
struct UnitalModule {
    Side side{Side::left};
    std::function<FinVec(BasisKey, BasisKey)> act;

    FinVec act_lin(const FinVec& a, BasisKey v) const {
        FinVec out;
        for (const auto& [k, c] : a) {
            FinVec t = act(k, v);
            t *= c;
            out += t;
        }
        return out;
    }
    FinVec act_vec(const FinVec& a, const FinVec& v) const {
        FinVec out;
        for (const auto& [kv, cv] : v) {
            FinVec t = act_lin(a, kv);
            t *= cv;
            out += t;
        }
        return out;
    }
};

struct YDQuasimodule {
    Variant variant{Variant::LL};
    UnitalModule module;
    QuasiCoaction coaction;
    std::vector<BasisKey> vbasis;
};

// -------------------------------------------------------------------------
// Named constructors
// -------------------------------------------------------------------------

inline UnitalModule regular_module(const CoquasiStructure& S, Side side) {
    const exactalg::Algebra* A = &S.A;
    UnitalModule m;
    m.side = side;
    if (side == Side::left)
        m.act = [A](BasisKey a, BasisKey v) { return A->mul(a, basis_vec(v)); };
    else
        m.act = [A](BasisKey a, BasisKey v) { return A->mul(basis_vec(v), a); };
    return m;
}

/// V = A with Gamma = Delta, kernels straight from the Galois maps.
inline QuasiCoaction diagonal_coaction(const CoquasiStructure& S, Side side) {
    QuasiCoaction c;
    c.side = side;
    if (side == Side::left) {
        if (!S.T4.valid())
            throw YdqError("diagonal left coaction needs the T4 kernel for its lambda side");
        auto t2 = S.T2, t4 = S.T4;
        c.rho = [t2](BasisKey a, BasisKey v) { return t2(a, v); };
        c.lam = [t4](BasisKey a, BasisKey v) { return t4(v, a); };
    } else {
        if (!S.T3.valid())
            throw YdqError("diagonal right coaction needs the T3 kernel for its rho side");
        auto t1 = S.T1, t3 = S.T3;
        c.rho = [t3](BasisKey a, BasisKey v) { return t3(a, v); };
        c.lam = [t1](BasisKey a, BasisKey v) { return t1(v, a); };
    }
    return c;
}

/// Gamma(v) = 1 (x) v (resp. v (x) 1).
inline QuasiCoaction trivial_coaction(Side side) {
    QuasiCoaction c;
    c.side = side;
    if (side == Side::left) {
        c.rho = [](BasisKey a, BasisKey v) { return exactalg::basis_tensor(a, v); };
        c.lam = [](BasisKey a, BasisKey v) { return exactalg::basis_tensor(a, v); };
    } else {
        c.rho = [](BasisKey a, BasisKey v) { return exactalg::basis_tensor(v, a); };
        c.lam = [](BasisKey a, BasisKey v) { return exactalg::basis_tensor(v, a); };
    }
    return c;
}

// -------------------------------------------------------------------------
// Checks
// -------------------------------------------------------------------------

/// Runs the coaction, module, compatibility-family, and functor checks for
/// one structure.  Needs a materializable comultiplication (finite unital
/// algebra) for the compatibility families: their identities slice Delta on
/// undamped legs.
class YdqChecker {
public:
    YdqChecker(const CoquasiStructure& S, int radius, int workers)
        : S_(S), checker_(S, radius, workers), workers_(workers) {
        window_ = checker_.window();
        wdesc_ = "algebra-window(n=" + std::to_string(window_.size()) + ")";
        auto built = checker_.antipode_build();
        if (!built.passed())
            throw YdqError("structure has no consistent antipode: " + built.note);
        if (!checker_.ensure_sinv())
            throw YdqError("structure is not regular (no inverse antipode)");
        if (!checker_.can_slice())
            throw YdqError("compatibility families need a materializable comultiplication "
                           "(finite unital structure)");
    }

    const std::vector<BasisKey>& window() const { return window_; }
    const Antipode& antipode() const { return checker_.antipode(); }
    const Antipode& antipode_inverse() const { return checker_.antipode_inverse(); }

    // ---- unital module -----------------------------------------------------

    VerificationReport check_module(const UnitalModule& m,
                                    const std::vector<BasisKey>& vbasis) {
        auto rep = detail_sweep3v(
            "module-associativity", vbasis, [&, this](BasisKey a, BasisKey b, BasisKey v) {
                FinVec lhs, rhs;
                if (m.side == Side::left) {
                    lhs = m.act_vec(basis_vec(b), m.act(a, v)); // b.(a.v)
                    rhs = m.act_lin(S_.A.mul(b, a), v);         // (ba).v
                } else {
                    lhs = m.act_vec(basis_vec(b), m.act(a, v)); // (v.a).b
                    rhs = m.act_lin(S_.A.mul(a, b), v);         // v.(ab)
                }
                return std::pair(lhs, rhs);
            });
        if (!rep.passed()) return rep;
        // unitality A.V = V as a span condition
        exactalg::LinearSystem<BasisKey> sys;
        for (const auto& a : window_)
            for (const auto& v : vbasis) sys.add_column(exactalg::to_column(m.act(a, v)));
        int rank = sys.rank();
        if (rank != static_cast<int>(vbasis.size())) {
            rep.status = VerificationReport::Status::fail;
            rep.note = "action not unital: A.V spans rank " + std::to_string(rank) + " of " +
                       std::to_string(vbasis.size());
        } else {
            rep.name = "module-laws";
            rep.note = "associative and unital (span rank " + std::to_string(rank) + ")";
        }
        return rep;
    }

    // ---- quasicomodule -------------------------------------------------------

    /// Injectivity of Gamma on the module basis, via the rank of the damped
    /// profiles.
    VerificationReport check_injectivity(const QuasiCoaction& c,
                                         const std::vector<BasisKey>& vbasis) {
        VerificationReport rep;
        rep.name = "coaction-injective";
        rep.window_desc = wdesc_;
        rep.tuples = static_cast<long long>(vbasis.size());
        using Row = std::pair<BasisKey, exactalg::TensorKey>;
        exactalg::LinearSystem<Row> sys;
        for (const auto& v : vbasis) {
            std::map<Row, Scalar> col;
            for (const auto& a : window_)
                for (const auto& [k, s] : c.rho(a, v)) col[{a, k}] += s;
            sys.add_column(std::move(col));
        }
        int rank = sys.rank();
        if (rank != static_cast<int>(vbasis.size())) {
            rep.status = VerificationReport::Status::fail;
            rep.note = "damped profiles span rank " + std::to_string(rank) + " of " +
                       std::to_string(vbasis.size());
        }
        return rep;
    }

    /// The (lambda, rho) pair of each basis vector must be a completed-module
    /// element: a.lam(a') = rho(a).a' plus the derived one-sided laws.
    VerificationReport coaction_completed_module(const QuasiCoaction& c,
                                                 const std::vector<BasisKey>& vbasis) {
        VerificationReport rep;
        rep.name = "coaction-completed-module";
        rep.window_desc = wdesc_;
        mult::BimoduleOps<FinTensor> ops = coaction_bimodule(c.side);
        for (const auto& v : vbasis) {
            mult::CompletedElement<FinTensor> z{
                [&c, v](BasisKey a) { return c.lam(a, v); },
                [&c, v](BasisKey a) { return c.rho(a, v); }};
            auto r = mult::completed_module_check(S_.A, ops, z, window_);
            rep.tuples += r.tuples;
            if (!r.pass) {
                rep.status = VerificationReport::Status::fail;
                rep.witness = Witness{r.witness->keys, r.witness->lhs, r.witness->rhs};
                rep.note = "fails at module basis vector " + S_.A.label(v);
                return rep;
            }
        }
        return rep;
    }

    /// Counit law and the two antipode-coassociativity laws of a
    /// quasi-coaction, in damped form.
    VerificationReport check_quasicomodule(const QuasiCoaction& c,
                                           const std::vector<BasisKey>& vbasis) {
        const Antipode& S = checker_.antipode();
        const Antipode& Si = checker_.antipode_inverse();
        if (c.side == Side::left) {
            return detail_sweep2v("quasicomodule-left", vbasis, [&, this](BasisKey a, BasisKey v) {
                FinVec lhs = contract_leg1(S_.counit, c.rho(a, v));
                FinVec rhs = basis_vec(v);
                rhs *= S_.counit(a);
                if (lhs != rhs) return std::pair(to2(lhs), to2(rhs));
                FinTensor id = exactalg::basis_tensor(a, v);
                // a v_(-1) S(v_(0)(-1)) (x) v_(0)(0) = a (x) v
                FinTensor acc1;
                for (const auto& [k, s] : c.rho(a, v)) {
                    FinTensor t = apply_leg1(S.kernel(), c.lam_lin(Si(k.first), k.second));
                    t *= s;
                    acc1 += t;
                }
                if (acc1 != id) return std::pair(to2(acc1), to2(id));
                // a S(v_(-1)) v_(0)(-1) (x) v_(0)(0) = a (x) v
                FinTensor acc2;
                for (const auto& [k, s] : c.lam_lin(Si(a), v)) {
                    FinTensor t = c.rho_lin(S(k.first), k.second);
                    t *= s;
                    acc2 += t;
                }
                return std::pair(to2(acc2), to2(id));
            });
        }
        return detail_sweep2v("quasicomodule-right", vbasis, [&, this](BasisKey a, BasisKey v) {
            FinVec lhs = contract_leg2(S_.counit, c.lam(a, v));
            FinVec rhs = basis_vec(v);
            rhs *= S_.counit(a);
            if (lhs != rhs) return std::pair(to2(lhs), to2(rhs));
            FinTensor id = exactalg::basis_tensor(v, a);
            // v_(0)(0) (x) v_(0)(1) S(v_(1)) a = v (x) a
            FinTensor acc1;
            for (const auto& [k, s] : apply_leg2(S.kernel(), c.rho_lin(Si(a), v))) {
                FinTensor t = c.lam(k.second, k.first);
                t *= s;
                acc1 += t;
            }
            if (acc1 != id) return std::pair(to2(acc1), to2(id));
            // v_(0)(0) (x) S(v_(0)(1)) v_(1) a = v (x) a
            FinTensor acc2;
            for (const auto& [k, s] : c.lam(a, v)) {
                FinTensor t = apply_leg2(S.kernel(), c.rho_lin(Si(k.second), k.first));
                t *= s;
                acc2 += t;
            }
            return std::pair(to2(acc2), to2(id));
        });
    }

    /// Two-sided compatibility of a left and a right coaction on one space:
    /// a v_(-1) (x) v_(0)(0) (x) v_(0)(1) b = a v_(0)(-1) (x) v_(0)(0) (x) v_(1) b.
    VerificationReport check_bicomodule(const QuasiCoaction& l, const QuasiCoaction& r,
                                        const std::vector<BasisKey>& vbasis) {
        if (l.side != Side::left || r.side != Side::right)
            throw YdqError("check_bicomodule takes one left and one right coaction");
        return detail_sweep3av("bicomodule-compat", vbasis,
                               [&](BasisKey a, BasisKey v, BasisKey b) {
                                   Tensor3 lhs;
                                   for (const auto& [k, s] : l.rho(a, v))
                                       for (const auto& [k2, s2] : r.lam(b, k.second))
                                           lhs.add({k.first, k2.first, k2.second}, s * s2);
                                   Tensor3 rhs;
                                   for (const auto& [k, s] : r.lam(b, v))
                                       for (const auto& [k2, s2] : l.rho(a, k.first))
                                           rhs.add({k2.first, k2.second, k.second}, s * s2);
                                   return std::pair(lhs, rhs);
                               });
    }

    // ---- compatibility families -----------------------------------------

    /// The three compatibility identities of the declared variant (plus the
    /// equivalent one-sided form and its cross-check for LL).
    std::vector<VerificationReport> check_ydq(const YDQuasimodule& m) {
        std::vector<VerificationReport> out;
        std::string tag = std::string("ydq-") + to_string(m.variant);
        const auto& vb = m.vbasis;
        const UnitalModule& mod = m.module;
        const QuasiCoaction& co = m.coaction;
        if (module_side(m.variant) != mod.side || coaction_side(m.variant) != co.side)
            throw YdqError("variant/side mismatch in YDQ instance");

        switch (m.variant) {
            case Variant::LL: {
                out.push_back(family_one_left(tag + "-1", mod, co, vb));
                out.push_back(family_two(tag + "-2", mod, vb));
                out.push_back(family_three(tag + "-3", mod, vb));
                out.push_back(family_alt_ll(tag + "-alt", mod, co, vb));
                VerificationReport cross;
                cross.name = tag + "-crosscheck";
                cross.window_desc = wdesc_;
                cross.tuples = out[0].tuples + out[3].tuples;
                if (out[0].passed() != out[3].passed()) {
                    cross.status = VerificationReport::Status::fail;
                    cross.note = "the two equivalent compatibility forms disagree";
                } else {
                    cross.note = "both equivalent compatibility forms " +
                                 std::string(out[0].passed() ? "hold" : "fail together");
                }
                out.push_back(cross);
                break;
            }
            case Variant::RL:
                out.push_back(family_one_rl(tag + "-1", mod, co, vb));
                out.push_back(family_two(tag + "-2", mod, vb));
                out.push_back(family_three(tag + "-3", mod, vb));
                break;
            case Variant::LR:
                out.push_back(family_one_lr(tag + "-1", mod, co, vb));
                out.push_back(family_two_right_co(tag + "-2", mod, vb));
                out.push_back(family_three(tag + "-3", mod, vb));
                break;
            case Variant::RR:
                out.push_back(family_one_rr(tag + "-1", mod, co, vb));
                out.push_back(family_two_right_co(tag + "-2", mod, vb));
                out.push_back(family_three(tag + "-3", mod, vb));
                break;
        }
        return out;
    }

    // ---- functors ---------------------------------------------------------

    YDQuasimodule transport(const YDQuasimodule& m, Variant target) const {
        YDQuasimodule out;
        out.variant = target;
        out.vbasis = m.vbasis;
        out.module = transform_module(m.module, module_side(m.variant), module_side(target));
        out.coaction =
            transform_coaction(m.coaction, coaction_side(m.variant), coaction_side(target));
        return out;
    }

    /// Kernel-level equality of two instances on window x vbasis.
    bool instances_equal(const YDQuasimodule& a, const YDQuasimodule& b) const {
        if (a.variant != b.variant || a.vbasis != b.vbasis) return false;
        for (const auto& k : window_)
            for (const auto& v : a.vbasis) {
                if (a.module.act(k, v) != b.module.act(k, v)) return false;
                if (a.coaction.rho(k, v) != b.coaction.rho(k, v)) return false;
                if (a.coaction.lam(k, v) != b.coaction.lam(k, v)) return false;
            }
        return true;
    }

    /// Sampled morphism condition: scalar multiples of the identity stay
    /// quasicomodule morphisms after transport.
    VerificationReport check_morphism_preservation(const YDQuasimodule& m) {
        return detail_sweep2v("functor-morphism-sample", m.vbasis,
                              [&](BasisKey a, BasisKey v) {
                                  Scalar two(2);
                                  FinTensor lhs = m.coaction.rho(a, v);
                                  lhs *= two; // Gamma(f(v)) with f = 2 id
                                  FinTensor rhs = m.coaction.rho(a, v);
                                  rhs *= two; // (id (x) f)Gamma(v)
                                  return std::pair(to2(lhs), to2(rhs));
                              });
    }

private:
    // -- family shapes ----------------------------------------------------

    // b (a_(1).v)_(-1) a_(2) (x) (a_(1).v)_(0) = b a_(1) v_(-1) (x) a_(2).v_(0)
    VerificationReport family_one_left(std::string name, const UnitalModule& mod,
                                       const QuasiCoaction& co,
                                       const std::vector<BasisKey>& vb) {
        return detail_sweep3av(std::move(name), vb, [&, this](BasisKey a, BasisKey v, BasisKey b) {
            FinTensor lhs;
            for (const auto& [sk, sc] : checker_.slice_delta(a)) {
                for (const auto& [vk, vc] : mod.act(sk.first, v)) {
                    for (const auto& [k, s] : co.rho(b, vk))
                        for (const auto& [p, cp] : S_.A.mul(k.first, sk.second))
                            lhs.add({p, k.second}, sc * vc * s * cp);
                }
            }
            FinTensor rhs;
            for (const auto& [k, s] : S_.T2(b, a))
                for (const auto& [k2, s2] : co.rho(k.first, v))
                    for (const auto& [vk, vc] : mod.act(k.second, k2.second))
                        rhs.add({k2.first, vk}, s * s2 * vc);
            return std::pair(lhs, rhs);
        });
    }

    // b a_(2) (v.a_(1))_(-1) (x) (v.a_(1))_(0) = b v_(-1) a_(1) (x) v_(0).a_(2)
    VerificationReport family_one_rl(std::string name, const UnitalModule& mod,
                                     const QuasiCoaction& co,
                                     const std::vector<BasisKey>& vb) {
        return detail_sweep3av(std::move(name), vb, [&, this](BasisKey a, BasisKey v, BasisKey b) {
            FinTensor lhs;
            for (const auto& [sk, sc] : checker_.slice_delta(a)) {
                FinVec by = S_.A.mul(b, sk.second);
                for (const auto& [vk, vc] : mod.act(sk.first, v)) {
                    FinTensor t = co.rho_lin(by, vk);
                    t *= sc * vc;
                    lhs += t;
                }
            }
            FinTensor rhs;
            for (const auto& [sk, sc] : checker_.slice_delta(a))
                for (const auto& [k, s] : co.rho(b, v))
                    for (const auto& [p, cp] : S_.A.mul(k.first, sk.first))
                        for (const auto& [vk, vc] : mod.act(sk.second, k.second))
                            rhs.add({p, vk}, sc * s * cp * vc);
            return std::pair(lhs, rhs);
        });
    }

    // (a_(2).v)_(0) (x) (a_(2).v)_(1) a_(1) b = a_(1).v_(0) (x) a_(2) v_(1) b
    VerificationReport family_one_lr(std::string name, const UnitalModule& mod,
                                     const QuasiCoaction& co,
                                     const std::vector<BasisKey>& vb) {
        return detail_sweep3av(std::move(name), vb, [&, this](BasisKey a, BasisKey v, BasisKey b) {
            FinTensor lhs;
            for (const auto& [sk, sc] : checker_.slice_delta(a)) {
                FinVec xb = S_.A.mul(sk.first, b);
                for (const auto& [vk, vc] : mod.act(sk.second, v)) {
                    FinTensor t = co.lam_lin(xb, vk);
                    t *= sc * vc;
                    lhs += t;
                }
            }
            FinTensor rhs;
            for (const auto& [sk, sc] : checker_.slice_delta(a))
                for (const auto& [k, s] : co.lam(b, v))
                    for (const auto& [vk, vc] : mod.act(sk.first, k.first))
                        for (const auto& [q, cq] : S_.A.mul(sk.second, k.second))
                            rhs.add({vk, q}, sc * s * vc * cq);
            return std::pair(lhs, rhs);
        });
    }

    // (v.a_(2))_(0) (x) b a_(1) (v.a_(2))_(1) = v_(0).a_(1) (x) b v_(1) a_(2)
    VerificationReport family_one_rr(std::string name, const UnitalModule& mod,
                                     const QuasiCoaction& co,
                                     const std::vector<BasisKey>& vb) {
        return detail_sweep3av(std::move(name), vb, [&, this](BasisKey a, BasisKey v, BasisKey b) {
            FinTensor lhs;
            for (const auto& [sk, sc] : checker_.slice_delta(a)) {
                FinVec bx = S_.A.mul(b, sk.first);
                for (const auto& [vk, vc] : mod.act(sk.second, v)) {
                    FinTensor t = co.rho_lin(bx, vk);
                    t *= sc * vc;
                    lhs += t;
                }
            }
            FinTensor rhs;
            for (const auto& [sk, sc] : checker_.slice_delta(a))
                for (const auto& [k, s] : co.rho(b, v))
                    for (const auto& [vk, vc] : mod.act(sk.first, k.first))
                        for (const auto& [q, cq] : S_.A.mul(k.second, sk.second))
                            rhs.add({vk, q}, sc * s * vc * cq);
            return std::pair(lhs, rhs);
        });
    }

    // a_(1).v (x) a_(2)(1) (x) a_(2)(2) b  =  a_(1)(1).v (x) a_(1)(2) (x) a_(2) b
    VerificationReport family_two(std::string name, const UnitalModule& mod,
                                  const std::vector<BasisKey>& vb) {
        return detail_sweep3av(std::move(name), vb, [&, this](BasisKey a, BasisKey v, BasisKey b) {
            Tensor3 lhs;
            for (const auto& [sk, sc] : checker_.slice_delta(a))
                for (const auto& [vk, vc] : mod.act(sk.first, v))
                    for (const auto& [k, s] : S_.T1(sk.second, b))
                        lhs.add({vk, k.first, k.second}, sc * vc * s);
            Tensor3 rhs;
            for (const auto& [k, s] : S_.T1(a, b))
                for (const auto& [sk, sc] : checker_.slice_delta(k.first))
                    for (const auto& [vk, vc] : mod.act(sk.first, v))
                        rhs.add({vk, sk.second, k.second}, s * sc * vc);
            return std::pair(lhs, rhs);
        });
    }

    // b a_(1) (x) a_(2)(1) (x) a_(2)(2).v  =  b a_(1)(1) (x) a_(1)(2) (x) a_(2).v
    VerificationReport family_two_right_co(std::string name, const UnitalModule& mod,
                                           const std::vector<BasisKey>& vb) {
        return detail_sweep3av(std::move(name), vb, [&, this](BasisKey a, BasisKey v, BasisKey b) {
            Tensor3 lhs;
            for (const auto& [k, s] : S_.T2(b, a))
                for (const auto& [sk, sc] : checker_.slice_delta(k.second))
                    for (const auto& [vk, vc] : mod.act(sk.second, v))
                        lhs.add({k.first, sk.first, vk}, s * sc * vc);
            Tensor3 rhs;
            for (const auto& [sk, sc] : checker_.slice_delta(a))
                for (const auto& [k, s] : S_.T2(b, sk.first))
                    for (const auto& [vk, vc] : mod.act(sk.second, v))
                        rhs.add({k.first, k.second, vk}, sc * s * vc);
            return std::pair(lhs, rhs);
        });
    }

    // b a_(1) (x) a_(2)(1).v (x) a_(2)(2) c = b a_(1)(1) (x) a_(1)(2).v (x) a_(2) c
    VerificationReport family_three(std::string name, const UnitalModule& mod,
                                    const std::vector<BasisKey>& vb) {
        std::vector<const std::vector<BasisKey>*> slots{&window_, &vb, &window_, &window_};
        auto eval = [&, this](const std::array<BasisKey, 4>& t, std::string* L,
                              std::string* R) {
            BasisKey a = t[0], v = t[1], b = t[2], c = t[3];
            Tensor3 lhs;
            for (const auto& [k, s] : S_.T2(b, a))
                for (const auto& [k2, s2] : S_.T1(k.second, c))
                    for (const auto& [vk, vc] : mod.act(k2.first, v))
                        lhs.add({k.first, vk, k2.second}, s * s2 * vc);
            Tensor3 rhs;
            for (const auto& [k, s] : S_.T1(a, c))
                for (const auto& [k2, s2] : S_.T2(b, k.first))
                    for (const auto& [vk, vc] : mod.act(k2.second, v))
                        rhs.add({k2.first, vk, k.second}, s * s2 * vc);
            if (lhs == rhs) return true;
            if (L) *L = to_string(lhs, S_.A.label);
            if (R) *R = to_string(rhs, S_.A.label);
            return false;
        };
        return coquasi::detail::sweep_slots(std::move(name), slots, eval, workers_, wdesc_);
    }

    // b (a.v)_(-1) (x) (a.v)_(0) = b a_(1)(1) v_(-1) S(a_(2)) (x) a_(1)(2).v_(0)
    VerificationReport family_alt_ll(std::string name, const UnitalModule& mod,
                                     const QuasiCoaction& co,
                                     const std::vector<BasisKey>& vb) {
        const Antipode& S = checker_.antipode();
        return detail_sweep3av(std::move(name), vb, [&, this](BasisKey a, BasisKey v, BasisKey b) {
            FinTensor lhs;
            for (const auto& [vk, vc] : mod.act(a, v)) {
                FinTensor t = co.rho(b, vk);
                t *= vc;
                lhs += t;
            }
            FinTensor rhs;
            for (const auto& [sk, sc] : checker_.slice_delta(a)) {
                FinVec sy = S(sk.second);
                for (const auto& [sk2, sc2] : checker_.slice_delta(sk.first)) {
                    FinVec bp = S_.A.mul(b, sk2.first);
                    for (const auto& [k, s] : co.rho_lin(bp, v))
                        for (const auto& [p, cp] : S_.A.mul(basis_vec(k.first), sy))
                            for (const auto& [vk, vc] : mod.act(sk2.second, k.second))
                                rhs.add({p, vk}, sc * sc2 * s * cp * vc);
                }
            }
            return std::pair(lhs, rhs);
        });
    }

    // -- functor transforms -------------------------------------------------

    UnitalModule transform_module(const UnitalModule& m, Side from, Side to) const {
        if (from == to) return m;
        UnitalModule out;
        out.side = to;
        if (from == Side::left) { // v.a := S(a).v
            Antipode S = checker_.antipode();
            out.act = [m, S](BasisKey a, BasisKey v) { return m.act_lin(S(a), v); };
        } else { // a.v := v.S^{-1}(a)
            Antipode Si = checker_.antipode_inverse();
            out.act = [m, Si](BasisKey a, BasisKey v) { return m.act_lin(Si(a), v); };
        }
        return out;
    }

    QuasiCoaction transform_coaction(const QuasiCoaction& c, Side from, Side to) const {
        if (from == to) return c;
        QuasiCoaction out;
        out.side = to;
        Antipode S = checker_.antipode();
        Antipode Si = checker_.antipode_inverse();
        auto swap_legs = [](const FinTensor& t, const VecKernel& f) {
            // (x, w) |-> w (x) f(x), used leg-wise below
            FinTensor o;
            for (const auto& [k, s] : t)
                for (const auto& [fk, fc] : f(k.first)) o.add({k.second, fk}, s * fc);
            return o;
        };
        if (from == Side::left) {
            // Gamma_r(v) = v_(0) (x) S^{-1}(v_(-1))
            out.rho = [c, S, Si, swap_legs](BasisKey a, BasisKey v) {
                return swap_legs(c.lam_lin(S(a), v), Si.kernel());
            };
            out.lam = [c, S, Si, swap_legs](BasisKey a, BasisKey v) {
                return swap_legs(c.rho_lin(S(a), v), Si.kernel());
            };
        } else {
            // Gamma_l(v) = S(v_(1)) (x) v_(0)
            auto unswap = [](const FinTensor& t, const VecKernel& f) {
                FinTensor o;
                for (const auto& [k, s] : t)
                    for (const auto& [fk, fc] : f(k.second)) o.add({fk, k.first}, s * fc);
                return o;
            };
            out.rho = [c, S, Si, unswap](BasisKey a, BasisKey v) {
                return unswap(c.lam_lin(Si(a), v), S.kernel());
            };
            out.lam = [c, S, Si, unswap](BasisKey a, BasisKey v) {
                return unswap(c.rho_lin(Si(a), v), S.kernel());
            };
        }
        return out;
    }

    // -- plumbing -----------------------------------------------------------

    mult::BimoduleOps<FinTensor> coaction_bimodule(Side side) const {
        const exactalg::Algebra* A = &S_.A;
        auto print = [A](const FinTensor& t) { return to_string(t, A->label); };
        if (side == Side::left)
            return {[A](BasisKey a, const FinTensor& x) {
                        FinTensor o;
                        for (const auto& [k, s] : x)
                            for (const auto& [p, c] : A->mul(a, k.first)) o.add({p, k.second}, s * c);
                        return o;
                    },
                    [A](const FinTensor& x, BasisKey a) {
                        FinTensor o;
                        for (const auto& [k, s] : x)
                            for (const auto& [p, c] : A->mul(k.first, a)) o.add({p, k.second}, s * c);
                        return o;
                    },
                    print};
        return {[A](BasisKey a, const FinTensor& x) {
                    FinTensor o;
                    for (const auto& [k, s] : x)
                        for (const auto& [p, c] : A->mul(a, k.second)) o.add({k.first, p}, s * c);
                    return o;
                },
                [A](const FinTensor& x, BasisKey a) {
                    FinTensor o;
                    for (const auto& [k, s] : x)
                        for (const auto& [p, c] : A->mul(k.second, a)) o.add({k.first, p}, s * c);
                    return o;
                },
                print};
    }

    template <class X>
    std::string to2(const X& x) const {
        return to_string(x, S_.A.label);
    }
    std::string to2(const std::string& s) const { return s; }

    template <class F>
    VerificationReport detail_sweep2v(std::string name, const std::vector<BasisKey>& vb, F f) {
        std::vector<const std::vector<BasisKey>*> slots{&window_, &vb};
        auto eval = [f](const std::array<BasisKey, 4>& t, std::string* L, std::string* R) {
            auto [lhs, rhs] = f(t[0], t[1]);
            if (lhs == rhs) return true;
            if (L) *L = lhs;
            if (R) *R = rhs;
            return false;
        };
        return coquasi::detail::sweep_slots(std::move(name), slots, eval, workers_, wdesc_);
    }

    // (a, v, b) tuples
    template <class F>
    VerificationReport detail_sweep3av(std::string name, const std::vector<BasisKey>& vb, F f) {
        std::vector<const std::vector<BasisKey>*> slots{&window_, &vb, &window_};
        auto eval = [f, this](const std::array<BasisKey, 4>& t, std::string* L, std::string* R) {
            auto [lhs, rhs] = f(t[0], t[1], t[2]);
            if (lhs == rhs) return true;
            if (L) *L = to2(lhs);
            if (R) *R = to2(rhs);
            return false;
        };
        return coquasi::detail::sweep_slots(std::move(name), slots, eval, workers_, wdesc_);
    }

    // (a, b, v) tuples for the module laws
    template <class F>
    VerificationReport detail_sweep3v(std::string name, const std::vector<BasisKey>& vb, F f) {
        std::vector<const std::vector<BasisKey>*> slots{&window_, &window_, &vb};
        auto eval = [f, this](const std::array<BasisKey, 4>& t, std::string* L, std::string* R) {
            auto [lhs, rhs] = f(t[0], t[1], t[2]);
            if (lhs == rhs) return true;
            if (L) *L = to2(lhs);
            if (R) *R = to2(rhs);
            return false;
        };
        return coquasi::detail::sweep_slots(std::move(name), slots, eval, workers_, wdesc_);
    }

    const CoquasiStructure& S_;
    coquasi::Checker checker_;
    int workers_;
    std::vector<BasisKey> window_;
    std::string wdesc_;
};

} // namespace mhcq::ydq
