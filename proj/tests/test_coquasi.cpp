#include <catch2/catch_amalgamated.hpp>

#include "mhcq/verify.hpp"

#include <map>

using namespace mhcq;
using namespace mhcq::coquasi;
using exactalg::BasisKey;
using exactalg::FinTensor;
using exactalg::FinVec;
using exactalg::Scalar;
using exactalg::basis_tensor;
using exactalg::basis_vec;

namespace {

CoquasiStructure l10_structure() {
    auto L = loopcore::steiner_loop(loopcore::sts9_triples());
    loopcore::validate_table(L);
    return loop_function_structure(std::make_shared<loopcore::TableOracle>(std::move(L)),
                                   "k(L10)");
}

CoquasiStructure s3_function_structure() {
    auto G = loopcore::symmetric_group_3();
    loopcore::validate_table(G);
    return loop_function_structure(std::make_shared<loopcore::TableOracle>(std::move(G)),
                                   "k(S3 functions)");
}

std::map<std::string, VerificationReport> by_name(const std::vector<VerificationReport>& v) {
    std::map<std::string, VerificationReport> m;
    for (const auto& r : v) m.emplace(r.name, r);
    return m;
}

} // namespace

TEST_CASE("loop kernels agree with a direct division scan") {
    auto L = loopcore::steiner_loop(loopcore::sts9_triples());
    loopcore::validate_table(L);
    auto S = loop_function_structure(std::make_shared<loopcore::TableOracle>(L));

    for (int g = 0; g < 10; ++g)
        for (int h = 0; h < 10; ++h) {
            // independent oracle: scan the table row/column for the divisions
            int rdiv = -1, ldiv = -1;
            for (int x = 0; x < 10; ++x) {
                if (L.mul(x, h) == g) rdiv = x;
                if (L.mul(g, x) == h) ldiv = x;
            }
            BasisKey a{g, 0}, b{h, 0};
            CHECK(S.T1(a, b) == basis_tensor({rdiv, 0}, b));
            CHECK(S.T2(a, b) == basis_tensor(a, {ldiv, 0}));
        }
}

TEST_CASE("counit of a loop function algebra is forced to evaluation at identity") {
    auto S = l10_structure();
    // solve the counit law on the basis: (eps (x) id)T1(d_g (x) d_h) =
    // eps(d_{g/h}) d_h must equal d_g d_h = [g=h] d_g, which pins every value
    auto L = loopcore::steiner_loop(loopcore::sts9_triples());
    loopcore::validate_table(L);
    std::map<int, Scalar> forced;
    for (int g = 0; g < 10; ++g)
        for (int h = 0; h < 10; ++h) {
            int u = L.rdiv(g, h);
            Scalar rhs = g == h ? Scalar::one() : Scalar::zero();
            auto it = forced.find(u);
            if (it == forced.end()) forced.emplace(u, rhs);
            else CHECK(it->second == rhs); // consistent system
        }
    REQUIRE(forced.size() == 10);
    for (int u = 0; u < 10; ++u) CHECK(S.counit(BasisKey{u, 0}) == forced.at(u));
}

TEST_CASE("antipode on k(L10) is the identity on the basis") {
    auto S = l10_structure();
    Checker ck(S, 1, 1);
    REQUIRE(ck.antipode_build().passed());
    const Antipode& ant = ck.antipode();
    for (int x = 0; x < 10; ++x) {
        BasisKey k{x, 0};
        CHECK(ant(k) == basis_vec(k));
        // independent evaluation of the defining formula over every damp
        for (int h = 0; h < 10; ++h) {
            FinVec lhs = contract_leg1(S.counit, S.T1inv(k, {h, 0}));
            FinVec rhs = S.A.mul(basis_vec(k), basis_vec(BasisKey{h, 0}));
            CHECK(lhs == rhs); // S(d_x) d_h = [x=h] d_h = d_x d_h
        }
    }
}

TEST_CASE("group algebra kernels and antipode") {
    auto S = group_algebra_structure(loopcore::cyclic_group(2), "k[Z2]");
    BasisKey e{0, 0}, g{1, 0};
    // Delta(g) = g (x) g: T1(g,h) = g (x) gh
    CHECK(S.T1(g, g) == basis_tensor(g, e));
    CHECK(S.T1(g, e) == basis_tensor(g, g));
    CHECK(S.T2(g, g) == basis_tensor(e, g));
    Checker ck(S, 1, 1);
    REQUIRE(ck.antipode_build().passed());
    CHECK(ck.antipode()(g) == basis_vec(g)); // g^{-1} = g in Z2

    // (e+g)(e-g) = 0
    FinVec ep = basis_vec(e) + basis_vec(g);
    FinVec em = basis_vec(e) - basis_vec(g);
    CHECK(S.A.mul(ep, em).is_zero());

    auto S3 = group_algebra_structure(loopcore::symmetric_group_3(), "k[S3]");
    auto T = loopcore::symmetric_group_3();
    loopcore::validate_table(T);
    Checker ck3(S3, 1, 1);
    REQUIRE(ck3.antipode_build().passed());
    for (int x = 0; x < 6; ++x)
        CHECK(ck3.antipode()(BasisKey{x, 0}) == basis_vec(BasisKey{T.right_inverse(x), 0}));
}

TEST_CASE("full suite on the group baselines") {
    for (auto* make : {+[]() { return group_algebra_structure(loopcore::cyclic_group(2), "k[Z2]"); },
                       +[]() { return group_algebra_structure(loopcore::symmetric_group_3(), "k[S3]"); },
                       +[]() { return s3_function_structure(); }}) {
        auto S = make();
        auto reports = run_verify_suite(S, 1, 1);
        for (const auto& r : reports) {
            if (r.name == "cocommutativity") continue; // classification, not a law
            INFO(S.A.name << " / " << r.name << " : " << r.note);
            if (r.ran()) CHECK(r.passed());
        }
        auto v = derive_verdict(reports);
        CHECK(v.gmhc);
        CHECK(v.regular);
        CHECK(v.coassociative == Tri::yes);
        CHECK(v.star_ok == Tri::yes);
        CHECK(v.consequences_ok);
    }
}

TEST_CASE("full suite on k(L10): regular but genuinely non-coassociative") {
    auto S = l10_structure();
    auto reports = run_verify_suite(S, 1, 1);
    auto m = by_name(reports);

    for (const auto& [name, r] : m) {
        if (name == "coassociativity") continue; // the interesting failure
        INFO(name << " : " << r.note);
        if (r.ran()) CHECK(r.passed());
    }
    auto& coa = m.at("coassociativity");
    REQUIRE_FALSE(coa.passed());
    REQUIRE(coa.witness.has_value());

    // witness fidelity: re-evaluate the failing triple standalone
    auto w = coa.witness->tuple;
    REQUIRE(w.size() == 3);
    exactalg::Tensor3 lhs, rhs;
    for (const auto& [k, s] : S.T1(w[1], w[2]))
        for (const auto& [k2, s2] : S.T2(w[0], k.first))
            lhs.add({k2.first, k2.second, k.second}, s * s2);
    for (const auto& [k, s] : S.T2(w[0], w[1]))
        for (const auto& [k2, s2] : S.T1(k.second, w[2]))
            rhs.add({k.first, k2.first, k2.second}, s * s2);
    CHECK(lhs != rhs);
    CHECK(to_string(lhs, S.A.label) == coa.witness->lhs);
    CHECK(to_string(rhs, S.A.label) == coa.witness->rhs);

    auto v = derive_verdict(reports);
    CHECK(v.gmhc);
    CHECK(v.regular);
    CHECK(v.coassociative == Tri::no);
    CHECK(v.star_ok == Tri::yes);
    CHECK(v.summary() ==
          "regular multiplier Hopf coquasigroup: yes; coassociative: no");

    // S^2 = id comes out of the commutative-instance check
    CHECK(m.at("antipode-cop-equals-antipode").passed());
}

TEST_CASE("cocommutativity classification") {
    // k[S3] is cocommutative, k(S3) is not
    auto S3 = group_algebra_structure(loopcore::symmetric_group_3());
    Checker ck(S3, 1, 1);
    CHECK(ck.cocommutativity().passed());

    auto F3 = s3_function_structure();
    Checker ckf(F3, 1, 1);
    auto rep = ckf.cocommutativity();
    REQUIRE_FALSE(rep.passed());
    REQUIRE(rep.witness.has_value()); // Delta^cop != Delta with a basis-pair witness
}

TEST_CASE("delta as a multiplier of A (x) A") {
    auto S = l10_structure();
    auto L = loopcore::steiner_loop(loopcore::sts9_triples());
    loopcore::validate_table(L);

    // Delta(d_g)(1 (x) d_h) = d_{g/h} (x) d_h
    BasisKey g{3, 0}, h{5, 0};
    auto dm = delta_as_multiplier(S, basis_vec(g));
    CHECK(delta_half_damped(S, basis_vec(g), h, DampShape::times_one_b) ==
          basis_tensor({L.rdiv(3, 5), 0}, h));

    // multiplier action on full tensors: Delta(a)(u (x) v) = [u = a/v] u (x) v
    for (int u = 0; u < 10; ++u)
        for (int v = 0; v < 10; ++v) {
            FinTensor got = dm.left(BasisKey{u, 0}, BasisKey{v, 0});
            FinTensor want;
            if (L.rdiv(3, v) == u) want = basis_tensor({u, 0}, {v, 0});
            CHECK(got == want);
        }

    // compatibility across the multiplier: (x (x) y)[Delta(a)(u (x) v)] =
    // [(x (x) y)Delta(a)](u (x) v) on sampled tensors
    auto mulT = [&](const FinTensor& s, const FinTensor& t) {
        FinTensor out;
        for (const auto& [ks, cs] : s)
            for (const auto& [kt, ct] : t)
                for (const auto& [p, cp] : S.A.mul(ks.first, kt.first))
                    for (const auto& [q, cq] : S.A.mul(ks.second, kt.second))
                        out.add({p, q}, cs * ct * cp * cq);
        return out;
    };
    for (int x = 0; x < 10; x += 3)
        for (int y = 0; y < 10; y += 3)
            for (int u = 0; u < 10; u += 2)
                for (int v = 0; v < 10; v += 2) {
                    FinTensor xy = basis_tensor({x, 0}, {y, 0});
                    CHECK(mulT(xy, dm.left(BasisKey{u, 0}, BasisKey{v, 0})) ==
                          mulT(dm.right(BasisKey{x, 0}, BasisKey{y, 0}),
                               basis_tensor({u, 0}, {v, 0})));
                }
}

TEST_CASE("group-like comultiplication materializes honestly") {
    auto S = group_algebra_structure(loopcore::cyclic_group(2), "k[Z2]");
    Checker ck(S, 1, 1);
    REQUIRE(ck.unit().has_value());
    CHECK(*ck.unit() == basis_vec(BasisKey{0, 0}));
    CHECK(ck.slice_delta(BasisKey{1, 0}) == basis_tensor({1, 0}, {1, 0}));

    auto SL = l10_structure();
    Checker ckl(SL, 1, 1);
    REQUIRE(ckl.unit().has_value());
    CHECK(ckl.unit()->size() == 10); // sum of all deltas
    CHECK(ckl.slice_delta(BasisKey{0, 0}).size() == 10); // Delta(d_e) has 10 terms
    CHECK(ckl.unital_collapse().passed());
}
