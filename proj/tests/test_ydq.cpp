#include <catch2/catch_amalgamated.hpp>

#include "mhcq/ydq.hpp"

#include <random>

using namespace mhcq;
using namespace mhcq::ydq;
using coquasi::CoquasiStructure;
using coquasi::group_algebra_structure;
using coquasi::loop_function_structure;
using exactalg::BasisKey;
using exactalg::FinVec;
using exactalg::Scalar;
using exactalg::basis_vec;

namespace {

CoquasiStructure l10() {
    auto L = loopcore::steiner_loop(loopcore::sts9_triples());
    loopcore::validate_table(L);
    return loop_function_structure(std::make_shared<loopcore::TableOracle>(std::move(L)),
                                   "k(L10)");
}

CoquasiStructure s3fun() {
    auto G = loopcore::symmetric_group_3();
    loopcore::validate_table(G);
    return loop_function_structure(std::make_shared<loopcore::TableOracle>(std::move(G)),
                                   "k(S3 functions)");
}

YDQuasimodule diagonal_instance(const CoquasiStructure& S, const YdqChecker& ck) {
    YDQuasimodule m;
    m.variant = Variant::LL;
    m.vbasis = ck.window();
    m.module = regular_module(S, Side::left);
    m.coaction = diagonal_coaction(S, Side::left);
    return m;
}

} // namespace

TEST_CASE("diagonal instance over k(L10) is a left-left YD quasimodule") {
    auto S = l10();
    YdqChecker ck(S, 1, 1);
    auto m = diagonal_instance(S, ck);

    CHECK(ck.check_module(m.module, m.vbasis).passed());
    CHECK(ck.check_injectivity(m.coaction, m.vbasis).passed());
    CHECK(ck.coaction_completed_module(m.coaction, m.vbasis).passed());
    CHECK(ck.check_quasicomodule(m.coaction, m.vbasis).passed());

    auto fam = ck.check_ydq(m);
    REQUIRE(fam.size() == 5);
    for (const auto& r : fam) {
        INFO(r.name << " " << r.note);
        CHECK(r.passed());
    }

    // the right-sided diagonal coaction together with the left one satisfies
    // the two-sided compatibility
    auto right = diagonal_coaction(S, Side::right);
    CHECK(ck.check_quasicomodule(right, m.vbasis).passed());
    CHECK(ck.check_bicomodule(m.coaction, right, m.vbasis).passed());
}

TEST_CASE("trivial coaction instance over k[Z2]") {
    auto S = group_algebra_structure(loopcore::cyclic_group(2), "k[Z2]");
    YdqChecker ck(S, 1, 1);
    YDQuasimodule m;
    m.variant = Variant::LL;
    m.vbasis = ck.window();
    m.module = regular_module(S, Side::left);
    m.coaction = trivial_coaction(Side::left);

    CHECK(ck.check_module(m.module, m.vbasis).passed());
    CHECK(ck.check_quasicomodule(m.coaction, m.vbasis).passed());
    for (const auto& r : ck.check_ydq(m)) {
        INFO(r.name);
        CHECK(r.passed());
    }
    CHECK(ck.check_bicomodule(m.coaction, trivial_coaction(Side::right), m.vbasis).passed());
}

TEST_CASE("diagonal instance over non-cocommutative k(S3) fails LL with witness") {
    auto S = s3fun();
    YdqChecker ck(S, 1, 1);
    auto m = diagonal_instance(S, ck);

    // module and coaction are individually fine
    CHECK(ck.check_module(m.module, m.vbasis).passed());
    CHECK(ck.check_quasicomodule(m.coaction, m.vbasis).passed());

    auto fam = ck.check_ydq(m);
    bool any_fail = false;
    for (const auto& r : fam) {
        if (r.name == "ydq-LL-crosscheck") {
            CHECK(r.passed()); // the two equivalent forms must fail together
            continue;
        }
        if (!r.passed()) {
            any_fail = true;
            REQUIRE(r.witness.has_value());
            CHECK_FALSE(r.witness->lhs == r.witness->rhs);
        }
    }
    CHECK(any_fail);

    // mixed-side diagonal coactions violate the two-sided compatibility too
    auto right = diagonal_coaction(S, Side::right);
    auto bic = ck.check_bicomodule(m.coaction, right, m.vbasis);
    CHECK_FALSE(bic.passed());
    REQUIRE(bic.witness.has_value());
}

TEST_CASE("functor transports and the four-step round trip on k(L10)") {
    auto S = l10();
    YdqChecker ck(S, 1, 1);
    auto m = diagonal_instance(S, ck);

    for (Variant target : {Variant::RL, Variant::LR, Variant::RR}) {
        auto t = ck.transport(m, target);
        CHECK(module_side(t.variant) == t.module.side);
        CHECK(coaction_side(t.variant) == t.coaction.side);
        CHECK(ck.check_module(t.module, t.vbasis).passed());
        CHECK(ck.check_quasicomodule(t.coaction, t.vbasis).passed());
        for (const auto& r : ck.check_ydq(t)) {
            INFO(to_string(target) << " / " << r.name);
            CHECK(r.passed());
        }
        CHECK(ck.check_morphism_preservation(t).passed());
    }

    // identity functor
    CHECK(ck.instances_equal(ck.transport(m, Variant::LL), m));

    // LL -> RL -> RR -> LR -> LL restores the kernels exactly
    auto rt = ck.transport(
        ck.transport(ck.transport(ck.transport(m, Variant::RL), Variant::RR), Variant::LR),
        Variant::LL);
    CHECK(ck.instances_equal(rt, m));
}

TEST_CASE("round trip is kernel-exact on a noncommutative group algebra too") {
    auto S = group_algebra_structure(loopcore::symmetric_group_3(), "k[S3]");
    YdqChecker ck(S, 1, 1);
    YDQuasimodule m;
    m.variant = Variant::LL;
    m.vbasis = ck.window();
    m.module = regular_module(S, Side::left);
    m.coaction = trivial_coaction(Side::left);

    auto rt = ck.transport(
        ck.transport(ck.transport(ck.transport(m, Variant::RL), Variant::RR), Variant::LR),
        Variant::LL);
    CHECK(ck.instances_equal(rt, m));

    // transported trivial instance still satisfies its target family
    for (Variant target : {Variant::RL, Variant::LR, Variant::RR}) {
        auto t = ck.transport(m, target);
        for (const auto& r : ck.check_ydq(t)) {
            INFO(to_string(target) << " / " << r.name);
            CHECK(r.passed());
        }
    }
}

TEST_CASE("compatibility identities are multilinear in the algebra legs") {
    auto S = l10();
    YdqChecker ck(S, 1, 1);
    auto m = diagonal_instance(S, ck);

    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<int> key(0, 9);
    std::uniform_int_distribution<long> num(-3, 3);

    auto eval_rhs = [&](BasisKey a, BasisKey v, BasisKey b) {
        exactalg::FinTensor rhs;
        for (const auto& [k, s] : S.T2(b, a))
            for (const auto& [k2, s2] : m.coaction.rho(k.first, v))
                for (const auto& [vk, vc] : m.module.act(k.second, k2.second))
                    rhs.add({k2.first, vk}, s * s2 * vc);
        return rhs;
    };

    // basis-expanded evaluation equals the kernel-linear evaluation on
    // random combinations: basis sweeps are exhaustive for these identities
    for (int it = 0; it < 25; ++it) {
        FinVec a, b;
        for (int j = 0; j < 3; ++j) {
            a.add({key(rng), 0}, Scalar(num(rng)));
            b.add({key(rng), 0}, Scalar(num(rng)));
        }
        BasisKey v{key(rng), 0};
        exactalg::FinTensor expanded;
        for (const auto& [ka, ca] : a)
            for (const auto& [kb, cb] : b) {
                auto t = eval_rhs(ka, v, kb);
                t *= ca * cb;
                expanded += t;
            }
        exactalg::FinTensor direct;
        for (const auto& [k, s] : S.T2.apply(outer(b, a)))
            for (const auto& [k2, s2] : m.coaction.rho(k.first, v))
                for (const auto& [vk, vc] : m.module.act(k.second, k2.second))
                    direct.add({k2.first, vk}, s * s2 * vc);
        CHECK(expanded == direct);
    }
}
