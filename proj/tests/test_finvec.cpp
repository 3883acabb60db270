#include <catch2/catch_amalgamated.hpp>

#include "mhcq/finvec.hpp"

#include <random>

using namespace mhcq::exactalg;

namespace {

FinVec random_vec(std::mt19937_64& rng, int keys = 12) {
    std::uniform_int_distribution<int> key(0, keys - 1);
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<int> len(0, 4);
    FinVec v;
    int L = len(rng);
    for (int j = 0; j < L; ++j)
        v.add({key(rng), 0}, Scalar(Rat(num(rng)), Rat(num(rng))));
    return v;
}

} // namespace

TEST_CASE("sparse combinations prune zeros immediately") {
    FinVec v;
    v.add({3, 0}, Scalar::one());
    v.add({3, 0}, Scalar(-1));
    CHECK(v.is_zero());
    v.add({1, 0}, Scalar::zero());
    CHECK(v.is_zero());
    CHECK(to_string(v) == "0");

    FinVec w;
    w.add({5, 0}, Scalar::frac(1, 2));
    w.add({2, 0}, Scalar(2));
    CHECK(to_string(w) == "2/1*[2] + 1/2*[5]"); // sorted support
}

TEST_CASE("vector space laws on random combinations") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 200; ++it) {
        FinVec a = random_vec(rng), b = random_vec(rng), c = random_vec(rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a - a == FinVec());
        Scalar s(Rat(3, 2), Rat(-1));
        CHECK(s * (a + b) == s * a + s * b);
    }
}

TEST_CASE("flip is an involution and commutes with leg application") {
    std::mt19937_64 rng(7);
    VecKernel f([](BasisKey k) {
        FinVec v;
        v.add({k.i + 1, k.n}, Scalar(2));
        v.add({k.i, k.n + 1}, Scalar::frac(-1, 3));
        return v;
    });
    VecKernel g([](BasisKey k) { return FinVec({k.i * 2, k.n}, Scalar::one()); });
    for (int it = 0; it < 100; ++it) {
        FinTensor t = outer(random_vec(rng), random_vec(rng));
        CHECK(flip(flip(t)) == t);
        // (f (x) g) o flip = flip o (g (x) f)
        CHECK(apply_leg2(g, apply_leg1(f, flip(t))) ==
              flip(apply_leg1(g, apply_leg2(f, t))));
    }
}

TEST_CASE("kernels extend linearly (additivity and homogeneity)") {
    std::mt19937_64 rng(123);
    VecKernel f([](BasisKey k) {
        FinVec v;
        v.add({(k.i * 3 + 1) % 17, 0}, Scalar::frac(2, 3));
        v.add({(k.i + 5) % 17, 0}, Scalar(Rat(0), Rat(1)));
        return v;
    });
    for (int it = 0; it < 200; ++it) {
        FinVec a = random_vec(rng, 17), b = random_vec(rng, 17);
        Scalar s(Rat(-5, 4), Rat(1, 2));
        CHECK(f.apply(a + b) == f.apply(a) + f.apply(b));
        CHECK(f.apply(s * a) == s * f.apply(a));
    }
}

TEST_CASE("leg application examples") {
    // (eps (x) id)(d_g (x) d_h) = eps(d_g) d_h
    ScalarKernel eps([](BasisKey k) { return k.i == 0 ? Scalar::one() : Scalar::zero(); });
    FinTensor t = basis_tensor({0, 0}, {4, 0});
    CHECK(contract_leg1(eps, t) == basis_vec({4, 0}));
    FinTensor u = basis_tensor({3, 0}, {4, 0});
    CHECK(contract_leg1(eps, u).is_zero());

    CHECK(flip(basis_tensor({1, 0}, {2, 0})) == basis_tensor({2, 0}, {1, 0}));
}

TEST_CASE("canonical tensor serialization") {
    FinTensor t;
    t.add({{2, 0}, {1, 0}}, Scalar::one());
    t.add({{0, 0}, {9, 0}}, Scalar::iunit());
    CHECK(to_string(t) == "0/1+1/1i*[0|9] + 1/1*[2|1]");
}
