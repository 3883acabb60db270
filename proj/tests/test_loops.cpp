#include <catch2/catch_amalgamated.hpp>

#include "mhcq/enumerate.hpp"
#include "mhcq/loop.hpp"

using namespace mhcq::loopcore;

namespace {

// Independent product oracle for the Steiner loop of AG(2,3): identity 0,
// point p = (i,j) at index 1+3i+j, and x*y = -(x+y) componentwise for
// distinct points (three distinct affine points are collinear iff they sum
// to zero).
int ag23_mul(int x, int y) {
    if (x == 0) return y;
    if (y == 0) return x;
    if (x == y) return 0;
    int xi = (x - 1) / 3, xj = (x - 1) % 3;
    int yi = (y - 1) / 3, yj = (y - 1) % 3;
    int zi = (6 - xi - yi) % 3, zj = (6 - xj - yj) % 3;
    return 1 + 3 * zi + zj;
}

int idx(int i, int j) { return 1 + 3 * i + j; }

} // namespace

TEST_CASE("validate_table: Z2 is an associative commutative IP loop") {
    auto L = cyclic_group(2);
    auto r = validate_table(L);
    CHECK(r.associative.value == Tri::yes);
    CHECK(r.commutative.value == Tri::yes);
    CHECK(r.inverse_property.value == Tri::yes);
}

TEST_CASE("validate_table: malformed tables are rejected with location") {
    LoopTable bad;
    bad.order = 3;
    bad.identity = 0;
    bad.table = {0, 1, 2, 1, 1, 0, 2, 0, 1}; // row 1 repeats entry 1
    CHECK_THROWS_WITH(validate_table(bad), Catch::Matchers::ContainsSubstring("not a Latin square"));

    LoopTable wrong_len;
    wrong_len.order = 3;
    wrong_len.identity = 0;
    wrong_len.table = {0, 1, 2, 1, 2, 0};
    CHECK_THROWS_WITH(validate_table(wrong_len), Catch::Matchers::ContainsSubstring("entries"));

    LoopTable out_of_range;
    out_of_range.order = 2;
    out_of_range.identity = 0;
    out_of_range.table = {0, 1, 1, 7};
    CHECK_THROWS_WITH(validate_table(out_of_range), Catch::Matchers::ContainsSubstring("out of range"));
}

TEST_CASE("steiner loop of AG(2,3): order 10, commutative IP, nonassociative") {
    auto L = steiner_loop(sts9_triples());
    REQUIRE(L.order == 10);

    // product agrees with the independent affine-collinearity oracle
    for (int x = 0; x < 10; ++x)
        for (int y = 0; y < 10; ++y) CHECK(L.mul(x, y) == ag23_mul(x, y));

    auto r = validate_table(L);
    CHECK(r.commutative.value == Tri::yes);
    CHECK(r.inverse_property.value == Tri::yes);
    REQUIRE(r.associative.value == Tri::no);

    // the recorded witness re-evaluates to a violation
    auto w = *r.associative.witness;
    CHECK(associativity_violated(L, w[0], w[1], w[2]));

    // and the coordinate triple ((0,1),(1,0),(1,1)) is a violation too
    CHECK(associativity_violated(L, idx(0, 1), idx(1, 0), idx(1, 1)));
}

TEST_CASE("steiner loop x*(x*y) = y holds exhaustively") {
    auto L = steiner_loop(sts9_triples());
    for (int x = 0; x < L.order; ++x)
        for (int y = 0; y < L.order; ++y) CHECK(L.mul(x, L.mul(x, y)) == y);
}

TEST_CASE("Fano plane gives an associative order-8 loop of exponent 2") {
    auto L = steiner_loop(sts7_triples());
    REQUIRE(L.order == 8);
    auto r = validate_table(L);
    CHECK(r.associative.value == Tri::yes);
    CHECK(r.commutative.value == Tri::yes);
    for (int x = 0; x < 8; ++x) CHECK(L.mul(x, x) == 0); // elementary abelian (Z2)^3
}

TEST_CASE("invalid triple systems are rejected naming the pair") {
    std::vector<std::array<int, 3>> bad = {{0, 1, 2}, {0, 1, 3}};
    CHECK_THROWS_WITH(steiner_loop(bad), Catch::Matchers::ContainsSubstring("{0,1}"));
    std::vector<std::array<int, 3>> uncovered = {{0, 1, 2}, {2, 3, 4}};
    CHECK_THROWS_WITH(steiner_loop(uncovered), Catch::Matchers::ContainsSubstring("not covered"));
}

TEST_CASE("divisions satisfy the Latin round-trip laws") {
    auto L = steiner_loop(sts9_triples());
    for (int g = 0; g < L.order; ++g)
        for (int h = 0; h < L.order; ++h) {
            CHECK(L.mul(g, L.ldiv(g, h)) == h);
            CHECK(L.mul(L.rdiv(g, h), h) == g);
        }
    // divisions(e, h) = (h, h)
    for (int h = 0; h < L.order; ++h) {
        CHECK(L.ldiv(0, h) == h);
        CHECK(L.rdiv(h, h) == 0);
    }
    // spec example: rdiv((0,1),(1,0)) = (2,2)
    CHECK(L.rdiv(idx(0, 1), idx(1, 0)) == idx(2, 2));
    CHECK(L.mul(idx(2, 2), idx(1, 0)) == idx(0, 1));

    // group case: divisions(g, g) = (e, e)
    auto Z2 = cyclic_group(2);
    validate_table(Z2);
    CHECK(Z2.ldiv(1, 1) == 0);
    CHECK(Z2.rdiv(1, 1) == 0);
}

TEST_CASE("product with integers: componentwise oracle") {
    auto O = product_with_integers(steiner_loop(sts9_triples()));
    using K = mhcq::exactalg::BasisKey;
    K e = O->identity();
    CHECK(e == K{0, 0});
    CHECK(O->mul(e, {3, 5}) == K{3, 5});
    CHECK(O->mul({3, 5}, e) == K{3, 5});

    // ldiv(((0,1),2), ((1,0),5)) = (ldiv_L((0,1),(1,0)), 3) = ((2,2), 3)
    CHECK(O->ldiv({idx(0, 1), 2}, {idx(1, 0), 5}) == K{idx(2, 2), 3});

    // commutative base stays commutative componentwise
    CHECK(O->mul({idx(1, 2), 1}, {idx(2, 0), 2}) == O->mul({idx(2, 0), 2}, {idx(1, 2), 1}));

    // round trips on the radius-2 window
    for (auto x : O->window(2))
        for (auto y : O->window(2)) {
            CHECK(O->mul(x, O->ldiv(x, y)) == y);
            CHECK(O->mul(O->rdiv(x, y), y) == x);
        }

    auto rep = scan_oracle_predicates(*O, 1);
    CHECK(rep.associative.value == Tri::no);
    CHECK(rep.commutative.value == Tri::unknown);
    CHECK(rep.inverse_property.value == Tri::unknown);
}

TEST_CASE("enumeration reproduces the small loop counts") {
    CHECK(enumerate_loops(1).size() == 1);
    CHECK(enumerate_loops(2).size() == 1);
    CHECK(enumerate_loops(3).size() == 1);
    CHECK(enumerate_loops(4).size() == 2);
    CHECK(enumerate_loops(5).size() == 6);
    CHECK_THROWS_AS(enumerate_loops(7), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_loops(0), std::invalid_argument);
}

TEST_CASE("orders up to 4 are groups; order 5 has non-IP nonassociative loops") {
    for (int n = 1; n <= 4; ++n)
        for (auto& L : enumerate_loops(n)) {
            auto r = validate_table(L);
            CHECK(r.associative.value == Tri::yes);
        }

    int nonassoc = 0;
    for (auto& L : enumerate_loops(5)) {
        auto r = validate_table(L);
        if (r.associative.value == Tri::no) {
            ++nonassoc;
            CHECK(r.inverse_property.value == Tri::no);
            auto w = *r.inverse_property.witness;
            CHECK(inverse_property_violated(L, w[0], w[1], w[2]));
        }
    }
    CHECK(nonassoc == 5);
}

TEST_CASE("enumeration output is canonical and duplicate-free") {
    auto loops = enumerate_loops(5);
    for (std::size_t i = 0; i < loops.size(); ++i) {
        CHECK(detail::canonical_form(loops[i].table, 5) == loops[i].table);
        for (std::size_t j = i + 1; j < loops.size(); ++j)
            CHECK(loops[i].table != loops[j].table);
    }
}
