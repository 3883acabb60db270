#pragma once

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhcq/basis.hpp"

namespace mhcq::loopcore {

using exactalg::BasisKey;

struct TableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite loop given by its multiplication table.  Division tables are
/// filled in by validate(); every constructor in this module returns a
/// validated table.
struct LoopTable {
    int order{0};
    int identity{0};
    std::vector<int> table;          // row-major, order x order
    std::vector<int> ldiv_table;     // ldiv[g][h] = unique x with g*x = h
    std::vector<int> rdiv_table;     // rdiv[g][h] = unique x with x*h = g
    std::vector<std::string> labels; // optional element names

    int mul(int x, int y) const { return table[x * order + y]; }
    int ldiv(int x, int y) const { return ldiv_table[x * order + y]; }
    int rdiv(int x, int y) const { return rdiv_table[x * order + y]; }

    int left_inverse(int x) const { return rdiv(identity, x); }  // y*x = e
    int right_inverse(int x) const { return ldiv(x, identity); } // x*y = e

    std::string label(int x) const {
        if (x >= 0 && x < static_cast<int>(labels.size()) && !labels[x].empty())
            return labels[x];
        return std::to_string(x);
    }
};

enum class Tri { yes, no, unknown };

inline const char* to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        default: return "unknown-on-window";
    }
}

/// One structural flag plus, when false, a counterexample that re-evaluates
/// to a violation.  For the inverse property the triple is (x, y, side) with
/// side 0 for the left law and 1 for the right law.
struct TriFlag {
    Tri value{Tri::unknown};
    std::optional<std::array<int, 3>> witness;
};

struct LoopPredicateReport {
    TriFlag associative;
    TriFlag commutative;
    TriFlag inverse_property;
    TriFlag moufang;
};

// Witness re-evaluators; the predicate report invariant is checked against
// these exact functions.
inline bool associativity_violated(const LoopTable& L, int x, int y, int z) {
    return L.mul(L.mul(x, y), z) != L.mul(x, L.mul(y, z));
}
inline bool commutativity_violated(const LoopTable& L, int x, int y) {
    return L.mul(x, y) != L.mul(y, x);
}
inline bool inverse_property_violated(const LoopTable& L, int x, int y, int side) {
    if (side == 0) return L.mul(L.left_inverse(x), L.mul(x, y)) != y;
    return L.mul(L.mul(y, x), L.right_inverse(x)) != y;
}
inline bool moufang_violated(const LoopTable& L, int x, int y, int z) {
    // x(y(xz)) = ((xy)x)z
    return L.mul(x, L.mul(y, L.mul(x, z))) != L.mul(L.mul(L.mul(x, y), x), z);
}

namespace detail {

inline void fill_divisions(LoopTable& L) {
    const int n = L.order;
    L.ldiv_table.assign(n * n, -1);
    L.rdiv_table.assign(n * n, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int p = L.mul(x, y);
            L.ldiv_table[x * n + p] = y; // x * y = p
            L.rdiv_table[p * n + y] = x; // x * y = p
        }
}

inline LoopPredicateReport scan_predicates(const LoopTable& L) {
    LoopPredicateReport r;
    const int n = L.order;

    r.associative.value = Tri::yes;
    for (int x = 0; x < n && r.associative.value == Tri::yes; ++x)
        for (int y = 0; y < n && r.associative.value == Tri::yes; ++y)
            for (int z = 0; z < n; ++z)
                if (associativity_violated(L, x, y, z)) {
                    r.associative = {Tri::no, {{x, y, z}}};
                    break;
                }

    r.commutative.value = Tri::yes;
    for (int x = 0; x < n && r.commutative.value == Tri::yes; ++x)
        for (int y = 0; y < n; ++y)
            if (commutativity_violated(L, x, y)) {
                r.commutative = {Tri::no, {{x, y, 0}}};
                break;
            }

    r.inverse_property.value = Tri::yes;
    for (int x = 0; x < n && r.inverse_property.value == Tri::yes; ++x)
        for (int y = 0; y < n; ++y) {
            if (inverse_property_violated(L, x, y, 0)) {
                r.inverse_property = {Tri::no, {{x, y, 0}}};
                break;
            }
            if (inverse_property_violated(L, x, y, 1)) {
                r.inverse_property = {Tri::no, {{x, y, 1}}};
                break;
            }
        }

    r.moufang.value = Tri::yes;
    for (int x = 0; x < n && r.moufang.value == Tri::yes; ++x)
        for (int y = 0; y < n && r.moufang.value == Tri::yes; ++y)
            for (int z = 0; z < n; ++z)
                if (moufang_violated(L, x, y, z)) {
                    r.moufang = {Tri::no, {{x, y, z}}};
                    break;
                }
    return r;
}

} // namespace detail

/// Structural validation (Latin square, identity row/column) followed by an
/// exhaustive predicate scan.  Throws TableError with the offending location
/// for malformed input; fills the division tables on success.
inline LoopPredicateReport validate_table(LoopTable& L) {
    const int n = L.order;
    if (n <= 0) throw TableError("order must be positive");
    if (static_cast<int>(L.table.size()) != n * n)
        throw TableError("table has " + std::to_string(L.table.size()) +
                         " entries, expected " + std::to_string(n * n));
    if (L.identity < 0 || L.identity >= n)
        throw TableError("identity index " + std::to_string(L.identity) + " out of range");

    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int v = L.mul(x, y);
            if (v < 0 || v >= n)
                throw TableError("entry out of range at row " + std::to_string(x) +
                                 ", col " + std::to_string(y));
        }

    // Latin property with the first repeat reported.
    for (int x = 0; x < n; ++x) {
        std::vector<int> seen(n, -1);
        for (int y = 0; y < n; ++y) {
            int v = L.mul(x, y);
            if (seen[v] >= 0)
                throw TableError("not a Latin square: row " + std::to_string(x) +
                                 " repeats entry " + std::to_string(v) + " at cols " +
                                 std::to_string(seen[v]) + "," + std::to_string(y));
            seen[v] = y;
        }
    }
    for (int y = 0; y < n; ++y) {
        std::vector<int> seen(n, -1);
        for (int x = 0; x < n; ++x) {
            int v = L.mul(x, y);
            if (seen[v] >= 0)
                throw TableError("not a Latin square: col " + std::to_string(y) +
                                 " repeats entry " + std::to_string(v) + " at rows " +
                                 std::to_string(seen[v]) + "," + std::to_string(x));
            seen[v] = x;
        }
    }

    const int e = L.identity;
    for (int x = 0; x < n; ++x) {
        if (L.mul(e, x) != x)
            throw TableError("identity row broken at col " + std::to_string(x));
        if (L.mul(x, e) != x)
            throw TableError("identity column broken at row " + std::to_string(x));
    }

    detail::fill_divisions(L);
    return detail::scan_predicates(L);
}

inline LoopTable make_table(int order, int identity, std::vector<int> entries,
                            std::vector<std::string> labels = {}) {
    LoopTable L;
    L.order = order;
    L.identity = identity;
    L.table = std::move(entries);
    L.labels = std::move(labels);
    validate_table(L);
    return L;
}

// -------------------------------------------------------------------------
// Constructions
// -------------------------------------------------------------------------

struct StsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Steiner loop of a triple system: adjoin an identity, set x*x = e and
/// x*y = the third point of the block containing {x, y}.  Points must be
/// 0..p-1; every pair must lie in exactly one block.
inline LoopTable steiner_loop(const std::vector<std::array<int, 3>>& triples) {
    int pts = 0;
    for (const auto& t : triples) {
        std::set<int> s(t.begin(), t.end());
        if (s.size() != 3) throw StsError("triple with repeated point");
        for (int p : t) {
            if (p < 0) throw StsError("negative point index");
            pts = std::max(pts, p + 1);
        }
    }
    if (pts == 0) throw StsError("empty triple system");

    std::vector<int> third(pts * pts, -1);
    for (const auto& t : triples) {
        const std::array<std::array<int, 3>, 3> perms = {{{t[0], t[1], t[2]},
                                                          {t[0], t[2], t[1]},
                                                          {t[1], t[2], t[0]}}};
        for (const auto& [a, b, c] : perms) {
            if (third[a * pts + b] >= 0)
                throw StsError("pair {" + std::to_string(a) + "," + std::to_string(b) +
                               "} covered more than once");
            third[a * pts + b] = c;
            third[b * pts + a] = c;
        }
    }
    for (int a = 0; a < pts; ++a)
        for (int b = a + 1; b < pts; ++b)
            if (third[a * pts + b] < 0)
                throw StsError("pair {" + std::to_string(a) + "," + std::to_string(b) +
                               "} not covered");

    const int n = pts + 1; // identity gets index 0, point p gets p+1
    std::vector<int> tab(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int v;
            if (x == 0) v = y;
            else if (y == 0) v = x;
            else if (x == y) v = 0;
            else v = third[(x - 1) * pts + (y - 1)] + 1;
            tab[x * n + y] = v;
        }
    return make_table(n, 0, std::move(tab));
}

/// The 12 blocks of AG(2,3): points (i,j) in Z3 x Z3 indexed 3i+j, a block
/// being any three distinct points summing to zero componentwise.
inline std::vector<std::array<int, 3>> sts9_triples() {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < 9; ++a)
        for (int b = a + 1; b < 9; ++b) {
            int ci = (6 - (a / 3 + b / 3)) % 3;
            int cj = (6 - (a % 3 + b % 3)) % 3;
            int c = 3 * ci + cj;
            if (c > b) out.push_back({a, b, c});
        }
    return out;
}

/// Fano plane STS(7).
inline std::vector<std::array<int, 3>> sts7_triples() {
    return {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
}

inline LoopTable cyclic_group(int n) {
    std::vector<int> tab(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) tab[x * n + y] = (x + y) % n;
    return make_table(n, 0, std::move(tab));
}

inline LoopTable klein_group() {
    return make_table(4, 0, {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0});
}

/// S3 with elements id, (12), (13), (23), (123), (132); composition acts
/// right-to-left: (st)(x) = s(t(x)).
inline LoopTable symmetric_group_3() {
    const std::array<std::array<int, 3>, 6> perms = {{
        {0, 1, 2}, // id
        {1, 0, 2}, // (12)
        {2, 1, 0}, // (13)
        {0, 2, 1}, // (23)
        {1, 2, 0}, // (123): 0->1,1->2,2->0
        {2, 0, 1}, // (132)
    }};
    auto find = [&](const std::array<int, 3>& p) {
        for (int k = 0; k < 6; ++k)
            if (perms[k] == p) return k;
        throw std::logic_error("s3 composition closed");
    };
    std::vector<int> tab(36);
    for (int s = 0; s < 6; ++s)
        for (int t = 0; t < 6; ++t) {
            std::array<int, 3> c{};
            for (int x = 0; x < 3; ++x) c[x] = perms[s][perms[t][x]];
            tab[s * 6 + t] = find(c);
        }
    return make_table(6, 0, std::move(tab),
                      {"id", "(12)", "(13)", "(23)", "(123)", "(132)"});
}

// -------------------------------------------------------------------------
// Oracle loops: computable multiplication and divisions over a possibly
// infinite element set, with a finite sampling window.
// -------------------------------------------------------------------------

class LoopOracle {
public:
    virtual ~LoopOracle() = default;
    virtual BasisKey mul(BasisKey x, BasisKey y) const = 0;
    virtual BasisKey ldiv(BasisKey x, BasisKey y) const = 0; // x * result = y
    virtual BasisKey rdiv(BasisKey x, BasisKey y) const = 0; // result * y = x
    virtual BasisKey identity() const = 0;
    virtual std::string label(BasisKey k) const = 0;
    virtual std::vector<BasisKey> window(int radius) const = 0;
    virtual bool finite() const = 0;
};

class TableOracle final : public LoopOracle {
public:
    explicit TableOracle(LoopTable L) : L_(std::move(L)) {}

    const LoopTable& table() const { return L_; }

    BasisKey mul(BasisKey x, BasisKey y) const override { return {L_.mul(x.i, y.i), 0}; }
    BasisKey ldiv(BasisKey x, BasisKey y) const override { return {L_.ldiv(x.i, y.i), 0}; }
    BasisKey rdiv(BasisKey x, BasisKey y) const override { return {L_.rdiv(x.i, y.i), 0}; }
    BasisKey identity() const override { return {L_.identity, 0}; }
    std::string label(BasisKey k) const override { return L_.label(k.i); }
    std::vector<BasisKey> window(int) const override {
        std::vector<BasisKey> w;
        for (int g = 0; g < L_.order; ++g) w.push_back({g, 0});
        return w;
    }
    bool finite() const override { return true; }

private:
    LoopTable L_;
};

/// L x Z with componentwise operations: the stock infinite IP-preserving
/// extension used for the nonunital function algebras.
class ProductWithIntegersOracle final : public LoopOracle {
public:
    explicit ProductWithIntegersOracle(LoopTable L) : L_(std::move(L)) {}

    const LoopTable& base() const { return L_; }

    BasisKey mul(BasisKey x, BasisKey y) const override {
        return {L_.mul(x.i, y.i), x.n + y.n};
    }
    BasisKey ldiv(BasisKey x, BasisKey y) const override {
        return {L_.ldiv(x.i, y.i), y.n - x.n};
    }
    BasisKey rdiv(BasisKey x, BasisKey y) const override {
        return {L_.rdiv(x.i, y.i), x.n - y.n};
    }
    BasisKey identity() const override { return {L_.identity, 0}; }
    std::string label(BasisKey k) const override {
        return "(" + L_.label(k.i) + "," + std::to_string(k.n) + ")";
    }
    std::vector<BasisKey> window(int radius) const override {
        std::vector<BasisKey> w;
        for (int g = 0; g < L_.order; ++g)
            for (std::int64_t n = -radius; n <= radius; ++n) w.push_back({g, n});
        std::sort(w.begin(), w.end());
        return w;
    }
    bool finite() const override { return false; }

private:
    LoopTable L_;
};

inline std::shared_ptr<LoopOracle> product_with_integers(LoopTable L) {
    return std::make_shared<ProductWithIntegersOracle>(std::move(L));
}

/// Windowed predicate scan for oracle loops: violations are definite, clean
/// scans stay unknown (finite tables get a definite answer from
/// validate_table instead).
inline LoopPredicateReport scan_oracle_predicates(const LoopOracle& O, int radius) {
    LoopPredicateReport r;
    auto w = O.window(radius);
    auto e = O.identity();

    auto linv = [&](BasisKey x) { return O.rdiv(e, x); };
    auto rinv = [&](BasisKey x) { return O.ldiv(x, e); };

    for (auto x : w)
        for (auto y : w) {
            if (r.commutative.value == Tri::unknown && O.mul(x, y) != O.mul(y, x))
                r.commutative = {Tri::no, {{x.i, y.i, 0}}};
            if (r.inverse_property.value == Tri::unknown) {
                if (O.mul(linv(x), O.mul(x, y)) != y)
                    r.inverse_property = {Tri::no, {{x.i, y.i, 0}}};
                else if (O.mul(O.mul(y, x), rinv(x)) != y)
                    r.inverse_property = {Tri::no, {{x.i, y.i, 1}}};
            }
            for (auto z : w) {
                if (r.associative.value == Tri::unknown &&
                    O.mul(O.mul(x, y), z) != O.mul(x, O.mul(y, z)))
                    r.associative = {Tri::no, {{x.i, y.i, z.i}}};
                if (r.moufang.value == Tri::unknown &&
                    O.mul(x, O.mul(y, O.mul(x, z))) != O.mul(O.mul(O.mul(x, y), x), z))
                    r.moufang = {Tri::no, {{x.i, y.i, z.i}}};
            }
        }
    return r;
}

} // namespace mhcq::loopcore
