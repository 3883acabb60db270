#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "mhcq/loop.hpp"

namespace mhcq::loopcore {

/// Enumeration is capped here; order 7 already has too many classes for a
/// desk-scale sweep.
constexpr int kMaxEnumOrder = 6;

namespace detail {

// Lexicographically minimal relabeling of a normalized table over all
// identity-fixing permutations.  Relabeled tables stay normalized because
// the identity row/column map to themselves.
inline std::vector<int> canonical_form(const std::vector<int>& tab, int n) {
    std::vector<int> best = tab;
    std::vector<int> perm(n);
    std::iota(perm.begin() + 1, perm.end(), 1);
    std::vector<int> cand(n * n);
    do {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                cand[perm[x] * n + perm[y]] = perm[tab[x * n + y]];
        if (cand < best) best = cand;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return best;
}

} // namespace detail

/// Yields one representative per isomorphism class of loops of the given
/// order, in canonical-form order.  Identity is element 0; the first row and
/// column are normalized by construction.
inline void enumerate_loops(int order, const std::function<void(const LoopTable&)>& sink) {
    if (order < 1) throw std::invalid_argument("enumerate_loops: order must be >= 1");
    if (order > kMaxEnumOrder)
        throw std::invalid_argument("enumerate_loops: order " + std::to_string(order) +
                                    " exceeds the configured bound " +
                                    std::to_string(kMaxEnumOrder));

    const int n = order;
    std::vector<int> tab(n * n, -1);
    for (int j = 0; j < n; ++j) tab[j] = j;
    for (int i = 0; i < n; ++i) tab[i * n] = i;

    std::vector<unsigned> row_used(n), col_used(n);
    for (int j = 0; j < n; ++j) {
        row_used[0] |= 1u << j;
        col_used[j] |= 1u << j;
    }
    for (int i = 1; i < n; ++i) {
        row_used[i] |= 1u << i;
        col_used[0] |= 1u << i;
    }

    std::set<std::vector<int>> seen;

    // cells (r, c) with r, c >= 1, row-major
    std::function<void(int)> fill = [&](int cell) {
        const int total = (n - 1) * (n - 1);
        if (cell == total) {
            auto canon = detail::canonical_form(tab, n);
            if (seen.insert(canon).second) {
                LoopTable L = make_table(n, 0, canon);
                sink(L);
            }
            return;
        }
        int r = 1 + cell / (n - 1);
        int c = 1 + cell % (n - 1);
        unsigned used = row_used[r] | col_used[c];
        for (int v = 0; v < n; ++v) {
            if (used & (1u << v)) continue;
            tab[r * n + c] = v;
            row_used[r] |= 1u << v;
            col_used[c] |= 1u << v;
            fill(cell + 1);
            row_used[r] &= ~(1u << v);
            col_used[c] &= ~(1u << v);
        }
        tab[r * n + c] = -1;
    };
    fill(0);
}

inline std::vector<LoopTable> enumerate_loops(int order) {
    std::vector<LoopTable> out;
    enumerate_loops(order, [&](const LoopTable& L) { out.push_back(L); });
    return out;
}

} // namespace mhcq::loopcore
