#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mhcq/finvec.hpp"

namespace mhcq::exactalg {

/// Exact dense Gaussian elimination over sparse columns with arbitrary
/// ordered row keys.  Desk-scale only; everything here is setup work
/// (unit probes, span checks, decompositions), never a sweep hot path.
template <class RowKey>
class LinearSystem {
public:
    using Column = std::map<RowKey, Scalar>;

    void add_column(Column c) { cols_.push_back(std::move(c)); }
    std::size_t columns() const { return cols_.size(); }

    /// Any exact solution of  sum_j x_j * col_j = target, or nullopt.
    std::optional<std::vector<Scalar>> solve(const Column& target) const {
        std::map<RowKey, int> row_of;
        auto touch = [&](const Column& c) {
            for (const auto& [k, v] : c)
                if (!v.is_zero()) row_of.emplace(k, 0);
        };
        for (const auto& c : cols_) touch(c);
        touch(target);
        int m = 0;
        for (auto& [k, idx] : row_of) idx = m++;
        const int n = static_cast<int>(cols_.size());

        // augmented dense matrix, last column is the target
        std::vector<std::vector<Scalar>> a(m, std::vector<Scalar>(n + 1));
        for (int j = 0; j < n; ++j)
            for (const auto& [k, v] : cols_[j]) a[row_of.at(k)][j] = v;
        for (const auto& [k, v] : target) a[row_of.at(k)][n] = v;

        std::vector<int> pivot_col(m, -1);
        int r = 0;
        for (int c = 0; c < n && r < m; ++c) {
            int p = -1;
            for (int i = r; i < m; ++i)
                if (!a[i][c].is_zero()) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            std::swap(a[p], a[r]);
            Scalar inv = a[r][c].inv();
            for (int j = c; j <= n; ++j) a[r][j] = a[r][j] * inv;
            for (int i = 0; i < m; ++i) {
                if (i == r || a[i][c].is_zero()) continue;
                Scalar f = a[i][c];
                for (int j = c; j <= n; ++j) a[i][j] -= f * a[r][j];
            }
            pivot_col[r] = c;
            ++r;
        }
        for (int i = r; i < m; ++i)
            if (!a[i][n].is_zero()) return std::nullopt; // inconsistent

        std::vector<Scalar> x(n, Scalar::zero());
        for (int i = 0; i < r; ++i) x[pivot_col[i]] = a[i][n];
        return x;
    }

    int rank() const {
        std::map<RowKey, int> row_of;
        for (const auto& c : cols_)
            for (const auto& [k, v] : c)
                if (!v.is_zero()) row_of.emplace(k, 0);
        int m = 0;
        for (auto& [k, idx] : row_of) idx = m++;
        const int n = static_cast<int>(cols_.size());
        std::vector<std::vector<Scalar>> a(m, std::vector<Scalar>(n));
        for (int j = 0; j < n; ++j)
            for (const auto& [k, v] : cols_[j]) a[row_of.at(k)][j] = v;
        int r = 0;
        for (int c = 0; c < n && r < m; ++c) {
            int p = -1;
            for (int i = r; i < m; ++i)
                if (!a[i][c].is_zero()) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            std::swap(a[p], a[r]);
            Scalar inv = a[r][c].inv();
            for (int j = c; j < n; ++j) a[r][j] = a[r][j] * inv;
            for (int i = 0; i < m; ++i) {
                if (i == r || a[i][c].is_zero()) continue;
                Scalar f = a[i][c];
                for (int j = c; j < n; ++j) a[i][j] -= f * a[r][j];
            }
            ++r;
        }
        return r;
    }

private:
    std::vector<Column> cols_;
};

inline std::map<BasisKey, Scalar> to_column(const FinVec& v) {
    std::map<BasisKey, Scalar> c;
    for (const auto& [k, s] : v) c.emplace(k, s);
    return c;
}

} // namespace mhcq::exactalg
