#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace mhcq::exactalg {

/// Opaque ordered basis index.  Finite bases use (i, 0); oracle-backed bases
/// such as L x Z use the second component for the unbounded coordinate.
struct BasisKey {
    std::int32_t i{0};
    std::int64_t n{0};

    friend auto operator<=>(const BasisKey&, const BasisKey&) = default;
};

inline std::string default_label(const BasisKey& k) {
    if (k.n == 0) return std::to_string(k.i);
    return "(" + std::to_string(k.i) + "," + std::to_string(k.n) + ")";
}

using LabelFn = std::function<std::string(const BasisKey&)>;

} // namespace mhcq::exactalg
