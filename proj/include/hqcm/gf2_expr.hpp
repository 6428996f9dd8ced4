#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace hqcm {

/// Name of one random measurement outcome: rotation `index` of step `step`.
/// index 0 marks the sole rotation of a single-rotation step.
struct OutcomeSymbol {
    int step = 0;
    int index = 0;

    /// "m11", "m3", or "m12_3" when a component has more than one digit.
    std::string label() const;

    auto operator<=>(const OutcomeSymbol&) const = default;
};

using Binding = std::map<OutcomeSymbol, int>;

/// Sum of outcome symbols over GF(2), kept as a sorted duplicate-free list so
/// that equal expressions have equal representations.
class Gf2Expr {
public:
    Gf2Expr() = default;
    explicit Gf2Expr(OutcomeSymbol symbol) : terms_{symbol} {}
    explicit Gf2Expr(std::vector<OutcomeSymbol> symbols);

    const std::vector<OutcomeSymbol>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Gf2Expr& operator^=(const Gf2Expr& other);
    friend Gf2Expr operator^(Gf2Expr a, const Gf2Expr& b) { return a ^= b; }
    bool operator==(const Gf2Expr&) const = default;

    /// Value under the binding; throws InputError on an unbound symbol.
    int evaluate(const Binding& binding) const;

    /// "0" for the empty sum, otherwise "m11+m13". A complete group
    /// m_{j1}..m_{jk} of a step j listed in `group_sizes` (j -> k) is written
    /// as "mj".
    std::string to_string(const std::map<int, int>& group_sizes = {}) const;

private:
    std::vector<OutcomeSymbol> terms_;
};

/// Parses "0", "m11", "m11+m13", "m1" (with group_sizes expanding m1 into
/// m11..m1k). Used by the trace tooling and tests.
Gf2Expr parse_gf2_expr(const std::string& text, const std::map<int, int>& group_sizes = {});

}  // namespace hqcm
