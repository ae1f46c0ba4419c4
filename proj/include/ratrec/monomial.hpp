#ifndef RATREC_MONOMIAL_HPP
#define RATREC_MONOMIAL_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace ratrec {

/// A power product, stored as a sorted (variable, exponent) map with no zero
/// exponents. The combined degree is the sum of all exponents.
class Monomial {
public:
    using Entry = std::pair<std::uint32_t, std::uint32_t>;

    Monomial() = default;
    static Monomial variable(std::uint32_t var, std::uint32_t exp = 1);
    static Monomial from_entries(std::vector<Entry> entries);  // sorts, drops zeros

    const std::vector<Entry>& entries() const { return exps_; }
    std::uint64_t degree() const { return degree_; }
    std::uint32_t exponent(std::uint32_t var) const;
    bool is_constant() const { return exps_.empty(); }
    std::uint32_t max_var() const { return exps_.empty() ? 0 : exps_.back().first; }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    /// Quotient this/o; precondition: o.divides(*this).
    Monomial divided_by(const Monomial& o) const;
    static Monomial lcm(const Monomial& a, const Monomial& b);
    static Monomial gcd(const Monomial& a, const Monomial& b);
    bool coprime_with(const Monomial& o) const;

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

private:
    std::vector<Entry> exps_;  // ascending variable index, exponents > 0
    std::uint64_t degree_ = 0;
};

/// Graded lexicographic three-way compare (the canonical term order used for
/// storage and serialization): degree first, then lex with x1 > x2 > ...
int cmp_grlex(const Monomial& a, const Monomial& b);

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return cmp_grlex(a, b) > 0; }
};

enum class OrderKind : std::uint8_t { graded_lex, graded_revlex, lex };

/// A product of block orders. Monomials are compared block by block; the
/// first block with differing restrictions decides. A single block covering
/// all variables gives the plain orders; two or more blocks give elimination
/// orders (earlier blocks are eliminated first).
class MonomialOrder {
public:
    struct Block {
        std::vector<std::uint32_t> vars;  // block-internal variable sequence
        OrderKind inner = OrderKind::graded_revlex;
    };

    static MonomialOrder graded_lex(std::uint32_t nvars);
    static MonomialOrder graded_revlex(std::uint32_t nvars);
    static MonomialOrder lex(std::uint32_t nvars);
    static MonomialOrder blocks(std::vector<Block> blocks);

    int compare(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    const std::vector<Block>& block_list() const { return blocks_; }

private:
    std::vector<Block> blocks_;
    // var -> (block index, position within block); built at construction
    std::vector<std::pair<std::uint32_t, std::uint32_t>> where_;
    void build_lookup_();
};

}  // namespace ratrec

#endif
