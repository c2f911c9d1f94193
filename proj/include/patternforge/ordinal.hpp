#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace pf {

/**
 * An ordinal below epsilon_0 in Cantor normal form.
 *
 * The value w^e1 + w^e2 + ... + w^ek is stored as the exponent sequence
 * e1 >= e2 >= ... >= ek, each exponent itself an Ordinal. The empty
 * sequence is 0. Because the normal form is unique, structural equality
 * is ordinal equality and lexicographic comparison of the exponent
 * sequences is the ordinal order.
 */
class Ordinal {
  public:
    Ordinal() = default;

    static Ordinal zero() { return {}; }
    static Ordinal one();
    static Ordinal omega();
    static Ordinal omega_power(Ordinal exponent);
    static Ordinal natural(std::size_t n);

    /// Throws PreconditionError unless the exponents are non-increasing.
    static Ordinal from_exponents(std::vector<Ordinal> exponents);

    /// Parses the text grammar; see the README for the accepted forms.
    static Ordinal parse(std::string_view text);

    const std::vector<Ordinal>& exponents() const { return exponents_; }
    std::size_t summand_count() const { return exponents_.size(); }
    bool is_zero() const { return exponents_.empty(); }
    bool is_indecomposable() const { return exponents_.size() == 1; }
    /// Nonzero and not a successor.
    bool is_limit() const;

    /// The summands w^ei in order, each indecomposable.
    std::vector<Ordinal> summands() const;
    Ordinal leading_summand() const;
    Ordinal last_summand() const;
    /// Everything but the last summand; 0 for indecomposables and 0.
    Ordinal remainder() const;

    /// Canonical form "w^(...)+..." (or "0"); `sugar` abbreviates w^(0) runs
    /// as decimal naturals and w^(w^(0)) as "w".
    std::string to_string(bool sugar = false) const;

    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b) { return a.exponents_ == b.exponents_; }

  private:
    explicit Ordinal(std::vector<Ordinal> exponents) : exponents_(std::move(exponents)) {}

    std::vector<Ordinal> exponents_;
};

enum class Order { LT, EQ, GT };

Order compare(const Ordinal& a, const Ordinal& b);

/// Ordinal addition: summands of `a` below the leading exponent of `b` are absorbed.
Ordinal add(const Ordinal& a, const Ordinal& b);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }

inline bool is_indecomposable(const Ordinal& a) { return a.is_indecomposable(); }

inline Ordinal parse_term(std::string_view text) { return Ordinal::parse(text); }

using TermMap = std::map<Ordinal, Ordinal>;

} // namespace pf
