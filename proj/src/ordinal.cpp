#include "patternforge/ordinal.hpp"

#include "patternforge/error.hpp"

#include <algorithm>
#include <cctype>

namespace pf {

Ordinal Ordinal::one() { return Ordinal(std::vector<Ordinal>{Ordinal{}}); }

Ordinal Ordinal::omega() { return omega_power(one()); }

Ordinal Ordinal::omega_power(Ordinal exponent) { return Ordinal(std::vector<Ordinal>{std::move(exponent)}); }

Ordinal Ordinal::natural(std::size_t n) { return Ordinal(std::vector<Ordinal>(n, Ordinal{})); }

Ordinal Ordinal::from_exponents(std::vector<Ordinal> exponents) {
    for (std::size_t i = 1; i < exponents.size(); ++i) {
        if (exponents[i - 1] < exponents[i]) {
            throw PreconditionError("exponents are not non-increasing");
        }
    }
    return Ordinal(std::move(exponents));
}

bool Ordinal::is_limit() const { return !exponents_.empty() && !exponents_.back().is_zero(); }

std::vector<Ordinal> Ordinal::summands() const {
    std::vector<Ordinal> out;
    out.reserve(exponents_.size());
    for (const auto& e : exponents_) {
        out.push_back(omega_power(e));
    }
    return out;
}

Ordinal Ordinal::leading_summand() const { return is_zero() ? Ordinal{} : omega_power(exponents_.front()); }

Ordinal Ordinal::last_summand() const { return is_zero() ? Ordinal{} : omega_power(exponents_.back()); }

Ordinal Ordinal::remainder() const {
    if (exponents_.size() < 2) {
        return {};
    }
    return Ordinal(std::vector<Ordinal>(exponents_.begin(), exponents_.end() - 1));
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const std::size_t n = std::min(a.exponents_.size(), b.exponents_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a.exponents_[i] <=> b.exponents_[i]; c != 0) {
            return c;
        }
    }
    return a.exponents_.size() <=> b.exponents_.size();
}

Order compare(const Ordinal& a, const Ordinal& b) {
    const auto c = a <=> b;
    if (c < 0) {
        return Order::LT;
    }
    return c == 0 ? Order::EQ : Order::GT;
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) {
        return a;
    }
    const Ordinal& lead = b.exponents().front();
    std::vector<Ordinal> out;
    out.reserve(a.summand_count() + b.summand_count());
    for (const auto& e : a.exponents()) {
        if (e < lead) {
            break;
        }
        out.push_back(e);
    }
    out.insert(out.end(), b.exponents().begin(), b.exponents().end());
    return Ordinal::from_exponents(std::move(out));
}

std::string Ordinal::to_string(bool sugar) const {
    if (is_zero()) {
        return "0";
    }
    std::string out;
    std::size_t i = 0;
    while (i < exponents_.size()) {
        if (!out.empty()) {
            out += '+';
        }
        const Ordinal& e = exponents_[i];
        if (sugar && e.is_zero()) {
            // Zero exponents sort last, so the run extends to the end.
            out += std::to_string(exponents_.size() - i);
            break;
        }
        if (sugar && e == one()) {
            out += 'w';
        } else {
            out += "w^(";
            out += e.to_string(sugar);
            out += ')';
        }
        ++i;
    }
    return out;
}

namespace {

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    Ordinal parse_all() {
        Ordinal t = parse_term();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return t;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("ordinal syntax error at offset " + std::to_string(pos_) + " in \"" +
                         std::string(text_) + "\": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    Ordinal parse_term() {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '0') {
            ++pos_;
            return {};
        }
        std::vector<Ordinal> exps;
        parse_summand(exps);
        while (accept('+')) {
            parse_summand(exps);
        }
        for (std::size_t i = 1; i < exps.size(); ++i) {
            if (exps[i - 1] < exps[i]) {
                throw NonCanonicalError("ordinal \"" + std::string(text_) +
                                        "\" is not in Cantor normal form (summands must not increase)");
            }
        }
        return Ordinal::from_exponents(std::move(exps));
    }

    void parse_summand(std::vector<Ordinal>& exps) {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("expected a summand");
        }
        const char c = text_[pos_];
        if (c == 'w') {
            ++pos_;
            if (accept('^')) {
                expect('(');
                exps.push_back(parse_term());
                expect(')');
            } else {
                exps.push_back(Ordinal::one());
            }
            return;
        }
        if (c >= '1' && c <= '9') {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                n = n * 10 + static_cast<std::size_t>(text_[pos_] - '0');
                if (n > 1000000) {
                    fail("natural literal too large");
                }
                ++pos_;
            }
            exps.insert(exps.end(), n, Ordinal{});
            return;
        }
        fail("expected 'w', 'w^(', or a positive natural");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Ordinal Ordinal::parse(std::string_view text) { return Parser(text).parse_all(); }

} // namespace pf
