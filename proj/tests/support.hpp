#pragma once

// Shared helpers for the test binaries: shipped data, golden files and
// brute-force reference implementations that avoid the library's search code.

#include "patternforge/core.hpp"
#include "patternforge/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace pft {

using namespace pf;

inline Ordinal O(const char* text) { return Ordinal::parse(text); }

inline std::vector<Ordinal> Os(std::initializer_list<const char*> texts) {
    std::vector<Ordinal> out;
    for (auto t : texts) {
        out.push_back(O(t));
    }
    return out;
}

inline const std::vector<std::string>& shipped_carrier_names() {
    static const std::vector<std::string> names{"c1", "c2", "c3", "c4", "c20", "c25", "c35"};
    return names;
}

inline ClosedSet load_carrier(const std::string& name) {
    return ClosedSet::from_elements(read_carrier(read_file(std::string(PF_DATA_DIR) + "/carriers/" + name + ".txt")));
}

inline Hierarchy build(const ClosedSet& c, std::size_t width = 0) {
    BuildOptions o;
    o.width = width;
    return build_hierarchy(c, default_top(c), o);
}

inline Hierarchy build(std::initializer_list<const char*> elems, std::size_t width = 0) {
    return build(ClosedSet::from_elements(Os(elems)), width);
}

/// Compares against tests/golden/<name>; PF_UPDATE_GOLDEN=1 rewrites the file instead.
inline bool matches_golden(const std::string& name, const std::string& actual, std::string* diagnostic = nullptr) {
    const std::filesystem::path path = std::filesystem::path(PF_GOLDEN_DIR) / name;
    const char* update = std::getenv("PF_UPDATE_GOLDEN");
    if (update != nullptr && std::string(update) == "1") {
        std::ofstream(path, std::ios::binary) << actual;
        return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (diagnostic) {
            *diagnostic = "missing golden file " + path.string();
        }
        return false;
    }
    std::ostringstream s;
    s << in.rdbuf();
    if (s.str() != actual) {
        if (diagnostic) {
            *diagnostic = "golden mismatch for " + name + "; got:\n" + actual;
        }
        return false;
    }
    return true;
}

/// Random ordinal with bounded nesting and length.
inline Ordinal random_ordinal(std::mt19937& rng, int depth = 2, int max_len = 3) {
    std::uniform_int_distribution<int> len(0, max_len);
    const int n = depth == 0 ? 0 : len(rng);
    std::vector<Ordinal> exps;
    for (int i = 0; i < n; ++i) {
        exps.push_back(random_ordinal(rng, depth - 1, max_len - 1));
    }
    std::sort(exps.begin(), exps.end(), std::greater<>());
    return Ordinal::from_exponents(std::move(exps));
}

/// Closed-set test written from the definition only.
inline bool naive_closed(const std::set<Ordinal>& s) {
    if (!s.contains(Ordinal{})) {
        return false;
    }
    for (const auto& x : s) {
        if (x.summand_count() >= 2 && (!s.contains(x.remainder()) || !s.contains(x.last_summand()))) {
            return false;
        }
    }
    return true;
}

/**
 * Covering check from the definitions: arithmetic (images of sums are sums
 * of images, indecomposables go to indecomposables), strictly increasing,
 * closed range, forward preservation of le1/le2.
 */
inline bool naive_is_covering(const std::vector<Ordinal>& image, const Pattern& P, const Hierarchy& H) {
    const auto& u = P.universe().elements();
    if (image.size() != u.size()) {
        return false;
    }
    std::map<Ordinal, Ordinal> h;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!H.carrier().contains(image[i])) {
            return false;
        }
        h[u[i]] = image[i];
    }
    for (const auto& x : u) {
        if (x.is_indecomposable() && !h[x].is_indecomposable()) {
            return false;
        }
        Ordinal sum;
        for (const auto& s : x.summands()) {
            sum = sum + h[s];
        }
        if (sum != h[x]) {
            return false;
        }
    }
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        if (!(image[i] < image[i + 1])) {
            return false;
        }
    }
    if (!naive_closed(std::set<Ordinal>(image.begin(), image.end()))) {
        return false;
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            const auto hi = *H.carrier().index_of(image[i]);
            const auto hj = *H.carrier().index_of(image[j]);
            if ((P.le1()(i, j) && !H.le1()(hi, hj)) || (P.le2()(i, j) && !H.le2()(hi, hj))) {
                return false;
            }
        }
    }
    return true;
}

/// Every map |P| -> carrier (as position vectors), in lexicographic order.
template <typename Fn>
void for_each_map(std::size_t domain, std::size_t codomain, Fn&& fn) {
    std::vector<std::size_t> m(domain, 0);
    while (true) {
        fn(static_cast<const std::vector<std::size_t>&>(m));
        std::size_t i = domain;
        while (i > 0 && m[i - 1] + 1 == codomain) {
            m[i - 1] = 0;
            --i;
        }
        if (i == 0) {
            return;
        }
        ++m[i - 1];
    }
}

/// All valid relation choices on a universe (strict pairs drawn from 3 states: none, le1, le1+le2).
template <typename Fn>
void for_each_valid_pattern(const ClosedSet& u, Fn&& fn) {
    const std::size_t n = u.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    std::vector<int> state(pairs.size(), 0);
    while (true) {
        BitMatrix le1 = BitMatrix::identity(n);
        BitMatrix le2 = BitMatrix::identity(n);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            if (state[p] >= 1) {
                le1.set(pairs[p].first, pairs[p].second);
            }
            if (state[p] == 2) {
                le2.set(pairs[p].first, pairs[p].second);
            }
        }
        if (check_order_axioms(u.elements(), le1, le2).empty() && check_respect(u.elements(), le1, le2).empty()) {
            fn(Pattern::from_matrices(u, le1, le2));
        }
        std::size_t i = pairs.size();
        while (i > 0 && state[i - 1] == 2) {
            state[i - 1] = 0;
            --i;
        }
        if (i == 0) {
            return;
        }
        ++state[i - 1];
    }
}

/// Closed subsets of a carrier of at most max_size elements, by brute force over position sets containing 0.
inline std::vector<std::vector<std::size_t>> naive_closed_subsets(const ClosedSet& c, std::size_t max_size) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> pos{0};
    auto visit = [&](auto&& self) -> void {
        std::set<Ordinal> s;
        for (auto p : pos) {
            s.insert(c[p]);
        }
        if (naive_closed(s)) {
            out.push_back(pos);
        }
        if (pos.size() == max_size) {
            return;
        }
        for (std::size_t i = pos.back() + 1; i < c.size(); ++i) {
            pos.push_back(i);
            self(self);
            pos.pop_back();
        }
    };
    if (!c.elements().empty() && max_size > 0) {
        visit(visit);
    }
    return out;
}

} // namespace pft
