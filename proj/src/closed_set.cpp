#include "patternforge/closed_set.hpp"

#include "patternforge/error.hpp"

#include <algorithm>
#include <set>

namespace pf {

ClosedSet::ClosedSet() : ClosedSet(std::vector<Ordinal>{Ordinal{}}) {}

ClosedSet::ClosedSet(std::vector<Ordinal> sorted_closed) : elements_(std::move(sorted_closed)) {
    summands_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const Ordinal& x = elements_[i];
        if (x.is_zero()) {
            continue;
        }
        if (x.is_indecomposable()) {
            summands_[i] = {i};
            indecomposables_.push_back(i);
        } else {
            // Remainder sorts below x, so its summands are already known.
            summands_[i] = summands_[*index_of(x.remainder())];
            summands_[i].push_back(*index_of(x.last_summand()));
        }
        by_summands_.emplace(summands_[i], i);
    }
    by_summands_.emplace(std::vector<std::size_t>{}, 0);
}

ClosedSet ClosedSet::from_elements(std::vector<Ordinal> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (!is_closed(elements)) {
        throw PreconditionError("set is not closed under summand decomposition");
    }
    return ClosedSet(std::move(elements));
}

bool ClosedSet::is_closed(std::span<const Ordinal> elements) {
    std::set<Ordinal> members(elements.begin(), elements.end());
    if (!members.contains(Ordinal{})) {
        return false;
    }
    for (const auto& x : members) {
        if (x.summand_count() >= 2 && (!members.contains(x.remainder()) || !members.contains(x.last_summand()))) {
            return false;
        }
    }
    return true;
}

ClosedSet ClosedSet::closure(std::span<const Ordinal> xs) {
    std::set<Ordinal> out{Ordinal{}};
    std::vector<Ordinal> todo(xs.begin(), xs.end());
    while (!todo.empty()) {
        Ordinal x = std::move(todo.back());
        todo.pop_back();
        if (!out.insert(x).second) {
            continue;
        }
        if (x.summand_count() >= 2) {
            todo.push_back(x.remainder());
            todo.push_back(x.last_summand());
        }
    }
    return ClosedSet(std::vector<Ordinal>(out.begin(), out.end()));
}

std::optional<std::size_t> ClosedSet::index_of(const Ordinal& x) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
    if (it == elements_.end() || *it != x) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - elements_.begin());
}

std::optional<std::size_t> ClosedSet::compose(const std::vector<std::size_t>& summand_indices) const {
    auto it = by_summands_.find(summand_indices);
    if (it == by_summands_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool ClosedSet::is_subset_of(const ClosedSet& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

TermMap induced_embedding(const TermMap& indec_map, const ClosedSet& X) {
    const Ordinal* prev_arg = nullptr;
    const Ordinal* prev_img = nullptr;
    for (const auto& [arg, img] : indec_map) {
        if (!arg.is_indecomposable() || !img.is_indecomposable()) {
            throw PreconditionError("indecomposable map must send indecomposables to indecomposables: " +
                                    arg.to_string() + " -> " + img.to_string());
        }
        if (prev_arg != nullptr && !(*prev_img < img)) {
            throw PreconditionError("indecomposable map is not order-preserving: " + prev_arg->to_string() + " -> " +
                                    prev_img->to_string() + " but " + arg.to_string() + " -> " + img.to_string());
        }
        prev_arg = &arg;
        prev_img = &img;
    }
    TermMap out;
    for (const auto& x : X) {
        std::vector<Ordinal> exps;
        exps.reserve(x.summand_count());
        for (const auto& s : x.summands()) {
            auto it = indec_map.find(s);
            if (it == indec_map.end()) {
                throw PreconditionError("indecomposable map is undefined on " + s.to_string());
            }
            exps.push_back(it->second.exponents().front());
        }
        // from_exponents rejects an image that would not be in normal form.
        out.emplace(x, Ordinal::from_exponents(std::move(exps)));
    }
    return out;
}

} // namespace pf
