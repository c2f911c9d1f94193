#include "patternforge/dot.hpp"

#include <sstream>

namespace pf {

namespace {

std::string render(const char* name, std::span<const Ordinal> nodes, const BitMatrix& le1, const BitMatrix& le2) {
    const std::size_t n = nodes.size();
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    out << "  rankdir=BT;\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << "  n" << i << " [label=\"" << nodes[i].to_string(true) << "\"];\n";
    }
    auto edges = [&](const BitMatrix& m, const char* style) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || !m(i, j)) {
                    continue;
                }
                bool covered = false;
                for (std::size_t k = 0; k < n && !covered; ++k) {
                    covered = k != i && k != j && m(i, k) && m(k, j);
                }
                if (!covered) {
                    out << "  n" << i << " -> n" << j << " [style=" << style << "];\n";
                }
            }
        }
    };
    edges(le1, "solid");
    edges(le2, "bold");
    out << "}\n";
    return out.str();
}

} // namespace

std::string export_dot(const Pattern& P) { return render("pattern", P.universe().elements(), P.le1(), P.le2()); }

std::string export_dot(const Hierarchy& H) { return render("hierarchy", H.carrier().elements(), H.le1(), H.le2()); }

std::string export_dot(const Core& C) {
    const std::size_t n = C.members.size();
    BitMatrix le1 = BitMatrix::identity(n);
    BitMatrix le2 = BitMatrix::identity(n);
    for (const auto& w : C.witnesses) {
        const auto& u = w.universe();
        for (std::size_t i = 0; i < n; ++i) {
            auto wi = u.index_of(C.members[i]);
            if (!wi) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                auto wj = u.index_of(C.members[j]);
                if (!wj) {
                    continue;
                }
                if (w.le1()(*wi, *wj)) {
                    le1.set(i, j);
                }
                if (w.le2()(*wi, *wj)) {
                    le2.set(i, j);
                }
            }
        }
    }
    return render("core", C.members, le1, le2);
}

} // namespace pf
