#pragma once

#include "patternforge/core.hpp"
#include "patternforge/hierarchy.hpp"
#include "patternforge/pattern.hpp"

#include <string>

namespace pf {

// Graphviz text: one node per element in ascending order, transitively
// reduced strict le1 edges drawn solid and le2 edges drawn bold.

std::string export_dot(const Pattern& P);
std::string export_dot(const Hierarchy& H);
/// Relations among members are those recorded in the witnesses.
std::string export_dot(const Core& C);

} // namespace pf
