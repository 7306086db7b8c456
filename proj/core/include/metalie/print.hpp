#pragma once

#include <string>

#include "metalie/element.hpp"
#include "metalie/endo.hpp"

namespace metalie {

/// Degree with the zero-value sentinels rendered as "+inf" / "-inf".
std::string degree_text(int d);
std::string to_text(const DegreePair& d);

/// Canonical element text in the right-normed basis, e.g.
/// "x1 - 2*[[x2,x1],x3]".  parse_element reads the same syntax back.
std::string to_text(const MagnusElement& e);
std::string to_text(const BasisCombination& b);

/// One "xi -> image" line per generator.
std::string to_text(const Endomorphism& phi);

std::string to_text(const JacobianColumn& c);
std::string to_text(const PolyMatrix& m);

}  // namespace metalie
