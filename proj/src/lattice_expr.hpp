#pragma once

#include <string>
#include <vector>

#include "lattice.hpp"

namespace ql {

// expr    := term ('+' term)*
// term    := atom postfix*
// atom    := NAME | '(' int ')' | '[' '[' int (',' int)* ']' (',' ...)* ']'
// postfix := '(' int ')'   rescale
//          | '*'           dual (rational until rescaled back to integral)
//          | '^' int       repeated direct sum
GramLattice parse_lattice_expr(const std::string& text);

// Gram matrix of a named atom; bare root lattices are positive definite.
IMat named_lattice(const std::string& name);
std::vector<std::string> named_lattices();

}  // namespace ql
