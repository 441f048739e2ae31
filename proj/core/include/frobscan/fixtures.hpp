#pragma once

#include <string_view>

#include "frobscan/counting.hpp"
#include "frobscan/poly.hpp"

namespace frobscan {

// Built-in example inputs used by the verify-paper suite and shipped as
// data/*.var for the CLI. The embedded text is the single transcription
// source; a test cross-checks the data files against it.

// Threefold in A^5 cut out by w^2 = f(x,y) and a(x,y) u^2 + b(x,y) v^2 = 1,
// with N(7) = 584.
std::string_view x1_var_text();
const Variety& x1_threefold();

// Genus-2 pair: for every good odd p < 401 at least one has N(p) = p.
std::string_view genus2_c1_var_text();  // y^2 = x^5 + 5x^3 + 5x
std::string_view genus2_c2_var_text();  // y^2 = x^5 + x
const UniPoly& genus2_c1();
const UniPoly& genus2_c2();

}  // namespace frobscan
