#include "frobscan/fixtures.hpp"

namespace frobscan {

namespace {

constexpr std::string_view kX1VarText =
    "# threefold in A^5: w^2 = f(x,y), a(x,y)*u^2 + b(x,y)*v^2 = 1\n"
    "vars: x y w u v\n"
    "eq: x^6 + 6*x^5*y + 12*x^5 + x^4*y^2 + 22*x^4*y + 28*x^3*y^3 - 38*x^3*y^2"
    " + 46*x^3*y + 4*x^3 + 24*x^2*y^4 - 4*x^2*y^3 - 37*x^2*y^2 - 36*x^2*y - 4*x^2"
    " + 48*x*y^4 - 24*x*y^3 + 34*x*y^2 + 4*x*y + 20*y^5 + 20*y^4 - 8*y^3 - 11*y^2"
    " - 4*y - w^2\n"
    "eq: (x^2 + 14*x*y - 23*y^2 - 8*y)*u^2 + (x - 4*y - 1)*(3*x^3 + 2*x^2*y"
    " - 4*x^2 + 8*x*y + 3*x - 16*y^3 - 11*y^2 - 8*y - 1)*v^2 - 1\n";

constexpr std::string_view kGenus2C1VarText =
    "# genus-2 curve with N(p) = p off the shared exceptional set\n"
    "vars: x y\n"
    "eq: y^2 - x^5 - 5*x^3 - 5*x\n"
    "disc_of: x^5 + 5*x^3 + 5*x\n";

constexpr std::string_view kGenus2C2VarText =
    "vars: x y\n"
    "eq: y^2 - x^5 - x\n"
    "disc_of: x^5 + x\n";

}  // namespace

std::string_view x1_var_text() { return kX1VarText; }

const Variety& x1_threefold() {
  static const Variety v = Variety::from_text(kX1VarText);
  return v;
}

std::string_view genus2_c1_var_text() { return kGenus2C1VarText; }
std::string_view genus2_c2_var_text() { return kGenus2C2VarText; }

const UniPoly& genus2_c1() {
  static const UniPoly h = parse_unipoly("x^5 + 5*x^3 + 5*x");
  return h;
}

const UniPoly& genus2_c2() {
  static const UniPoly h = parse_unipoly("x^5 + x");
  return h;
}

}  // namespace frobscan
