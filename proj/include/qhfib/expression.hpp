#pragma once

#include "qhfib/manifold.hpp"

#include <string>
#include <vector>

namespace qhfib {

// Class expressions: terms "[coef*]label[@e^{exponent}]" joined by " + " or
// " - ", e.g. "T- + 2*pt@e^{-F}". Exponents are written against the
// generators of `lattice`.
QHClass parse_class(const std::vector<std::string>& labels, const H2Lattice& lattice, const std::string& text);
QHClass parse_class(const ManifoldModel& m, const std::string& text);

std::string format_class(const std::vector<std::string>& labels, const H2Lattice& lattice, const QHClass& q);
std::string format_class(const ManifoldModel& m, const QHClass& q);

// Plain homology class without Novikov exponents, e.g. "Z+ - Z- - M".
Vec parse_vec(const std::vector<std::string>& labels, const std::string& text);
std::string format_vec(const std::vector<std::string>& labels, const Vec& v);

} // namespace qhfib
