#pragma once

// Text forms: element literals, descriptor names, matrix rows, and the
// line-oriented triple config format. Printing and parsing round-trip.
//
//   descriptor   trivial | Z | Z/4 | Z x Z/2 | omega(Z)
//   f.g. element [1,-2]            (dense, one entry per factor)
//   omega elem   {0.0:1, 2.1:-3}   (copy.factor:value, sorted)
//   top element  (1,0)
//   wreath elem  base{ (0):[1], (2):[1] } top(3)
//   rows         [[2,0],[0,3]]     ([] for no rows)

#include <selfsim/similarity.hpp>

#include <string>

namespace selfsim {

std::string to_literal(const AbelianDescriptor& d);
std::string to_literal(const AbelianElement& a);
std::string x_literal(const XElement& x);
std::string to_literal(const WreathElement& e);
std::string rows_literal(const Matrix& m);

AbelianDescriptor parse_descriptor(const std::string& s);
AbelianElement parse_abelian(const AbelianDescriptor& d, const std::string& s);
XElement parse_x(const AbelianDescriptor& top, const std::string& s);
WreathElement parse_wreath(const GroupDescriptor& g, const std::string& s);
Matrix parse_rows(const std::string& s);

// Config sections: [group] (base, top), [subgroup] (y, congruence <i>),
// [transversal] (element lines; omitted section = canonical transversal),
// [endomorphism] (kind = module: y_image <i>, gen <i>, image <i>;
// kind = fold-swap: inner, m, phi <i>), [generators] (name = literal).
std::string write_triple_config(const SimilarityTriple& t);
SimilarityTriple read_triple_config(const std::string& text);

// Structural equality of the defining data (metadata flags ignored).
bool triple_equal(const SimilarityTriple& a, const SimilarityTriple& b);

}  // namespace selfsim
