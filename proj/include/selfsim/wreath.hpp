#pragma once

// Restricted wreath products B wr X of abelian groups: finite-support maps
// X -> B twisted by the translation action of X on itself. The base group B
// may be f.g. or an omega power; the top group X is f.g.
//
// Multiplication convention: (a, x)(b, y) = (a + b<<x, x + y) where
// (b<<x)(z) = b(z - x), so shifting by x moves support points p to p + x.

#include <selfsim/abelian.hpp>

#include <map>
#include <vector>

namespace selfsim {

// Top-group element: one coordinate per factor of X, torsion coordinates
// kept reduced into [0, modulus).
using XElement = std::vector<Int>;

XElement x_reduce(const AbelianDescriptor& top, XElement v);
XElement x_add(const AbelianDescriptor& top, const XElement& a, const XElement& b);
XElement x_neg(const AbelianDescriptor& top, const XElement& a);
XElement x_sub(const AbelianDescriptor& top, const XElement& a, const XElement& b);
XElement x_zero(const AbelianDescriptor& top);

using BaseMap = std::map<XElement, AbelianElement>;  // finite support, no zero values

struct GroupDescriptor {
  AbelianDescriptor base;  // trivial base makes the wreath product plain X
  AbelianDescriptor top;

  bool operator==(const GroupDescriptor& o) const { return base == o.base && top == o.top; }
  bool operator!=(const GroupDescriptor& o) const { return !(*this == o); }
};

GroupDescriptor make_group(AbelianDescriptor base, AbelianDescriptor top);

struct WreathElement {
  GroupDescriptor desc;
  BaseMap base;
  XElement top;

  bool operator==(const WreathElement& o) const {
    return desc == o.desc && top == o.top && base == o.base;
  }
  bool operator!=(const WreathElement& o) const { return !(*this == o); }
};

// Canonical constructor: reduces the top coordinate, checks base values and
// drops zero ones.
WreathElement make_wreath(const GroupDescriptor& desc, BaseMap base, XElement top);
WreathElement wreath_identity(const GroupDescriptor& desc);
// Single base entry at `pos`, trivial top.
WreathElement base_delta(const GroupDescriptor& desc, const XElement& pos,
                         const AbelianElement& value);
// Trivial base, given top.
WreathElement top_only(const GroupDescriptor& desc, const XElement& top);

bool is_identity(const WreathElement& e);

BaseMap base_shift(const GroupDescriptor& desc, const BaseMap& b, const XElement& x);

WreathElement multiply(const WreathElement& a, const WreathElement& b);
WreathElement inverse(const WreathElement& a);
WreathElement conjugate(const WreathElement& g, const WreathElement& by);
WreathElement power(const WreathElement& g, const Int& n);

// Membership in the m-th power subgroup of the base closure: trivial top and
// every base coordinate divisible by m modulo its factor.
bool normal_closure_power_member(const WreathElement& g, const Int& m);

// Total order for use as a container key (descriptors assumed equal).
bool wreath_less(const WreathElement& a, const WreathElement& b);

std::vector<XElement> support(const WreathElement& e);

}  // namespace selfsim
