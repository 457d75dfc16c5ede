/* free_orders.hpp -- orders, spectra, k-roots, preorder decompositions and
   S-pure closures in the free group */

#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relorder/automaton.hpp"

namespace relorder {

// Vertex sequence; closed when the last entry repeats the first.
using Trail = std::vector<int>;

// One conjugated coset: the set { c^-1 (x * rep) c : x in sub, c in conjugator }.
struct DescriptionPart {
  Subgroup sub;
  Word rep;
};

// Finite union of parts sharing one acting subgroup. `label` is the order (or
// root exponent) every covered element has.
struct CosetUnionDescription {
  long label = 0;
  Subgroup conjugator;
  std::vector<DescriptionPart> parts;
};

std::string to_string(const CosetUnionDescription& d);

// Set of exponents, either everything >= 1 or an explicit finite set.
struct SSet {
  bool all = false;
  std::set<long> elems;

  bool divides_some(long d) const;
};

long order(const Subgroup& h, const Word& w, const Word& u = {});
long spectrum_bound(const Subgroup& h, const Word& u = {});

// Words readable between every pair of successive trail vertices, as a coset
// sub * rep; absent when empty.
std::optional<std::pair<Subgroup, Word>> preorbit(const Subgroup& h,
                                                  const Trail& trail,
                                                  const Limits& lim = {});

CosetUnionDescription elements_of_order(const Subgroup& h, long k,
                                        const Word& u = {},
                                        const Limits& lim = {});
bool has_elements_of_order(const Subgroup& h, long k, const Word& u = {},
                           const Limits& lim = {});

// Disjoint union of elements_of_order(h, d) over the divisors d of k.
CosetUnionDescription k_roots(const Subgroup& h, long k, const Limits& lim = {});

bool has_order_zero(const Subgroup& h, const Word& u = {});
// Requires u outside h and h of finite index.
CosetUnionDescription order_zero_description(const Subgroup& h, const Word& u,
                                             const Limits& lim = {});

std::set<long> spectrum(const Subgroup& h, const Word& u = {},
                        const Limits& lim = {});

bool is_S_pure(const Subgroup& h, const SSet& s, const Limits& lim = {});
Subgroup pure_closure(const Subgroup& h, const SSet& s, const Limits& lim = {});
// All intermediate subgroups, starting with the input and ending at the
// closure.
std::vector<Subgroup> pure_closure_chain(const Subgroup& h, const SSet& s,
                                         const Limits& lim = {});

// <b^-n a^n b^n : n in O, n > 0> over {a, b}; O must contain 0 and 1 and be
// closed under divisors.
Subgroup build_K_O(const std::set<long>& o);

}  // namespace relorder
