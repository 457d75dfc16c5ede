/* fta.hpp -- subgroups of F_n x Z^m: bases, completions, orders, roots */

#pragma once

#include "relorder/free_orders.hpp"
#include "relorder/lattice.hpp"
#include "relorder/words.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace relorder {

// A subgroup H of F_n x Z^m in basis form.  Its elements are exactly
//   { v * t^(c(v) + l) : v in free_part, l in lat },
// where c(y_j) = comp[j] on the j-th basis word of free_part and c extends
// multiplicatively.  lat is H meet Z^m.
struct FtaSubgroup {
  Ambient ambient;
  Subgroup free_part;
  Mat comp;
  Lattice lat;
};

struct FtaPart {
  FtaSubgroup sub;
  FtaElement rep;
};

// The set described is the union over parts of { x * rep : x in part.sub }
// closed under conjugation by the conjugator subgroup.
struct FtaDecomposition {
  long label = 0;
  FtaSubgroup conjugator;
  std::vector<FtaPart> parts;
};

FtaSubgroup fta_basis(const std::vector<FtaElement>& gens, const Ambient& amb);

FtaSubgroup fta_trivial_subgroup(const Ambient& amb);

// All vectors c with w * t^c in h, as a coset of h.lat; nullopt when w is
// outside the free projection of h.
std::optional<LatticeCoset> completion(const FtaSubgroup& h, const Word& w);

bool fta_membership(const FtaSubgroup& h, const FtaElement& g);
bool fta_same_subgroup(const FtaSubgroup& a, const FtaSubgroup& b);

long fta_spectrum_bound(const FtaSubgroup& h);
long fta_order(const FtaSubgroup& h, const FtaElement& g);
bool fta_has_order_zero(const FtaSubgroup& h);
bool fta_index_finite(const FtaSubgroup& h);
std::optional<Int> fta_index(const FtaSubgroup& h);

// Words v in the free projection whose completion meets k * Z^m.
Subgroup m_k(const FtaSubgroup& h, long k, const Limits& lim = {});

FtaDecomposition fta_k_roots(const FtaSubgroup& h, long k, const Limits& lim = {});
FtaDecomposition fta_elements_of_order(const FtaSubgroup& h, long k,
                                       const Limits& lim = {});
bool fta_smp(const FtaSubgroup& h, long k, const Limits& lim = {});
std::set<long> fta_spectrum(const FtaSubgroup& h, const Limits& lim = {});

bool fta_is_S_pure(const FtaSubgroup& h, const SSet& s, const Limits& lim = {});
std::vector<FtaSubgroup> fta_pure_closure_chain(const FtaSubgroup& h, const SSet& s,
                                                const Limits& lim = {});
FtaSubgroup fta_pure_closure(const FtaSubgroup& h, const SSet& s,
                             const Limits& lim = {});

std::string to_string(const FtaSubgroup& h);
std::string to_string(const FtaDecomposition& d);

}  // namespace relorder
