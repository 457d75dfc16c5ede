/* oracle.hpp -- brute-force cross-checks for descriptions and orders */

#pragma once

#include "relorder/free_orders.hpp"
#include "relorder/fta.hpp"

#include <string>
#include <vector>

namespace relorder {

// All freely reduced words of length at most `radius`, shortest first.
std::vector<Word> ball_free(int rank, int radius);

// Order by plain power-and-membership scan, capped by the size of the coset
// automaton.
long oracle_order(const Subgroup& h, const Word& w, const Word& u = {});

long fta_oracle_order(const FtaSubgroup& h, const FtaElement& g);

struct VerifyReport {
  long checked = 0;           // ball elements examined
  long in_set = 0;            // elements the description covers
  long matching = 0;          // elements whose oracle order equals the label
  long counterexamples = 0;   // covered with wrong order, or covered twice
  long inconclusive = 0;      // matching order, not reached by the bounded search
  std::vector<std::string> details;

  bool exact() const { return counterexamples == 0 && inconclusive == 0; }
};

// Checks a description against every ball element. Conjugators are searched
// within their own ball, so a miss only counts as inconclusive.
VerifyReport verify_description(const Subgroup& h, const Word& u,
                                const CosetUnionDescription& d, int ball_radius,
                                int conj_radius);

// Conjugating by w t^a fixes the vector part, so conjugators are searched
// over free-projection words only.
VerifyReport verify_fta_description(const FtaSubgroup& h, const FtaDecomposition& d,
                                    int ball_radius, long box, int conj_radius);

}  // namespace relorder
