/* automaton.hpp -- involutive deterministic X-automata: folding, cores,
   coset automata, pullbacks, membership, bases */

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relorder/words.hpp"

namespace relorder {

struct Limits {
  unsigned long long max_trails = 1'000'000;
  unsigned long long max_product_vertices = 1'000'000;
};

// Deterministic involutive automaton. A positive arc u --x--> v is stored in
// both directions: nbr[u][x] = v and nbr[v][-x] = u. Determinism means each
// vertex has at most one arc per signed letter.
struct Automaton {
  int rank = 0;
  int basepoint = 0;
  std::vector<int> terminals;
  std::vector<std::map<int, int>> nbr;

  int size() const { return static_cast<int>(nbr.size()); }
  int add_vertex();
  void add_arc(int u, int x, int v);
  std::optional<int> step(int v, int x) const;
  std::optional<int> walk(int from, const Word& w) const;
  int degree(int v) const { return static_cast<int>(nbr[v].size()); }
};

// Exploration order used for spanning trees, shortest words and canonical
// renumbering: x1, x1^-1, x2, x2^-1, ...
std::vector<int> signed_letters(int rank);

bool saturated(const Automaton& a);

// Strips hanging trees: iteratively removes degree <= 1 vertices not in
// `keep`, then renumbers densely. old_to_new maps removed vertices to -1.
Automaton core_keep(const Automaton& a, const std::vector<int>& keep,
                    std::vector<int>* old_to_new = nullptr);

// BFS renumbering from the basepoint in signed-letter order; drops anything
// unreachable. The basepoint becomes vertex 0.
Automaton canonicalize(const Automaton& a, std::vector<int>* old_to_new = nullptr);

std::string canonical_string(const Automaton& a);

struct Subgroup {
  Automaton aut;                            // folded core, canonical ids, basepoint 0
  std::vector<int> parent;                  // BFS tree (-1 at the basepoint)
  std::vector<int> parent_letter;           // letter read from parent into vertex
  std::vector<std::array<int, 3>> nontree;  // positive non-tree arcs (u, x, v), sorted
  std::vector<Word> basis;
  std::vector<char> restricted;             // restricted-core membership mask
  int restricted_count = 0;

  int ambient_rank() const { return aut.rank; }
  int rank() const { return static_cast<int>(basis.size()); }
  Word path_from_basepoint(int v) const;
};

Subgroup build_stallings(const std::vector<Word>& gens, int rank);
// Same subgroup, folding worklist popped in a seed-dependent order.
Subgroup build_stallings_shuffled(const std::vector<Word>& gens, int rank, unsigned seed);
// Subgroup recognized at `base` in an already deterministic automaton.
Subgroup subgroup_at(const Automaton& a, int base);

std::string canonical_string(const Subgroup& h);
bool same_subgroup(const Subgroup& a, const Subgroup& b);

bool membership(const Subgroup& h, const Word& w, const Word& u = {});
std::optional<Word> express(const Subgroup& h, const Word& w);
std::optional<long> index(const Subgroup& h);

struct CosetAutomaton {
  Automaton aut;
  int target = 0;
};

CosetAutomaton coset_automaton(const Subgroup& h, const Word& u);

std::optional<Word> shortest_word(const Automaton& a, int s, int t);

struct Pullback {
  Automaton aut;
  int s = 0;
  int t = 0;
  bool nonempty = false;  // t reachable from s
};

Pullback pullback_language(const Automaton& a, int s, int t, const Automaton& b,
                           int s2, int t2, const Limits& lim = {});

std::optional<std::pair<Subgroup, Word>> coset_intersection(
    const std::vector<std::pair<Subgroup, Word>>& items, const Limits& lim = {});

Subgroup conjugate_subgroup(const Subgroup& h, const Word& v);
Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b,
                               const Limits& lim = {});

std::string to_dot(const Automaton& a);

}  // namespace relorder
