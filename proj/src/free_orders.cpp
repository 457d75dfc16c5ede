/* free_orders.cpp */

#include "relorder/free_orders.hpp"

#include <algorithm>
#include <stdexcept>

namespace relorder {

long order(const Subgroup& h, const Word& w, const Word& u) {
  long n = spectrum_bound(h, u);
  Word cur;
  for (long i = 1; i <= n; ++i) {
    cur = multiply(cur, w);
    if (membership(h, cur, u)) return i;
  }
  return 0;
}

long spectrum_bound(const Subgroup& h, const Word& u) {
  if (membership(h, u)) return h.restricted_count;
  return coset_automaton(h, u).aut.size();
}

namespace {

// Incremental intersection of the step languages of a growing trail. Level i
// holds an automaton whose (s, t)-language is the set of words readable
// between every pair of successive vertices seen so far.
struct PreorbitStack {
  const Automaton& amb;
  const Limits& lim;
  unsigned long long budget;

  std::vector<Pullback> prods;

  PreorbitStack(const Automaton& a, const Limits& l)
      : amb(a), lim(l), budget(l.max_trails) {}

  bool extend(int from, int to) {
    if (budget-- == 0)
      throw resource_limit_error("trail enumeration guard exceeded");
    if (prods.empty()) {
      // a core automaton is connected, so a single step language is nonempty
      prods.push_back(Pullback{amb, from, to, true});
      return true;
    }
    const Pullback& top = prods.back();
    Pullback p = pullback_language(top.aut, top.s, top.t, amb, from, to, lim);
    if (!p.nonempty) return false;
    prods.push_back(std::move(p));
    return true;
  }

  void pop() { prods.pop_back(); }
};

Word shortest_coset_rep(const Subgroup& sub, const Word& w) {
  CosetAutomaton ca = coset_automaton(sub, w);
  return *shortest_word(ca.aut, ca.aut.basepoint, ca.target);
}

struct OrderSearch {
  const Subgroup& h;
  const Word& u;
  long k;
  const Limits& lim;
  bool coset_mode;
  bool stop_early;

  const Automaton* amb = nullptr;
  int target = 0;  // coset vertex when coset_mode
  bool found = false;
  std::set<std::string> seen{};
  std::vector<DescriptionPart> parts{};

  // full preorbit available in st.prods.back(); trail runs q0 .. qk
  bool emit(PreorbitStack& st, int q0, int qk) {
    Word v0;
    if (coset_mode) {
      Pullback j = pullback_language(*amb, q0, amb->basepoint, *amb, qk, target, lim);
      if (!j.nonempty) return false;
      if (stop_early) {
        found = true;
        return true;
      }
      v0 = *shortest_word(j.aut, j.s, j.t);
    } else {
      if (stop_early) {
        found = true;
        return true;
      }
      v0 = *shortest_word(*amb, q0, amb->basepoint);
    }
    const Pullback& prod = st.prods.back();
    Subgroup stab = subgroup_at(prod.aut, prod.s);
    Word w = *shortest_word(prod.aut, prod.s, prod.t);
    Subgroup sub = conjugate_subgroup(stab, v0);
    Word rep = shortest_coset_rep(sub, multiply(multiply(invert(v0), w), v0));
    std::string key =
        canonical_string(sub) + "|" + format_word(rep, h.ambient_rank());
    if (!seen.insert(key).second) return false;
    if (order(h, rep, u) != k)
      throw std::logic_error("order description representative mismatch");
    parts.push_back(DescriptionPart{std::move(sub), std::move(rep)});
    return false;
  }

  // closed trails with k distinct vertices, one per rotation class
  bool closed_dfs(PreorbitStack& st, std::vector<char>& used, int q0, int cur,
                  long depth) {
    if (depth == k - 1) {
      if (!st.extend(cur, q0)) return false;
      bool stop = emit(st, q0, q0);
      st.pop();
      return stop;
    }
    for (int v = q0 + 1; v < amb->size(); ++v) {
      if (used[v] || !h.restricted[v]) continue;
      if (!st.extend(cur, v)) continue;
      used[v] = 1;
      bool stop = closed_dfs(st, used, q0, v, depth + 1);
      used[v] = 0;
      st.pop();
      if (stop) return true;
    }
    return false;
  }

  // open injective trails with k+1 distinct vertices
  bool open_dfs(PreorbitStack& st, std::vector<char>& used, int q0, int cur,
                long depth) {
    if (depth == k) return emit(st, q0, cur);
    for (int v = 0; v < amb->size(); ++v) {
      if (used[v]) continue;
      if (!st.extend(cur, v)) continue;
      used[v] = 1;
      bool stop = open_dfs(st, used, q0, v, depth + 1);
      used[v] = 0;
      st.pop();
      if (stop) return true;
    }
    return false;
  }

  void run() {
    Automaton coset_aut;
    if (coset_mode) {
      CosetAutomaton ca = coset_automaton(h, u);
      coset_aut = std::move(ca.aut);
      target = ca.target;
      amb = &coset_aut;
      if (k > coset_aut.size()) return;
    } else {
      amb = &h.aut;
      if (k > h.restricted_count) return;
    }
    PreorbitStack st(*amb, lim);
    std::vector<char> used(amb->size(), 0);
    for (int q0 = 0; q0 < amb->size(); ++q0) {
      if (!coset_mode && !h.restricted[q0]) continue;
      used[q0] = 1;
      bool stop = coset_mode ? open_dfs(st, used, q0, q0, 0)
                             : closed_dfs(st, used, q0, q0, 0);
      used[q0] = 0;
      if (stop) return;
    }
  }
};

Subgroup trivial_subgroup(int rank) { return build_stallings({}, rank); }

}  // namespace

std::optional<std::pair<Subgroup, Word>> preorbit(const Subgroup& h,
                                                  const Trail& trail,
                                                  const Limits& lim) {
  if (trail.size() < 2) throw std::invalid_argument("trail needs length >= 1");
  for (int v : trail)
    if (v < 0 || v >= h.aut.size())
      throw std::invalid_argument("trail vertex out of range");
  PreorbitStack st(h.aut, lim);
  for (size_t i = 1; i < trail.size(); ++i)
    if (!st.extend(trail[i - 1], trail[i])) return std::nullopt;
  const Pullback& prod = st.prods.back();
  Subgroup sub = subgroup_at(prod.aut, prod.s);
  Word rep = *shortest_word(prod.aut, prod.s, prod.t);
  return std::make_pair(std::move(sub), std::move(rep));
}

CosetUnionDescription elements_of_order(const Subgroup& h, long k, const Word& u,
                                        const Limits& lim) {
  if (k < 1) throw std::invalid_argument("order label must be >= 1");
  bool in_h = membership(h, u);
  CosetUnionDescription out;
  out.label = k;
  out.conjugator =
      in_h ? h : subgroup_intersection(h, conjugate_subgroup(h, u), lim);
  OrderSearch search{h, u, k, lim, !in_h, false};
  search.run();
  out.parts = std::move(search.parts);
  return out;
}

bool has_elements_of_order(const Subgroup& h, long k, const Word& u,
                           const Limits& lim) {
  if (k < 1) throw std::invalid_argument("order label must be >= 1");
  OrderSearch search{h, u, k, lim, !membership(h, u), true};
  search.run();
  return search.found;
}

CosetUnionDescription k_roots(const Subgroup& h, long k, const Limits& lim) {
  if (k < 1) throw std::invalid_argument("root exponent must be >= 1");
  CosetUnionDescription out;
  out.label = k;
  out.conjugator = h;
  for (long d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    CosetUnionDescription dd = elements_of_order(h, d, {}, lim);
    for (DescriptionPart& p : dd.parts) out.parts.push_back(std::move(p));
  }
  return out;
}

bool has_order_zero(const Subgroup& h, const Word& u) {
  if (!membership(h, u)) return true;
  return !index(h).has_value();
}

namespace {

struct ZeroSearch {
  const Subgroup& h;
  const Word& u;
  const Limits& lim;
  int avoid;
  std::vector<DescriptionPart> parts;

  void emit(PreorbitStack& st) {
    const Pullback& prod = st.prods.back();
    Subgroup sub = subgroup_at(prod.aut, prod.s);
    Word rep = *shortest_word(prod.aut, prod.s, prod.t);
    if (order(h, rep, u) != 0)
      throw std::logic_error("order description representative mismatch");
    parts.push_back(DescriptionPart{std::move(sub), std::move(rep)});
  }

  void dfs(PreorbitStack& st, std::vector<char>& used, int cur) {
    int bp = h.aut.basepoint;
    if (st.extend(cur, bp)) {
      emit(st);
      st.pop();
    }
    for (int v = 0; v < h.aut.size(); ++v) {
      if (used[v] || v == bp || v == avoid) continue;
      if (!st.extend(cur, v)) continue;
      used[v] = 1;
      dfs(st, used, v);
      used[v] = 0;
      st.pop();
    }
  }
};

}  // namespace

CosetUnionDescription order_zero_description(const Subgroup& h, const Word& u,
                                             const Limits& lim) {
  if (membership(h, u))
    throw std::invalid_argument("coset representative lies in the subgroup");
  if (!index(h).has_value())
    throw std::invalid_argument("subgroup has infinite index");
  std::optional<int> target = h.aut.walk(h.aut.basepoint, u);
  if (!target) throw std::logic_error("saturated automaton rejected a walk");
  CosetUnionDescription out;
  out.label = 0;
  out.conjugator = trivial_subgroup(h.ambient_rank());
  ZeroSearch search{h, u, lim, *target, {}};
  PreorbitStack st(h.aut, lim);
  std::vector<char> used(h.aut.size(), 0);
  used[h.aut.basepoint] = 1;
  search.dfs(st, used, h.aut.basepoint);
  out.parts = std::move(search.parts);
  return out;
}

std::set<long> spectrum(const Subgroup& h, const Word& u, const Limits& lim) {
  std::set<long> out{1};
  long bound = spectrum_bound(h, u);
  for (long k = 2; k <= bound; ++k)
    if (has_elements_of_order(h, k, u, lim)) out.insert(k);
  if (has_order_zero(h, u)) out.insert(0);
  return out;
}

bool SSet::divides_some(long d) const {
  if (all) return true;
  for (long s : elems)
    if (s % d == 0) return true;
  return false;
}

bool is_S_pure(const Subgroup& h, const SSet& s, const Limits& lim) {
  long bound = h.restricted_count;
  for (long d = 2; d <= bound; ++d)
    if (s.divides_some(d) && has_elements_of_order(h, d, {}, lim)) return false;
  return true;
}

std::vector<Subgroup> pure_closure_chain(const Subgroup& h, const SSet& s,
                                         const Limits& lim) {
  std::vector<Subgroup> chain{h};
  while (true) {
    const Subgroup& cur = chain.back();
    std::vector<Word> gens = cur.basis;
    bool grew = false;
    long bound = cur.restricted_count;
    for (long d = 2; d <= bound; ++d) {
      if (!s.divides_some(d)) continue;
      CosetUnionDescription desc = elements_of_order(cur, d, {}, lim);
      for (const DescriptionPart& p : desc.parts) {
        gens.push_back(p.rep);
        grew = true;
      }
    }
    if (!grew) return chain;
    chain.push_back(build_stallings(gens, cur.ambient_rank()));
  }
}

Subgroup pure_closure(const Subgroup& h, const SSet& s, const Limits& lim) {
  return pure_closure_chain(h, s, lim).back();
}

Subgroup build_K_O(const std::set<long>& o) {
  if (!o.count(0) || !o.count(1))
    throw std::invalid_argument("order set must contain 0 and 1");
  for (long n : o) {
    if (n < 0) throw std::invalid_argument("order set must be nonnegative");
    for (long d = 2; d < n; ++d)
      if (n % d == 0 && !o.count(d))
        throw std::invalid_argument("order set must be divisor-closed");
  }
  std::vector<Word> gens;
  for (long n : o) {
    if (n == 0) continue;
    Word g;
    for (long i = 0; i < n; ++i) g.push_back(-2);
    for (long i = 0; i < n; ++i) g.push_back(1);
    for (long i = 0; i < n; ++i) g.push_back(2);
    gens.push_back(std::move(g));
  }
  return build_stallings(gens, 2);
}

namespace {

std::string basis_string(const Subgroup& h) {
  std::string out = "[";
  for (size_t i = 0; i < h.basis.size(); ++i) {
    if (i) out += ",";
    out += format_word(h.basis[i], h.ambient_rank());
  }
  return out + "]";
}

}  // namespace

std::string to_string(const CosetUnionDescription& d) {
  std::string out = "label=" + std::to_string(d.label) + "\n";
  out += "conjugator=" + basis_string(d.conjugator) + "\n";
  for (const DescriptionPart& p : d.parts)
    out += "part: subgroup-basis=" + basis_string(p.sub) +
           " rep=" + format_word(p.rep, p.sub.ambient_rank()) + "\n";
  return out;
}

}  // namespace relorder
