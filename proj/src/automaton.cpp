/* automaton.cpp */

#include "relorder/automaton.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

namespace relorder {

int Automaton::add_vertex() {
  nbr.emplace_back();
  return static_cast<int>(nbr.size()) - 1;
}

void Automaton::add_arc(int u, int x, int v) {
  assert(x != 0);
  if (x < 0) {
    std::swap(u, v);
    x = -x;
  }
  auto it = nbr[u].find(x);
  if (it != nbr[u].end()) {
    assert(it->second == v);
    return;
  }
  nbr[u][x] = v;
  nbr[v][-x] = u;
}

std::optional<int> Automaton::step(int v, int x) const {
  auto it = nbr[v].find(x);
  if (it == nbr[v].end()) return std::nullopt;
  return it->second;
}

std::optional<int> Automaton::walk(int from, const Word& w) const {
  int cur = from;
  for (int x : w) {
    auto nxt = step(cur, x);
    if (!nxt) return std::nullopt;
    cur = *nxt;
  }
  return cur;
}

std::vector<int> signed_letters(int rank) {
  std::vector<int> out;
  out.reserve(2 * static_cast<size_t>(rank));
  for (int x = 1; x <= rank; ++x) {
    out.push_back(x);
    out.push_back(-x);
  }
  return out;
}

bool saturated(const Automaton& a) {
  for (int v = 0; v < a.size(); ++v)
    if (a.degree(v) != 2 * a.rank) return false;
  return true;
}

namespace {

// Folding workspace: multigraph adjacency plus union-find over vertices.
struct Folder {
  std::vector<int> par;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (signed letter, target)
  std::vector<int> worklist;

  explicit Folder(int n) : par(n), adj(n) {
    for (int i = 0; i < n; ++i) par[i] = i;
  }

  int find(int v) {
    while (par[v] != v) {
      par[v] = par[par[v]];
      v = par[v];
    }
    return v;
  }

  void raw_arc(int u, int x, int v) {
    adj[u].push_back({x, v});
    adj[v].push_back({-x, u});
  }

  int merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (adj[a].size() < adj[b].size()) std::swap(a, b);
    par[b] = a;
    adj[a].insert(adj[a].end(), adj[b].begin(), adj[b].end());
    adj[b].clear();
    adj[b].shrink_to_fit();
    worklist.push_back(a);
    return a;
  }

  // Repeatedly scans vertices for equal-letter arcs with distinct targets and
  // merges those targets until the quotient graph is deterministic.
  void fold(std::mt19937* rng) {
    for (int v = 0; v < static_cast<int>(par.size()); ++v) worklist.push_back(v);
    std::map<int, int> seen;
    while (!worklist.empty()) {
      size_t pick = worklist.size() - 1;
      if (rng) pick = (*rng)() % worklist.size();
      std::swap(worklist[pick], worklist.back());
      int v = find(worklist.back());
      worklist.pop_back();
      bool rescan = true;
      while (rescan) {
        rescan = false;
        seen.clear();
        for (size_t i = 0; i < adj[v].size(); ++i) {
          int x = adj[v][i].first;
          int t = find(adj[v][i].second);
          adj[v][i].second = t;
          auto it = seen.find(x);
          if (it == seen.end()) {
            seen[x] = t;
          } else if (it->second != t) {
            merge(it->second, t);
            v = find(v);
            rescan = true;
            break;
          }
        }
      }
      // drop collapsed parallel arcs
      std::vector<std::pair<int, int>> clean;
      clean.reserve(seen.size());
      for (auto& [x, t] : seen) clean.push_back({x, t});
      adj[v] = std::move(clean);
    }
  }

  Automaton extract(int rank, int bp) {
    Automaton out;
    out.rank = rank;
    std::unordered_map<int, int> id;
    std::deque<int> queue;
    int root = find(bp);
    id[root] = out.add_vertex();
    queue.push_back(root);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (auto& [x, t0] : adj[v]) {
        int t = find(t0);
        if (!id.count(t)) {
          id[t] = out.add_vertex();
          queue.push_back(t);
        }
        if (x > 0) out.add_arc(id[v], x, id[t]);
      }
    }
    out.basepoint = id[root];
    out.terminals = {out.basepoint};
    return out;
  }
};

Automaton fold_flower(const std::vector<Word>& gens, int rank, std::mt19937* rng) {
  size_t total = 1;
  std::vector<Word> petals;
  for (const Word& g : gens) {
    Word r = reduce(g);
    if (r.empty()) continue;
    for (int x : g)
      if (x == 0 || x > rank || x < -rank)
        throw std::invalid_argument("generator letter out of range");
    total += r.size() - 1;
    petals.push_back(std::move(r));
  }
  Folder f(static_cast<int>(total));
  int next = 1;
  for (const Word& w : petals) {
    int cur = 0;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      f.raw_arc(cur, w[i], next);
      cur = next++;
    }
    f.raw_arc(cur, w.back(), 0);
  }
  f.fold(rng);
  return f.extract(rank, 0);
}

}  // namespace

Automaton core_keep(const Automaton& a, const std::vector<int>& keep,
                    std::vector<int>* old_to_new) {
  std::vector<char> kept(a.nbr.size(), 0), dead(a.nbr.size(), 0);
  for (int v : keep) kept[v] = 1;
  std::vector<int> deg(a.nbr.size());
  std::deque<int> queue;
  for (int v = 0; v < a.size(); ++v) {
    deg[v] = a.degree(v);
    if (deg[v] <= 1 && !kept[v]) queue.push_back(v);
  }
  auto nbr = a.nbr;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (dead[v]) continue;
    dead[v] = 1;
    for (auto& [x, w] : nbr[v]) {
      if (w == v || dead[w]) continue;
      nbr[w].erase(-x);
      if (--deg[w] <= 1 && !kept[w]) queue.push_back(w);
    }
    nbr[v].clear();
  }
  std::vector<int> remap(a.nbr.size(), -1);
  Automaton out;
  out.rank = a.rank;
  for (int v = 0; v < a.size(); ++v)
    if (!dead[v]) remap[v] = out.add_vertex();
  for (int v = 0; v < a.size(); ++v) {
    if (dead[v]) continue;
    for (auto& [x, w] : nbr[v])
      if (x > 0) out.add_arc(remap[v], x, remap[w]);
  }
  out.basepoint = a.basepoint >= 0 ? remap[a.basepoint] : -1;
  for (int t : a.terminals)
    if (remap[t] >= 0) out.terminals.push_back(remap[t]);
  if (old_to_new) *old_to_new = std::move(remap);
  return out;
}

Automaton canonicalize(const Automaton& a, std::vector<int>* old_to_new) {
  std::vector<int> remap(a.nbr.size(), -1);
  std::vector<int> order;
  order.reserve(a.nbr.size());
  std::deque<int> queue;
  remap[a.basepoint] = 0;
  order.push_back(a.basepoint);
  queue.push_back(a.basepoint);
  auto letters = signed_letters(a.rank);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int x : letters) {
      auto w = a.step(v, x);
      if (w && remap[*w] < 0) {
        remap[*w] = static_cast<int>(order.size());
        order.push_back(*w);
        queue.push_back(*w);
      }
    }
  }
  Automaton out;
  out.rank = a.rank;
  for (size_t i = 0; i < order.size(); ++i) out.add_vertex();
  for (int v : order)
    for (auto& [x, w] : a.nbr[v])
      if (x > 0 && remap[w] >= 0) out.add_arc(remap[v], x, remap[w]);
  out.basepoint = 0;
  std::set<int> terms;
  for (int t : a.terminals)
    if (remap[t] >= 0) terms.insert(remap[t]);
  out.terminals.assign(terms.begin(), terms.end());
  if (old_to_new) *old_to_new = std::move(remap);
  return out;
}

std::string canonical_string(const Automaton& a) {
  std::ostringstream os;
  os << "n" << a.rank << ":v" << a.nbr.size() << ":b" << a.basepoint << ":t[";
  for (size_t i = 0; i < a.terminals.size(); ++i)
    os << (i ? "," : "") << a.terminals[i];
  os << "]:";
  for (int v = 0; v < a.size(); ++v)
    for (auto& [x, w] : a.nbr[v])
      if (x > 0) os << v << "," << x << "," << w << ";";
  return os.str();
}

Word Subgroup::path_from_basepoint(int v) const {
  Word out;
  while (parent[v] >= 0) {
    out.push_back(parent_letter[v]);
    v = parent[v];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

Subgroup make_subgroup(Automaton aut) {
  Subgroup h;
  h.aut = std::move(aut);
  h.aut.terminals = {h.aut.basepoint};
  int n = h.aut.size();
  h.parent.assign(n, -1);
  h.parent_letter.assign(n, 0);
  std::vector<char> seen(n, 0);
  std::deque<int> queue;
  seen[0] = 1;
  queue.push_back(0);
  auto letters = signed_letters(h.aut.rank);
  std::set<std::pair<int, int>> tree_pos;  // positive arcs (source, letter) in the tree
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int x : letters) {
      auto w = h.aut.step(v, x);
      if (!w || seen[*w]) continue;
      seen[*w] = 1;
      h.parent[*w] = v;
      h.parent_letter[*w] = x;
      tree_pos.insert(x > 0 ? std::make_pair(v, x) : std::make_pair(*w, -x));
      queue.push_back(*w);
    }
  }
  for (int v = 0; v < n; ++v)
    for (auto& [x, w] : h.aut.nbr[v])
      if (x > 0 && !tree_pos.count({v, x}))
        h.nontree.push_back({v, x, w});
  std::sort(h.nontree.begin(), h.nontree.end());
  for (auto& [u, x, v] : h.nontree) {
    Word b = h.path_from_basepoint(u);
    b.push_back(x);
    Word back = invert(h.path_from_basepoint(v));
    b.insert(b.end(), back.begin(), back.end());
    h.basis.push_back(reduce(b));
  }
  // restricted core: shave hanging trees, basepoint included
  h.restricted.assign(n, 1);
  std::vector<int> deg(n);
  std::deque<int> shave;
  for (int v = 0; v < n; ++v) {
    deg[v] = h.aut.degree(v);
    if (deg[v] == 1) shave.push_back(v);
  }
  while (!shave.empty()) {
    int v = shave.front();
    shave.pop_front();
    if (!h.restricted[v]) continue;
    if (deg[v] != 1) continue;
    h.restricted[v] = 0;
    for (auto& [x, w] : h.aut.nbr[v]) {
      if (w == v || !h.restricted[w]) continue;
      if (--deg[w] == 1) shave.push_back(w);
    }
  }
  h.restricted_count = 0;
  for (char f : h.restricted) h.restricted_count += f;
  return h;
}

}  // namespace

Subgroup build_stallings(const std::vector<Word>& gens, int rank) {
  Automaton a = fold_flower(gens, rank, nullptr);
  return make_subgroup(canonicalize(a));
}

Subgroup build_stallings_shuffled(const std::vector<Word>& gens, int rank,
                                  unsigned seed) {
  std::mt19937 rng(seed);
  Automaton a = fold_flower(gens, rank, &rng);
  return make_subgroup(canonicalize(a));
}

Subgroup subgroup_at(const Automaton& a, int base) {
  Automaton c = a;
  c.basepoint = base;
  c.terminals = {base};
  c = core_keep(c, {base});
  return make_subgroup(canonicalize(c));
}

std::string canonical_string(const Subgroup& h) { return canonical_string(h.aut); }

bool same_subgroup(const Subgroup& a, const Subgroup& b) {
  return canonical_string(a) == canonical_string(b);
}

bool membership(const Subgroup& h, const Word& w, const Word& u) {
  Word g = u.empty() ? w : multiply(w, invert(u));
  auto end = h.aut.walk(h.aut.basepoint, g);
  return end && *end == h.aut.basepoint;
}

std::optional<Word> express(const Subgroup& h, const Word& w) {
  std::map<std::pair<int, int>, int> arc_index;
  for (size_t j = 0; j < h.nontree.size(); ++j)
    arc_index[{h.nontree[j][0], h.nontree[j][1]}] = static_cast<int>(j);
  Word out;
  int cur = h.aut.basepoint;
  for (int y : w) {
    auto nxt = h.aut.step(cur, y);
    if (!nxt) return std::nullopt;
    auto key = y > 0 ? std::make_pair(cur, y) : std::make_pair(*nxt, -y);
    auto it = arc_index.find(key);
    if (it != arc_index.end()) out.push_back(y > 0 ? it->second + 1 : -(it->second + 1));
    cur = *nxt;
  }
  if (cur != h.aut.basepoint) return std::nullopt;
  return out;
}

std::optional<long> index(const Subgroup& h) {
  if (!saturated(h.aut)) return std::nullopt;
  return static_cast<long>(h.aut.size());
}

CosetAutomaton coset_automaton(const Subgroup& h, const Word& u) {
  Automaton a = h.aut;
  int cur = a.basepoint;
  size_t i = 0;
  while (i < u.size()) {
    auto nxt = a.step(cur, u[i]);
    if (!nxt) break;
    cur = *nxt;
    ++i;
  }
  for (; i < u.size(); ++i) {
    int nv = a.add_vertex();
    a.add_arc(cur, u[i], nv);
    cur = nv;
  }
  a.terminals = {cur};
  std::vector<int> m1, m2;
  Automaton c = core_keep(a, {a.basepoint, cur}, &m1);
  c = canonicalize(c, &m2);
  return {std::move(c), m2[m1[cur]]};
}

std::optional<Word> shortest_word(const Automaton& a, int s, int t) {
  if (s == t) return Word{};
  std::vector<int> prev_v(a.nbr.size(), -1), prev_x(a.nbr.size(), 0);
  std::vector<char> seen(a.nbr.size(), 0);
  std::deque<int> queue;
  seen[s] = 1;
  queue.push_back(s);
  auto letters = signed_letters(a.rank);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int x : letters) {
      auto w = a.step(v, x);
      if (!w || seen[*w]) continue;
      seen[*w] = 1;
      prev_v[*w] = v;
      prev_x[*w] = x;
      if (*w == t) {
        Word out;
        for (int c = t; c != s; c = prev_v[c]) out.push_back(prev_x[c]);
        std::reverse(out.begin(), out.end());
        return out;
      }
      queue.push_back(*w);
    }
  }
  return std::nullopt;
}

Pullback pullback_language(const Automaton& a, int s, int t, const Automaton& b,
                           int s2, int t2, const Limits& lim) {
  assert(a.rank == b.rank);
  Automaton prod;
  prod.rank = a.rank;
  std::unordered_map<long long, int> id;
  auto key = [&](int p, int q) {
    return static_cast<long long>(p) * b.size() + q;
  };
  std::deque<std::pair<int, int>> queue;
  id[key(s, s2)] = prod.add_vertex();
  queue.push_back({s, s2});
  auto letters = signed_letters(a.rank);
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    int from = id[key(p, q)];
    for (int x : letters) {
      auto pn = a.step(p, x);
      if (!pn) continue;
      auto qn = b.step(q, x);
      if (!qn) continue;
      auto it = id.find(key(*pn, *qn));
      int to;
      if (it == id.end()) {
        if (id.size() >= lim.max_product_vertices)
          throw resource_limit_error("pullback vertex guard exceeded");
        to = prod.add_vertex();
        id[key(*pn, *qn)] = to;
        queue.push_back({*pn, *qn});
      } else {
        to = it->second;
      }
      if (x > 0) prod.add_arc(from, x, to);
    }
  }
  prod.basepoint = id[key(s, s2)];
  int bp0 = prod.basepoint;
  auto tt = id.find(key(t, t2));
  if (tt == id.end()) return {std::move(prod), bp0, -1, false};
  prod.terminals = {tt->second};
  std::vector<int> m1, m2;
  Automaton c = core_keep(prod, {prod.basepoint, tt->second}, &m1);
  c = canonicalize(c, &m2);
  int S = m2[m1[prod.basepoint]];
  int T = m2[m1[tt->second]];
  return {std::move(c), S, T, true};
}

std::optional<std::pair<Subgroup, Word>> coset_intersection(
    const std::vector<std::pair<Subgroup, Word>>& items, const Limits& lim) {
  if (items.empty()) throw std::invalid_argument("empty coset list");
  CosetAutomaton first = coset_automaton(items[0].first, items[0].second);
  Pullback cur{std::move(first.aut), 0, first.target, true};
  cur.s = cur.aut.basepoint;
  for (size_t i = 1; i < items.size(); ++i) {
    CosetAutomaton ca = coset_automaton(items[i].first, items[i].second);
    cur = pullback_language(cur.aut, cur.s, cur.t, ca.aut, ca.aut.basepoint,
                            ca.target, lim);
    if (!cur.nonempty) return std::nullopt;
  }
  Subgroup k = subgroup_at(cur.aut, cur.s);
  Word w = *shortest_word(cur.aut, cur.s, cur.t);
  return std::make_pair(std::move(k), std::move(w));
}

Subgroup conjugate_subgroup(const Subgroup& h, const Word& v) {
  if (v.empty()) return h;
  std::vector<Word> gens;
  gens.reserve(h.basis.size());
  Word vi = invert(v);
  for (const Word& g : h.basis) gens.push_back(multiply(vi, multiply(g, v)));
  return build_stallings(gens, h.ambient_rank());
}

Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b,
                               const Limits& lim) {
  Pullback p = pullback_language(a.aut, a.aut.basepoint, a.aut.basepoint, b.aut,
                                 b.aut.basepoint, b.aut.basepoint, lim);
  return subgroup_at(p.aut, p.s);
}

std::string to_dot(const Automaton& a) {
  std::ostringstream os;
  os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  std::set<int> terms(a.terminals.begin(), a.terminals.end());
  for (int v = 0; v < a.size(); ++v) {
    os << "  " << v;
    if (v == a.basepoint)
      os << " [shape=doublecircle]";
    else if (terms.count(v))
      os << " [shape=square]";
    os << ";\n";
  }
  for (int v = 0; v < a.size(); ++v)
    for (auto& [x, w] : a.nbr[v])
      if (x > 0)
        os << "  " << v << " -> " << w << " [label=\"" << letter_name(x, a.rank)
           << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace relorder
