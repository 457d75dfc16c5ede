/* fta.cpp -- subgroups of F_n x Z^m */

#include "relorder/fta.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <utility>

namespace relorder {

namespace {

std::vector<long> divisors_of(long k) {
  std::vector<long> out;
  for (long d = 1; d * d <= k; ++d)
    if (k % d == 0) {
      out.push_back(d);
      if (d != k / d) out.push_back(k / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

Vec row_combo(const std::vector<long>& coeffs, const Mat& rows, int m) {
  Vec out = zero_vec(m);
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) out = vec_add(out, vec_scale(Int(coeffs[i]), rows[i]));
  return out;
}

// Vertices of `base` paired with a walk weight living in Z^m modulo
// `modulus`. Each non-tree arc j carries arc_rows[j]; tree arcs weigh zero.
// The subgroup at (basepoint, 0) collects the walks of weight zero.
Subgroup weighted_kernel(const Subgroup& base, const Mat& arc_rows,
                         const Lattice& modulus, const Limits& lim) {
  std::map<std::pair<int, int>, std::pair<int, int>> arcw;  // (u, x) -> (row, sign)
  for (size_t j = 0; j < base.nontree.size(); ++j) {
    auto [u, x, v] = base.nontree[j];
    arcw[{u, x}] = {static_cast<int>(j), 1};
    arcw[{v, -x}] = {static_cast<int>(j), -1};
  }
  Automaton prod;
  prod.rank = base.aut.rank;
  std::map<std::pair<int, Vec>, int> ids;
  std::deque<std::pair<int, Vec>> queue;
  auto state_id = [&](int p, const Vec& vec) {
    std::pair<int, Vec> key{p, vec};
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    if (ids.size() >= lim.max_product_vertices)
      throw resource_limit_error("product automaton guard exceeded");
    int id = prod.add_vertex();
    ids.emplace(key, id);
    queue.push_back(std::move(key));
    return id;
  };
  int start = state_id(base.aut.basepoint,
                       canonical_rep(modulus, zero_vec(modulus.m)));
  while (!queue.empty()) {
    auto [p, vec] = queue.front();
    queue.pop_front();
    int cur = ids.at({p, vec});
    for (auto [x, pn] : base.aut.nbr[p]) {
      Vec nvec = vec;
      auto it = arcw.find({p, x});
      if (it != arcw.end()) {
        const Vec& row = arc_rows[it->second.first];
        nvec = it->second.second > 0 ? vec_add(nvec, row) : vec_sub(nvec, row);
        nvec = canonical_rep(modulus, nvec);
      }
      int nid = state_id(pn, nvec);
      if (x > 0)
        prod.add_arc(cur, x, nid);
      else
        prod.add_arc(nid, -x, cur);
    }
  }
  prod.basepoint = start;
  return subgroup_at(prod, start);
}

}  // namespace

FtaSubgroup fta_basis(const std::vector<FtaElement>& gens, const Ambient& amb) {
  if (amb.free_rank < 0 || amb.abelian_rank < 0)
    throw std::invalid_argument("ambient ranks must be nonnegative");
  int m = amb.abelian_rank;
  std::vector<Word> free_parts;
  for (const FtaElement& g : gens) {
    if (static_cast<int>(g.t.size()) != m)
      throw std::invalid_argument("vector part has wrong length");
    free_parts.push_back(g.w);
  }
  Subgroup hpi = build_stallings(free_parts, amb.free_rank);
  int s = hpi.rank();
  int p = static_cast<int>(gens.size());
  Mat u(p, Vec(s, Int(0)));
  Mat rhs(p, zero_vec(m));
  for (int i = 0; i < p; ++i) {
    rhs[i] = gens[i].t;
    if (gens[i].w.empty()) continue;
    auto yw = express(hpi, gens[i].w);
    if (!yw) throw std::logic_error("generator escaped its own span");
    std::vector<long> ab = abelianize(*yw, s);
    for (int j = 0; j < s; ++j) u[i][j] = ab[j];
  }
  // vectors reachable with trivial free part: integer combinations falling in
  // the left kernel of u
  Mat t;
  int r = static_cast<int>(hnf_with_transform(u, s, &t).size());
  Mat lrows;
  for (int i = r; i < p; ++i) {
    Vec row = zero_vec(m);
    for (int j = 0; j < p; ++j)
      if (t[i][j] != 0) row = vec_add(row, vec_scale(t[i][j], rhs[j]));
    lrows.push_back(std::move(row));
  }
  Lattice lat = lattice_from_rows(lrows, m);
  Mat comp;
  try {
    comp = solve_completion_matrix(u, s, rhs, lat);
  } catch (const std::domain_error&) {
    throw std::logic_error("completion system unsolvable for a generating set");
  }
  for (Vec& row : comp) row = canonical_rep(lat, row);
  return FtaSubgroup{amb, std::move(hpi), std::move(comp), std::move(lat)};
}

FtaSubgroup fta_trivial_subgroup(const Ambient& amb) { return fta_basis({}, amb); }

std::optional<LatticeCoset> completion(const FtaSubgroup& h, const Word& w) {
  auto yw = express(h.free_part, w);
  if (!yw) return std::nullopt;
  std::vector<long> ab = abelianize(*yw, h.free_part.rank());
  Vec rep = row_combo(ab, h.comp, h.ambient.abelian_rank);
  return LatticeCoset{canonical_rep(h.lat, rep), h.lat};
}

bool fta_membership(const FtaSubgroup& h, const FtaElement& g) {
  if (static_cast<int>(g.t.size()) != h.ambient.abelian_rank)
    throw std::invalid_argument("vector part has wrong length");
  auto c = completion(h, g.w);
  if (!c) return false;
  return lattice_member(h.lat, vec_sub(g.t, c->rep));
}

bool fta_same_subgroup(const FtaSubgroup& a, const FtaSubgroup& b) {
  return a.ambient.free_rank == b.ambient.free_rank &&
         a.ambient.abelian_rank == b.ambient.abelian_rank &&
         same_subgroup(a.free_part, b.free_part) && a.lat.rows == b.lat.rows &&
         a.comp == b.comp;
}

long fta_spectrum_bound(const FtaSubgroup& h) {
  long b = spectrum_bound(h.free_part);
  if (h.lat.rank() == 0) return b;
  Int total = snf(h.lat).divisors.back() * b;
  if (!total.fits_slong_p()) throw std::overflow_error("spectrum bound out of range");
  return total.get_si();
}

long fta_order(const FtaSubgroup& h, const FtaElement& g) {
  if (static_cast<int>(g.t.size()) != h.ambient.abelian_rank)
    throw std::invalid_argument("vector part has wrong length");
  long bound = fta_spectrum_bound(h);
  FtaElement cur = g;
  for (long r = 1; r <= bound; ++r) {
    if (r > 1) cur = fta_multiply(cur, g);
    if (fta_membership(h, cur)) return r;
  }
  return 0;
}

bool fta_index_finite(const FtaSubgroup& h) {
  return index(h.free_part).has_value() &&
         h.lat.rank() == h.ambient.abelian_rank;
}

bool fta_has_order_zero(const FtaSubgroup& h) { return !fta_index_finite(h); }

std::optional<Int> fta_index(const FtaSubgroup& h) {
  if (!fta_index_finite(h)) return std::nullopt;
  return Int(*index(h.free_part)) * lattice_covolume(h.lat);
}

Subgroup m_k(const FtaSubgroup& h, long k, const Limits& lim) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  return weighted_kernel(h.free_part, h.comp, sum_with_kzm(h.lat, Int(k)), lim);
}

FtaDecomposition fta_k_roots(const FtaSubgroup& h, long k, const Limits& lim) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  int m = h.ambient.abelian_rank;
  Subgroup mk = m_k(h, k, lim);
  Lattice lam = k_root(h.lat, Int(k));
  CosetUnionDescription wit = k_roots(mk, k, lim);
  FtaDecomposition out;
  out.label = k;
  out.conjugator = h;
  for (const DescriptionPart& wp : wit.parts) {
    const Word& w = wp.rep;
    auto cwk = completion(h, power(w, k));
    if (!cwk) throw std::logic_error("root witness escaped the free projection");
    auto aw = k_root_coset(*cwk, Int(k));
    if (!aw) throw std::logic_error("root witness misses k Z^m");
    Subgroup nw = mk;
    Word wj;
    for (long j = 1; j < k; ++j) {
      wj = multiply(wj, w);
      nw = subgroup_intersection(nw, conjugate_subgroup(mk, wj), lim);
    }
    std::vector<FtaElement> gens;
    for (int i = 0; i < nw.rank(); ++i) {
      Vec b = zero_vec(m);
      Word wj2;
      for (long j = 0; j < k; ++j) {
        Word conj = multiply(multiply(wj2, nw.basis[i]), invert(wj2));
        auto cv = completion(h, conj);
        if (!cv) throw std::logic_error("root witness conjugate escaped M_k");
        auto bij = k_root_coset(*cv, Int(k));
        if (!bij) throw std::logic_error("root system unsolvable over N_w");
        b = vec_add(b, bij->rep);
        if (j + 1 < k) wj2 = multiply(wj2, w);
      }
      gens.push_back(FtaElement{nw.basis[i], std::move(b)});
    }
    for (const Vec& row : lam.rows) gens.push_back(FtaElement{Word{}, row});
    FtaSubgroup hw = fta_basis(gens, h.ambient);
    out.parts.push_back(FtaPart{std::move(hw), FtaElement{w, aw->rep}});
  }
  return out;
}

namespace {

// Splits every k-th root part into the cosets of elements of order exactly k.
// The order of (v t^tau)(w t^aw) only depends on  k tau - vbar B'  modulo
// k L(h), so the image of that map is walked with witnesses attached.
FtaDecomposition refine_orders(const FtaSubgroup& h, long k, const Limits& lim,
                               bool stop_early) {
  int m = h.ambient.abelian_rank;
  FtaDecomposition out;
  out.label = k;
  out.conjugator = h;
  if (k > fta_spectrum_bound(h)) return out;
  FtaDecomposition roots = fta_k_roots(h, k, lim);
  std::vector<long> divs = divisors_of(k);
  Lattice kl = scale_lattice(Int(k), h.lat);
  for (const FtaPart& part : roots.parts) {
    const Word& w = part.rep.w;
    const Vec& aw = part.rep.t;
    const FtaSubgroup& hw = part.sub;
    int q = hw.free_part.rank();
    long r0 = 0;
    for (long r : divs)
      if (membership(h.free_part, power(w, r))) {
        r0 = r;
        break;
      }
    if (r0 == 0) throw std::logic_error("root witness has unbounded free order");
    auto cg = completion(h, power(w, r0));
    if (!cg) throw std::logic_error("root witness escaped the free projection");
    Vec e = vec_sub(vec_scale(Int(k), aw), vec_scale(Int(k / r0), cg->rep));
    if (!lattice_member(h.lat, e))
      throw std::logic_error("order refinement invariant violated");
    Mat d(q, zero_vec(m));
    for (int i = 0; i < q; ++i) {
      Vec bp = zero_vec(m);
      Word wj;
      for (long j = 0; j < k; ++j) {
        Word conj = multiply(multiply(wj, hw.free_part.basis[i]), invert(wj));
        auto cv = completion(h, conj);
        if (!cv) throw std::logic_error("order refinement invariant violated");
        bp = vec_add(bp, cv->rep);
        if (j + 1 < k) wj = multiply(wj, w);
      }
      d[i] = vec_sub(vec_scale(Int(k), hw.comp[i]), bp);
      if (!lattice_member(h.lat, d[i]))
        throw std::logic_error("order refinement invariant violated");
    }
    struct Witness {
      std::vector<long> alpha, beta;
    };
    int nlam = static_cast<int>(hw.lat.rows.size());
    std::map<Vec, Witness> image;
    std::deque<Vec> queue;
    image.emplace(canonical_rep(kl, zero_vec(m)),
                  Witness{std::vector<long>(q, 0), std::vector<long>(nlam, 0)});
    queue.push_back(image.begin()->first);
    while (!queue.empty()) {
      Vec cur = queue.front();
      queue.pop_front();
      Witness base = image.at(cur);
      auto try_step = [&](const Vec& delta, int slot, int sgn, bool is_beta) {
        Vec nxt = canonical_rep(kl, vec_add(cur, delta));
        if (image.count(nxt)) return;
        if (image.size() >= lim.max_product_vertices)
          throw resource_limit_error("order image guard exceeded");
        Witness next = base;
        (is_beta ? next.beta : next.alpha)[slot] += sgn;
        image.emplace(nxt, std::move(next));
        queue.push_back(std::move(nxt));
      };
      for (int i = 0; i < q; ++i) {
        try_step(d[i], i, 1, false);
        try_step(vec_scale(Int(-1), d[i]), i, -1, false);
      }
      for (int l = 0; l < nlam; ++l) {
        Vec kil = vec_scale(Int(k), hw.lat.rows[l]);
        try_step(kil, l, 1, true);
        try_step(vec_scale(Int(-1), kil), l, -1, true);
      }
    }
    std::optional<FtaSubgroup> kernel;
    auto kernel_sub = [&]() -> const FtaSubgroup& {
      if (!kernel) {
        Lattice klam = scale_lattice(Int(k), hw.lat);
        Subgroup nprime = weighted_kernel(hw.free_part, d, klam, lim);
        std::vector<FtaElement> gens;
        for (int i = 0; i < nprime.rank(); ++i) {
          auto yw = express(hw.free_part, nprime.basis[i]);
          if (!yw) throw std::logic_error("order refinement invariant violated");
          std::vector<long> ap = abelianize(*yw, q);
          Vec row = row_combo(ap, hw.comp, m);
          Vec ad = row_combo(ap, d, m);
          for (int c = 0; c < m; ++c) {
            if (ad[c] % k != 0)
              throw std::logic_error("order refinement invariant violated");
            row[c] -= ad[c] / k;
          }
          gens.push_back(FtaElement{nprime.basis[i], std::move(row)});
        }
        for (const Vec& lrow : h.lat.rows) gens.push_back(FtaElement{Word{}, lrow});
        kernel = fta_basis(gens, h.ambient);
      }
      return *kernel;
    };
    for (const auto& [xi, wit] : image) {
      long rxi = 0;
      for (long r : divs) {
        if (r % r0 != 0) continue;
        if (lattice_member(scale_lattice(Int(k / r), h.lat), vec_add(xi, e))) {
          rxi = r;
          break;
        }
      }
      if (rxi == 0) throw std::logic_error("order refinement invariant violated");
      if (rxi != k) continue;
      Word z;
      for (int i = 0; i < q; ++i)
        if (wit.alpha[i] != 0)
          z = multiply(z, power(hw.free_part.basis[i], wit.alpha[i]));
      z = multiply(z, w);
      Vec az = vec_add(aw, row_combo(wit.alpha, hw.comp, m));
      az = vec_add(az, row_combo(wit.beta, hw.lat.rows, m));
      FtaElement rep{std::move(z), std::move(az)};
      if (fta_order(h, rep) != k)
        throw std::logic_error("order description representative mismatch");
      out.parts.push_back(FtaPart{kernel_sub(), std::move(rep)});
      if (stop_early) return out;
    }
  }
  return out;
}

}  // namespace

FtaDecomposition fta_elements_of_order(const FtaSubgroup& h, long k,
                                       const Limits& lim) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  return refine_orders(h, k, lim, false);
}

bool fta_smp(const FtaSubgroup& h, long k, const Limits& lim) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  if (k == 0) return fta_has_order_zero(h);
  if (k == 1) return true;
  return !refine_orders(h, k, lim, true).parts.empty();
}

std::set<long> fta_spectrum(const FtaSubgroup& h, const Limits& lim) {
  std::set<long> out{1};
  if (fta_has_order_zero(h)) out.insert(0);
  std::set<long> candidates;
  for (long r : spectrum(h.free_part, {}, lim)) {
    if (r == 0) continue;
    for (long s : lattice_spectrum(h.lat)) {
      if (s == 0) continue;
      if (r * s >= 2) candidates.insert(r * s);
    }
  }
  for (long k : candidates)
    if (fta_smp(h, k, lim)) out.insert(k);
  return out;
}

bool fta_is_S_pure(const FtaSubgroup& h, const SSet& s, const Limits& lim) {
  long bound = fta_spectrum_bound(h);
  for (long d = 2; d <= bound; ++d)
    if (s.divides_some(d) && fta_smp(h, d, lim)) return false;
  return true;
}

std::vector<FtaSubgroup> fta_pure_closure_chain(const FtaSubgroup& h, const SSet& s,
                                                const Limits& lim) {
  std::vector<FtaSubgroup> chain{h};
  while (true) {
    if (chain.size() > 64)
      throw resource_limit_error("pure closure failed to stabilize");
    const FtaSubgroup& cur = chain.back();
    long bound = fta_spectrum_bound(cur);
    std::vector<FtaElement> gens;
    for (int i = 0; i < cur.free_part.rank(); ++i)
      gens.push_back(FtaElement{cur.free_part.basis[i], cur.comp[i]});
    for (const Vec& row : cur.lat.rows) gens.push_back(FtaElement{Word{}, row});
    bool grew = false;
    for (long d = 2; d <= bound; ++d) {
      if (!s.divides_some(d)) continue;
      if (!fta_smp(cur, d, lim)) continue;
      grew = true;
      FtaDecomposition roots = fta_k_roots(cur, d, lim);
      for (const FtaPart& part : roots.parts) {
        gens.push_back(part.rep);
        for (int i = 0; i < part.sub.free_part.rank(); ++i)
          gens.push_back(FtaElement{part.sub.free_part.basis[i], part.sub.comp[i]});
        for (const Vec& row : part.sub.lat.rows)
          gens.push_back(FtaElement{Word{}, row});
      }
    }
    if (!grew) break;
    chain.push_back(fta_basis(gens, cur.ambient));
  }
  return chain;
}

FtaSubgroup fta_pure_closure(const FtaSubgroup& h, const SSet& s, const Limits& lim) {
  return fta_pure_closure_chain(h, s, lim).back();
}

std::string to_string(const FtaSubgroup& h) {
  std::ostringstream os;
  os << "L=" << format_mat(h.lat.rows) << " ; basis:";
  for (int i = 0; i < h.free_part.rank(); ++i)
    os << " y_" << i + 1 << "="
       << format_word(h.free_part.basis[i], h.ambient.free_rank) << " c_" << i + 1
       << "=" << format_vec(h.comp[i]);
  return os.str();
}

std::string to_string(const FtaDecomposition& d) {
  std::ostringstream os;
  os << "label=" << d.label << "\n";
  os << "conjugator: " << to_string(d.conjugator) << "\n";
  for (const FtaPart& p : d.parts)
    os << "part: subgroup{" << to_string(p.sub) << "} rep="
       << format_element(p.rep, p.sub.ambient) << "\n";
  return os.str();
}

}  // namespace relorder
