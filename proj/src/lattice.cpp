/* lattice.cpp */

#include "relorder/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

namespace relorder {

namespace {

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

long to_long(const Int& a) {
  if (!a.fits_slong_p()) throw std::overflow_error("lattice value out of range");
  return a.get_si();
}

int cmpabs(const Int& a, const Int& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace

Mat mat_mul(const Mat& a, const Mat& b) {
  size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  Mat out(n, Vec(m, Int(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (size_t c = 0; c < m; ++c) out[i][c] += a[i][j] * b[j][c];
    }
  return out;
}

Mat mat_identity(int n) {
  Mat out(n, Vec(n, Int(0)));
  for (int i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

namespace {

Mat hnf_impl(const Mat& rows, int m, Mat* transform) {
  Mat h = rows;
  int p = static_cast<int>(h.size());
  Mat u;
  if (transform) u = mat_identity(p);
  auto row_submul = [&](int i, const Int& q, int r) {
    for (int c = 0; c < m; ++c) h[i][c] -= q * h[r][c];
    if (transform)
      for (int c = 0; c < p; ++c) u[i][c] -= q * u[r][c];
  };
  auto row_swap = [&](int i, int r) {
    std::swap(h[i], h[r]);
    if (transform) std::swap(u[i], u[r]);
  };
  auto row_negate = [&](int r) {
    for (int c = 0; c < m; ++c) h[r][c] = -h[r][c];
    if (transform)
      for (int c = 0; c < p; ++c) u[r][c] = -u[r][c];
  };
  int r = 0;
  for (int col = 0; col < m && r < p; ++col) {
    // euclidean elimination in this column until one entry survives
    while (true) {
      int best = -1;
      for (int i = r; i < p; ++i) {
        if (h[i][col] == 0) continue;
        if (best < 0 || cmpabs(h[i][col], h[best][col]) < 0) best = i;
      }
      if (best < 0) break;
      row_swap(best, r);
      bool clean = true;
      for (int i = r + 1; i < p; ++i) {
        if (h[i][col] == 0) continue;
        row_submul(i, fdiv(h[i][col], h[r][col]), r);
        if (h[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (h[r][col] == 0) continue;
    if (h[r][col] < 0) row_negate(r);
    for (int i = 0; i < r; ++i)
      if (h[i][col] != 0) row_submul(i, fdiv(h[i][col], h[r][col]), r);
    ++r;
  }
  h.resize(r);
  if (transform) *transform = std::move(u);
  return h;
}

// Smith normal form of an arbitrary integer matrix with minimal-absolute-value
// pivoting; returns full transforms even for rank-deficient input.
struct GeneralSnf {
  Mat p, q, q_inv;
  std::vector<Int> divisors;
};

GeneralSnf general_snf(const Mat& rows, int m) {
  int r = static_cast<int>(rows.size());
  Mat b = rows;
  GeneralSnf out;
  out.p = mat_identity(r);
  out.q = mat_identity(m);
  out.q_inv = mat_identity(m);
  auto row_submul = [&](int i, const Int& c, int s) {
    for (int j = 0; j < m; ++j) b[i][j] -= c * b[s][j];
    for (int j = 0; j < r; ++j) out.p[i][j] -= c * out.p[s][j];
  };
  auto row_add = [&](int s, int i) {
    for (int j = 0; j < m; ++j) b[s][j] += b[i][j];
    for (int j = 0; j < r; ++j) out.p[s][j] += out.p[i][j];
  };
  auto col_submul = [&](int j, const Int& c, int s) {
    for (int i = 0; i < r; ++i) b[i][j] -= c * b[i][s];
    for (int i = 0; i < m; ++i) out.q[i][j] -= c * out.q[i][s];
    for (int i = 0; i < m; ++i) out.q_inv[s][i] += c * out.q_inv[j][i];
  };
  auto col_swap = [&](int j, int s) {
    for (int i = 0; i < r; ++i) std::swap(b[i][j], b[i][s]);
    for (int i = 0; i < m; ++i) std::swap(out.q[i][j], out.q[i][s]);
    std::swap(out.q_inv[j], out.q_inv[s]);
  };
  auto row_swap = [&](int i, int s) {
    std::swap(b[i], b[s]);
    std::swap(out.p[i], out.p[s]);
  };
  auto row_negate = [&](int s) {
    for (int j = 0; j < m; ++j) b[s][j] = -b[s][j];
    for (int j = 0; j < r; ++j) out.p[s][j] = -out.p[s][j];
  };
  int steps = std::min(r, m);
  for (int s = 0; s < steps; ++s) {
    // locate a minimal nonzero pivot in the trailing submatrix
    int pi = -1, pj = -1;
    for (int i = s; i < r; ++i)
      for (int j = s; j < m; ++j) {
        if (b[i][j] == 0) continue;
        if (pi < 0 || cmpabs(b[i][j], b[pi][pj]) < 0) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    row_swap(pi, s);
    col_swap(pj, s);
    while (true) {
      bool dirty = false;
      for (int i = s + 1; i < r; ++i) {
        if (b[i][s] == 0) continue;
        row_submul(i, fdiv(b[i][s], b[s][s]), s);
        if (b[i][s] != 0) dirty = true;
      }
      for (int j = s + 1; j < m; ++j) {
        if (b[s][j] == 0) continue;
        col_submul(j, fdiv(b[s][j], b[s][s]), s);
        if (b[s][j] != 0) dirty = true;
      }
      if (dirty) {
        // a smaller remainder appeared; promote it to the pivot slot
        int qi = s, qj = s;
        for (int i = s; i < r; ++i)
          for (int j = s; j < m; ++j) {
            if (b[i][j] == 0) continue;
            if (cmpabs(b[i][j], b[qi][qj]) < 0) {
              qi = i;
              qj = j;
            }
          }
        if (qi != s || qj != s) {
          row_swap(qi, s);
          col_swap(qj, s);
        }
        continue;
      }
      bool fixed = false;
      Int d = b[s][s];
      for (int i = s + 1; i < r && !fixed; ++i)
        for (int j = s + 1; j < m && !fixed; ++j)
          if (b[i][j] % d != 0) {
            row_add(s, i);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (b[s][s] < 0) row_negate(s);
    out.divisors.push_back(b[s][s]);
  }
  while (!out.divisors.empty() && out.divisors.back() == 0) out.divisors.pop_back();
  return out;
}

}  // namespace

Mat hnf_rows(const Mat& rows, int m) { return hnf_impl(rows, m, nullptr); }

Mat hnf_with_transform(const Mat& rows, int m, Mat* transform) {
  return hnf_impl(rows, m, transform);
}

struct SnfCache {
  std::once_flag flag;
  SnfResult val;
};

Lattice lattice_from_rows(const Mat& rows, int m) {
  for (const Vec& r : rows)
    if (static_cast<int>(r.size()) != m)
      throw std::invalid_argument("row length mismatch");
  Lattice l;
  l.m = m;
  l.rows = hnf_rows(rows, m);
  l.cache = std::make_shared<SnfCache>();
  return l;
}

const SnfResult& snf(const Lattice& l) {
  if (!l.cache) throw std::logic_error("lattice not built by lattice_from_rows");
  std::call_once(l.cache->flag, [&] {
    GeneralSnf g = general_snf(l.rows, l.m);
    if (static_cast<int>(g.divisors.size()) != l.rank())
      throw std::logic_error("snf rank disagrees with lattice rank");
    SnfResult res{std::move(g.p), std::move(g.q), std::move(g.q_inv),
                  std::move(g.divisors)};
    // P * B * Q must reproduce the diagonal exactly
    Mat check = mat_mul(mat_mul(res.p, l.rows), res.q);
    for (size_t i = 0; i < check.size(); ++i)
      for (size_t j = 0; j < check[i].size(); ++j) {
        Int want = (i == j && i < res.divisors.size()) ? res.divisors[i] : Int(0);
        if (check[i][j] != want) throw std::logic_error("snf identity failed");
      }
    l.cache->val = std::move(res);
  });
  return l.cache->val;
}

Vec canonical_rep(const Lattice& l, const Vec& a) {
  if (static_cast<int>(a.size()) != l.m)
    throw std::invalid_argument("vector dimension mismatch");
  Vec x = a;
  for (const Vec& row : l.rows) {
    int pc = 0;
    while (row[pc] == 0) ++pc;
    Int q = fdiv(x[pc], row[pc]);
    if (q == 0) continue;
    for (int c = pc; c < l.m; ++c) x[c] -= q * row[c];
  }
  return x;
}

bool lattice_member(const Lattice& l, const Vec& a) {
  Vec x = canonical_rep(l, a);
  for (const Int& c : x)
    if (c != 0) return false;
  return true;
}

namespace {

Vec row_times_mat(const Vec& a, const Mat& q) {
  size_t m = q.empty() ? 0 : q[0].size();
  Vec out(m, Int(0));
  for (size_t c = 0; c < a.size(); ++c) {
    if (a[c] == 0) continue;
    for (size_t j = 0; j < m; ++j) out[j] += a[c] * q[c][j];
  }
  return out;
}

}  // namespace

long lattice_order(const Lattice& l, const Vec& a) {
  if (l.m == 0) return 1;
  const SnfResult& s = snf(l);
  Vec lambda = row_times_mat(a, s.q);
  int r = l.rank();
  for (int i = r; i < l.m; ++i)
    if (lambda[i] != 0) return 0;
  Int ord = 1;
  for (int i = 0; i < r; ++i) ord = lcm(ord, s.divisors[i] / gcd(s.divisors[i], lambda[i]));
  return to_long(ord);
}

std::set<long> lattice_spectrum(const Lattice& l) {
  std::set<long> out{1};
  int r = l.rank();
  if (r < l.m) out.insert(0);
  if (r > 0) {
    long dr = to_long(snf(l).divisors[r - 1]);
    for (long i = 1; i * i <= dr; ++i) {
      if (dr % i) continue;
      out.insert(i);
      out.insert(dr / i);
    }
  }
  return out;
}

Lattice k_root(const Lattice& l, const Int& k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  int r = l.rank();
  if (r == 0) return l;
  const SnfResult& s = snf(l);
  Mat rows;
  for (int i = 0; i < r; ++i) {
    Int coef = s.divisors[i] / gcd(s.divisors[i], k);
    rows.push_back(vec_scale(coef, s.q_inv[i]));
  }
  return lattice_from_rows(rows, l.m);
}

std::optional<LatticeCoset> k_root_coset(const LatticeCoset& c, const Int& k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const Lattice& l = c.lat;
  if (l.m == 0) return LatticeCoset{Vec{}, l};
  const SnfResult& s = snf(l);
  Vec gamma = row_times_mat(c.rep, s.q);
  int r = l.rank();
  Vec alpha(l.m, Int(0));
  for (int i = r; i < l.m; ++i) {
    if (gamma[i] % k != 0) return std::nullopt;
    alpha[i] = gamma[i] / k;
  }
  for (int i = 0; i < r; ++i) {
    // k * x = gamma_i (mod d_i)
    Int d = s.divisors[i];
    Int g = gcd(k, d);
    if (gamma[i] % g != 0) return std::nullopt;
    Int dg = d / g;
    if (dg == 1) {
      alpha[i] = 0;
      continue;
    }
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), Int(k / g).get_mpz_t(), dg.get_mpz_t()) == 0)
      throw std::logic_error("modular inverse failed");
    alpha[i] = ((gamma[i] / g) * inv) % dg;
  }
  Vec x = row_times_mat(alpha, s.q_inv);
  Lattice root = k_root(l, k);
  Vec rep = canonical_rep(root, x);
  Vec back = vec_sub(vec_scale(k, rep), c.rep);
  if (!lattice_member(l, back)) throw std::logic_error("k_root_coset check failed");
  return LatticeCoset{std::move(rep), std::move(root)};
}

Mat solve_completion_matrix(const Mat& u, int s, const Mat& a, const Lattice& b) {
  int p = static_cast<int>(u.size());
  GeneralSnf g = general_snf(u, s);
  int rho = static_cast<int>(g.divisors.size());
  Mat pa = mat_mul(g.p, a);
  Mat cprime(s, zero_vec(b.m));
  for (int i = 0; i < p; ++i) {
    if (i < rho) {
      auto sol = k_root_coset(LatticeCoset{pa[i], b}, g.divisors[i]);
      if (!sol) throw std::domain_error("completion system unsolvable");
      cprime[i] = sol->rep;
    } else if (!lattice_member(b, pa[i])) {
      throw std::domain_error("completion system unsolvable");
    }
  }
  Mat c = mat_mul(g.q, cprime);
  Mat residual(p, zero_vec(b.m));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < s; ++j) {
      if (u[i][j] == 0) continue;
      residual[i] = vec_add(residual[i], vec_scale(u[i][j], c[j]));
    }
  for (int i = 0; i < p; ++i)
    if (!lattice_member(b, vec_sub(residual[i], a[i])))
      throw std::logic_error("completion solver check failed");
  return c;
}

Lattice scale_lattice(const Int& k, const Lattice& l) {
  Mat rows = l.rows;
  for (Vec& r : rows) r = vec_scale(k, r);
  return lattice_from_rows(rows, l.m);
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.m != b.m) throw std::invalid_argument("ambient rank mismatch");
  Mat rows = a.rows;
  rows.insert(rows.end(), b.rows.begin(), b.rows.end());
  return lattice_from_rows(rows, a.m);
}

Lattice full_lattice(int m) { return lattice_from_rows(mat_identity(m), m); }

Lattice zero_lattice(int m) { return lattice_from_rows({}, m); }

Lattice sum_with_kzm(const Lattice& l, const Int& k) {
  Mat rows = l.rows;
  for (int i = 0; i < l.m; ++i) {
    Vec e = zero_vec(l.m);
    e[i] = k;
    rows.push_back(std::move(e));
  }
  return lattice_from_rows(rows, l.m);
}

Int lattice_covolume(const Lattice& l) {
  if (l.rank() != l.m) throw std::invalid_argument("covolume needs full rank");
  Int det = 1;
  for (int i = 0; i < l.m; ++i) {
    int pc = 0;
    while (l.rows[i][pc] == 0) ++pc;
    det *= l.rows[i][pc];
  }
  return det;
}

std::string format_mat(const Mat& rows) {
  std::string out = "[";
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ",";
    out += format_vec(rows[i]);
  }
  return out + "]";
}

QuotientMachine::QuotientMachine(Lattice n) : n_(std::move(n)) {
  if (n_.rank() != n_.m)
    throw std::invalid_argument("quotient modulus must have full rank");
}

int QuotientMachine::zero() { return reduce(zero_vec(n_.m)); }

int QuotientMachine::reduce(const Vec& v) {
  Vec c = canonical_rep(n_, v);
  auto it = ids_.find(c);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(reps_.size());
  ids_.emplace(c, id);
  reps_.push_back(std::move(c));
  return id;
}

int QuotientMachine::add(int id, const Vec& g) { return reduce(vec_add(reps_[id], g)); }

int QuotientMachine::add(int id, int other) { return add(id, reps_[other]); }

int QuotientMachine::neg(int id) { return reduce(vec_scale(Int(-1), reps_[id])); }

const Vec& QuotientMachine::rep(int id) const { return reps_[id]; }

long QuotientMachine::order_of(int id) { return lattice_order(n_, reps_[id]); }

size_t QuotientMachine::enumerate_all() {
  std::deque<int> queue{zero()};
  std::set<int> seen{zero()};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int i = 0; i < n_.m; ++i) {
      Vec e = zero_vec(n_.m);
      e[i] = 1;
      int w = add(v, e);
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  return reps_.size();
}

}  // namespace relorder
