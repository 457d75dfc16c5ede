/* lattice.hpp -- exact integer lattice algebra: HNF/SNF, membership, orders,
   spectra, k-roots, Diophantine solving, finite quotients */

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relorder/words.hpp"

namespace relorder {

using Mat = std::vector<Vec>;

struct SnfResult {
  Mat p;              // r x r unimodular
  Mat q;              // m x m unimodular
  Mat q_inv;
  std::vector<Int> divisors;  // d_1 | d_2 | ... | d_r, positive
};

struct SnfCache;

// Rows are a lattice basis in row-style Hermite normal form: positive pivots
// moving right as the row index grows, entries above each pivot reduced into
// [0, pivot). Zero-rank lattices have no rows.
struct Lattice {
  int m = 0;
  Mat rows;
  std::shared_ptr<SnfCache> cache;

  int rank() const { return static_cast<int>(rows.size()); }
};

struct LatticeCoset {
  Vec rep;
  Lattice lat;
};

Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_identity(int n);

// Row-style HNF; zero rows dropped. With `transform`, returns U with
// U * input = (HNF padded by zero rows) and |det U| = 1; rows of U beyond the
// rank span the left kernel of the input.
Mat hnf_rows(const Mat& rows, int m);
Mat hnf_with_transform(const Mat& rows, int m, Mat* transform);

Lattice lattice_from_rows(const Mat& rows, int m);
const SnfResult& snf(const Lattice& l);

bool lattice_member(const Lattice& l, const Vec& a);
Vec canonical_rep(const Lattice& l, const Vec& a);
long lattice_order(const Lattice& l, const Vec& a);
std::set<long> lattice_spectrum(const Lattice& l);

Lattice k_root(const Lattice& l, const Int& k);
std::optional<LatticeCoset> k_root_coset(const LatticeCoset& c, const Int& k);

// Smallest-solution matrix C with U*C = A row-wise modulo B; throws
// std::domain_error when no integer solution exists.
Mat solve_completion_matrix(const Mat& u, int s, const Mat& a, const Lattice& b);

Lattice scale_lattice(const Int& k, const Lattice& l);
Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice full_lattice(int m);
Lattice zero_lattice(int m);
Lattice sum_with_kzm(const Lattice& l, const Int& k);
Int lattice_covolume(const Lattice& l);  // requires full rank

std::string format_mat(const Mat& rows);

// Finite quotient Z^m / N for a full-rank modulus N. Elements are dense ids
// for canonical representatives, discovered lazily.
class QuotientMachine {
 public:
  explicit QuotientMachine(Lattice n);

  int zero();
  int reduce(const Vec& v);
  int add(int id, const Vec& g);
  int add(int id, int other);
  int neg(int id);
  const Vec& rep(int id) const;
  long order_of(int id);
  size_t discovered() const { return reps_.size(); }
  size_t enumerate_all();  // walks the whole quotient; returns |Z^m / N|

 private:
  Lattice n_;
  std::vector<Vec> reps_;
  std::map<Vec, int> ids_;
};

}  // namespace relorder
