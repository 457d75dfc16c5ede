/* words.hpp -- free-group word algebra and the textual element DSL */

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relorder {

// Letters are nonzero integers: +i is the i-th generator, -i its inverse.
// Words are kept freely reduced by every operation that returns one.
using Word = std::vector<int>;

using Int = mpz_class;
using Vec = std::vector<Int>;

struct Ambient {
  int free_rank = 0;
  int abelian_rank = 0;
};

struct FtaElement {
  Word w;
  Vec t;
};

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct resource_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_reduced(const Word& w);
Word reduce(const Word& letters);
Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
Word power(const Word& u, long k);

// w = v^-1 * core * v with core cyclically reduced and no cancellation.
std::pair<Word, Word> cyclic_decompose(const Word& w);

std::vector<long> abelianize(const Word& w, int rank);

std::string letter_name(int letter, int rank);
std::string format_word(const Word& w, int rank);
std::string format_vec(const Vec& v);
std::string format_element(const FtaElement& g, const Ambient& amb);

Word parse_word(const std::string& text, int rank);
FtaElement parse_element(const std::string& text, const Ambient& amb);

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Int& k, const Vec& a);
Vec zero_vec(int m);

FtaElement fta_multiply(const FtaElement& a, const FtaElement& b);
FtaElement fta_invert(const FtaElement& g);
FtaElement fta_power(const FtaElement& g, long k);
FtaElement fta_conjugate(const FtaElement& g, const FtaElement& c);
bool fta_is_identity(const FtaElement& g);

}  // namespace relorder
