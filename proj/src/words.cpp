/* words.cpp */

#include "relorder/words.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace relorder {

bool is_reduced(const Word& w) {
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] == -w[i - 1]) return false;
  return true;
}

Word reduce(const Word& letters) {
  Word out;
  out.reserve(letters.size());
  for (int x : letters) {
    if (x == 0) throw std::invalid_argument("zero letter");
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word multiply(const Word& u, const Word& v) {
  Word out = u;
  for (int x : v) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word invert(const Word& u) {
  Word out;
  out.reserve(u.size());
  for (auto it = u.rbegin(); it != u.rend(); ++it) out.push_back(-*it);
  return out;
}

Word power(const Word& u, long k) {
  if (k == 0 || u.empty()) return {};
  if (k < 0) return power(invert(u), -k);
  // (v^-1 c v)^k = v^-1 c^k v with c cyclically reduced, so no quadratic
  // re-reduction is needed for large exponents.
  auto [core, v] = cyclic_decompose(u);
  Word out = invert(v);
  out.reserve(v.size() * 2 + core.size() * static_cast<size_t>(k));
  for (long i = 0; i < k; ++i) out.insert(out.end(), core.begin(), core.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::pair<Word, Word> cyclic_decompose(const Word& w) {
  size_t i = 0, j = w.size();
  while (j >= i + 2 && w[i] == -w[j - 1]) {
    ++i;
    --j;
  }
  Word core(w.begin() + i, w.begin() + j);
  Word v(w.begin() + j, w.end());
  return {core, v};
}

std::vector<long> abelianize(const Word& w, int rank) {
  std::vector<long> out(rank, 0);
  for (int x : w) {
    int i = x > 0 ? x : -x;
    if (i > rank) throw std::invalid_argument("letter out of range");
    out[i - 1] += x > 0 ? 1 : -1;
  }
  return out;
}

std::string letter_name(int letter, int rank) {
  int i = letter > 0 ? letter : -letter;
  std::string base;
  if (rank <= 26)
    base = std::string(1, static_cast<char>('a' + i - 1));
  else
    base = "x" + std::to_string(i);
  return letter > 0 ? base : base + "^-1";
}

std::string format_word(const Word& w, int rank) {
  if (w.empty()) return "1";
  std::string out;
  size_t i = 0;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    long run = static_cast<long>(j - i);
    int gen = w[i] > 0 ? w[i] : -w[i];
    if (rank <= 26)
      out += static_cast<char>('a' + gen - 1);
    else
      out += "x" + std::to_string(gen);
    long e = w[i] > 0 ? run : -run;
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

std::string format_vec(const Vec& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

std::string format_element(const FtaElement& g, const Ambient& amb) {
  std::string out = format_word(g.w, amb.free_rank);
  if (amb.abelian_rank > 0) out += " | " + format_vec(g.t);
  return out;
}

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg + " at position " + std::to_string(pos));
  }
  long read_long() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      fail("expected integer");
    return std::strtol(s.c_str() + start, nullptr, 10);
  }
  Int read_int() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) fail("expected integer");
    return Int(s.substr(start, pos - start));
  }
};

constexpr size_t kMaxParsedLetters = 1u << 22;

// term := generator ('^' int)? ; appends the expansion to out.
void parse_term(Cursor& c, int rank, Word& out) {
  char ch = c.peek();
  int gen = 0;
  if (rank > 26) {
    if (ch != 'x') c.fail("expected generator x<i>");
    ++c.pos;
    long i = c.read_long();
    if (i < 1 || i > rank) c.fail("generator index out of range");
    gen = static_cast<int>(i);
  } else {
    if (ch < 'a' || ch > 'z') c.fail("expected generator letter");
    gen = ch - 'a' + 1;
    if (gen > rank) c.fail("generator out of range");
    ++c.pos;
  }
  long exp = 1;
  if (c.peek() == '^') {
    ++c.pos;
    exp = c.read_long();
  }
  size_t count = static_cast<size_t>(exp < 0 ? -exp : exp);
  if (out.size() + count > kMaxParsedLetters) c.fail("word too long");
  int letter = exp < 0 ? -gen : gen;
  for (size_t i = 0; i < count; ++i) out.push_back(letter);
}

Word parse_word_at(Cursor& c, int rank) {
  Word raw;
  if (c.peek() == '1') {
    ++c.pos;
    return {};
  }
  while (!c.done() && c.peek() != '|') parse_term(c, rank, raw);
  return reduce(raw);
}

}  // namespace

Word parse_word(const std::string& text, int rank) {
  Cursor c{text};
  Word w = parse_word_at(c, rank);
  if (!c.done()) c.fail("trailing input");
  return w;
}

FtaElement parse_element(const std::string& text, const Ambient& amb) {
  Cursor c{text};
  FtaElement g;
  g.w = parse_word_at(c, amb.free_rank);
  g.t = zero_vec(amb.abelian_rank);
  if (c.peek() == '|') {
    if (amb.abelian_rank == 0) c.fail("vector part in a plain free ambient");
    ++c.pos;
    if (c.peek() != '(') c.fail("expected '('");
    ++c.pos;
    for (int i = 0; i < amb.abelian_rank; ++i) {
      if (i) {
        if (c.peek() != ',') c.fail("expected ','");
        ++c.pos;
      }
      g.t[i] = c.read_int();
    }
    if (c.peek() != ')') c.fail("expected ')'");
    ++c.pos;
  }
  if (!c.done()) c.fail("trailing input");
  return g;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec vec_scale(const Int& k, const Vec& a) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = k * a[i];
  return out;
}

Vec zero_vec(int m) { return Vec(static_cast<size_t>(m), Int(0)); }

FtaElement fta_multiply(const FtaElement& a, const FtaElement& b) {
  return {multiply(a.w, b.w), vec_add(a.t, b.t)};
}

FtaElement fta_invert(const FtaElement& g) {
  return {invert(g.w), vec_scale(Int(-1), g.t)};
}

FtaElement fta_power(const FtaElement& g, long k) {
  return {power(g.w, k), vec_scale(Int(k), g.t)};
}

FtaElement fta_conjugate(const FtaElement& g, const FtaElement& c) {
  // vectors are central, so only the free part is affected
  return {reduce(multiply(invert(c.w), multiply(g.w, c.w))), g.t};
}

bool fta_is_identity(const FtaElement& g) {
  if (!g.w.empty()) return false;
  for (const Int& x : g.t)
    if (x != 0) return false;
  return true;
}

}  // namespace relorder
