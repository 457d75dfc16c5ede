/* oracle.cpp */

#include "relorder/oracle.hpp"

#include <utility>

namespace relorder {

std::vector<Word> ball_free(int rank, int radius) {
  std::vector<Word> out{Word{}};
  size_t level_start = 0;
  for (int len = 1; len <= radius; ++len) {
    size_t level_end = out.size();
    for (size_t i = level_start; i < level_end; ++i)
      for (int x : signed_letters(rank)) {
        Word w = out[i];
        if (!w.empty() && w.back() == -x) continue;
        w.push_back(x);
        out.push_back(std::move(w));
      }
    level_start = level_end;
  }
  return out;
}

long oracle_order(const Subgroup& h, const Word& w, const Word& u) {
  // the walk of successive powers moves along a partial function on the
  // vertices, so any hit shows up within size() steps
  long cap = h.aut.size();
  for (long r = 1; r <= cap; ++r)
    if (membership(h, power(w, r), u)) return r;
  return 0;
}

long fta_oracle_order(const FtaSubgroup& h, const FtaElement& g) {
  long cap = fta_spectrum_bound(h);
  for (long r = 1; r <= cap; ++r)
    if (fta_membership(h, fta_power(g, r))) return r;
  return 0;
}

namespace {

std::vector<Vec> box_points(int m, long box) {
  std::vector<Vec> out{Vec{}};
  for (int i = 0; i < m; ++i) {
    std::vector<Vec> next;
    for (const Vec& v : out)
      for (long x = -box; x <= box; ++x) {
        Vec nv = v;
        nv.push_back(Int(x));
        next.push_back(std::move(nv));
      }
    out = std::move(next);
  }
  return out;
}

void note(VerifyReport& rep, const std::string& line) {
  if (rep.details.size() < 8) rep.details.push_back(line);
}

}  // namespace

VerifyReport verify_description(const Subgroup& h, const Word& u,
                                const CosetUnionDescription& d, int ball_radius,
                                int conj_radius) {
  int rank = h.ambient_rank();
  std::vector<Word> conjs;
  for (const Word& c : ball_free(rank, conj_radius))
    if (membership(d.conjugator, c)) conjs.push_back(c);
  VerifyReport rep;
  for (const Word& g : ball_free(rank, ball_radius)) {
    ++rep.checked;
    bool truth = oracle_order(h, g, u) == d.label;
    if (truth) ++rep.matching;
    int hits = 0;
    for (const DescriptionPart& part : d.parts) {
      for (const Word& c : conjs) {
        Word moved = multiply(multiply(c, g), invert(c));
        if (membership(part.sub, multiply(moved, invert(part.rep)))) {
          ++hits;
          break;
        }
      }
    }
    if (hits > 0) ++rep.in_set;
    if (hits > 1) {
      ++rep.counterexamples;
      note(rep, "overlap at " + format_word(g, rank));
    }
    if (hits > 0 && !truth) {
      ++rep.counterexamples;
      note(rep, "wrong order at " + format_word(g, rank));
    }
    if (hits == 0 && truth) {
      ++rep.inconclusive;
      note(rep, "unreached " + format_word(g, rank));
    }
  }
  return rep;
}

VerifyReport verify_fta_description(const FtaSubgroup& h, const FtaDecomposition& d,
                                    int ball_radius, long box, int conj_radius) {
  const Ambient& amb = h.ambient;
  std::vector<Word> conjs;
  for (const Word& c : ball_free(amb.free_rank, conj_radius))
    if (membership(d.conjugator.free_part, c)) conjs.push_back(c);
  std::vector<Vec> vecs = box_points(amb.abelian_rank, box);
  VerifyReport rep;
  for (const Word& w : ball_free(amb.free_rank, ball_radius))
    for (const Vec& t : vecs) {
      FtaElement g{w, t};
      ++rep.checked;
      bool truth = fta_oracle_order(h, g) == d.label;
      if (truth) ++rep.matching;
      int hits = 0;
      for (const FtaPart& part : d.parts) {
        for (const Word& c : conjs) {
          FtaElement moved{multiply(multiply(c, g.w), invert(c)), g.t};
          if (fta_membership(part.sub, fta_multiply(moved, fta_invert(part.rep)))) {
            ++hits;
            break;
          }
        }
      }
      if (hits > 0) ++rep.in_set;
      if (hits > 1) {
        ++rep.counterexamples;
        note(rep, "overlap at " + format_element(g, amb));
      }
      if (hits > 0 && !truth) {
        ++rep.counterexamples;
        note(rep, "wrong order at " + format_element(g, amb));
      }
      if (hits == 0 && truth) {
        ++rep.inconclusive;
        note(rep, "unreached " + format_element(g, amb));
      }
    }
  return rep;
}

}  // namespace relorder
