#include "racg/words.hpp"

#include <sstream>

namespace racg {

Word RacgContext::reduce(Word w) const {
  // Deletion condition to a fixed point: cancel a pair of equal letters
  // whenever everything between commutes with them.
  bool changed = true;
  while (changed) {
    Budget::check();
    changed = false;
    for (size_t i = 0; i < w.size() && !changed; ++i) {
      for (size_t j = i + 1; j < w.size(); ++j) {
        if (w[j] == w[i]) {
          bool clear = true;
          for (size_t m = i + 1; m < j && clear; ++m)
            if (!commuting(w[m], w[i])) clear = false;
          if (clear) {
            w.erase(w.begin() + j);
            w.erase(w.begin() + i);
            changed = true;
          }
          break;  // nearest equal letter blocks or cancels
        }
        if (!commuting(w[j], w[i])) break;
      }
    }
  }
  return w;
}

Word RacgContext::normal_form(const Word& w) const {
  for (int l : w)
    if (l < 0 || l >= graph_.size())
      throw Error(ErrorCode::Validation, "word letter out of range");
  Word rest = reduce(w);
  Word out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    // A position is available when every earlier letter commutes with it;
    // take the least available letter.
    size_t best = 0;
    for (size_t p = 1; p < rest.size(); ++p) {
      bool avail = true;
      for (size_t q = 0; q < p && avail; ++q)
        if (!commuting(rest[q], rest[p])) avail = false;
      if (avail && rest[p] < rest[best]) best = p;
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + best);
  }
  return out;
}

bool RacgContext::is_involution(const Word& w) const {
  Word nf = normal_form(w);
  if (nf.empty()) return false;
  Word sq = nf;
  sq.insert(sq.end(), nf.begin(), nf.end());
  return is_identity(sq);
}

bool RacgContext::commutes(const Word& u, const Word& v) const {
  Word c = u;
  c.insert(c.end(), v.begin(), v.end());
  c.insert(c.end(), u.rbegin(), u.rend());
  c.insert(c.end(), v.rbegin(), v.rend());
  return is_identity(c);
}

Bitset RacgContext::involution_class_rep(const Word& w) const {
  if (!is_involution(w)) throw Error(ErrorCode::Validation, "word is not an involution");
  Bitset support(graph_.size());
  for (int l : w) support.flip(l);
  if (!graph_.is_clique(support))
    throw Error(ErrorCode::Internal, "involution support is not a clique");
  return support;
}

Word RacgContext::parse_word(const std::string& text) const {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) w.push_back(graph_.index_of(tok));
  return w;
}

std::string RacgContext::word_text(const Word& w) const {
  std::string out;
  for (int l : w) {
    if (!out.empty()) out += ' ';
    out += graph_.name_of(l);
  }
  return out;
}

}  // namespace racg
