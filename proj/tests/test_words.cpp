#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "racg/words.hpp"
#include "testutil.hpp"

using namespace racg;

namespace {
RacgContext path3() {
  return RacgContext(Graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
}
}  // namespace

TEST_CASE("normal form basics") {
  RacgContext ctx = path3();
  CHECK(ctx.normal_form({}).empty());
  CHECK(ctx.normal_form({0, 0}).empty());
  CHECK(ctx.normal_form({2, 0, 0}) == Word{2});
  // a and b commute, so ba -> ab
  CHECK(ctx.normal_form({1, 0}) == Word{0, 1});
  // a and c do not commute
  CHECK(ctx.normal_form({2, 0}) == Word{2, 0});
  // deletion across a commuting letter: a b a with [a,b]=1 -> b
  CHECK(ctx.normal_form({0, 1, 0}) == Word{1});
  CHECK(ctx.is_identity({0, 1, 1, 0}));
  // normal forms are idempotent
  Word w{2, 1, 0, 1, 2, 0};
  CHECK(ctx.normal_form(ctx.normal_form(w)) == ctx.normal_form(w));
}

TEST_CASE("normal form agrees with the rewrite-closure oracle") {
  std::mt19937 rng(99);
  for (int n = 2; n <= 4; ++n)
    for (const Graph& g : testutil::graph_classes(n, false)) {
      RacgContext ctx(g);
      std::uniform_int_distribution<int> letter(0, n - 1);
      for (int len = 0; len <= 6; ++len)
        for (int trial = 0; trial < 20; ++trial) {
          Word w(len);
          for (int& x : w) x = letter(rng);
          CHECK(ctx.normal_form(w) == testutil::oracle_normal_form(g, w));
        }
    }
}

TEST_CASE("involutions and commutation") {
  RacgContext ctx = path3();
  CHECK(ctx.is_involution({0}));
  CHECK(ctx.is_involution({0, 1}));       // commuting product
  CHECK_FALSE(ctx.is_involution({0, 2})); // infinite order
  CHECK_FALSE(ctx.is_involution({}));     // identity excluded
  CHECK(ctx.commutes({0}, {1}));
  CHECK_FALSE(ctx.commutes({0}, {2}));
  CHECK(ctx.commutes({0}, {0, 1}));        // a commutes with ab
  CHECK_FALSE(ctx.commutes({0}, {2, 0, 2})); // but not with cac
}

TEST_CASE("involution class representatives") {
  RacgContext ctx = path3();
  // conjugates of clique products come back to the clique
  Bitset ab(3);
  ab.set(0); ab.set(1);
  CHECK(ctx.involution_class_rep({2, 0, 1, 2}) == ab);
  Bitset just_a(3);
  just_a.set(0);
  CHECK(ctx.involution_class_rep({2, 1, 0, 1, 2}) == just_a);
  CHECK_THROWS_AS(ctx.involution_class_rep({0, 2}), Error);
}

TEST_CASE("conjugates of clique products: rep and ab-image shadow") {
  std::mt19937 rng(4242);
  for (int n = 2; n <= 4; ++n)
    for (const Graph& g : testutil::graph_classes(n, true)) {
      RacgContext ctx(g);
      std::uniform_int_distribution<int> letter(0, n - 1);
      for (const Bitset& c : g.all_cliques()) {
        Word product;
        for (auto v = c.find_first(); v != Bitset::npos; v = c.find_next(v))
          product.push_back(static_cast<int>(v));
        for (int trial = 0; trial < 5; ++trial) {
          Word conj;
          int glen = static_cast<int>(rng() % 4);
          for (int i = 0; i < glen; ++i) conj.push_back(letter(rng));
          Word w = conj;
          w.insert(w.end(), product.begin(), product.end());
          for (auto it = conj.rbegin(); it != conj.rend(); ++it) w.push_back(*it);
          CHECK(ctx.is_involution(w));
          CHECK(ctx.involution_class_rep(w) == c);
        }
      }
    }
}

TEST_CASE("parsing and printing") {
  RacgContext ctx = path3();
  CHECK(ctx.parse_word("a b c") == Word{0, 1, 2});
  CHECK(ctx.parse_word("") == Word{});
  CHECK(ctx.word_text({2, 0}) == "c a");
  CHECK_THROWS_AS(ctx.parse_word("a q"), Error);
}
