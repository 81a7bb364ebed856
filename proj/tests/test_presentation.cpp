#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "semith/presentation.hpp"

using namespace semith;

static Presentation magma() {
  return parse_presentation("theory Magma\nunpointed\ngen mu : 2 -> 1\n");
}

static Presentation mudelta() {
  return parse_presentation("theory MuDelta\nunpointed\ngen mu : 2 -> 1\ngen delta : 1 -> 2\n");
}

TEST_CASE("presentation parsing") {
  Presentation p = magma();
  CHECK(p.name == "Magma");
  CHECK_FALSE(p.pointed);
  REQUIRE(p.generators.size() == 1);
  CHECK(p.generators[0].name == "mu");
  CHECK(p.generators[0].domain == 2);
  CHECK(p.generators[0].codomain == 1);
  CHECK(p.max_object == 4);  // widest arity + 2

  Presentation q = parse_presentation("theory PtMagma\npointed\ngen mu : 2 -> 1\n");
  CHECK(q.pointed);

  CHECK_THROWS_AS(parse_presentation("theory T\nunpointed\ngen mu : 2 -> 1\ngen mu : 3 -> 1\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("theory T\nunpointed\ngen p2_1 : 2 -> 1\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("theory T\nunpointed\ngen z : 0 -> 1\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("unpointed\ntheory T\n"), ParseError);

  // comments and maxobject
  Presentation r = parse_presentation("# c\ntheory T\nunpointed\nmaxobject 7\n");
  CHECK(r.max_object == 7);
  CHECK(r.generators.empty());
}

TEST_CASE("identity and composition of words") {
  Presentation p = magma();
  Word id2 = identity_word(p, 2);
  CHECK(id2.is_identity());
  CHECK(id2.dom == 2);
  CHECK(id2.cod == 2);
  CHECK_THROWS_AS(identity_word(p, 0), DomainError);

  Word proj = make_word(p, 2, {Letter::projection(2, 1)});
  CHECK(compose_words(p, proj, id2) == proj);
  CHECK(compose_words(p, identity_word(p, 1), proj) == proj);
  Word mu = make_word(p, 2, {Letter::generator(p.at("mu"))});
  CHECK(compose_words(p, mu, id2) == mu);
  CHECK_THROWS_AS(compose_words(p, mu, mu), DomainError);

  // p(1,1) is the identity on [1]
  Word p11 = make_word(p, 1, {Letter::projection(1, 1)});
  CHECK(p11.is_identity());
}

TEST_CASE("word composition is associative on random triples") {
  Presentation p = mudelta();
  std::mt19937_64 rng(42);
  std::vector<Word> pool;
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m)
      for (const Word& w : enumerate_words(p, n, m, 3)) pool.push_back(w);
  REQUIRE(pool.size() > 20);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  int done = 0;
  while (done < 1000) {
    const Word& f = pool[pick(rng)];
    const Word& g = pool[pick(rng)];
    const Word& h = pool[pick(rng)];
    if (f.cod != g.dom || g.cod != h.dom) continue;
    CHECK(compose_words(p, h, compose_words(p, g, f)) == compose_words(p, compose_words(p, h, g), f));
    ++done;
  }
}

TEST_CASE("word enumeration") {
  Presentation p = magma();
  auto ws = enumerate_words(p, 2, 1, 1);
  REQUIRE(ws.size() == 3);  // p(2,1), p(2,2), mu
  std::set<std::string> names;
  for (const Word& w : ws) names.insert(to_string(w));
  CHECK(names == std::set<std::string>{"p2_1", "p2_2", "mu"});

  // no generator leaves [1] in Magma
  auto loops = enumerate_words(p, 1, 1, 3);
  REQUIRE(loops.size() == 1);
  CHECK(loops[0].is_identity());

  // maxLen = 0 keeps only the identity
  auto none = enumerate_words(p, 3, 3, 0);
  REQUIRE(none.size() == 1);
  CHECK(none[0].is_identity());
  CHECK(enumerate_words(p, 3, 1, 0).empty());

  // monotone in the length bound, letters stay in the free generating set
  Presentation q = mudelta();
  for (int len = 0; len < 3; ++len) {
    auto small = enumerate_words(q, 2, 1, len);
    auto big = enumerate_words(q, 2, 1, len + 1);
    CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
  }
  for (const Word& w : enumerate_words(q, 2, 2, 3))
    for (const Letter& l : w.letters)
      CHECK((l.kind == Letter::Kind::projection || l.kind == Letter::Kind::generator));
}

TEST_CASE("pointed normal form") {
  Presentation p = parse_presentation("theory PtMagma\npointed\ngen mu : 2 -> 1\n");
  // iota factors as to_zero; from_zero
  Word iota2 = make_word(p, 2, {Letter::iota(2)});
  REQUIRE(iota2.letters.size() == 2);
  CHECK(iota2.letters[0].kind == Letter::Kind::to_zero);
  CHECK(iota2.letters[1].kind == Letter::Kind::from_zero);

  // any word through [0] collapses to the canonical pair: iota1 o mu = iota2
  Word via_zero = make_word(p, 2, {Letter::generator(p.at("mu")), Letter::iota(1)});
  CHECK(via_zero == iota2);
  CHECK(via_zero == make_word(p, 2, {Letter::to_zero(2), Letter::from_zero(1)}));

  // to_zero then from_zero through [0] at both ends
  Word tz = make_word(p, 2, {Letter::to_zero(2)});
  Word fz = make_word(p, 0, {Letter::from_zero(3)});
  Word both = compose_words(p, fz, tz);
  CHECK(both.dom == 2);
  CHECK(both.cod == 3);
  REQUIRE(both.letters.size() == 2);
  // and [0] -> [0] is the identity
  Word loop = compose_words(p, make_word(p, 3, {Letter::to_zero(3)}), fz);
  CHECK(loop.dom == 0);
  CHECK(loop.cod == 0);
  CHECK(loop.is_identity());

  // pointed enumeration includes the through-zero word exactly once
  auto ws = enumerate_words(p, 2, 1, 2);
  int through = 0;
  for (const Word& w : ws)
    if (!w.letters.empty() && w.letters[0].kind == Letter::Kind::to_zero) ++through;
  CHECK(through == 1);

  // unpointed theories reject pointed letters
  Presentation u = magma();
  CHECK_THROWS_AS(make_word(u, 2, {Letter::iota(2)}), DomainError);
}

TEST_CASE("word text round-trip") {
  Presentation p = mudelta();
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m)
      for (const Word& w : enumerate_words(p, n, m, 3)) CHECK(parse_word(p, to_string(w)) == w);
  CHECK(parse_word(p, "mu * delta").letters.size() == 2);
  CHECK(parse_word(p, "id3").is_identity());
}
