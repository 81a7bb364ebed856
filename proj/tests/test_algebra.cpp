#include <random>

#include "doctest.h"
#include "semith/algebra.hpp"

using namespace semith;

static Presentation magma() {
  return parse_presentation("theory Magma\nunpointed\ngen mu : 2 -> 1\n");
}

static const char* kXor =
    "algebra Xor over Magma\n"
    "carrier 0 1\n"
    "mu (0,0) = (0)\n"
    "mu (0,1) = (1)\n"
    "mu (1,0) = (1)\n"
    "mu (1,1) = (0)\n";

TEST_CASE("algebra parsing") {
  Presentation p = magma();
  StrictAlgebra a = parse_algebra(p, kXor);
  CHECK(a.size() == 2);
  CHECK(a.apply("mu", {1, 1}) == std::vector<int>{0});
  CHECK(a.apply("mu", {0, 1}) == std::vector<int>{1});

  CHECK_THROWS_AS(parse_algebra(p, "algebra A over Magma\ncarrier 0 1\nmu (0,0) = (0)\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra(p, "algebra A over Other\ncarrier 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra(p, std::string(kXor) + "mu (1,1) = (1)\n"), ParseError);

  // carrier of size one is the terminal algebra
  StrictAlgebra one = parse_algebra(p, "algebra One over Magma\ncarrier a\nmu (a,a) = (a)\n");
  CHECK(eval_tree(one, p, parse_tree(p, "mu_1(p2_1,p2_2)"), {0, 0}) == 0);
}

TEST_CASE("tree evaluation in the xor algebra") {
  Presentation p = magma();
  StrictAlgebra a = parse_algebra(p, kXor);
  CHECK(eval_tree(a, p, parse_tree(p, "mu_1(p2_1,p2_2)"), {1, 1}) == 0);
  CHECK(eval_tree(a, p, parse_tree(p, "p3_2"), {0, 1, 0}) == 1);
  // XOR(XOR(1,1),1) = 1
  CHECK(eval_tree(a, p, parse_tree(p, "mu_1(mu_1(p3_1,p3_2),p3_3)"), {1, 1, 1}) == 1);

  // identity tuple evaluates to the input
  for (const auto& x : all_inputs(2, 3)) CHECK(eval_tuple(a, p, identity_tuple(p, 3), x) == x);

  CHECK_THROWS_AS(eval_tree(a, p, parse_tree(p, "p2_1"), {0, 1, 1}), DomainError);
}

TEST_CASE("phi evaluation matches direct word evaluation") {
  Presentation p = magma();
  StrictAlgebra a = parse_algebra(p, kXor);
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m)
      for (const Word& w : enumerate_words(p, n, m, 3))
        for (const auto& x : all_inputs(a.size(), n)) CHECK(eval_tuple(a, p, phi(p, w), x) == eval_word(a, p, w, x));
}

TEST_CASE("roundtrip report") {
  Presentation p = magma();
  StrictAlgebra a = parse_algebra(p, kXor);
  RoundtripBounds b;
  b.max_nodes = 5;
  b.max_word_len = 3;
  b.max_object = 3;
  CHECK(check_roundtrip(a, p, b).verdict() == "pass");

  // no equations are imposed by a free theory: a random table passes too
  StrictAlgebra r3 = random_algebra(p, 3, 99);
  CHECK(check_roundtrip(r3, p, b).verdict() == "pass");

  // an evaluator that swaps the argument order fails the sweep
  TreeEvaluator bad = [&](const Tree& t, const std::vector<int>& x) {
    std::vector<int> rx(x.rbegin(), x.rend());
    return eval_tree(a, p, t, rx);
  };
  CHECK(check_roundtrip(a, p, b, bad).verdict() == "fail");
}

TEST_CASE("pointed evaluation hits the basepoint") {
  Presentation p = parse_presentation("theory PtMagma\npointed\ngen mu : 2 -> 1\n");
  StrictAlgebra a = parse_algebra(p,
                                  "algebra PXor over PtMagma\n"
                                  "carrier 0 1\n"
                                  "point 0\n"
                                  "mu (0,0) = (0)\nmu (0,1) = (1)\nmu (1,0) = (1)\nmu (1,1) = (0)\n");
  CHECK(a.basepoint == 0);
  for (const auto& x : all_inputs(2, 2)) CHECK(eval_tree(a, p, parse_tree(p, "iota2"), x) == 0);
  // any tree whose canonical form is the iota leaf evaluates to the basepoint
  Tree collapsing{2, gen_node("mu", 1, {iota_leaf(), iota_leaf()})};
  for (const auto& x : all_inputs(2, 2)) CHECK(eval_tree(a, p, collapsing, x) == 0);
  // through-zero words too
  Word iw = make_word(p, 2, {Letter::iota(2)});
  CHECK(eval_word(a, p, iw, {1, 1}) == std::vector<int>{0});
  CHECK(eval_tuple(a, p, phi(p, iw), {1, 1}) == std::vector<int>{0});

  CHECK_THROWS_AS(parse_algebra(p, "algebra A over PtMagma\ncarrier 0\nmu (0,0) = (0)\n"), ParseError);
}

TEST_CASE("all_algebras enumerates every table") {
  Presentation p = magma();
  auto algs = all_algebras(p, 2);
  CHECK(algs.size() == 16);  // 2^(2*2) mu tables
  auto one = all_algebras(p, 1);
  CHECK(one.size() == 1);
}
