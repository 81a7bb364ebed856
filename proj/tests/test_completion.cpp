#include <random>
#include <set>

#include "doctest.h"
#include "semith/algebra.hpp"
#include "semith/completion.hpp"

using namespace semith;

static Presentation magma() {
  return parse_presentation("theory Magma\nunpointed\ngen mu : 2 -> 1\n");
}

static Presentation ptmagma() {
  return parse_presentation("theory PtMagma\npointed\ngen mu : 2 -> 1\n");
}

static Presentation mudelta() {
  return parse_presentation("theory MuDelta\nunpointed\ngen mu : 2 -> 1\ngen delta : 1 -> 2\n");
}

// reference count of Magma trees with exactly t mu-nodes: Catalan(t) * 2^(t+1)
static long long catalan(int t) {
  long long c = 1;
  for (int i = 0; i < t; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

TEST_CASE("phi on letters and identities") {
  Presentation p = magma();
  TreeTuple proj = phi(p, make_word(p, 3, {Letter::projection(3, 2)}));
  CHECK(to_string(proj) == "(p3_2)");

  TreeTuple mu = phi(p, make_word(p, 2, {Letter::generator(p.at("mu"))}));
  CHECK(to_string(mu) == "(mu_1(p2_1,p2_2))");

  TreeTuple id2 = phi(p, identity_word(p, 2));
  CHECK(id2 == identity_tuple(p, 2));
  CHECK(to_string(id2) == "(p2_1; p2_2)");

  // a two-output generator maps to the tuple over the projection row
  Presentation q = mudelta();
  TreeTuple delta = phi(q, make_word(q, 1, {Letter::generator(q.at("delta"))}));
  CHECK(to_string(delta) == "(delta_1(p1_1); delta_2(p1_1))");
}

TEST_CASE("grafting composition") {
  Presentation p = magma();
  TreeTuple mu = phi(p, make_word(p, 2, {Letter::generator(p.at("mu"))}));
  TreeTuple picks = parse_tuple(p, "(p3_1; p3_3)");
  CHECK(to_string(compose_trees(p, mu, picks)) == "(mu_1(p3_1,p3_3))");

  // unit laws
  CHECK(compose_trees(p, identity_tuple(p, 1), mu) == mu);
  CHECK(compose_trees(p, mu, identity_tuple(p, 2)) == mu);
  TreeTuple id3 = identity_tuple(p, 3);
  CHECK(compose_trees(p, id3, id3) == id3);

  CHECK_THROWS_AS(compose_trees(p, mu, mu), DomainError);
}

TEST_CASE("functoriality of phi") {
  for (const Presentation& p : {magma(), mudelta()}) {
    for (int n = 1; n <= 3; ++n) {
      for (int m = 1; m <= 3; ++m) {
        for (const Word& f : enumerate_words(p, n, m, 3)) {
          for (int k = 1; k <= 3; ++k) {
            for (const Word& g : enumerate_words(p, m, k, 3)) {
              CHECK(phi(p, compose_words(p, g, f)) == compose_trees(p, phi(p, g), phi(p, f)));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("depth") {
  Presentation p = magma();
  CHECK(depth(parse_tree(p, "p4_2")) == 1);
  CHECK(depth(parse_tree(p, "mu_1(p2_1,p2_2)")) == 2);
  CHECK(depth(parse_tuple(p, "(p2_1; mu_1(p2_1,p2_2))")) == 2);
  CHECK(depth(parse_tree(p, "mu_1(mu_1(p2_1,p2_2),p2_2)")) == 3);
  // subadditive under grafting
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    TreeTuple t = random_tuple(p, 2, 2, 6, rng);
    TreeTuple s = random_tuple(p, 2, 1, 6, rng);
    CHECK(depth(compose_trees(p, s, t)) <= depth(s) + depth(t));
  }
}

TEST_CASE("tree enumeration with counting oracle") {
  Presentation p = magma();
  auto small = enumerate_trees(p, 2, 1);
  REQUIRE(small.size() == 2);
  CHECK(to_string(small[0]) == "p2_1");
  CHECK(to_string(small[1]) == "p2_2");

  // trees with exactly t mu-nodes have 2t+1 term nodes
  auto trees = enumerate_trees(p, 2, 9);
  for (int t = 0; t <= 4; ++t) {
    long long count = 0;
    for (const Tree& tr : trees)
      if (tr.node->node_count == 2 * t + 1) ++count;
    long long expected = catalan(t) * (1LL << (t + 1));
    CHECK(count == expected);
  }
  // frozen: 2, 4, 16, 80, 448
  CHECK(catalan(0) * 2 == 2);
  CHECK(catalan(1) * 4 == 4);
  CHECK(catalan(2) * 8 == 16);
  CHECK(catalan(3) * 16 == 80);
  CHECK(catalan(4) * 32 == 448);

  // enumeration is duplicate-free and canonically ordered
  for (std::size_t i = 1; i < trees.size(); ++i) CHECK(trees[i - 1] < trees[i]);
}

TEST_CASE("pointed canonical form") {
  Presentation p = ptmagma();
  CHECK(to_string(canonicalize_pointed(p, parse_tree(p, "mu_1(iota2,iota2)"))) == "iota2");
  CHECK(to_string(canonicalize_pointed(p, parse_tree(p, "p2_1"))) == "p2_1");
  // inner collapse only; the outer node keeps its projection leaf
  Tree mixed{2, gen_node("mu", 1, {proj_leaf(1), gen_node("mu", 2, {iota_leaf(), iota_leaf()})})};
  CHECK(to_string(canonicalize_pointed(p, mixed)) == "mu_1(p2_1,iota2)");

  CHECK_THROWS_AS(canonicalize_pointed(magma(), Tree{2, proj_leaf(1)}), DomainError);

  // idempotent on everything enumerated
  for (const Tree& t : enumerate_trees(p, 2, 5)) {
    Tree c = canonicalize_pointed(p, t);
    CHECK(c == t);  // enumeration emits canonical forms only
    CHECK(canonicalize_pointed(p, c) == c);
  }

  // the collapsed tree never appears in enumeration
  for (const Tree& t : enumerate_trees(p, 2, 3))
    CHECK(to_string(t) != "mu_1(iota2,iota2)");
}

// applies one random expansion of an iota leaf into an all-iota tree, or
// one random collapse of an all-iota subterm; both are relation moves
static TreeNodePtr random_relation_move(const Presentation& p, const TreeNodePtr& n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  if (n->kind == TreeNode::Kind::iota && coin(rng)) {
    // expand into a small all-iota tree
    const GeneratorDecl& g = p.generators[std::uniform_int_distribution<std::size_t>(
        0, p.generators.size() - 1)(rng)];
    std::vector<TreeNodePtr> kids(static_cast<std::size_t>(g.domain), iota_leaf());
    return gen_node(g.name, std::uniform_int_distribution<int>(1, g.codomain)(rng), std::move(kids));
  }
  if (n->kind == TreeNode::Kind::gen) {
    bool all_iota = true;
    for (const auto& c : n->children) all_iota &= (c->kind == TreeNode::Kind::iota);
    if (all_iota && coin(rng)) return iota_leaf();
    std::vector<TreeNodePtr> kids = n->children;
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, kids.size() - 1)(rng);
    kids[i] = random_relation_move(p, kids[i], rng);
    return gen_node(n->gen, n->comp, std::move(kids));
  }
  return n;
}

TEST_CASE("pointed relation moves do not change the canonical form") {
  Presentation p = ptmagma();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    Tree t = random_tree(p, 2, 7, rng);
    TreeNodePtr moved = t.node;
    int moves = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int j = 0; j < moves; ++j) moved = random_relation_move(p, moved, rng);
    CHECK(node_eq(canonicalize_pointed_node(moved), canonicalize_pointed_node(t.node)));
  }
}

TEST_CASE("pointed grafting relabels and collapses") {
  Presentation p = ptmagma();
  // grafting an all-iota tuple into an all-iota-leaf component collapses
  TreeTuple s{2, {gen_node("mu", 1, {iota_leaf(), iota_leaf()})}};  // before canonicalization
  TreeTuple all_iota{3, {iota_leaf(), iota_leaf()}};
  TreeTuple r = compose_trees(p, s, all_iota);
  CHECK(to_string(r) == "(iota3)");

  // composites through [0] use the empty tuple and the all-iota tuple
  Word tz = make_word(p, 2, {Letter::to_zero(2)});
  Word fz = make_word(p, 0, {Letter::from_zero(3)});
  TreeTuple through = compose_trees(p, phi(p, fz), phi(p, tz));
  CHECK(through.source == 2);
  CHECK(through.target() == 3);
  CHECK(to_string(through) == "(iota2; iota2; iota2)");
  // phi of iota_n is the single-iota-leaf tree
  CHECK(to_string(phi(p, make_word(p, 2, {Letter::iota(2)}))) == "(iota2)");
  // [n] -> [0] is the empty tuple
  CHECK(phi(p, tz).target() == 0);
  // source [0]: the unique tree is the iota leaf
  auto from_zero_trees = enumerate_trees(p, 0, 5);
  REQUIRE(from_zero_trees.size() == 1);
  CHECK(to_string(from_zero_trees[0]) == "iota0");
}

TEST_CASE("grafting associativity exhaustive at small bounds plus random larger") {
  for (const Presentation& p : {magma(), mudelta()}) {
    std::map<std::pair<int, int>, std::vector<TreeTuple>> tuples;
    for (int n = 1; n <= 2; ++n)
      for (int m = 1; m <= 2; ++m) tuples[{n, m}] = enumerate_tuples_total(p, n, m, 4);
    long long cases = 0;
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b)
        for (int c = 1; c <= 2; ++c)
          for (int d = 1; d <= 2; ++d)
            for (const TreeTuple& f : tuples[{a, b}])
              for (const TreeTuple& g : tuples[{b, c}])
                for (const TreeTuple& h : tuples[{c, d}]) {
                  ++cases;
                  REQUIRE(compose_trees(p, h, compose_trees(p, g, f)) ==
                          compose_trees(p, compose_trees(p, h, g), f));
                }
    CHECK(cases > 1000);
  }
  Presentation p = mudelta();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> obj(1, 4);
  for (int i = 0; i < 1000; ++i) {
    int a = obj(rng), b = obj(rng), c = obj(rng), d = obj(rng);
    TreeTuple f = random_tuple(p, a, b, 9, rng);
    TreeTuple g = random_tuple(p, b, c, 9, rng);
    TreeTuple h = random_tuple(p, c, d, 9, rng);
    REQUIRE(compose_trees(p, h, compose_trees(p, g, f)) == compose_trees(p, compose_trees(p, h, g), f));
    REQUIRE(compose_trees(p, f, identity_tuple(p, a)) == f);
    REQUIRE(compose_trees(p, identity_tuple(p, b), f) == f);
  }
}

TEST_CASE("projection law over enumerated tuples") {
  Presentation p = magma();
  for (int n = 1; n <= 3; ++n) {
    for (const TreeTuple& t : enumerate_tuples_total(p, 2, n, 5)) {
      for (int i = 1; i <= n; ++i) {
        TreeTuple lhs = compose_trees(p, phi_letter(p, Letter::projection(n, i)), t);
        REQUIRE(lhs.target() == 1);
        REQUIRE(node_eq(lhs.comps[0], t.comps[static_cast<std::size_t>(i) - 1]));
      }
    }
  }
}

TEST_CASE("theory axioms report") {
  Presentation p = magma();
  AxiomBounds b;
  b.max_nodes = 4;
  b.max_object = 3;
  CheckReport r = check_theory_axioms(p, b);
  CHECK(r.verdict() == "pass");
  CHECK(r.cases > 100);

  // the empty presentation is the projections-only theory
  Presentation empty = parse_presentation("theory P\nunpointed\nmaxobject 3\n");
  CheckReport re = check_theory_axioms(empty, b);
  CHECK(re.verdict() == "pass");
  auto trees = enumerate_trees(empty, 3, 5);
  REQUIRE(trees.size() == 3);  // projection leaves only
  for (const Tree& t : trees) CHECK(t.node->kind == TreeNode::Kind::proj);

  // a corrupted composition that reverses children is caught
  TupleComposer bad = [&p](const TreeTuple& s, const TreeTuple& t) {
    TreeTuple rev = t;
    std::reverse(rev.comps.begin(), rev.comps.end());
    return compose_trees(p, s, rev);
  };
  CheckReport rb = check_theory_axioms(p, b, bad);
  CHECK(rb.verdict() == "fail");
}

TEST_CASE("term syntax round-trip and validation") {
  Presentation p = mudelta();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    TreeTuple t = random_tuple(p, 3, std::uniform_int_distribution<int>(1, 3)(rng), 6, rng);
    CHECK(parse_tuple(p, to_string(t)) == t);
  }
  CHECK_THROWS_AS(parse_tree(p, "p2_3"), DomainError);        // projection out of range
  CHECK_THROWS_AS(parse_tree(p, "mu_1(p2_1)"), DomainError);  // wrong child count
  CHECK_THROWS_AS(parse_tree(p, "nu_1(p2_1,p2_2)"), DomainError);
  CHECK_THROWS_AS(parse_tuple(p, "(p2_1; p3_1)"), DomainError);  // sources disagree
  CHECK_THROWS_AS(parse_tree(magma(), "iota2"), DomainError);    // unpointed
}

TEST_CASE("dot export shape") {
  Presentation p = magma();
  std::string dot = to_dot(as_tuple(parse_tree(p, "p2_1")));
  // a single leaf: two vertices, one labeled edge
  CHECK(dot.find("label=\"p2_1\"") != std::string::npos);
  CHECK(dot.find("digraph T1") != std::string::npos);

  std::string mu_dot = to_dot(phi(p, make_word(p, 2, {Letter::generator(p.at("mu"))})));
  // 4 vertices: root, mu vertex, two leaf tips
  CHECK(std::count(mu_dot.begin(), mu_dot.end(), ';') >= 7);
  CHECK(mu_dot.find("label=\"mu_1\"") != std::string::npos);
  CHECK(mu_dot.find("label=\"p2_1\"") != std::string::npos);
  CHECK(mu_dot.find("label=\"p2_2\"") != std::string::npos);

  std::string pair_dot = to_dot(identity_tuple(p, 2));
  CHECK(pair_dot.find("digraph T1") != std::string::npos);
  CHECK(pair_dot.find("digraph T2") != std::string::npos);
}
