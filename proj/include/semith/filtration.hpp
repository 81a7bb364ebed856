#pragma once

#include <map>
#include <set>
#include <vector>

#include "semith/algebra.hpp"
#include "semith/completion.hpp"
#include "semith/presentation.hpp"
#include "semith/report.hpp"

namespace semith {

// Bounds for the bounded model of the corepresented completion diagram.
// max_nodes bounds every tuple component; lemma sweeps additionally
// restrict quantified tuples to a total node budget of max_nodes.
struct FiltBounds {
  int max_nodes = 7;
  int max_word_len = 4;
  int max_object = 0;        // 0: presentation default
  int max_level = 1;         // checks run for levels k <= max_level
  std::vector<int> sources = {1, 2};
};

struct NodeLess {
  bool operator()(const TreeNodePtr& a, const TreeNodePtr& b) const { return node_cmp(a, b) < 0; }
};
using NodeSet = std::set<TreeNodePtr, NodeLess>;

// The two filtrations of the diagram corepresented by [n], computed as
// generative closures inside the bounded tuple universe. The closure by
// single letters reaches exactly the true filtration stages intersected
// with the universe: along any word action the intermediate component
// sizes never exceed max(input, output), so no in-bound member is only
// reachable through an out-of-bound intermediate.
//
// Stage k is stored as its [1]-part plus the members that are not
// tuples over the previous [1]-part; tuples over part1[k-1] (the
// projection-closed stage k) are represented implicitly.
class FiltrationContext {
 public:
  FiltrationContext(const Presentation& p, int n, int k_max, const FiltBounds& b);

  struct Level {
    NodeSet part1;                          // trees t with (t) in the stage at [1]
    std::map<int, std::set<TreeTuple>> extras;  // stage members beyond the implicit tuples
  };

  const Presentation& pres;
  int n;
  FiltBounds bounds;
  int max_object;
  std::vector<int> mats;  // codomains where members are materialized
  std::vector<Level> levels;

  bool materialized(int m) const;
  // membership in the D-closed stage k
  bool in_d(int k, const TreeTuple& t) const;
  // membership in the projection-closed stage k (k >= 1); stage 0 is in_d(0,...)
  bool in_s(int k, const TreeTuple& t) const;
  long long d_count(int k, int m) const;
  long long s_count(int k, int m) const;

  // words out of [m] whose first letter is a generator, up to the word bound
  std::vector<Word> action_words(int m) const;
};

struct FiltrationLevelPair {
  int k;
  std::map<int, std::vector<TreeTuple>> d_members;  // materialized codomains only
  std::map<int, std::vector<TreeTuple>> s_members;
  std::map<int, long long> d_counts;  // every codomain <= max_object
  std::map<int, long long> s_counts;
};

std::vector<FiltrationLevelPair> generate_filtration(const Presentation& p, int n, int k_max,
                                                     const FiltBounds& b);

// The four unique-factorization sweeps. Each quantifies over words whose
// decomposition starts with a non-projection generator and over the
// bounded tuple universe; membership tests are exact inside the bounds
// and boundary cases are counted as inconclusive rather than decided.
CheckReport check_L1(const Presentation& p, const FiltBounds& b, TupleComposer composer = nullptr);
CheckReport check_L2(const Presentation& p, const FiltBounds& b);
CheckReport check_L3(const Presentation& p, const FiltBounds& b);
CheckReport check_L4(const Presentation& p, const FiltBounds& b);

// phi is injective on bounded words; the embedding property the
// filtrations rest on.
CheckReport check_phi_injective(const Presentation& p, const FiltBounds& b);

// A projection-natural map out of stage k+1 of the projection-closed
// filtration, given by its values on the [1]-part (tuples take the
// componentwise values).
struct PMapOnStage {
  std::map<TreeNodePtr, std::vector<int>, NodeLess> values;  // tree -> carrier element (singleton)
};

struct ExtendOutcome {
  CheckReport report;
  // extension values on the [1]-part of stage k+1 (valid when report passes)
  std::map<TreeNodePtr, int, NodeLess> values;
};

// Extends a projection-natural map on stage k+1 of the s-filtration to a
// full diagram map on stage k+1 of the D-filtration, via the unique
// factorization of every new member. Rejects inputs that break the
// pullback condition (projection compatibility, or naturality on stage k).
ExtendOutcome extend_p_map(const FiltrationContext& ctx, const StrictAlgebra& a, int k,
                           const std::map<TreeTuple, std::vector<int>>& eps);

struct PullbackResult {
  CheckReport report;
  long long hom_upper = 0;     // diagram maps out of the D-stage k+1
  long long pullback_card = 0; // compatible pairs in the set pullback
};

// Verifies that restriction along the two inclusions exhibits
// Hom(D-stage k+1, X) as the set pullback of
//   Hom(D-stage k, X) -> HomP(stage k, X) <- HomP(s-stage k+1, X):
// every compatible pair extends uniquely and the extension restricts back.
PullbackResult check_pullback(const Presentation& p, int n, int k, const StrictAlgebra& a,
                              const FiltBounds& b);

}  // namespace semith
