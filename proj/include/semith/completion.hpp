#pragma once

#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "semith/presentation.hpp"
#include "semith/report.hpp"

namespace semith {

struct TreeNode;
using TreeNodePtr = std::shared_ptr<const TreeNode>;

// A term node. Projection and iota leaves are arity-free: the component
// index k is stored here, the source arity lives on the enclosing
// Tree/TreeTuple, so grafting relabels leaves for free.
struct TreeNode {
  enum class Kind { proj, iota, gen };
  Kind kind = Kind::proj;
  int comp = 0;                       // proj: k; gen: output component
  std::string gen;                    // gen only
  std::vector<TreeNodePtr> children;  // gen only, one per input of the generator
  int node_count = 1;
  int height = 1;  // edges on the longest directed path
  std::size_t hash = 0;
};

TreeNodePtr proj_leaf(int k);
TreeNodePtr iota_leaf();
TreeNodePtr gen_node(const std::string& gen, int comp, std::vector<TreeNodePtr> children);

bool node_eq(const TreeNodePtr& a, const TreeNodePtr& b);
// canonical order: leaves before nodes, then (generator name, component, children)
int node_cmp(const TreeNodePtr& a, const TreeNodePtr& b);

// A morphism [source] -> [1] of the completion.
struct Tree {
  int source = 1;
  TreeNodePtr node;
};

// A morphism [source] -> [target] of the completion; target = comps.size().
// The empty tuple with source n is the unique map [n] -> [0] (pointed).
struct TreeTuple {
  int source = 1;
  std::vector<TreeNodePtr> comps;
  int target() const { return static_cast<int>(comps.size()); }
  Tree component(int i) const { return Tree{source, comps.at(static_cast<std::size_t>(i) - 1)}; }
};

bool operator==(const Tree& a, const Tree& b);
bool operator<(const Tree& a, const Tree& b);
bool operator==(const TreeTuple& a, const TreeTuple& b);
bool operator!=(const TreeTuple& a, const TreeTuple& b);
bool operator<(const TreeTuple& a, const TreeTuple& b);

std::size_t tuple_hash(const TreeTuple& t);

int depth(const Tree& t);
int depth(const TreeTuple& t);  // max over components, 0 for the empty tuple
int node_total(const TreeTuple& t);

TreeTuple identity_tuple(const Presentation& p, int n);
Tree as_tree(const TreeTuple& t);           // requires target == 1
TreeTuple as_tuple(const Tree& t);

// The completion functor on letters and words. Generators map to the
// tuple of single-node trees over the full projection row; projections
// to projection leaves; iota (pointed) to the one-iota-leaf tree.
TreeTuple phi_letter(const Presentation& p, const Letter& l);
TreeTuple phi(const Presentation& p, const Word& w);

// Composition by grafting: substitutes t's components for s's projection
// leaves. Pointed results are put in iota-canonical form.
TreeTuple compose_trees(const Presentation& p, const TreeTuple& s, const TreeTuple& t);

// Collapses every maximal all-iota subterm to a single iota leaf.
// Idempotent; canonical forms represent the pointed equivalence classes.
TreeNodePtr canonicalize_pointed_node(const TreeNodePtr& n);
Tree canonicalize_pointed(const Presentation& p, const Tree& t);
bool is_pointed_canonical(const TreeNodePtr& n);

// All trees with the given source arity and at most max_nodes term nodes,
// canonically ordered. Pointed trees come in canonical form only.
std::vector<Tree> enumerate_trees(const Presentation& p, int n, int max_nodes);
// All tuples [n] -> [m] whose components together have at most max_nodes
// term nodes.
std::vector<TreeTuple> enumerate_tuples_total(const Presentation& p, int n, int m, int max_nodes);

void validate_tree(const Presentation& p, const Tree& t);

struct AxiomBounds {
  int max_nodes = 5;
  int max_object = 0;  // 0: use the presentation default
  int random_triples = 200;
  unsigned seed = 1;
};

using TupleComposer = std::function<TreeTuple(const TreeTuple&, const TreeTuple&)>;

// Verifies, on the bounded model: the projection law p(n,i) o t = t_i,
// the bijection Hom([m],[n]) ~ Hom([m],[1])^n via composition with
// projections, and associativity/units of grafting. The composer hook
// exists so tests can aim a corrupted composition at the sweep.
CheckReport check_theory_axioms(const Presentation& p, const AxiomBounds& b, TupleComposer composer = nullptr);

Tree random_tree(const Presentation& p, int n, int max_nodes, std::mt19937_64& rng);
TreeTuple random_tuple(const Presentation& p, int n, int m, int max_nodes_per_comp, std::mt19937_64& rng);

std::string to_string(const Tree& t);
std::string to_string(const TreeTuple& t);  // "(t1; t2; t3)"
Tree parse_tree(const Presentation& p, const std::string& text);
TreeTuple parse_tuple(const Presentation& p, const std::string& text);

// One digraph per component, root drawn lowest, edges carrying the
// p<n>_<k> / <gen>_<i> / iota<n> labels.
std::string to_dot(const TreeTuple& t, const std::string& graph_prefix = "T");

}  // namespace semith
