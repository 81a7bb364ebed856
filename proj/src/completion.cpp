#include "semith/completion.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>

namespace semith {

static std::size_t hash_mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

TreeNodePtr proj_leaf(int k) {
  auto n = std::make_shared<TreeNode>();
  n->kind = TreeNode::Kind::proj;
  n->comp = k;
  n->hash = hash_mix(0x1, static_cast<std::size_t>(k));
  return n;
}

TreeNodePtr iota_leaf() {
  static const TreeNodePtr shared = [] {
    auto n = std::make_shared<TreeNode>();
    n->kind = TreeNode::Kind::iota;
    n->hash = 0x10d4;
    return n;
  }();
  return shared;
}

TreeNodePtr gen_node(const std::string& gen, int comp, std::vector<TreeNodePtr> children) {
  auto n = std::make_shared<TreeNode>();
  n->kind = TreeNode::Kind::gen;
  n->comp = comp;
  n->gen = gen;
  n->children = std::move(children);
  n->node_count = 1;
  n->height = 0;
  std::size_t h = hash_mix(0x2, std::hash<std::string>{}(gen));
  h = hash_mix(h, static_cast<std::size_t>(comp));
  for (const auto& c : n->children) {
    n->node_count += c->node_count;
    n->height = std::max(n->height, c->height);
    h = hash_mix(h, c->hash);
  }
  n->height += 1;
  n->hash = h;
  return n;
}

bool node_eq(const TreeNodePtr& a, const TreeNodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind || a->comp != b->comp || a->node_count != b->node_count)
    return false;
  if (a->kind != TreeNode::Kind::gen) return true;
  if (a->gen != b->gen || a->children.size() != b->children.size()) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!node_eq(a->children[i], b->children[i])) return false;
  return true;
}

int node_cmp(const TreeNodePtr& a, const TreeNodePtr& b) {
  if (a == b) return 0;
  int ra = a->kind == TreeNode::Kind::gen ? 2 : (a->kind == TreeNode::Kind::proj ? 0 : 1);
  int rb = b->kind == TreeNode::Kind::gen ? 2 : (b->kind == TreeNode::Kind::proj ? 0 : 1);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (a->kind == TreeNode::Kind::proj) return a->comp == b->comp ? 0 : (a->comp < b->comp ? -1 : 1);
  if (a->kind == TreeNode::Kind::iota) return 0;
  if (a->gen != b->gen) return a->gen < b->gen ? -1 : 1;
  if (a->comp != b->comp) return a->comp < b->comp ? -1 : 1;
  for (std::size_t i = 0; i < a->children.size() && i < b->children.size(); ++i) {
    int c = node_cmp(a->children[i], b->children[i]);
    if (c != 0) return c;
  }
  if (a->children.size() != b->children.size()) return a->children.size() < b->children.size() ? -1 : 1;
  return 0;
}

bool operator==(const Tree& a, const Tree& b) { return a.source == b.source && node_eq(a.node, b.node); }

bool operator<(const Tree& a, const Tree& b) {
  if (a.source != b.source) return a.source < b.source;
  return node_cmp(a.node, b.node) < 0;
}

bool operator==(const TreeTuple& a, const TreeTuple& b) {
  if (a.source != b.source || a.comps.size() != b.comps.size()) return false;
  for (std::size_t i = 0; i < a.comps.size(); ++i)
    if (!node_eq(a.comps[i], b.comps[i])) return false;
  return true;
}

bool operator!=(const TreeTuple& a, const TreeTuple& b) { return !(a == b); }

bool operator<(const TreeTuple& a, const TreeTuple& b) {
  if (a.source != b.source) return a.source < b.source;
  if (a.comps.size() != b.comps.size()) return a.comps.size() < b.comps.size();
  for (std::size_t i = 0; i < a.comps.size(); ++i) {
    int c = node_cmp(a.comps[i], b.comps[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::size_t tuple_hash(const TreeTuple& t) {
  std::size_t h = hash_mix(0x7, static_cast<std::size_t>(t.source));
  for (const auto& c : t.comps) h = hash_mix(h, c->hash);
  return h;
}

int depth(const Tree& t) { return t.node->height; }

int depth(const TreeTuple& t) {
  int d = 0;
  for (const auto& c : t.comps) d = std::max(d, c->height);
  return d;
}

int node_total(const TreeTuple& t) {
  int s = 0;
  for (const auto& c : t.comps) s += c->node_count;
  return s;
}

TreeTuple identity_tuple(const Presentation& p, int n) {
  p.require_object(n);
  TreeTuple t;
  t.source = n;
  for (int k = 1; k <= n; ++k) t.comps.push_back(proj_leaf(k));
  return t;
}

Tree as_tree(const TreeTuple& t) {
  if (t.target() != 1) throw DomainError("tuple is not a single tree");
  return Tree{t.source, t.comps[0]};
}

TreeTuple as_tuple(const Tree& t) { return TreeTuple{t.source, {t.node}}; }

bool is_pointed_canonical(const TreeNodePtr& n) {
  if (n->kind != TreeNode::Kind::gen) return true;
  bool all_iota = true;
  for (const auto& c : n->children) {
    if (!is_pointed_canonical(c)) return false;
    if (c->kind != TreeNode::Kind::iota) all_iota = false;
  }
  return !all_iota;
}

TreeNodePtr canonicalize_pointed_node(const TreeNodePtr& n) {
  if (n->kind != TreeNode::Kind::gen) return n;
  std::vector<TreeNodePtr> kids;
  kids.reserve(n->children.size());
  bool changed = false, all_iota = true;
  for (const auto& c : n->children) {
    TreeNodePtr k = canonicalize_pointed_node(c);
    changed |= (k != c);
    all_iota &= (k->kind == TreeNode::Kind::iota);
    kids.push_back(std::move(k));
  }
  if (all_iota) return iota_leaf();
  if (!changed) return n;
  return gen_node(n->gen, n->comp, std::move(kids));
}

Tree canonicalize_pointed(const Presentation& p, const Tree& t) {
  if (!p.pointed) throw DomainError("canonicalize_pointed on an unpointed theory");
  return Tree{t.source, canonicalize_pointed_node(t.node)};
}

TreeTuple phi_letter(const Presentation& p, const Letter& l) {
  TreeTuple out;
  out.source = l.dom;
  switch (l.kind) {
    case Letter::Kind::projection:
      out.comps.push_back(proj_leaf(l.k));
      return out;
    case Letter::Kind::generator: {
      const GeneratorDecl& g = p.at(l.gen);
      std::vector<TreeNodePtr> row;
      for (int k = 1; k <= g.domain; ++k) row.push_back(proj_leaf(k));
      for (int j = 1; j <= g.codomain; ++j) out.comps.push_back(gen_node(g.name, j, row));
      return out;
    }
    case Letter::Kind::iota:
      out.comps.push_back(iota_leaf());
      return out;
    case Letter::Kind::to_zero:
      return out;  // the empty tuple [n] -> [0]
    case Letter::Kind::from_zero:
      for (int j = 0; j < l.cod; ++j) out.comps.push_back(iota_leaf());
      return out;
  }
  throw DomainError("unreachable letter kind");
}

namespace {

// per-composition substitution cache, keyed by subterm identity
struct Graft {
  const std::vector<TreeNodePtr>& repl;
  std::unordered_map<const TreeNode*, TreeNodePtr> memo;

  TreeNodePtr run(const TreeNodePtr& n) {
    if (n->kind == TreeNode::Kind::proj) {
      return repl.at(static_cast<std::size_t>(n->comp) - 1);
    }
    if (n->kind == TreeNode::Kind::iota) return n;  // relabeling is implicit
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    std::vector<TreeNodePtr> kids;
    kids.reserve(n->children.size());
    bool changed = false;
    for (const auto& c : n->children) {
      TreeNodePtr k = run(c);
      changed |= (k != c);
      kids.push_back(std::move(k));
    }
    TreeNodePtr out = changed ? gen_node(n->gen, n->comp, std::move(kids)) : n;
    memo.emplace(n.get(), out);
    return out;
  }
};

}  // namespace

TreeTuple compose_trees(const Presentation& p, const TreeTuple& s, const TreeTuple& t) {
  if (t.target() != s.source)
    throw DomainError("object mismatch in grafting: [" + std::to_string(t.target()) + "] vs [" +
                      std::to_string(s.source) + "]");
  TreeTuple out;
  out.source = t.source;
  out.comps.reserve(s.comps.size());
  Graft g{t.comps, {}};
  for (const auto& c : s.comps) {
    TreeNodePtr r = g.run(c);
    if (p.pointed) r = canonicalize_pointed_node(r);
    out.comps.push_back(std::move(r));
  }
  return out;
}

TreeTuple phi(const Presentation& p, const Word& w) {
  TreeTuple acc = identity_tuple(p, w.dom);
  for (const Letter& l : w.letters) acc = compose_trees(p, phi_letter(p, l), acc);
  return acc;
}

void validate_tree(const Presentation& p, const Tree& t) {
  p.require_object(t.source);
  std::function<void(const TreeNodePtr&)> walk = [&](const TreeNodePtr& n) {
    switch (n->kind) {
      case TreeNode::Kind::proj:
        if (n->comp < 1 || n->comp > t.source)
          throw DomainError("projection leaf p" + std::to_string(t.source) + "_" + std::to_string(n->comp) +
                            " out of range");
        return;
      case TreeNode::Kind::iota:
        if (!p.pointed) throw DomainError("iota leaf in an unpointed theory");
        return;
      case TreeNode::Kind::gen: {
        const GeneratorDecl& g = p.at(n->gen);
        if (static_cast<int>(n->children.size()) != g.domain)
          throw DomainError("generator " + g.name + " expects " + std::to_string(g.domain) + " children");
        if (n->comp < 1 || n->comp > g.codomain)
          throw DomainError("component index out of range for generator " + g.name);
        for (const auto& c : n->children) walk(c);
        return;
      }
    }
  };
  if (t.source == 0 && !p.pointed) throw DomainError("source [0] in an unpointed theory");
  walk(t.node);
}

std::vector<Tree> enumerate_trees(const Presentation& p, int n, int max_nodes) {
  p.require_object(n);
  if (max_nodes < 1) throw DomainError("max_nodes must be >= 1");
  // by_size[s]: all canonical term nodes with exactly s nodes
  std::vector<std::vector<TreeNodePtr>> by_size(static_cast<std::size_t>(max_nodes) + 1);
  if (n >= 1)
    for (int k = 1; k <= n; ++k) by_size[1].push_back(proj_leaf(k));
  if (p.pointed) by_size[1].push_back(iota_leaf());
  for (int s = 2; s <= max_nodes; ++s) {
    for (const auto& g : p.generators) {
      const int m = g.domain;
      // distribute s-1 nodes among m children, each >= 1
      std::vector<int> part(static_cast<std::size_t>(m), 1);
      std::function<void(int, int, std::vector<TreeNodePtr>&)> fill = [&](int idx, int remaining,
                                                                          std::vector<TreeNodePtr>& kids) {
        if (idx == m) {
          if (remaining != 0) return;
          if (p.pointed) {
            bool all_iota = true;
            for (const auto& c : kids) all_iota &= (c->kind == TreeNode::Kind::iota);
            if (all_iota) return;  // would collapse: not canonical
          }
          for (int j = 1; j <= g.codomain; ++j) by_size[static_cast<std::size_t>(s)].push_back(gen_node(g.name, j, kids));
          return;
        }
        const int slots_left = m - idx - 1;
        for (int sz = 1; sz + slots_left <= remaining; ++sz) {
          for (const auto& c : by_size[static_cast<std::size_t>(sz)]) {
            kids.push_back(c);
            fill(idx + 1, remaining - sz, kids);
            kids.pop_back();
          }
        }
      };
      std::vector<TreeNodePtr> kids;
      if (m <= s - 1) fill(0, s - 1, kids);
    }
  }
  std::vector<Tree> out;
  for (const auto& bucket : by_size)
    for (const auto& node : bucket) out.push_back(Tree{n, node});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](const Tree& a, const Tree& b) { return a == b; }), out.end());
  return out;
}

std::vector<TreeTuple> enumerate_tuples_total(const Presentation& p, int n, int m, int max_nodes) {
  std::vector<Tree> trees = enumerate_trees(p, n, max_nodes);
  std::vector<TreeTuple> out;
  TreeTuple cur;
  cur.source = n;
  std::function<void(int, int)> fill = [&](int idx, int budget) {
    if (idx == m) {
      out.push_back(cur);
      return;
    }
    const int slots_left = m - idx - 1;
    for (const Tree& t : trees) {
      if (t.node->node_count + slots_left > budget) continue;
      cur.comps.push_back(t.node);
      fill(idx + 1, budget - t.node->node_count);
      cur.comps.pop_back();
    }
  };
  if (m >= 0) fill(0, max_nodes);
  return out;
}

CheckReport check_theory_axioms(const Presentation& p, const AxiomBounds& b, TupleComposer composer) {
  TupleComposer comp = composer ? composer : [&p](const TreeTuple& s, const TreeTuple& t) {
    return compose_trees(p, s, t);
  };
  CheckReport r;
  r.check = "theory-axioms";
  const int max_object = b.max_object > 0 ? b.max_object : p.max_object;
  r.bounds = {{"max_nodes", std::to_string(b.max_nodes)},
              {"max_object", std::to_string(max_object)},
              {"random_triples", std::to_string(b.random_triples)}};

  std::map<int, std::vector<Tree>> trees;
  for (int n = 1; n <= max_object; ++n) trees[n] = enumerate_trees(p, n, b.max_nodes);

  // (a)+(b): the map t |-> (p(n,1) o t, ..., p(n,n) o t), computed by
  // grafting, must send the tuple set bijectively onto the n-fold product
  // of tree sets and must recover the components.
  for (int m = 1; m <= max_object; ++m) {
    for (int n = 1; n <= max_object; ++n) {
      std::vector<TreeTuple> tuples = enumerate_tuples_total(p, m, n, b.max_nodes);
      std::set<std::vector<const TreeNode*>> images;
      for (const TreeTuple& t : tuples) {
        ++r.cases;
        std::vector<const TreeNode*> image_key;
        bool ok = true;
        for (int i = 1; i <= n; ++i) {
          TreeTuple proj_i = phi_letter(p, Letter::projection(n, i));
          TreeTuple img = comp(proj_i, t);
          if (img.target() != 1 || !node_eq(img.comps[0], t.comps[static_cast<std::size_t>(i) - 1])) {
            ok = false;
            r.counterexamples.push_back("projection law fails at p" + std::to_string(n) + "_" +
                                        std::to_string(i) + " o " + to_string(t));
            break;
          }
          image_key.push_back(img.comps[0].get());
        }
        if (ok && !images.insert(image_key).second)
          r.counterexamples.push_back("projection images collide for " + to_string(t));
        if (r.counterexamples.size() > 20) {
          r.note = "stopped early";
          return r;
        }
      }
    }
  }

  // (c) associativity and units on sampled triples
  std::mt19937_64 rng(b.seed);
  for (int i = 0; i < b.random_triples; ++i) {
    std::uniform_int_distribution<int> obj(1, max_object);
    int o0 = obj(rng), o1 = obj(rng), o2 = obj(rng), o3 = obj(rng);
    TreeTuple f = random_tuple(p, o0, o1, b.max_nodes, rng);
    TreeTuple g = random_tuple(p, o1, o2, b.max_nodes, rng);
    TreeTuple h = random_tuple(p, o2, o3, b.max_nodes, rng);
    ++r.cases;
    TreeTuple lhs = comp(h, comp(g, f));
    TreeTuple rhs = comp(comp(h, g), f);
    if (lhs != rhs)
      r.counterexamples.push_back("associativity fails for " + to_string(h) + " o " + to_string(g) + " o " +
                                  to_string(f));
    TreeTuple idl = comp(identity_tuple(p, o1), f);
    TreeTuple idr = comp(f, identity_tuple(p, o0));
    if (idl != f || idr != f) r.counterexamples.push_back("unit law fails for " + to_string(f));
    if (r.counterexamples.size() > 20) break;
  }
  return r;
}

Tree random_tree(const Presentation& p, int n, int max_nodes, std::mt19937_64& rng) {
  std::vector<Tree> choices;  // leaves
  if (n >= 1)
    for (int k = 1; k <= n; ++k) choices.push_back(Tree{n, proj_leaf(k)});
  if (p.pointed) choices.push_back(Tree{n, iota_leaf()});
  std::function<TreeNodePtr(int)> gen = [&](int budget) -> TreeNodePtr {
    std::vector<const GeneratorDecl*> fits;
    for (const auto& g : p.generators)
      if (g.domain + 1 <= budget) fits.push_back(&g);
    std::uniform_int_distribution<int> coin(0, 2);
    if (fits.empty() || budget <= 1 || coin(rng) == 0) {
      std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
      return choices[pick(rng)].node;
    }
    std::uniform_int_distribution<std::size_t> pick_gen(0, fits.size() - 1);
    const GeneratorDecl& g = *fits[pick_gen(rng)];
    int rem = budget - 1;
    std::vector<TreeNodePtr> kids;
    for (int i = 0; i < g.domain; ++i) {
      int slots_left = g.domain - i - 1;
      std::uniform_int_distribution<int> sz(1, std::max(1, rem - slots_left));
      int s = sz(rng);
      kids.push_back(gen(s));
      rem -= kids.back()->node_count;
    }
    TreeNodePtr out = gen_node(g.name, std::uniform_int_distribution<int>(1, g.codomain)(rng), std::move(kids));
    return p.pointed ? canonicalize_pointed_node(out) : out;
  };
  if (choices.empty()) throw DomainError("no leaves available at source [" + std::to_string(n) + "]");
  return Tree{n, gen(max_nodes)};
}

TreeTuple random_tuple(const Presentation& p, int n, int m, int max_nodes_per_comp, std::mt19937_64& rng) {
  TreeTuple t;
  t.source = n;
  for (int i = 0; i < m; ++i) t.comps.push_back(random_tree(p, n, max_nodes_per_comp, rng).node);
  return t;
}

static void print_node(std::ostringstream& os, const TreeNodePtr& n, int source) {
  switch (n->kind) {
    case TreeNode::Kind::proj:
      os << "p" << source << "_" << n->comp;
      return;
    case TreeNode::Kind::iota:
      os << "iota" << source;
      return;
    case TreeNode::Kind::gen:
      os << n->gen << "_" << n->comp << "(";
      for (std::size_t i = 0; i < n->children.size(); ++i) {
        if (i) os << ",";
        print_node(os, n->children[i], source);
      }
      os << ")";
      return;
  }
}

std::string to_string(const Tree& t) {
  std::ostringstream os;
  print_node(os, t.node, t.source);
  return os.str();
}

std::string to_string(const TreeTuple& t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.comps.size(); ++i) {
    if (i) os << "; ";
    print_node(os, t.comps[i], t.source);
  }
  os << ")";
  return os.str();
}

namespace {

struct TermParser {
  const Presentation& p;
  const std::string& s;
  std::size_t pos = 0;
  int source = -1;  // inferred from leaves

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) throw DomainError(std::string("expected '") + c + "' at offset " + std::to_string(pos) + " in term");
  }

  std::string ident() {
    skip_ws();
    std::size_t b = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (b == pos) throw DomainError("expected identifier at offset " + std::to_string(pos) + " in term");
    return s.substr(b, pos - b);
  }

  void saw_source(int n) {
    if (source < 0) source = n;
    else if (source != n)
      throw DomainError("leaves disagree on the source arity: [" + std::to_string(source) + "] vs [" +
                        std::to_string(n) + "]");
  }

  TreeNodePtr term() {
    std::string id = ident();
    static const std::regex proj_re("^p([0-9]+)_([0-9]+)$");
    static const std::regex iota_re("^iota([0-9]+)$");
    std::smatch m;
    if (std::regex_match(id, m, proj_re)) {
      saw_source(std::stoi(m[1]));
      return proj_leaf(std::stoi(m[2]));
    }
    if (std::regex_match(id, m, iota_re)) {
      saw_source(std::stoi(m[1]));
      return iota_leaf();
    }
    // generator node: name_<comp>(children)
    auto us = id.rfind('_');
    if (us == std::string::npos || us + 1 >= id.size())
      throw DomainError("expected <gen>_<component>(...) at '" + id + "'");
    std::string name = id.substr(0, us);
    int comp = std::stoi(id.substr(us + 1));
    const GeneratorDecl& g = p.at(name);
    expect('(');
    std::vector<TreeNodePtr> kids;
    if (!eat(')')) {
      kids.push_back(term());
      while (eat(',')) kids.push_back(term());
      expect(')');
    }
    if (static_cast<int>(kids.size()) != g.domain)
      throw DomainError("generator " + name + " expects " + std::to_string(g.domain) + " children");
    return gen_node(name, comp, std::move(kids));
  }
};

}  // namespace

TreeTuple parse_tuple(const Presentation& p, const std::string& text) {
  TermParser tp{p, text};
  TreeTuple out;
  tp.expect('(');
  if (!tp.eat(')')) {
    out.comps.push_back(tp.term());
    while (tp.eat(';')) out.comps.push_back(tp.term());
    tp.expect(')');
  }
  tp.skip_ws();
  if (tp.pos != text.size()) throw DomainError("trailing input after term: " + text.substr(tp.pos));
  if (tp.source < 0) throw DomainError("cannot infer the source arity of an all-empty tuple; leaves required");
  out.source = tp.source;
  for (const auto& c : out.comps) validate_tree(p, Tree{out.source, c});
  if (p.pointed)
    for (auto& c : out.comps) c = canonicalize_pointed_node(c);
  return out;
}

Tree parse_tree(const Presentation& p, const std::string& text) {
  std::string t = text;
  // accept both bare terms and 1-tuples
  auto b = t.find_first_not_of(" \t");
  if (b != std::string::npos && t[b] == '(') {
    TreeTuple tp = parse_tuple(p, t);
    return as_tree(tp);
  }
  TermParser tp{p, text};
  TreeNodePtr n = tp.term();
  tp.skip_ws();
  if (tp.pos != text.size()) throw DomainError("trailing input after term: " + text.substr(tp.pos));
  Tree out{tp.source, n};
  validate_tree(p, out);
  if (p.pointed) out.node = canonicalize_pointed_node(out.node);
  return out;
}

namespace {

// Every term node is one labeled edge of the drawn tree; a gen node's
// children arrive at the upper endpoint of its edge. Edges point
// downward, so the root vertex sits lowest.
struct DotWriter {
  std::ostringstream& os;
  int source;
  int next_id = 0;

  std::string edge_label(const TreeNodePtr& n) {
    switch (n->kind) {
      case TreeNode::Kind::proj:
        return "p" + std::to_string(source) + "_" + std::to_string(n->comp);
      case TreeNode::Kind::iota:
        return "iota" + std::to_string(source);
      case TreeNode::Kind::gen:
        return n->gen + "_" + std::to_string(n->comp);
    }
    return "?";
  }

  void walk(const TreeNodePtr& n, int below) {
    int me = next_id++;
    os << "  v" << me << " [shape=point];\n";
    os << "  v" << me << " -> v" << below << " [label=\"" << edge_label(n) << "\"];\n";
    if (n->kind == TreeNode::Kind::gen)
      for (const auto& c : n->children) walk(c, me);
  }
};

}  // namespace

std::string to_dot(const TreeTuple& t, const std::string& graph_prefix) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.comps.size(); ++i) {
    os << "digraph " << graph_prefix << (i + 1) << " {\n";
    os << "  rankdir=TB;\n";
    DotWriter w{os, t.source, 0};
    int root = w.next_id++;
    os << "  v" << root << " [shape=point];\n";
    w.walk(t.comps[i], root);
    os << "}\n";
  }
  return os.str();
}

}  // namespace semith
