#include "semith/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace semith {

int StrictAlgebra::pack(const std::vector<int>& xs) const {
  int idx = 0;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) idx = idx * size() + *it;
  return idx;
}

int StrictAlgebra::element(const std::string& nm) const {
  for (std::size_t i = 0; i < carrier.size(); ++i)
    if (carrier[i] == nm) return static_cast<int>(i);
  return -1;
}

const std::vector<int>& StrictAlgebra::apply(const std::string& gen, const std::vector<int>& xs) const {
  auto it = tables.find(gen);
  if (it == tables.end()) throw DomainError("generator absent from algebra: " + gen);
  return it->second.at(static_cast<std::size_t>(pack(xs)));
}

static std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

static std::vector<std::string> split_names(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(strip(cur));
  return out;
}

StrictAlgebra parse_algebra(const Presentation& p, const std::string& text) {
  StrictAlgebra a;
  a.pointed = p.pointed;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool saw_header = false, saw_carrier = false;
  std::map<std::string, std::vector<bool>> filled;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "algebra") {
      std::string nm, over, thy;
      if (!(ls >> nm >> over >> thy) || over != "over")
        throw ParseError(lineno, "expected: algebra <name> over <theory>");
      if (thy != p.name) throw ParseError(lineno, "algebra is over theory " + thy + ", expected " + p.name);
      a.name = nm;
      a.theory = thy;
      saw_header = true;
    } else if (kw == "carrier") {
      if (!saw_header) throw ParseError(lineno, "algebra line must come first");
      std::string el;
      while (ls >> el) {
        if (a.element(el) >= 0) throw ParseError(lineno, "duplicate carrier element: " + el);
        a.carrier.push_back(el);
      }
      if (a.carrier.empty()) throw ParseError(lineno, "carrier must be nonempty");
      saw_carrier = true;
      for (const auto& g : p.generators) {
        std::size_t rows = 1;
        for (int i = 0; i < g.domain; ++i) rows *= a.carrier.size();
        a.tables[g.name].assign(rows, {});
        filled[g.name].assign(rows, false);
      }
    } else if (kw == "point") {
      std::string el;
      if (!(ls >> el)) throw ParseError(lineno, "expected: point <element>");
      if (!p.pointed) throw ParseError(lineno, "point line in an algebra over an unpointed theory");
      a.basepoint = a.element(el);
      if (a.basepoint < 0) throw ParseError(lineno, "unknown basepoint element: " + el);
    } else {
      // <gen> (a,b) = (c,d)
      if (!saw_carrier) throw ParseError(lineno, "carrier line must precede tables");
      const GeneratorDecl* g = p.find(kw);
      if (!g) throw ParseError(lineno, "unknown generator: " + kw);
      std::string rest;
      std::getline(ls, rest);
      auto eq = rest.find('=');
      if (eq == std::string::npos) throw ParseError(lineno, "expected: <gen> (inputs) = (outputs)");
      auto parse_group = [&](std::string s, int expect_n) {
        s = strip(s);
        if (s.size() < 2 || s.front() != '(' || s.back() != ')')
          throw ParseError(lineno, "expected a parenthesized tuple, got: " + s);
        std::vector<int> vals;
        for (const std::string& nm : split_names(s.substr(1, s.size() - 2), ',')) {
          int v = a.element(nm);
          if (v < 0) throw ParseError(lineno, "unknown carrier element: " + nm);
          vals.push_back(v);
        }
        if (static_cast<int>(vals.size()) != expect_n)
          throw ParseError(lineno, "tuple arity mismatch for " + kw);
        return vals;
      };
      std::vector<int> in_t = parse_group(rest.substr(0, eq), g->domain);
      std::vector<int> out_t = parse_group(rest.substr(eq + 1), g->codomain);
      int idx = a.pack(in_t);
      if (filled[kw][static_cast<std::size_t>(idx)]) throw ParseError(lineno, "duplicate table row for " + kw);
      a.tables[kw][static_cast<std::size_t>(idx)] = out_t;
      filled[kw][static_cast<std::size_t>(idx)] = true;
    }
  }
  if (!saw_header) throw ParseError(lineno, "missing algebra line");
  if (!saw_carrier) throw ParseError(lineno, "missing carrier line");
  if (p.pointed && a.basepoint < 0) throw ParseError(lineno, "pointed algebra needs a point line");
  for (const auto& [g, rows] : filled)
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!rows[i]) throw ParseError(lineno, "incomplete table for generator " + g);
  // the unique maps through [0] force every generator to fix the basepoint
  if (p.pointed)
    for (const auto& g : p.generators) {
      std::vector<int> bp(static_cast<std::size_t>(g.domain), a.basepoint);
      for (int v : a.apply(g.name, bp))
        if (v != a.basepoint)
          throw ParseError(lineno, "generator " + g.name + " does not fix the basepoint");
    }
  return a;
}

StrictAlgebra load_algebra(const Presentation& p, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open algebra file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_algebra(p, ss.str());
}

StrictAlgebra random_algebra(const Presentation& p, int carrier_size, unsigned seed) {
  StrictAlgebra a;
  a.name = "random";
  a.theory = p.name;
  a.pointed = p.pointed;
  for (int i = 0; i < carrier_size; ++i) a.carrier.push_back("e" + std::to_string(i));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, carrier_size - 1);
  if (p.pointed) a.basepoint = pick(rng);
  for (const auto& g : p.generators) {
    std::size_t rows = 1;
    for (int i = 0; i < g.domain; ++i) rows *= static_cast<std::size_t>(carrier_size);
    auto& table = a.tables[g.name];
    table.resize(rows);
    for (auto& row : table) {
      row.resize(static_cast<std::size_t>(g.codomain));
      for (auto& v : row) v = pick(rng);
    }
    if (p.pointed) {
      std::vector<int> bp(static_cast<std::size_t>(g.domain), a.basepoint);
      table[static_cast<std::size_t>(a.pack(bp))].assign(static_cast<std::size_t>(g.codomain), a.basepoint);
    }
  }
  return a;
}

std::vector<StrictAlgebra> all_algebras(const Presentation& p, int carrier_size) {
  StrictAlgebra base;
  base.name = "enumerated";
  base.theory = p.name;
  base.pointed = p.pointed;
  for (int i = 0; i < carrier_size; ++i) base.carrier.push_back("e" + std::to_string(i));
  // count output cells across all generator tables
  struct Cell {
    std::string gen;
    std::size_t row, col;
  };
  std::vector<Cell> cells;
  for (const auto& g : p.generators) {
    std::size_t rows = 1;
    for (int i = 0; i < g.domain; ++i) rows *= static_cast<std::size_t>(carrier_size);
    base.tables[g.name].assign(rows, std::vector<int>(static_cast<std::size_t>(g.codomain), 0));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < static_cast<std::size_t>(g.codomain); ++c) cells.push_back({g.name, r, c});
  }
  std::vector<StrictAlgebra> out;
  std::vector<int> counter(cells.size(), 0);
  const int bp_options = p.pointed ? carrier_size : 1;
  while (true) {
    for (int bp = 0; bp < bp_options; ++bp) {
      StrictAlgebra a = base;
      if (p.pointed) a.basepoint = bp;
      for (std::size_t i = 0; i < cells.size(); ++i) a.tables[cells[i].gen][cells[i].row][cells[i].col] = counter[i];
      a.name = "enumerated" + std::to_string(out.size());
      out.push_back(std::move(a));
    }
    std::size_t i = 0;
    for (; i < counter.size(); ++i) {
      if (++counter[i] < carrier_size) break;
      counter[i] = 0;
    }
    if (i == counter.size()) break;
  }
  if (p.pointed) {
    std::vector<StrictAlgebra> kept;
    for (auto& a : out) {
      bool ok = true;
      for (const auto& g : p.generators) {
        std::vector<int> bp(static_cast<std::size_t>(g.domain), a.basepoint);
        for (int v : a.apply(g.name, bp)) ok &= (v == a.basepoint);
      }
      if (ok) kept.push_back(std::move(a));
    }
    out = std::move(kept);
  }
  return out;
}

int eval_tree(const StrictAlgebra& a, const Presentation& p, const Tree& t, const std::vector<int>& x) {
  if (static_cast<int>(x.size()) != t.source)
    throw DomainError("input arity mismatch: tree expects " + std::to_string(t.source) + " arguments");
  std::function<int(const TreeNodePtr&)> go = [&](const TreeNodePtr& n) -> int {
    switch (n->kind) {
      case TreeNode::Kind::proj:
        return x.at(static_cast<std::size_t>(n->comp) - 1);
      case TreeNode::Kind::iota:
        if (a.basepoint < 0) throw DomainError("iota leaf but the algebra has no basepoint");
        return a.basepoint;
      case TreeNode::Kind::gen: {
        std::vector<int> args;
        args.reserve(n->children.size());
        for (const auto& c : n->children) args.push_back(go(c));
        return a.apply(n->gen, args).at(static_cast<std::size_t>(n->comp) - 1);
      }
    }
    throw DomainError("unreachable node kind");
  };
  (void)p;
  return go(t.node);
}

std::vector<int> eval_tuple(const StrictAlgebra& a, const Presentation& p, const TreeTuple& t,
                            const std::vector<int>& x) {
  std::vector<int> out;
  out.reserve(t.comps.size());
  for (const auto& c : t.comps) out.push_back(eval_tree(a, p, Tree{t.source, c}, x));
  return out;
}

std::vector<int> eval_word(const StrictAlgebra& a, const Presentation& p, const Word& w,
                           const std::vector<int>& x) {
  if (static_cast<int>(x.size()) != w.dom)
    throw DomainError("input arity mismatch: word expects " + std::to_string(w.dom) + " arguments");
  std::vector<int> cur = x;
  for (const Letter& l : w.letters) {
    switch (l.kind) {
      case Letter::Kind::projection:
        cur = {cur.at(static_cast<std::size_t>(l.k) - 1)};
        break;
      case Letter::Kind::generator:
        cur = a.apply(l.gen, cur);
        break;
      case Letter::Kind::iota:
        cur = {a.basepoint};
        break;
      case Letter::Kind::to_zero:
        cur.clear();
        break;
      case Letter::Kind::from_zero:
        cur.assign(static_cast<std::size_t>(l.cod), a.basepoint);
        break;
    }
  }
  (void)p;
  return cur;
}

std::vector<std::vector<int>> all_inputs(int carrier_size, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    for (; i < cur.size(); ++i) {
      if (++cur[i] < carrier_size) break;
      cur[i] = 0;
    }
    if (i == cur.size()) break;
  }
  return out;
}

CheckReport check_roundtrip(const StrictAlgebra& a, const Presentation& p, const RoundtripBounds& b,
                            TreeEvaluator evaluator) {
  TreeEvaluator ev = evaluator ? evaluator : [&](const Tree& t, const std::vector<int>& x) {
    return eval_tree(a, p, t, x);
  };
  auto ev_tuple = [&](const TreeTuple& t, const std::vector<int>& x) {
    std::vector<int> out;
    for (const auto& c : t.comps) out.push_back(ev(Tree{t.source, c}, x));
    return out;
  };
  CheckReport r;
  r.check = "roundtrip";
  const int max_object = b.max_object > 0 ? b.max_object : p.max_object;
  r.bounds = {{"max_nodes", std::to_string(b.max_nodes)},
              {"max_word_len", std::to_string(b.max_word_len)},
              {"max_object", std::to_string(max_object)},
              {"carrier", std::to_string(a.size())}};

  const int lo = p.pointed ? 0 : 1;
  // (i) restriction along the completion functor returns the original algebra
  for (int n = lo; n <= max_object; ++n) {
    for (int m = lo; m <= max_object; ++m) {
      for (const Word& w : enumerate_words(p, n, m, b.max_word_len)) {
        TreeTuple img = phi(p, w);
        for (const auto& x : all_inputs(a.size(), n)) {
          ++r.cases;
          if (ev_tuple(img, x) != eval_word(a, p, w, x)) {
            r.counterexamples.push_back("phi(" + to_string(w) + ") evaluates differently from the word at input " +
                                        std::to_string(a.pack(x)));
            if (r.counterexamples.size() > 10) return r;
          }
        }
      }
    }
  }
  // (ii) evaluation is functorial under grafting
  for (int n = lo; n <= max_object; ++n) {
    if (n == 0) continue;
    for (int m = 1; m <= max_object; ++m) {
      std::vector<TreeTuple> ts = enumerate_tuples_total(p, n, m, b.max_nodes);
      for (int k = 1; k <= max_object; ++k) {
        std::vector<TreeTuple> ss = enumerate_tuples_total(p, m, k, b.max_nodes);
        for (const TreeTuple& t : ts) {
          for (const TreeTuple& s : ss) {
            TreeTuple st = compose_trees(p, s, t);
            for (const auto& x : all_inputs(a.size(), n)) {
              ++r.cases;
              if (ev_tuple(st, x) != ev_tuple(s, ev_tuple(t, x))) {
                r.counterexamples.push_back("functoriality fails for " + to_string(s) + " o " + to_string(t));
                if (r.counterexamples.size() > 10) return r;
              }
            }
          }
        }
      }
    }
  }
  return r;
}

}  // namespace semith
