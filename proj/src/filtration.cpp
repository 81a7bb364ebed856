#include "semith/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace semith {

namespace {

std::vector<int> generator_domains(const Presentation& p) {
  std::set<int> ds;
  for (const auto& g : p.generators) ds.insert(g.domain);
  return {ds.begin(), ds.end()};
}

bool within_nodes(const TreeTuple& t, int max_nodes) {
  for (const auto& c : t.comps)
    if (c->node_count > max_nodes) return false;
  return true;
}

TreeTuple singleton(int source, const TreeNodePtr& c) { return TreeTuple{source, {c}}; }

// odometer over all m-tuples drawn from a fixed node list
struct TupleOdometer {
  int source;
  int m;
  const std::vector<TreeNodePtr>& pool;
  std::vector<std::size_t> idx;
  bool done;

  TupleOdometer(int source_, int m_, const std::vector<TreeNodePtr>& pool_)
      : source(source_), m(m_), pool(pool_), idx(static_cast<std::size_t>(m_), 0), done(pool_.empty() && m_ > 0) {}

  TreeTuple current() const {
    TreeTuple t;
    t.source = source;
    t.comps.reserve(idx.size());
    for (std::size_t i : idx) t.comps.push_back(pool[i]);
    return t;
  }

  bool next() {
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (++idx[i] < pool.size()) return true;
      idx[i] = 0;
    }
    done = true;
    return false;
  }
};

}  // namespace

bool FiltrationContext::materialized(int m) const {
  return std::find(mats.begin(), mats.end(), m) != mats.end();
}

FiltrationContext::FiltrationContext(const Presentation& p, int n_, int k_max, const FiltBounds& b)
    : pres(p), n(n_), bounds(b) {
  if (p.pointed) throw DomainError("filtrations are defined over unpointed free theories");
  p.require_object(n);
  max_object = b.max_object > 0 ? b.max_object : p.max_object;
  if (n > max_object)
    throw DomainError("source object [" + std::to_string(n) + "] exceeds max_object " + std::to_string(max_object));

  std::set<int> ms = {1, n};
  for (const auto& g : p.generators) {
    ms.insert(g.domain);
    ms.insert(g.codomain);
  }
  for (int m : ms)
    if (m <= max_object) mats.push_back(m);

  levels.resize(static_cast<std::size_t>(k_max) + 1);

  // stage 0: orbit of the identity tuple under the letter actions
  {
    Level& lv = levels[0];
    std::deque<TreeTuple> queue;
    std::function<void(const TreeTuple&)> add = [&](const TreeTuple& t) {
      auto& bucket = lv.extras[t.target()];
      if (!bucket.insert(t).second) return;
      queue.push_back(t);
      for (const auto& c : t.comps)
        if (!lv.part1.count(c)) {
          lv.part1.insert(c);
          add(singleton(n, c));
        }
    };
    add(identity_tuple(p, n));
    while (!queue.empty()) {
      TreeTuple t = queue.front();
      queue.pop_front();
      for (const auto& g : p.generators) {
        if (g.domain != t.target()) continue;
        TreeTuple img = compose_trees(p, phi_letter(p, Letter::generator(g)), t);
        if (within_nodes(img, bounds.max_nodes)) add(img);
      }
    }
  }

  // stage k: close the tuples over part1[k-1] under the letter actions;
  // only members beyond those tuples are stored, and their components
  // join the [1]-part (projections act)
  for (int k = 1; k <= k_max; ++k) {
    Level& prev = levels[static_cast<std::size_t>(k) - 1];
    Level& lv = levels[static_cast<std::size_t>(k)];
    lv.part1 = prev.part1;
    std::deque<TreeTuple> queue;
    auto is_seed = [&](const TreeTuple& t) {
      for (const auto& c : t.comps)
        if (!prev.part1.count(c)) return false;
      return true;
    };
    std::function<void(const TreeTuple&)> add = [&](const TreeTuple& t) {
      if (is_seed(t)) return;  // implicit member
      auto& bucket = lv.extras[t.target()];
      if (!bucket.insert(t).second) return;
      queue.push_back(t);
      for (const auto& c : t.comps)
        if (!lv.part1.count(c)) {
          lv.part1.insert(c);
          add(singleton(n, c));
        }
    };
    std::vector<TreeNodePtr> pool(prev.part1.begin(), prev.part1.end());
    for (const auto& g : p.generators) {
      TreeTuple image_of = phi_letter(p, Letter::generator(g));
      for (TupleOdometer od(n, g.domain, pool); !od.done;) {
        TreeTuple t = od.current();
        TreeTuple img = compose_trees(p, image_of, t);
        if (within_nodes(img, bounds.max_nodes)) add(img);
        if (!od.next()) break;
      }
    }
    while (!queue.empty()) {
      TreeTuple t = queue.front();
      queue.pop_front();
      for (const auto& g : p.generators) {
        if (g.domain != t.target()) continue;
        TreeTuple img = compose_trees(p, phi_letter(p, Letter::generator(g)), t);
        if (within_nodes(img, bounds.max_nodes)) add(img);
      }
    }
  }
}

bool FiltrationContext::in_d(int k, const TreeTuple& t) const {
  const Level& lv = levels.at(static_cast<std::size_t>(k));
  if (k > 0) {
    const Level& prev = levels[static_cast<std::size_t>(k) - 1];
    bool seed = true;
    for (const auto& c : t.comps)
      if (!prev.part1.count(c)) {
        seed = false;
        break;
      }
    if (seed) return true;
  }
  auto it = lv.extras.find(t.target());
  return it != lv.extras.end() && it->second.count(t) > 0;
}

bool FiltrationContext::in_s(int k, const TreeTuple& t) const {
  if (k == 0) return in_d(0, t);
  const Level& prev = levels.at(static_cast<std::size_t>(k) - 1);
  for (const auto& c : t.comps)
    if (!prev.part1.count(c)) return false;
  return true;
}

static long long ipow(long long base, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

long long FiltrationContext::d_count(int k, int m) const {
  const Level& lv = levels.at(static_cast<std::size_t>(k));
  long long extra = 0;
  auto it = lv.extras.find(m);
  if (it != lv.extras.end()) extra = static_cast<long long>(it->second.size());
  if (k == 0) return extra;
  return ipow(static_cast<long long>(levels[static_cast<std::size_t>(k) - 1].part1.size()), m) + extra;
}

long long FiltrationContext::s_count(int k, int m) const {
  if (k == 0) return d_count(0, m);
  return ipow(static_cast<long long>(levels[static_cast<std::size_t>(k) - 1].part1.size()), m);
}

std::vector<Word> FiltrationContext::action_words(int m) const {
  std::vector<Word> out;
  for (int r = 1; r <= max_object; ++r)
    for (const Word& w : enumerate_words(pres, m, r, bounds.max_word_len))
      if (!w.letters.empty() && w.letters[0].kind == Letter::Kind::generator) out.push_back(w);
  return out;
}

std::vector<FiltrationLevelPair> generate_filtration(const Presentation& p, int n, int k_max,
                                                     const FiltBounds& b) {
  FiltrationContext ctx(p, n, k_max, b);
  constexpr long long kMaterializeCap = 50000;
  std::vector<FiltrationLevelPair> out;
  for (int k = 0; k <= k_max; ++k) {
    FiltrationLevelPair pair;
    pair.k = k;
    for (int m = 1; m <= ctx.max_object; ++m) {
      pair.d_counts[m] = ctx.d_count(k, m);
      pair.s_counts[m] = ctx.s_count(k, m);
    }
    for (int m : ctx.mats) {
      if (pair.d_counts[m] > kMaterializeCap) continue;
      std::set<TreeTuple> d_set;
      const auto& lv = ctx.levels[static_cast<std::size_t>(k)];
      auto it = lv.extras.find(m);
      if (it != lv.extras.end()) d_set.insert(it->second.begin(), it->second.end());
      if (k > 0) {
        const auto& prev = ctx.levels[static_cast<std::size_t>(k) - 1].part1;
        std::vector<TreeNodePtr> pool(prev.begin(), prev.end());
        std::vector<TreeTuple> seeds;
        for (TupleOdometer od(n, m, pool); !od.done;) {
          seeds.push_back(od.current());
          if (!od.next()) break;
        }
        pair.s_members[m] = seeds;
        d_set.insert(seeds.begin(), seeds.end());
      } else {
        pair.s_members[m] = {d_set.begin(), d_set.end()};
      }
      pair.d_members[m] = {d_set.begin(), d_set.end()};
    }
    out.push_back(std::move(pair));
  }
  return out;
}

CheckReport check_L1(const Presentation& p, const FiltBounds& b, TupleComposer composer) {
  TupleComposer comp = composer ? composer : [&p](const TreeTuple& s, const TreeTuple& t) {
    return compose_trees(p, s, t);
  };
  CheckReport r;
  r.check = "L1";
  const int max_object = b.max_object > 0 ? b.max_object : p.max_object;
  r.bounds = {{"max_nodes", std::to_string(b.max_nodes)},
              {"max_word_len", std::to_string(b.max_word_len)},
              {"max_object", std::to_string(max_object)}};
  for (int n : b.sources) {
    for (int m : generator_domains(p)) {
      std::vector<TreeTuple> universe = enumerate_tuples_total(p, n, m, b.max_nodes);
      std::vector<Word> words;
      for (int rr = 1; rr <= max_object; ++rr)
        for (const Word& w : enumerate_words(p, m, rr, b.max_word_len))
          if (!w.letters.empty() && w.letters[0].kind == Letter::Kind::generator) words.push_back(w);
      for (const Word& w : words) {
        TreeTuple image_of = phi(p, w);
        std::unordered_map<std::size_t, std::vector<std::pair<TreeTuple, const TreeTuple*>>> buckets;
        for (const TreeTuple& t : universe) {
          ++r.cases;
          TreeTuple img = comp(image_of, t);
          auto& bucket = buckets[tuple_hash(img)];
          for (const auto& [other_img, other_t] : bucket) {
            if (other_img == img && !(*other_t == t)) {
              r.counterexamples.push_back("n=" + std::to_string(n) + " word " + to_string(w) + " merges " +
                                          to_string(t) + " and " + to_string(*other_t));
              break;
            }
          }
          bucket.emplace_back(std::move(img), &t);
          if (r.counterexamples.size() > 10) return r;
        }
      }
    }
  }
  return r;
}

CheckReport check_L2(const Presentation& p, const FiltBounds& b) {
  CheckReport r;
  r.check = "L2";
  const int max_object = b.max_object > 0 ? b.max_object : p.max_object;
  r.bounds = {{"max_nodes", std::to_string(b.max_nodes)},
              {"max_word_len", std::to_string(b.max_word_len)},
              {"max_object", std::to_string(max_object)}};
  for (int n : b.sources) {
    // pairs (word, tuple) grouped by image; words start with a generator,
    // the identity word is the base case of the factorization claim
    std::vector<std::pair<Word, TreeTuple>> entries;
    for (int m : generator_domains(p)) {
      std::vector<TreeTuple> universe = enumerate_tuples_total(p, n, m, b.max_nodes);
      std::vector<Word> words{identity_word(p, m)};
      for (int rr = 1; rr <= max_object; ++rr)
        for (const Word& w : enumerate_words(p, m, rr, b.max_word_len))
          if (!w.letters.empty() && w.letters[0].kind == Letter::Kind::generator) words.push_back(w);
      for (const Word& w : words)
        for (const TreeTuple& t : universe) entries.emplace_back(w, t);
    }
    std::map<TreeTuple, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < entries.size(); ++i)
      buckets[compose_trees(p, phi(p, entries[i].first), entries[i].second)].push_back(i);
    for (const auto& [img, members] : buckets) {
      for (std::size_t ai : members) {
        for (std::size_t bi : members) {
          const Word& wa = entries[ai].first;
          const Word& wb = entries[bi].first;
          if (wa.size() > wb.size()) continue;
          ++r.cases;
          const TreeTuple& ta = entries[ai].second;
          const TreeTuple& tb = entries[bi].second;
          // theta is the first |wb| - |wa| letters of wb
          const int cut = wb.size() - wa.size();
          std::vector<Letter> theta_letters(wb.letters.begin(), wb.letters.begin() + cut);
          bool ok = false;
          try {
            Word theta = make_word(p, wb.dom, theta_letters);
            if (theta.cod == wa.dom && compose_words(p, wa, theta) == wb &&
                compose_trees(p, phi(p, theta), tb) == ta)
              ok = true;
          } catch (const DomainError&) {
            ok = false;
          }
          if (!ok) {
            r.counterexamples.push_back("n=" + std::to_string(n) + ": (" + to_string(wa) + ", " + to_string(ta) +
                                        ") and (" + to_string(wb) + ", " + to_string(tb) +
                                        ") share an image but do not factor");
            if (r.counterexamples.size() > 10) return r;
          }
        }
      }
    }
  }
  return r;
}

CheckReport check_L3(const Presentation& p, const FiltBounds& b) {
  CheckReport r;
  r.check = "L3";
  const int max_object = b.max_object > 0 ? b.max_object : p.max_object;
  r.bounds = {{"max_nodes", std::to_string(b.max_nodes)},
              {"max_word_len", std::to_string(b.max_word_len)},
              {"max_object", std::to_string(max_object)},
              {"max_level", std::to_string(b.max_level)}};
  for (int n : b.sources) {
    FiltrationContext ctx(p, n, b.max_level + 1, b);
    for (int k = 0; k <= b.max_level; ++k) {
      const auto& part1k = ctx.levels[static_cast<std::size_t>(k)].part1;
      std::vector<TreeNodePtr> pool(part1k.begin(), part1k.end());
      for (int m : generator_domains(p)) {
        std::vector<Word> words = ctx.action_words(m);
        for (TupleOdometer od(n, m, pool); !od.done;) {
          TreeTuple t = od.current();
          if (!ctx.in_d(k, t)) {
            ++r.cases;  // the empty word maps t to itself, outside stage k by hypothesis
            for (const Word& w : words) {
              TreeTuple img = compose_trees(p, phi(p, w), t);
              if (!within_nodes(img, b.max_nodes)) {
                ++r.inconclusive;
                continue;
              }
              ++r.cases;
              if (ctx.in_d(k, img)) {
                r.counterexamples.push_back("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " +
                                            to_string(w) + " maps " + to_string(t) + " into stage " +
                                            std::to_string(k));
                if (r.counterexamples.size() > 10) return r;
              }
            }
          }
          if (!od.next()) break;
        }
      }
    }
  }
  return r;
}

CheckReport check_L4(const Presentation& p, const FiltBounds& b) {
  CheckReport r;
  r.check = "L4";
  const int max_object = b.max_object > 0 ? b.max_object : p.max_object;
  r.bounds = {{"max_nodes", std::to_string(b.max_nodes)},
              {"max_word_len", std::to_string(b.max_word_len)},
              {"max_object", std::to_string(max_object)},
              {"max_level", std::to_string(b.max_level)}};
  for (int n : b.sources) {
    FiltrationContext ctx(p, n, b.max_level + 1, b);
    for (int k = 0; k <= b.max_level; ++k) {
      // the members of stage k+1 beyond the projection-closed stage k+1
      std::map<TreeTuple, std::vector<std::string>> found;
      for (const auto& [m, tuples] : ctx.levels[static_cast<std::size_t>(k) + 1].extras)
        for (const TreeTuple& t : tuples) found[t];
      if (found.empty()) continue;
      const auto& part1k = ctx.levels[static_cast<std::size_t>(k)].part1;
      std::vector<TreeNodePtr> pool(part1k.begin(), part1k.end());
      for (int ms : generator_domains(p)) {
        std::vector<Word> words = ctx.action_words(ms);
        for (TupleOdometer od(n, ms, pool); !od.done;) {
          TreeTuple s = od.current();
          if (!ctx.in_d(k, s)) {
            for (const Word& w : words) {
              TreeTuple img = compose_trees(p, phi(p, w), s);
              auto it = found.find(img);
              if (it != found.end()) it->second.push_back(to_string(w) + " applied to " + to_string(s));
            }
          }
          if (!od.next()) break;
        }
      }
      for (const auto& [t, factorizations] : found) {
        ++r.cases;
        if (factorizations.empty()) {
          ++r.inconclusive;  // the factoring word may exceed the word bound
        } else if (factorizations.size() > 1) {
          r.counterexamples.push_back("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + to_string(t) +
                                      " factors as " + factorizations[0] + " and as " + factorizations[1]);
          if (r.counterexamples.size() > 10) return r;
        }
      }
    }
  }
  return r;
}

CheckReport check_phi_injective(const Presentation& p, const FiltBounds& b) {
  CheckReport r;
  r.check = "phi-injective";
  const int max_object = b.max_object > 0 ? b.max_object : p.max_object;
  r.bounds = {{"max_word_len", std::to_string(b.max_word_len)}, {"max_object", std::to_string(max_object)}};
  const int lo = p.pointed ? 0 : 1;
  for (int n = lo; n <= max_object; ++n) {
    for (int m = lo; m <= max_object; ++m) {
      std::map<TreeTuple, Word> seen;
      for (const Word& w : enumerate_words(p, n, m, b.max_word_len)) {
        ++r.cases;
        TreeTuple img = phi(p, w);
        auto [it, fresh] = seen.emplace(img, w);
        if (!fresh && !(it->second == w))
          r.counterexamples.push_back("phi merges " + to_string(w) + " and " + to_string(it->second));
      }
    }
  }
  return r;
}

namespace {

// naturality constraints and factorizations are compiled to index form so
// the pullback sweep can race through every candidate map
struct CompiledStage {
  // value[out_idx[j]] == table(gen)(value[in_idx])[j], per bounded action
  struct Constraint {
    std::string gen;
    std::vector<int> in_idx;
    std::vector<int> out_idx;
  };
  std::vector<Constraint> constraints;
};

struct NodeIndex {
  std::vector<TreeNodePtr> nodes;
  std::map<TreeNodePtr, int, NodeLess> index;

  explicit NodeIndex(const NodeSet& s) : nodes(s.begin(), s.end()) {
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);
  }
  int at(const TreeNodePtr& n) const {
    auto it = index.find(n);
    if (it == index.end()) throw DomainError("tree outside the indexed stage");
    return it->second;
  }
};

// visits every stage-k member at the materialized codomains exactly once
void for_each_member(const FiltrationContext& ctx, int k, const std::function<void(const TreeTuple&)>& fn) {
  if (k > 0) {
    const auto& prev = ctx.levels[static_cast<std::size_t>(k) - 1].part1;
    std::vector<TreeNodePtr> pool(prev.begin(), prev.end());
    for (int m : ctx.mats) {
      for (TupleOdometer od(ctx.n, m, pool); !od.done;) {
        fn(od.current());
        if (!od.next()) break;
      }
    }
  }
  for (const auto& [m, tuples] : ctx.levels.at(static_cast<std::size_t>(k)).extras)
    for (const TreeTuple& t : tuples)
      if (k == 0 || !ctx.in_s(k, t)) fn(t);
}

CompiledStage compile_naturality(const FiltrationContext& ctx, int k, const NodeIndex& idx) {
  CompiledStage out;
  for_each_member(ctx, k, [&](const TreeTuple& t) {
    for (const auto& g : ctx.pres.generators) {
      if (g.domain != t.target()) continue;
      TreeTuple img = compose_trees(ctx.pres, phi_letter(ctx.pres, Letter::generator(g)), t);
      if (!within_nodes(img, ctx.bounds.max_nodes)) continue;
      CompiledStage::Constraint c;
      c.gen = g.name;
      for (const auto& comp : t.comps) c.in_idx.push_back(idx.at(comp));
      for (const auto& comp : img.comps) c.out_idx.push_back(idx.at(comp));
      out.constraints.push_back(std::move(c));
    }
  });
  return out;
}

bool satisfies(const CompiledStage& stage, const StrictAlgebra& a, const std::vector<int>& values) {
  std::vector<int> args;
  for (const auto& c : stage.constraints) {
    args.clear();
    for (int i : c.in_idx) args.push_back(values[static_cast<std::size_t>(i)]);
    const std::vector<int>& img = a.apply(c.gen, args);
    for (std::size_t j = 0; j < c.out_idx.size(); ++j)
      if (values[static_cast<std::size_t>(c.out_idx[j])] != img[j]) return false;
  }
  return true;
}

// factorizations of each new [1]-part member of stage k+1 through the
// projection-closed stage: component indices into the stage-k [1]-part
// plus the factoring word
struct Factorizations {
  std::map<int, std::vector<std::pair<std::vector<int>, Word>>> pairs;
};

Factorizations find_factorizations(const FiltrationContext& ctx, int k, const NodeIndex& idx_k,
                                   const NodeIndex& idx_k1) {
  Factorizations out;
  const auto& part1k = ctx.levels[static_cast<std::size_t>(k)].part1;
  const auto& part1k1 = ctx.levels[static_cast<std::size_t>(k) + 1].part1;
  for (const auto& node : part1k1)
    if (!part1k.count(node)) out.pairs[idx_k1.at(node)];
  if (out.pairs.empty()) return out;
  std::vector<TreeNodePtr> pool(part1k.begin(), part1k.end());
  for (int ms : generator_domains(ctx.pres)) {
    std::vector<Word> words;
    for (const Word& w : ctx.action_words(ms))
      if (w.cod == 1) words.push_back(w);
    for (TupleOdometer od(ctx.n, ms, pool); !od.done;) {
      TreeTuple s = od.current();
      if (!ctx.in_d(k, s)) {
        std::vector<int> comp_idx;
        for (const auto& c : s.comps) comp_idx.push_back(idx_k.at(c));
        for (const Word& w : words) {
          TreeTuple img = compose_trees(ctx.pres, phi(ctx.pres, w), s);
          if (!within_nodes(img, ctx.bounds.max_nodes)) continue;
          if (part1k.count(img.comps[0]) || !part1k1.count(img.comps[0])) continue;
          out.pairs[idx_k1.at(img.comps[0])].emplace_back(comp_idx, w);
        }
      }
      if (!od.next()) break;
    }
  }
  return out;
}

}  // namespace

ExtendOutcome extend_p_map(const FiltrationContext& ctx, const StrictAlgebra& a, int k,
                           const std::map<TreeTuple, std::vector<int>>& eps) {
  ExtendOutcome out;
  CheckReport& r = out.report;
  r.check = "extend-p-map";
  r.bounds = {{"level", std::to_string(k)},
              {"max_nodes", std::to_string(ctx.bounds.max_nodes)},
              {"max_word_len", std::to_string(ctx.bounds.max_word_len)}};
  if (static_cast<int>(ctx.levels.size()) <= k + 1)
    throw DomainError("filtration context does not reach stage " + std::to_string(k + 1));

  NodeIndex idx_k(ctx.levels[static_cast<std::size_t>(k)].part1);
  NodeIndex idx_k1(ctx.levels[static_cast<std::size_t>(k) + 1].part1);

  // the singleton values carry the whole map; check the domain and the
  // projection compatibility of the supplied tuples against them
  std::vector<int> values(idx_k.nodes.size(), -1);
  for (const auto& [t, v] : eps) {
    ++r.cases;
    if (!ctx.in_s(k + 1, t)) {
      r.counterexamples.push_back("not a member of the projection-closed stage: " + to_string(t));
      return out;
    }
    if (static_cast<int>(v.size()) != t.target()) {
      r.counterexamples.push_back("value arity mismatch at " + to_string(t));
      return out;
    }
    for (int x : v)
      if (x < 0 || x >= a.size()) {
        r.counterexamples.push_back("value outside the carrier at " + to_string(t));
        return out;
      }
    if (t.target() == 1) values[static_cast<std::size_t>(idx_k.at(t.comps[0]))] = v[0];
  }
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] < 0) {
      r.counterexamples.push_back("missing singleton value for " + to_string(Tree{ctx.n, idx_k.nodes[i]}));
      return out;
    }
  for (const auto& [t, v] : eps) {
    for (int i = 1; i <= t.target(); ++i) {
      int expect = values[static_cast<std::size_t>(idx_k.at(t.comps[static_cast<std::size_t>(i) - 1]))];
      if (v[static_cast<std::size_t>(i) - 1] != expect) {
        r.counterexamples.push_back("projection compatibility fails at " + to_string(t) + " component " +
                                    std::to_string(i));
        return out;
      }
    }
  }

  // pullback condition: the restriction to stage k is a diagram map
  CompiledStage stage_k = compile_naturality(ctx, k, idx_k);
  std::vector<int> args;
  for (const auto& c : stage_k.constraints) {
    ++r.cases;
    args.clear();
    for (int i : c.in_idx) args.push_back(values[static_cast<std::size_t>(i)]);
    const std::vector<int>& img = a.apply(c.gen, args);
    for (std::size_t j = 0; j < c.out_idx.size(); ++j)
      if (values[static_cast<std::size_t>(c.out_idx[j])] != img[j]) {
        r.counterexamples.push_back("input is not natural on stage " + std::to_string(k) + " under " + c.gen);
        return out;
      }
  }

  // extend along the unique factorizations
  Factorizations facts = find_factorizations(ctx, k, idx_k, idx_k1);
  std::vector<int> ext(idx_k1.nodes.size(), -1);
  for (std::size_t i = 0; i < idx_k1.nodes.size(); ++i) {
    auto it = idx_k.index.find(idx_k1.nodes[i]);
    if (it != idx_k.index.end()) ext[i] = values[static_cast<std::size_t>(it->second)];
  }
  for (const auto& [node_idx, pairs] : facts.pairs) {
    ++r.cases;
    if (pairs.empty()) {
      ++r.inconclusive;
      continue;
    }
    int val = -1;
    for (const auto& [comp_idx, w] : pairs) {
      std::vector<int> s_val;
      for (int i : comp_idx) s_val.push_back(values[static_cast<std::size_t>(i)]);
      int v = eval_word(a, ctx.pres, w, s_val)[0];
      if (val < 0) {
        val = v;
      } else if (val != v) {
        r.counterexamples.push_back("factorizations disagree at " +
                                    to_string(Tree{ctx.n, idx_k1.nodes[static_cast<std::size_t>(node_idx)]}));
        return out;
      }
    }
    ext[static_cast<std::size_t>(node_idx)] = val;
  }
  if (r.inconclusive > 0) {
    r.note = "some stage " + std::to_string(k + 1) + " members lack a factorization within the word bound";
    return out;
  }

  // the extension must be a diagram map on stage k+1
  CompiledStage stage_k1 = compile_naturality(ctx, k + 1, idx_k1);
  for (const auto& c : stage_k1.constraints) {
    ++r.cases;
    args.clear();
    for (int i : c.in_idx) args.push_back(ext[static_cast<std::size_t>(i)]);
    const std::vector<int>& img = a.apply(c.gen, args);
    for (std::size_t j = 0; j < c.out_idx.size(); ++j)
      if (ext[static_cast<std::size_t>(c.out_idx[j])] != img[j]) {
        r.counterexamples.push_back("extension is not natural on stage " + std::to_string(k + 1) + " under " +
                                    c.gen);
        return out;
      }
  }

  for (std::size_t i = 0; i < idx_k1.nodes.size(); ++i) out.values[idx_k1.nodes[i]] = ext[i];
  return out;
}

PullbackResult check_pullback(const Presentation& p, int n, int k, const StrictAlgebra& a,
                              const FiltBounds& b) {
  PullbackResult res;
  CheckReport& r = res.report;
  r.check = "pullback";
  r.bounds = {{"n", std::to_string(n)},
              {"k", std::to_string(k)},
              {"max_nodes", std::to_string(b.max_nodes)},
              {"max_word_len", std::to_string(b.max_word_len)},
              {"carrier", std::to_string(a.size())}};
  FiltrationContext ctx(p, n, k + 1, b);
  NodeIndex idx_k(ctx.levels[static_cast<std::size_t>(k)].part1);
  NodeIndex idx_k1(ctx.levels[static_cast<std::size_t>(k) + 1].part1);
  const std::size_t dim = idx_k.nodes.size();
  if (static_cast<double>(dim) * std::log2(static_cast<double>(a.size())) > 22.0) {
    ++r.inconclusive;
    r.note = "candidate space " + std::to_string(a.size()) + "^" + std::to_string(dim) + " exceeds the sweep cap";
    return res;
  }

  CompiledStage stage_k = compile_naturality(ctx, k, idx_k);
  CompiledStage stage_k1 = compile_naturality(ctx, k + 1, idx_k1);
  Factorizations facts = find_factorizations(ctx, k, idx_k, idx_k1);
  for (const auto& [i, pairs] : facts.pairs) {
    if (pairs.empty()) {
      ++r.inconclusive;
      r.note = "a stage " + std::to_string(k + 1) + " member lacks a factorization within the word bound: " +
               to_string(Tree{n, idx_k1.nodes[static_cast<std::size_t>(i)]});
      return res;
    }
  }

  // sweep every projection-natural map out of the s-stage k+1; those
  // whose stage-k restriction is natural are exactly the pullback set
  std::set<std::vector<int>> extensions;
  std::vector<int> values(dim, 0);
  for (;;) {
    if (satisfies(stage_k, a, values)) {
      ++res.pullback_card;
      ++r.cases;
      std::vector<int> ext(idx_k1.nodes.size(), -1);
      for (std::size_t i = 0; i < idx_k1.nodes.size(); ++i) {
        auto it = idx_k.index.find(idx_k1.nodes[i]);
        if (it != idx_k.index.end()) ext[i] = values[static_cast<std::size_t>(it->second)];
      }
      bool ok = true;
      for (const auto& [node_idx, pairs] : facts.pairs) {
        int val = -1;
        for (const auto& [comp_idx, w] : pairs) {
          std::vector<int> s_val;
          for (int ci : comp_idx) s_val.push_back(values[static_cast<std::size_t>(ci)]);
          int v = eval_word(a, p, w, s_val)[0];
          if (val < 0) {
            val = v;
          } else if (val != v) {
            ok = false;
            r.counterexamples.push_back("factorizations disagree at " +
                                        to_string(Tree{n, idx_k1.nodes[static_cast<std::size_t>(node_idx)]}));
            break;
          }
        }
        if (!ok) break;
        ext[static_cast<std::size_t>(node_idx)] = val;
      }
      if (ok && !satisfies(stage_k1, a, ext)) {
        ok = false;
        r.counterexamples.push_back("extension fails naturality on stage " + std::to_string(k + 1));
      }
      if (ok) {
        for (std::size_t i = 0; i < dim; ++i)
          if (ext[static_cast<std::size_t>(idx_k1.at(idx_k.nodes[i]))] != values[i]) {
            ok = false;
            r.counterexamples.push_back("restriction does not return the input map");
            break;
          }
      }
      if (ok) {
        ++res.hom_upper;
        if (!extensions.insert(ext).second)
          r.counterexamples.push_back("two pullback elements share an extension");
      }
      if (r.counterexamples.size() > 10) return res;
    }
    std::size_t i = 0;
    for (; i < dim; ++i) {
      if (++values[i] < a.size()) break;
      values[i] = 0;
    }
    if (i == dim) break;
  }
  if (res.hom_upper != res.pullback_card)
    r.counterexamples.push_back("cardinalities differ: " + std::to_string(res.hom_upper) + " diagram maps vs " +
                                std::to_string(res.pullback_card) + " pullback elements");
  r.note = "hom(stage " + std::to_string(k + 1) + ") = " + std::to_string(res.hom_upper) +
           ", pullback = " + std::to_string(res.pullback_card);
  return res;
}

}  // namespace semith
