#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "semith/completion.hpp"
#include "semith/presentation.hpp"
#include "semith/report.hpp"

namespace semith {

// A finite strict algebra: carrier X[1], one full function table per
// generator. X[n] is identified with X[1]^n throughout; projections act
// as coordinate projections under this identification.
struct StrictAlgebra {
  std::string name;
  std::string theory;
  std::vector<std::string> carrier;  // element names; values are indices
  bool pointed = false;
  int basepoint = -1;
  // tables[g][packed input m-tuple] = output k-tuple
  std::map<std::string, std::vector<std::vector<int>>> tables;

  int size() const { return static_cast<int>(carrier.size()); }
  int pack(const std::vector<int>& xs) const;
  int element(const std::string& name) const;  // -1 if unknown
  const std::vector<int>& apply(const std::string& gen, const std::vector<int>& xs) const;
};

// Algebra file format: line-oriented, '#' comments.
//   algebra <name> over <theory>
//   carrier a b c ...
//   point a                      (pointed theories only)
//   <gen> (a,b) = (c)            one line per input tuple, full tables
StrictAlgebra parse_algebra(const Presentation& p, const std::string& text);
StrictAlgebra load_algebra(const Presentation& p, const std::string& path);

// Uniform random full tables over a carrier of the given size.
StrictAlgebra random_algebra(const Presentation& p, int carrier_size, unsigned seed);
// All strict algebras with the given carrier size (every generator table).
std::vector<StrictAlgebra> all_algebras(const Presentation& p, int carrier_size);

// Term evaluation: projection leaves pick coordinates, generator nodes
// apply the tables componentwise, iota leaves hit the basepoint.
int eval_tree(const StrictAlgebra& a, const Presentation& p, const Tree& t, const std::vector<int>& x);
std::vector<int> eval_tuple(const StrictAlgebra& a, const Presentation& p, const TreeTuple& t,
                            const std::vector<int>& x);
// Direct evaluation of a free-category word, letter by letter.
std::vector<int> eval_word(const StrictAlgebra& a, const Presentation& p, const Word& w,
                           const std::vector<int>& x);

std::vector<std::vector<int>> all_inputs(int carrier_size, int n);

struct RoundtripBounds {
  int max_nodes = 5;
  int max_word_len = 3;
  int max_object = 0;  // 0: presentation default
};

using TreeEvaluator = std::function<int(const Tree&, const std::vector<int>&)>;

// Verifies that evaluating phi(w) agrees with evaluating w directly for
// all bounded words, and that tree evaluation is functorial under
// grafting on all bounded composable pairs.
CheckReport check_roundtrip(const StrictAlgebra& a, const Presentation& p, const RoundtripBounds& b,
                            TreeEvaluator evaluator = nullptr);

}  // namespace semith
