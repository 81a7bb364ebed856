#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace semith {

struct ParseError : std::runtime_error {
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
  int line;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeneratorDecl {
  std::string name;
  int domain = 1;
  int codomain = 1;
};

// One letter of a free-category word. Domain/codomain are resolved at
// construction so words are self-contained.
struct Letter {
  enum class Kind { projection, generator, iota, to_zero, from_zero };
  Kind kind = Kind::projection;
  int dom = 0;
  int cod = 0;
  int k = 0;        // projection component, 1..dom
  std::string gen;  // generator name

  static Letter projection(int n, int k);
  static Letter generator(const GeneratorDecl& g);
  static Letter iota(int n);
  static Letter to_zero(int n);
  static Letter from_zero(int m);
};

bool operator==(const Letter& a, const Letter& b);
bool operator<(const Letter& a, const Letter& b);

// A morphism of the free category: letters in application order,
// letters[i].cod == letters[i+1].dom. Empty sequence is the identity.
// Pointed words are kept in through-[0] normal form: any word that
// factors through [0] is stored as the canonical to_zero/from_zero pair,
// so structural equality decides equality of morphisms.
struct Word {
  int dom = 0;
  int cod = 0;
  std::vector<Letter> letters;

  bool is_identity() const { return letters.empty(); }
  int size() const { return static_cast<int>(letters.size()); }
};

bool operator==(const Word& a, const Word& b);
bool operator<(const Word& a, const Word& b);

class Presentation {
 public:
  std::string name = "Theory";
  bool pointed = false;
  std::vector<GeneratorDecl> generators;
  int max_object = 0;  // enumeration default; resolved on parse

  const GeneratorDecl* find(const std::string& g) const;
  const GeneratorDecl& at(const std::string& g) const;
  int max_generator_arity() const;    // max domain over generators (0 if none)
  int max_generator_coarity() const;  // max codomain over generators
  bool valid_object(int n) const { return n >= (pointed ? 0 : 1); }
  void require_object(int n) const;
};

// Presentation file format: line-oriented, '#' comments.
//   theory <identifier>
//   pointed | unpointed
//   gen <name> : <m> -> <k>     (m, k >= 1)
//   maxobject <N>               (optional)
Presentation parse_presentation(const std::string& text);
Presentation load_presentation(const std::string& path);
std::string to_text(const Presentation& p);

Word identity_word(const Presentation& p, int n);
// Validates letter composability against p and applies the pointed
// normal form. Throws DomainError on mismatch.
Word make_word(const Presentation& p, int dom, std::vector<Letter> letters);
Word compose_words(const Presentation& p, const Word& g, const Word& f);

// All words [n] -> [m] with at most max_len letters, canonically ordered,
// duplicate-free (pointed words in normal form).
std::vector<Word> enumerate_words(const Presentation& p, int n, int m, int max_len);

// Letters available out of object [n]: projections p(n,k) for n >= 2,
// generators with domain n, and (pointed) the to_zero/from_zero maps.
std::vector<Letter> letters_from(const Presentation& p, int n, int max_object);

std::string to_string(const Letter& l);
std::string to_string(const Word& w);  // composition order, e.g. "p2_1 * mu"; "id3"
Word parse_word(const Presentation& p, const std::string& text);

}  // namespace semith
