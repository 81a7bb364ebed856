#include "semith/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <tuple>

namespace semith {

Letter Letter::projection(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw DomainError("bad projection p" + std::to_string(n) + "_" + std::to_string(k));
  Letter l;
  l.kind = Kind::projection;
  l.dom = n;
  l.cod = 1;
  l.k = k;
  return l;
}

Letter Letter::generator(const GeneratorDecl& g) {
  Letter l;
  l.kind = Kind::generator;
  l.dom = g.domain;
  l.cod = g.codomain;
  l.gen = g.name;
  return l;
}

Letter Letter::iota(int n) {
  Letter l;
  l.kind = Kind::iota;
  l.dom = n;
  l.cod = 1;
  return l;
}

Letter Letter::to_zero(int n) {
  Letter l;
  l.kind = Kind::to_zero;
  l.dom = n;
  l.cod = 0;
  return l;
}

Letter Letter::from_zero(int m) {
  Letter l;
  l.kind = Kind::from_zero;
  l.dom = 0;
  l.cod = m;
  return l;
}

static std::tuple<int, int, int, int, const std::string&> letter_key(const Letter& l) {
  return {static_cast<int>(l.kind), l.dom, l.cod, l.k, l.gen};
}

bool operator==(const Letter& a, const Letter& b) { return letter_key(a) == letter_key(b); }
bool operator<(const Letter& a, const Letter& b) { return letter_key(a) < letter_key(b); }

bool operator==(const Word& a, const Word& b) {
  return a.dom == b.dom && a.cod == b.cod && a.letters == b.letters;
}

bool operator<(const Word& a, const Word& b) {
  if (a.dom != b.dom) return a.dom < b.dom;
  if (a.cod != b.cod) return a.cod < b.cod;
  if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
  return a.letters < b.letters;
}

const GeneratorDecl* Presentation::find(const std::string& g) const {
  for (const auto& d : generators)
    if (d.name == g) return &d;
  return nullptr;
}

const GeneratorDecl& Presentation::at(const std::string& g) const {
  const GeneratorDecl* d = find(g);
  if (!d) throw DomainError("unknown generator: " + g);
  return *d;
}

int Presentation::max_generator_arity() const {
  int m = 0;
  for (const auto& d : generators) m = std::max(m, d.domain);
  return m;
}

int Presentation::max_generator_coarity() const {
  int m = 0;
  for (const auto& d : generators) m = std::max(m, d.codomain);
  return m;
}

void Presentation::require_object(int n) const {
  if (!valid_object(n))
    throw DomainError("object [" + std::to_string(n) + "] does not exist in " +
                      (pointed ? std::string("a pointed") : std::string("an unpointed")) + " theory");
}

static bool reserved_name(const std::string& s) {
  static const std::regex proj_re("^p[0-9]+_[0-9]+$");
  static const std::regex iota_re("^iota[0-9]+$");
  return std::regex_match(s, proj_re) || std::regex_match(s, iota_re) || s == "id" ||
         std::regex_match(s, std::regex("^id[0-9]+$"));
}

static std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Presentation parse_presentation(const std::string& text) {
  Presentation p;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool saw_theory = false, saw_mode = false;
  int declared_max_object = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "theory") {
      std::string nm;
      if (!(ls >> nm)) throw ParseError(lineno, "expected: theory <identifier>");
      p.name = nm;
      saw_theory = true;
    } else if (kw == "pointed" || kw == "unpointed") {
      if (!saw_theory) throw ParseError(lineno, "theory line must come first");
      p.pointed = (kw == "pointed");
      saw_mode = true;
    } else if (kw == "gen") {
      if (!saw_mode) throw ParseError(lineno, "pointed/unpointed line must precede generators");
      std::string nm, colon, arrow;
      int m = 0, k = 0;
      if (!(ls >> nm >> colon >> m >> arrow >> k) || colon != ":" || arrow != "->")
        throw ParseError(lineno, "expected: gen <name> : <m> -> <k>");
      if (m < 1 || k < 1) throw ParseError(lineno, "generator arity must be >= 1: " + nm);
      if (reserved_name(nm)) throw ParseError(lineno, "generator name is reserved: " + nm);
      if (p.find(nm)) throw ParseError(lineno, "duplicate generator name: " + nm);
      p.generators.push_back({nm, m, k});
    } else if (kw == "maxobject") {
      int n = 0;
      if (!(ls >> n) || n < 1) throw ParseError(lineno, "expected: maxobject <N> with N >= 1");
      declared_max_object = n;
    } else {
      throw ParseError(lineno, "unknown directive: " + kw);
    }
  }
  if (!saw_theory) throw ParseError(lineno, "missing theory line");
  if (!saw_mode) throw ParseError(lineno, "missing pointed/unpointed line");
  int widest = 1;
  for (const auto& g : p.generators) widest = std::max({widest, g.domain, g.codomain});
  p.max_object = declared_max_object > 0 ? declared_max_object : widest + 2;
  return p;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open theory file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_presentation(ss.str());
}

std::string to_text(const Presentation& p) {
  std::ostringstream os;
  os << "theory " << p.name << "\n" << (p.pointed ? "pointed" : "unpointed") << "\n";
  for (const auto& g : p.generators)
    os << "gen " << g.name << " : " << g.domain << " -> " << g.codomain << "\n";
  os << "maxobject " << p.max_object << "\n";
  return os.str();
}

Word identity_word(const Presentation& p, int n) {
  p.require_object(n);
  Word w;
  w.dom = w.cod = n;
  return w;
}

// Through-[0] collapse: [0] is initial and terminal, so a word touching it
// equals the canonical pair to_zero(dom); from_zero(cod).
static void pointed_normalize(Word& w) {
  bool touches_zero = false;
  std::vector<Letter> expanded;
  expanded.reserve(w.letters.size() + 1);
  for (const Letter& l : w.letters) {
    if (l.kind == Letter::Kind::iota) {
      expanded.push_back(Letter::to_zero(l.dom));
      expanded.push_back(Letter::from_zero(1));
      touches_zero = true;
    } else {
      if (l.kind == Letter::Kind::to_zero || l.kind == Letter::Kind::from_zero) touches_zero = true;
      expanded.push_back(l);
    }
  }
  if (!touches_zero) {
    w.letters = std::move(expanded);
    return;
  }
  w.letters.clear();
  if (w.dom != 0) w.letters.push_back(Letter::to_zero(w.dom));
  if (w.cod != 0) w.letters.push_back(Letter::from_zero(w.cod));
}

Word make_word(const Presentation& p, int dom, std::vector<Letter> letters) {
  p.require_object(dom);
  int at = dom;
  for (const Letter& l : letters) {
    if (!p.pointed &&
        (l.kind == Letter::Kind::iota || l.kind == Letter::Kind::to_zero || l.kind == Letter::Kind::from_zero))
      throw DomainError("pointed letter in unpointed theory");
    if (l.kind == Letter::Kind::generator) p.at(l.gen);  // must exist
    if (l.dom != at)
      throw DomainError("letters do not compose: expected domain [" + std::to_string(at) + "], got [" +
                        std::to_string(l.dom) + "]");
    at = l.cod;
  }
  Word w;
  w.dom = dom;
  w.cod = at;
  w.letters = std::move(letters);
  // p(1,1) is the identity on [1]
  w.letters.erase(std::remove_if(w.letters.begin(), w.letters.end(),
                                 [](const Letter& l) {
                                   return l.kind == Letter::Kind::projection && l.dom == 1 && l.k == 1;
                                 }),
                  w.letters.end());
  if (p.pointed) pointed_normalize(w);
  return w;
}

Word compose_words(const Presentation& p, const Word& g, const Word& f) {
  if (f.cod != g.dom)
    throw DomainError("object mismatch in composition: [" + std::to_string(f.cod) + "] vs [" +
                      std::to_string(g.dom) + "]");
  std::vector<Letter> letters = f.letters;
  letters.insert(letters.end(), g.letters.begin(), g.letters.end());
  return make_word(p, f.dom, std::move(letters));
}

std::vector<Letter> letters_from(const Presentation& p, int n, int max_object) {
  std::vector<Letter> out;
  if (n == 0) {
    for (int m = 1; m <= max_object; ++m) out.push_back(Letter::from_zero(m));
    return out;
  }
  for (int k = 1; k <= n; ++k)
    if (n >= 2) out.push_back(Letter::projection(n, k));
  for (const auto& g : p.generators)
    if (g.domain == n) out.push_back(Letter::generator(g));
  if (p.pointed) out.push_back(Letter::to_zero(n));
  return out;
}

std::vector<Word> enumerate_words(const Presentation& p, int n, int m, int max_len) {
  p.require_object(n);
  p.require_object(m);
  if (max_len < 0) throw DomainError("max_len must be >= 0");
  std::vector<Word> out;
  if (n == 0 || m == 0) {
    // all morphisms here factor through [0]
    if (n == 0 && m == 0) {
      out.push_back(identity_word(p, 0));
    } else if (n == 0 && max_len >= 1) {
      out.push_back(make_word(p, 0, {Letter::from_zero(m)}));
    } else if (m == 0 && max_len >= 1) {
      out.push_back(make_word(p, n, {Letter::to_zero(n)}));
    }
    return out;
  }
  // words through positive objects only: plain search over letter extensions
  struct State {
    int at;
    std::vector<Letter> letters;
  };
  std::vector<State> frontier{{n, {}}};
  if (n == m) out.push_back(identity_word(p, n));
  for (int len = 1; len <= max_len; ++len) {
    std::vector<State> next;
    for (const auto& st : frontier) {
      for (const Letter& l : letters_from(p, st.at, p.max_object)) {
        if (l.kind == Letter::Kind::to_zero) continue;  // handled canonically below
        std::vector<Letter> ext = st.letters;
        ext.push_back(l);
        if (l.cod == m) {
          Word w;
          w.dom = n;
          w.cod = m;
          w.letters = ext;
          out.push_back(w);
        }
        next.push_back({l.cod, std::move(ext)});
      }
    }
    frontier = std::move(next);
  }
  // pointed: the unique through-[0] word [n] -> [m] needs two letters
  if (p.pointed && max_len >= 2)
    out.push_back(make_word(p, n, {Letter::to_zero(n), Letter::from_zero(m)}));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(const Letter& l) {
  switch (l.kind) {
    case Letter::Kind::projection:
      return "p" + std::to_string(l.dom) + "_" + std::to_string(l.k);
    case Letter::Kind::generator:
      return l.gen;
    case Letter::Kind::iota:
      return "iota" + std::to_string(l.dom);
    case Letter::Kind::to_zero:
      return "tozero" + std::to_string(l.dom);
    case Letter::Kind::from_zero:
      return "fromzero" + std::to_string(l.cod);
  }
  return "?";
}

std::string to_string(const Word& w) {
  if (w.letters.empty()) return "id" + std::to_string(w.dom);
  std::string s;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (!s.empty()) s += " * ";
    s += to_string(*it);
  }
  return s;
}

Word parse_word(const Presentation& p, const std::string& text) {
  // composition-order chain: "a * b * c" means a after b after c
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == '*') {
      parts.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(strip(cur));
  std::reverse(parts.begin(), parts.end());  // application order
  static const std::regex proj_re("^p([0-9]+)_([0-9]+)$");
  static const std::regex iota_re("^iota([0-9]+)$");
  static const std::regex id_re("^id([0-9]+)$");
  static const std::regex tz_re("^tozero([0-9]+)$");
  static const std::regex fz_re("^fromzero([0-9]+)$");
  std::vector<Letter> letters;
  int dom = -1;
  std::smatch m;
  for (const std::string& tok : parts) {
    if (tok.empty()) throw DomainError("empty letter in word: " + text);
    if (std::regex_match(tok, m, id_re)) {
      int n = std::stoi(m[1]);
      if (dom < 0) dom = n;
      else if (letters.empty() ? dom != n : letters.back().cod != n)
        throw DomainError("identity letter does not compose in: " + text);
      continue;
    }
    Letter l;
    if (std::regex_match(tok, m, proj_re)) {
      l = Letter::projection(std::stoi(m[1]), std::stoi(m[2]));
    } else if (std::regex_match(tok, m, iota_re)) {
      l = Letter::iota(std::stoi(m[1]));
    } else if (std::regex_match(tok, m, tz_re)) {
      l = Letter::to_zero(std::stoi(m[1]));
    } else if (std::regex_match(tok, m, fz_re)) {
      l = Letter::from_zero(std::stoi(m[1]));
    } else {
      l = Letter::generator(p.at(tok));
    }
    if (dom < 0) dom = l.dom;
    letters.push_back(l);
  }
  if (dom < 0) throw DomainError("empty word text; use idN for an identity");
  return make_word(p, dom, std::move(letters));
}

}  // namespace semith
