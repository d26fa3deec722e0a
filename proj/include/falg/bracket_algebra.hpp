#pragma once

#include <cctype>
#include <algorithm>
#include <compare>
#include <functional>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "falg/error.hpp"

namespace falg {

enum class Flavor { almost, lie };

inline const char* to_string(Flavor f) { return f == Flavor::almost ? "almost" : "lie"; }

inline Flavor parse_flavor(std::string_view s) {
  if (s == "almost") return Flavor::almost;
  if (s == "lie") return Flavor::lie;
  throw invalid_input("unknown flavor '" + std::string(s) + "' (expected almost|lie)");
}

/// Full binary bracket tree with generator indices (1-based) at the leaves.
///
/// Total order: degree first, then generator index for leaves, then left
/// subtrees, then right subtrees.
class Tree {
 public:
  Tree() = default;

  static Tree leaf(int generator) {
    if (generator < 1) throw invalid_input("generator index must be positive");
    Tree t;
    t.node_ = std::make_shared<const Node>(Node{generator, 1, {}, {}});
    return t;
  }

  static Tree join(const Tree& left, const Tree& right) {
    Tree t;
    t.node_ = std::make_shared<const Node>(Node{0, left.degree() + right.degree(), left.node_, right.node_});
    return t;
  }

  bool valid() const { return node_ != nullptr; }
  bool is_leaf() const { return node_->generator != 0; }
  int generator() const { return node_->generator; }
  int degree() const { return node_->degree; }
  Tree left() const { return Tree(node_->left); }
  Tree right() const { return Tree(node_->right); }

  int max_generator() const {
    return is_leaf() ? generator() : std::max(left().max_generator(), right().max_generator());
  }

  /// Leaf labels left to right.
  std::vector<int> leaves() const {
    std::vector<int> out;
    collect(out);
    return out;
  }

  std::string str() const {
    if (is_leaf()) return "e" + std::to_string(generator());
    return "[" + left().str() + "," + right().str() + "]";
  }

  friend int compare(const Tree& a, const Tree& b) {
    if (a.node_ == b.node_) return 0;
    if (!a.node_ || !b.node_) return a.node_ ? 1 : -1;
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    if (a.is_leaf()) return a.generator() == b.generator() ? 0 : (a.generator() < b.generator() ? -1 : 1);
    if (int c = compare(a.left(), b.left())) return c;
    return compare(a.right(), b.right());
  }

  friend bool operator==(const Tree& a, const Tree& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Tree& a, const Tree& b) { return compare(a, b) <=> 0; }

 private:
  struct Node {
    int generator;  // 0 for internal nodes
    int degree;
    std::shared_ptr<const Node> left, right;
  };

  explicit Tree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  void collect(std::vector<int>& out) const {
    if (is_leaf()) {
      out.push_back(generator());
      return;
    }
    left().collect(out);
    right().collect(out);
  }

  std::shared_ptr<const Node> node_;
};

/// Parses "e1", "[e1,[e2,e3]]" (whitespace ignored).
inline Tree parse_tree(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> Tree { throw parse_error(pos, what); };
  std::function<Tree()> node = [&]() -> Tree {
    skip();
    if (pos >= text.size()) return fail("unexpected end of monomial");
    if (text[pos] == '[') {
      ++pos;
      Tree l = node();
      skip();
      if (pos >= text.size() || text[pos] != ',') return fail("expected ','");
      ++pos;
      Tree r = node();
      skip();
      if (pos >= text.size() || text[pos] != ']') return fail("expected ']'");
      ++pos;
      return Tree::join(l, r);
    }
    if (text[pos] != 'e') return fail("expected generator 'e<k>' or '['");
    ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos || pos - start > 6) return fail("expected generator index");
    const int g = std::stoi(std::string(text.substr(start, pos - start)));
    if (g < 1) return fail("generator indices start at 1");
    return Tree::leaf(g);
  };
  Tree t = node();
  skip();
  if (pos != text.size()) fail("trailing characters after monomial");
  return t;
}

/// Integer combination of canonical monomials; zero coefficients never stored.
using SignedCombination = std::map<Tree, long long>;

inline void accumulate(SignedCombination& into, const Tree& t, long long c) {
  if (c == 0) return;
  auto [it, inserted] = into.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) into.erase(it);
  }
}

inline std::string render(const SignedCombination& c) {
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [t, k] : c) {
    const long long mag = k < 0 ? -k : k;
    std::string term = mag == 1 ? t.str() : std::to_string(mag) + "*" + t.str();
    if (out.empty()) out = k < 0 ? "-" + term : term;
    else out += (k < 0 ? " - " : " + ") + term;
  }
  return out;
}

inline void check_generators(const Tree& t, int generator_count) {
  if (t.max_generator() > generator_count)
    throw invalid_input("generator index out of range in " + t.str());
}

namespace detail {

struct SignedTree {
  int sign;  // 0 means the bracket vanishes
  Tree tree;
};

inline SignedTree canonical_almost(const Tree& t) {
  if (t.is_leaf()) return {1, t};
  SignedTree l = canonical_almost(t.left());
  if (l.sign == 0) return l;
  SignedTree r = canonical_almost(t.right());
  if (r.sign == 0) return r;
  const int c = compare(l.tree, r.tree);
  if (c == 0) return {0, {}};
  if (c < 0) return {l.sign * r.sign, Tree::join(l.tree, r.tree)};
  return {-l.sign * r.sign, Tree::join(r.tree, l.tree)};
}

}  // namespace detail

/// Antisymmetry-only reduction: reorders children (smaller left), [u,u] = 0.
inline SignedCombination canonicalize_almost(const Tree& t, int generator_count) {
  check_generators(t, generator_count);
  SignedCombination out;
  auto s = detail::canonical_almost(t);
  if (s.sign != 0) out.emplace(s.tree, s.sign);
  return out;
}

// ---------------------------------------------------------------------------
// Lyndon words

using Word = std::vector<int>;

inline bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  // strictly smaller than each proper rotation
  for (std::size_t k = 1; k < w.size(); ++k) {
    Word rot(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    if (!(w < rot)) return false;
  }
  return true;
}

/// Standard bracketing: w = uv with v the longest proper Lyndon suffix.
inline Tree standard_bracketing(const Word& w) {
  if (w.size() == 1) return Tree::leaf(w[0]);
  for (std::size_t k = 1; k < w.size(); ++k) {
    Word v(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
    if (is_lyndon(v)) {
      Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
      return Tree::join(standard_bracketing(u), standard_bracketing(v));
    }
  }
  throw error("standard_bracketing: no Lyndon suffix");  // unreachable: the last letter is Lyndon
}

/// Lyndon words of length exactly d over {1..m}, lexicographic (Duval).
inline std::vector<Word> lyndon_words(int m, int d) {
  std::vector<Word> out;
  if (m < 1 || d < 1) return out;
  Word w{1};
  while (!w.empty()) {
    if (static_cast<int>(w.size()) == d) out.push_back(w);
    const std::size_t n = w.size();
    while (static_cast<int>(w.size()) < d) w.push_back(w[w.size() - n]);
    while (!w.empty() && w.back() == m) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

using WordPolynomial = std::map<Word, long long>;

/// Expansion of a bracket in the free associative algebra, [a,b] = ab - ba.
inline WordPolynomial expand_to_words(const Tree& t) {
  WordPolynomial out;
  if (t.is_leaf()) {
    out[{t.generator()}] = 1;
    return out;
  }
  const WordPolynomial l = expand_to_words(t.left());
  const WordPolynomial r = expand_to_words(t.right());
  for (const auto& [u, cu] : l)
    for (const auto& [v, cv] : r) {
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      Word vu = v;
      vu.insert(vu.end(), u.begin(), u.end());
      out[uv] += cu * cv;
      out[vu] -= cu * cv;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline bool is_lyndon_tree(const Tree& t) {
  const Word w = t.leaves();
  return is_lyndon(w) && standard_bracketing(w) == t;
}

/// Expansion in the Lyndon basis, peeling off the lexicographically smallest
/// word: it is Lyndon, and the standard bracketing of a Lyndon word w expands
/// to w plus strictly larger words.
inline SignedCombination normalize_lie(const Tree& t, int generator_count) {
  check_generators(t, generator_count);
  SignedCombination out;
  if (t.is_leaf()) {
    out.emplace(t, 1);
    return out;
  }
  WordPolynomial rest = expand_to_words(t);
  while (!rest.empty()) {
    const auto [w, c] = *rest.begin();
    if (!is_lyndon(w)) throw error("normalize_lie: leading word is not Lyndon");  // not a Lie element
    const Tree b = standard_bracketing(w);
    accumulate(out, b, c);
    for (const auto& [u, cu] : expand_to_words(b)) {
      long long& slot = rest[u];
      slot -= c * cu;
      if (slot == 0) rest.erase(u);
    }
  }
  return out;
}

inline bool is_canonical(const Tree& t, Flavor flavor) {
  if (flavor == Flavor::lie) return is_lyndon_tree(t);
  if (t.is_leaf()) return true;
  return is_canonical(t.left(), flavor) && is_canonical(t.right(), flavor) && compare(t.left(), t.right()) < 0;
}

inline SignedCombination normalize(const Tree& t, int generator_count, Flavor flavor) {
  return flavor == Flavor::almost ? canonicalize_almost(t, generator_count) : normalize_lie(t, generator_count);
}

/// Canonical degree-d monomials. Almost flavor: increasing tree order; lie
/// flavor: standard bracketings of Lyndon words in lexicographic order.
inline std::vector<Tree> enumerate_basis(int m, int d, Flavor flavor) {
  if (m < 1 || d < 1) throw invalid_input("enumerate_basis needs m >= 1 and d >= 1");
  std::vector<Tree> out;
  if (flavor == Flavor::lie) {
    for (const auto& w : lyndon_words(m, d)) out.push_back(standard_bracketing(w));
    return out;
  }
  std::vector<std::vector<Tree>> by_degree(static_cast<std::size_t>(d) + 1);
  for (int g = 1; g <= m; ++g) by_degree[1].push_back(Tree::leaf(g));
  for (int k = 2; k <= d; ++k) {
    auto& level = by_degree[static_cast<std::size_t>(k)];
    for (int i = 1; 2 * i <= k; ++i) {
      const auto& lefts = by_degree[static_cast<std::size_t>(i)];
      const auto& rights = by_degree[static_cast<std::size_t>(k - i)];
      for (std::size_t a = 0; a < lefts.size(); ++a)
        for (std::size_t b = (2 * i == k ? a + 1 : 0); b < rights.size(); ++b) level.push_back(Tree::join(lefts[a], rights[b]));
    }
    std::sort(level.begin(), level.end());
  }
  return by_degree[static_cast<std::size_t>(d)];
}

inline std::size_t graded_dimension(int m, int d, Flavor flavor) { return enumerate_basis(m, d, flavor).size(); }

/// Memoizing front end for bracket normalization. Not internally
/// synchronized: use one instance per thread.
class BracketTable {
 public:
  BracketTable(int generator_count, Flavor flavor) : m_(generator_count), flavor_(flavor) {}

  int generator_count() const { return m_; }
  Flavor flavor() const { return flavor_; }

  /// Normal form of [u, v] for canonical u, v.
  const SignedCombination& bracket(const Tree& u, const Tree& v) {
    auto key = std::make_pair(u, v);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(std::move(key), normalize(Tree::join(u, v), m_, flavor_)).first->second;
  }

 private:
  int m_;
  Flavor flavor_;
  std::map<std::pair<Tree, Tree>, SignedCombination> cache_;
};

}  // namespace falg
