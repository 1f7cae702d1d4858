#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "deepnodes/biseries.hpp"
#include "deepnodes/error.hpp"

namespace deepnodes {

/// Ordered tree in which the edge to the rightmost child may be marked,
/// provided that child is not a leaf.
///
/// The mark lives on the child: `marked` means "the edge from my parent to me
/// is marked". Heights count nodes, so a single node has height 1.
struct MarkedTree {
  std::vector<MarkedTree> children;
  bool marked = false;

  bool is_leaf() const { return children.empty(); }
  friend bool operator==(const MarkedTree&, const MarkedTree&) = default;
};

struct TreeStats {
  std::size_t nodes = 0;
  std::size_t height = 0;   // nodes on a longest root-to-leaf chain
  std::size_t deepest = 0;  // nodes on level == height, root on level 1
  std::size_t marks = 0;
  friend bool operator==(const TreeStats&, const TreeStats&) = default;
};

/// Largest size `generate` will materialize by default.
inline constexpr std::size_t kDefaultGenerateBound = 12;

/// Why `t` breaks the marking rule, or empty if it is valid.
inline std::string validate(const MarkedTree& t, bool is_root = true) {
  if (is_root && t.marked) return "root cannot be marked";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    const MarkedTree& c = t.children[i];
    if (c.marked && i + 1 != t.children.size()) return "marked edge is not the rightmost";
    if (c.marked && c.is_leaf()) return "marked edge leads to a leaf";
    if (auto why = validate(c, false); !why.empty()) return why;
  }
  return {};
}

inline TreeStats stats(const MarkedTree& t) {
  TreeStats s;
  // Iterative walk keeps deep chains off the call stack.
  struct Frame {
    const MarkedTree* node;
    std::size_t level;
  };
  std::vector<Frame> stack{{&t, 1}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    ++s.nodes;
    if (f.node->marked) ++s.marks;
    if (f.level > s.height) {
      s.height = f.level;
      s.deepest = 0;
    }
    if (f.level == s.height) ++s.deepest;
    for (const auto& c : f.node->children) stack.push_back({&c, f.level + 1});
  }
  return s;
}

// Encoding grammar:  tree := '(' body ')' ;  body := tree* ['*' tree]
// The starred tree is the marked rightmost child and may not be "()".

inline void encode_into(const MarkedTree& t, std::string& out) {
  out += '(';
  for (const auto& c : t.children) {
    if (c.marked) out += '*';
    encode_into(c, out);
  }
  out += ')';
}

inline std::string encode(const MarkedTree& t) {
  std::string out;
  encode_into(t, out);
  return out;
}

namespace detail {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  MarkedTree parse() {
    MarkedTree t = tree();
    if (pos_ != text_.size()) throw ParseError("trailing characters after tree", pos_);
    return t;
  }

 private:
  MarkedTree tree() {
    expect('(');
    MarkedTree t;
    while (pos_ < text_.size() && text_[pos_] != ')') {
      if (text_[pos_] == '*') {
        const std::size_t star = pos_++;
        MarkedTree child = tree();
        if (child.is_leaf()) throw InvalidMark("'*' before a leaf at position " + std::to_string(star));
        if (pos_ < text_.size() && text_[pos_] != ')')
          throw InvalidMark("'*' on a child that is not the last at position " + std::to_string(star));
        child.marked = true;
        t.children.push_back(std::move(child));
      } else {
        t.children.push_back(tree());
      }
    }
    expect(')');
    return t;
  }

  void expect(char c) {
    if (pos_ >= text_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
    if (text_[pos_] != c) throw ParseError(std::string("expected '") + c + "' but found '" + text_[pos_] + "'", pos_);
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

/// All encodings of size n, memoized per size (unsorted).
class EncodingTable {
 public:
  const std::vector<std::string>& trees(std::size_t n) {
    if (auto it = trees_.find(n); it != trees_.end()) return it->second;
    std::vector<std::string> out;
    for (const auto& body : bodies(n - 1)) out.push_back("(" + body + ")");
    return trees_.emplace(n, std::move(out)).first->second;
  }

 private:
  // Child lists with m nodes in total.
  const std::vector<std::string>& bodies(std::size_t m) {
    if (auto it = bodies_.find(m); it != bodies_.end()) return it->second;
    std::vector<std::string> out;
    if (m == 0) {
      out.emplace_back();
    } else {
      for (std::size_t first = 1; first <= m; ++first) {
        const auto& heads = trees(first);
        const auto& tails = bodies(m - first);
        for (const auto& h : heads)
          for (const auto& rest : tails) out.push_back(h + rest);
      }
      if (m >= 2)
        for (const auto& t : trees(m)) out.push_back("*" + t);
    }
    return bodies_.emplace(m, std::move(out)).first->second;
  }

  std::map<std::size_t, std::vector<std::string>> trees_;
  std::map<std::size_t, std::vector<std::string>> bodies_;
};

}  // namespace detail

/// Parses the encoding; throws ParseError or InvalidMark.
inline MarkedTree decode(std::string_view text) { return detail::TreeParser(text).parse(); }

/// Canonical encodings of all trees with n nodes, in ascending lexicographic order.
inline std::vector<std::string> generate_encodings(std::size_t n, std::size_t bound = kDefaultGenerateBound) {
  if (n < 1) throw SizeZero("tree size must be at least 1");
  if (n > bound)
    throw SizeBoundExceeded("refusing to enumerate trees of size " + std::to_string(n) + " (bound " +
                            std::to_string(bound) + ")");
  detail::EncodingTable table;
  std::vector<std::string> out = table.trees(n);
  std::sort(out.begin(), out.end());
  return out;
}

/// Every marked ordered tree with n nodes, once each, in canonical order.
inline std::vector<MarkedTree> generate(std::size_t n, std::size_t bound = kDefaultGenerateBound) {
  std::vector<MarkedTree> out;
  for (const auto& e : generate_encodings(n, bound)) out.push_back(decode(e));
  return out;
}

/// Calls f(tree, stats) for every tree of size n, in canonical order, without
/// keeping the whole family alive.
inline void for_each_tree(std::size_t n, const std::function<void(const MarkedTree&, const TreeStats&)>& f,
                          std::size_t bound = kDefaultGenerateBound) {
  for (const auto& e : generate_encodings(n, bound)) {
    const MarkedTree t = decode(e);
    f(t, stats(t));
  }
}

/// Sum over all trees of size n of t^{deepest(tree)}.
inline TPoly deepest_polynomial(std::size_t n, std::size_t bound = kDefaultGenerateBound) {
  TPoly p(n + 1);
  for_each_tree(n, [&](const MarkedTree&, const TreeStats& s) { p[s.deepest] += 1; }, bound);
  tpoly::trim(p);
  return p;
}

}  // namespace deepnodes
