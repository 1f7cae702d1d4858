#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deepnodes/error.hpp"
#include "deepnodes/trees.hpp"

namespace deepnodes {

// Text form, one character per step:  U = up, D = down, L = red down-step
// (decorated paths) or south-west step (skew paths).

enum class DecoratedStep : char { Up = 'U', Down = 'D', RedDown = 'L' };
enum class SkewStep : char { Up = 'U', Down = 'D', Left = 'L' };

struct DecoratedPath {
  std::vector<DecoratedStep> steps;
  friend bool operator==(const DecoratedPath&, const DecoratedPath&) = default;
};

struct SkewPath {
  std::vector<SkewStep> steps;
  friend bool operator==(const SkewPath&, const SkewPath&) = default;
};

struct Point {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

template <typename Path>
std::string to_string(const Path& p) {
  std::string out;
  out.reserve(p.steps.size());
  for (auto s : p.steps) out += static_cast<char>(s);
  return out;
}

namespace detail {

template <typename Step>
std::vector<Step> parse_steps(std::string_view text) {
  std::vector<Step> steps;
  steps.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != 'U' && c != 'D' && c != 'L') throw ParseError(std::string("unexpected step '") + c + "'", i);
    steps.push_back(static_cast<Step>(c));
  }
  return steps;
}

}  // namespace detail

/// Why p is not a decorated Dyck path, or nullopt.
///
/// Besides the Dyck condition, a red step may not close a leaf edge (follow an
/// up-step) and may not be followed by an up-step: the marked edge must be the
/// rightmost one at its node.
inline std::optional<std::string> decorated_violation(const DecoratedPath& p) {
  long height = 0;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const DecoratedStep s = p.steps[i];
    if (s == DecoratedStep::RedDown && i > 0 && p.steps[i - 1] == DecoratedStep::Up)
      return "red down-step right after an up-step at step " + std::to_string(i);
    if (s == DecoratedStep::Up && i > 0 && p.steps[i - 1] == DecoratedStep::RedDown)
      return "up-step right after a red down-step at step " + std::to_string(i);
    height += s == DecoratedStep::Up ? 1 : -1;
    if (height < 0) return "path goes below the axis at step " + std::to_string(i);
  }
  if (height != 0) return "path ends at height " + std::to_string(height);
  return std::nullopt;
}

inline DecoratedPath parse_decorated(std::string_view text) {
  return DecoratedPath{detail::parse_steps<DecoratedStep>(text)};
}

inline SkewPath parse_skew(std::string_view text) { return SkewPath{detail::parse_steps<SkewStep>(text)}; }

namespace detail {

inline void walk(const MarkedTree& t, std::vector<DecoratedStep>& out) {
  for (const auto& c : t.children) {
    out.push_back(DecoratedStep::Up);
    walk(c, out);
    out.push_back(c.marked ? DecoratedStep::RedDown : DecoratedStep::Down);
  }
}

}  // namespace detail

/// Walk around the tree: up when descending an edge, down (red if marked) when
/// climbing back.
inline DecoratedPath tree_to_decorated(const MarkedTree& t) {
  DecoratedPath p;
  detail::walk(t, p.steps);
  return p;
}

inline MarkedTree decorated_to_tree(const DecoratedPath& p) {
  if (auto why = decorated_violation(p)) throw InvalidPath(*why);
  MarkedTree root;
  std::vector<MarkedTree*> stack{&root};
  for (auto s : p.steps) {
    if (s == DecoratedStep::Up) {
      stack.back()->children.emplace_back();
      stack.push_back(&stack.back()->children.back());
    } else {
      stack.back()->marked = s == DecoratedStep::RedDown;
      stack.pop_back();
    }
  }
  return root;
}

/// Vertices visited by the skew path, starting at the origin.
inline std::vector<Point> vertices(const SkewPath& p) {
  std::vector<Point> pts{{0, 0}};
  for (auto s : p.steps) {
    Point q = pts.back();
    q.x += s == SkewStep::Left ? -1 : 1;
    q.y += s == SkewStep::Up ? 1 : -1;
    pts.push_back(q);
  }
  return pts;
}

struct SkewValidation {
  bool valid = true;
  std::optional<std::size_t> step;  // index of the first offending step
  std::string diagnostic;
};

/// Nonnegative, ends on the axis, and never traverses a unit segment twice.
inline SkewValidation validate_skew(const SkewPath& p) {
  const auto pts = vertices(p);
  std::set<std::pair<Point, Point>> seen;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const Point a = pts[i];
    const Point b = pts[i + 1];
    if (b.y < 0) return {false, i, "vertex (" + std::to_string(b.x) + "," + std::to_string(b.y) +
                                       ") below the axis after step " + std::to_string(i)};
    if (!seen.insert(std::minmax(a, b)).second)
      return {false, i, "segment traversed twice at step " + std::to_string(i)};
  }
  if (pts.back().y != 0)
    return {false, std::nullopt, "path ends at height " + std::to_string(pts.back().y)};
  return {};
}

inline SkewPath decorated_to_skew(const DecoratedPath& p) {
  if (auto why = decorated_violation(p)) throw InvalidPath(*why);
  SkewPath s;
  s.steps.reserve(p.steps.size());
  for (auto step : p.steps) s.steps.push_back(static_cast<SkewStep>(static_cast<char>(step)));
  if (auto v = validate_skew(s); !v.valid) throw InvalidPath(v.diagnostic);
  return s;
}

inline DecoratedPath skew_to_decorated(const SkewPath& s) {
  if (auto v = validate_skew(s); !v.valid) throw InvalidPath(v.diagnostic);
  DecoratedPath p;
  p.steps.reserve(s.steps.size());
  for (auto step : s.steps) p.steps.push_back(static_cast<DecoratedStep>(static_cast<char>(step)));
  if (auto why = decorated_violation(p)) throw InvalidPath(*why);
  return p;
}

inline SkewPath tree_to_skew(const MarkedTree& t) { return decorated_to_skew(tree_to_decorated(t)); }
inline MarkedTree skew_to_tree(const SkewPath& s) { return decorated_to_tree(skew_to_decorated(s)); }

}  // namespace deepnodes
