#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fpr/errors.hpp"

namespace fpr {

/// Relative order of two positions in a term tree.
enum class PosOrder {
  equal,
  strictly_above,  // first is a proper prefix of second
  strictly_below,  // second is a proper prefix of first
  parallel
};

/// A position in a term: a sequence of 1-based argument indices.
/// The empty sequence is the root, printed as "e".
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<std::size_t> indices) : ix_(std::move(indices)) {}

  static Position root() { return Position{}; }

  static Position of(std::initializer_list<std::size_t> ix) {
    return Position{std::vector<std::size_t>(ix)};
  }

  /// Parses "e" or a dot-separated index list such as "1.2.1".
  static Position parse(const std::string& text) {
    if (text == "e") return root();
    std::vector<std::size_t> ix;
    std::size_t i = 0;
    while (i < text.size()) {
      std::size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      if (j == i) throw PositionError("bad position syntax: " + text);
      std::size_t v = std::stoull(text.substr(i, j - i));
      if (v == 0) throw PositionError("position indices are 1-based: " + text);
      ix.push_back(v);
      if (j < text.size()) {
        if (text[j] != '.') throw PositionError("bad position syntax: " + text);
        ++j;
        if (j == text.size()) throw PositionError("bad position syntax: " + text);
      }
      i = j;
    }
    if (ix.empty()) throw PositionError("bad position syntax: " + text);
    return Position{std::move(ix)};
  }

  bool is_root() const { return ix_.empty(); }
  std::size_t size() const { return ix_.size(); }
  const std::vector<std::size_t>& indices() const { return ix_; }

  /// This position extended by one argument index.
  Position plus(std::size_t i) const {
    std::vector<std::size_t> ix = ix_;
    ix.push_back(i);
    return Position{std::move(ix)};
  }

  /// Concatenation: this position followed by `q`.
  Position concat(const Position& q) const {
    std::vector<std::size_t> ix = ix_;
    ix.insert(ix.end(), q.ix_.begin(), q.ix_.end());
    return Position{std::move(ix)};
  }

  bool is_prefix_of(const Position& q) const {
    if (ix_.size() > q.ix_.size()) return false;
    for (std::size_t i = 0; i < ix_.size(); ++i)
      if (ix_[i] != q.ix_[i]) return false;
    return true;
  }

  bool is_strict_prefix_of(const Position& q) const {
    return ix_.size() < q.ix_.size() && is_prefix_of(q);
  }

  /// If this = `p`.w, returns w; otherwise nullopt.
  std::optional<Position> strip_prefix(const Position& p) const {
    if (!p.is_prefix_of(*this)) return std::nullopt;
    return Position{std::vector<std::size_t>(ix_.begin() + p.ix_.size(), ix_.end())};
  }

  /// If this = w.`s`, returns w; otherwise nullopt.
  std::optional<Position> strip_suffix(const Position& s) const {
    if (s.ix_.size() > ix_.size()) return std::nullopt;
    std::size_t off = ix_.size() - s.ix_.size();
    for (std::size_t i = 0; i < s.ix_.size(); ++i)
      if (ix_[off + i] != s.ix_[i]) return std::nullopt;
    return Position{std::vector<std::size_t>(ix_.begin(), ix_.begin() + off)};
  }

  static PosOrder compare(const Position& p, const Position& q) {
    if (p == q) return PosOrder::equal;
    if (p.is_prefix_of(q)) return PosOrder::strictly_above;
    if (q.is_prefix_of(p)) return PosOrder::strictly_below;
    return PosOrder::parallel;
  }

  std::string str() const {
    if (ix_.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < ix_.size(); ++i) {
      if (i) s += '.';
      s += std::to_string(ix_[i]);
    }
    return s;
  }

  friend bool operator==(const Position& a, const Position& b) { return a.ix_ == b.ix_; }
  friend bool operator!=(const Position& a, const Position& b) { return a.ix_ != b.ix_; }

  /// Lexicographic order on index sequences; prefixes come first, so this is
  /// also leftmost-outermost traversal order.
  friend bool operator<(const Position& a, const Position& b) { return a.ix_ < b.ix_; }

 private:
  std::vector<std::size_t> ix_;
};

}  // namespace fpr
