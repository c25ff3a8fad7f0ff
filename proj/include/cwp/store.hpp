#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "cwp/symbol.hpp"

namespace cwp {

using NodeId = std::uint32_t;
inline constexpr NodeId kEmpty = std::numeric_limits<NodeId>::max();

enum class NodeKind : std::uint8_t { term, pair, slice };

// Pair children are never empty. A slice keeps its source in `left` and
// covers positions lo .. lo+length-1 of it (1-based).
struct Node {
  NodeKind kind = NodeKind::term;
  Symbol symbol;
  NodeId left = kEmpty;
  NodeId right = kEmpty;
  std::uint32_t height = 0;
  Symbol first;
  Symbol last;
  BigInt length;
  BigInt lo;
};

// Append-only arena of grammar nodes. Every node ever created stays valid,
// so words built from one store can share structure freely.
class Store {
 public:
  Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  std::uint64_t uid() const noexcept { return uid_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Node& operator[](NodeId id) const { return nodes_[id]; }

  const BigInt& length(NodeId id) const;
  std::uint32_t height(NodeId id) const;
  Symbol first(NodeId id) const { return nodes_[id].first; }
  Symbol last(NodeId id) const { return nodes_[id].last; }

  NodeId term(Symbol s);
  NodeId pair(NodeId a, NodeId b);
  NodeId pair(NodeId a, NodeId b, NodeId c) { return pair(pair(a, b), c); }
  // Positions lo..hi of src, 1-based inclusive. lo == hi + 1 gives the empty word.
  NodeId slice(NodeId src, const BigInt& lo, const BigInt& hi);
  NodeId prefix(NodeId src, const BigInt& n);
  NodeId suffix_from(NodeId src, const BigInt& i);
  NodeId word(std::span<const Symbol> symbols);
  NodeId invert(NodeId id);

  Symbol char_at(NodeId id, BigInt i) const;

  // Raw pair without empty handling; used by normalization.
  NodeId make_pair(NodeId a, NodeId b);

 private:
  NodeId push(Node&& n);
  NodeId word_range(std::span<const Symbol> symbols);

  std::deque<Node> nodes_;
  std::unordered_map<std::uint64_t, NodeId> terms_;
  std::unordered_map<NodeId, NodeId> inverses_;
  std::uint64_t uid_;
};

// A word together with the store it lives in.
class CompressedWord {
 public:
  CompressedWord() = default;
  CompressedWord(std::shared_ptr<Store> store, NodeId root)
      : store_(std::move(store)), root_(root) {}

  Store& store() const { return *store_; }
  const std::shared_ptr<Store>& store_ptr() const { return store_; }
  NodeId root() const { return root_; }
  const BigInt& length() const { return store_->length(root_); }
  bool empty() const { return root_ == kEmpty; }

 private:
  std::shared_ptr<Store> store_;
  NodeId root_ = kEmpty;
};

}  // namespace cwp
