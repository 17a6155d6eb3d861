#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "multinil/rational.hpp"

namespace multinil {

// Id of a hash-consed tree inside a TreePool.  Ids are only meaningful per
// pool and per process; anything observable (basis order, certificates) is
// keyed on canonical code strings instead.
using TreeId = int32_t;

// Arena of leaf-labeled unordered d-ary trees.  Children of every internal
// node are kept sorted by canonical code, so structurally equal trees share
// one id.  Thread-safe: all operations take the pool mutex.
class TreePool {
 public:
  explicit TreePool(int arity);

  int arity() const { return d_; }

  TreeId leaf(int label);
  TreeId node(std::vector<TreeId> children);  // sorted internally

  bool is_leaf(TreeId t) const;
  int label(TreeId t) const;                    // leaf only
  std::vector<TreeId> children(TreeId t) const; // internal only
  int leaf_count(TreeId t) const;
  uint64_t label_mask(TreeId t) const;          // OR of (1 << label)
  const std::string& code(TreeId t) const;

  // Replace every leaf labeled `label` by `subtree`.
  TreeId graft(TreeId t, int label, TreeId subtree);
  // Apply label -> relabel[label] to every leaf.
  TreeId relabel(TreeId t, const std::vector<int>& map);

  // All trees whose leaves are exactly `labels` (distinct), each used once.
  // Sorted by canonical code.
  std::vector<TreeId> enumerate_trees(const std::vector<int>& labels);

  // All shapes with m leaves (every leaf labeled 0).  Sorted by code.
  std::vector<TreeId> enumerate_shapes(int m);

  // Number of node-label assignments fixing the tree: the order of the
  // automorphism group permuting equal children.
  Integer automorphisms(TreeId t);

 private:
  struct Node {
    int label = -1;                // >= 0 for leaves
    std::vector<TreeId> children;  // empty for leaves
    std::string code;
    int leaves = 0;
    uint64_t mask = 0;
  };

  TreeId intern(Node n);
  const Node& at(TreeId t) const;

  int d_;
  mutable std::mutex mu_;
  std::deque<Node> nodes_;
  std::unordered_map<std::string, TreeId> index_;
};

// Trees with q distinct labels, by the size recurrence; zero off parity.
Integer count_trees_formula(int d, int q);

}  // namespace multinil
