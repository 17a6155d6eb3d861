#include "multinil/tree.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace multinil {

TreePool::TreePool(int arity) : d_(arity) {
  if (arity < 2) throw std::invalid_argument("arity must be at least 2");
}

const TreePool::Node& TreePool::at(TreeId t) const {
  if (t < 0 || static_cast<size_t>(t) >= nodes_.size())
    throw std::out_of_range("bad tree id");
  return nodes_[t];
}

TreeId TreePool::intern(Node n) {
  auto it = index_.find(n.code);
  if (it != index_.end()) return it->second;
  TreeId id = static_cast<TreeId>(nodes_.size());
  index_.emplace(n.code, id);
  nodes_.push_back(std::move(n));
  return id;
}

TreeId TreePool::leaf(int label) {
  if (label < 0) throw std::invalid_argument("leaf labels are nonnegative");
  Node n;
  n.label = label;
  n.code = std::to_string(label);
  n.leaves = 1;
  n.mask = label < 64 ? (uint64_t(1) << label) : 0;
  std::lock_guard<std::mutex> g(mu_);
  return intern(std::move(n));
}

TreeId TreePool::node(std::vector<TreeId> children) {
  if (static_cast<int>(children.size()) != d_)
    throw std::invalid_argument("node needs exactly d children");
  std::lock_guard<std::mutex> g(mu_);
  std::sort(children.begin(), children.end(),
            [&](TreeId a, TreeId b) { return at(a).code < at(b).code; });
  Node n;
  n.code = "(";
  for (size_t i = 0; i < children.size(); ++i) {
    const Node& c = at(children[i]);
    if (i) n.code += ",";
    n.code += c.code;
    n.leaves += c.leaves;
    n.mask |= c.mask;
  }
  n.code += ")";
  n.children = std::move(children);
  return intern(std::move(n));
}

bool TreePool::is_leaf(TreeId t) const {
  std::lock_guard<std::mutex> g(mu_);
  return at(t).label >= 0;
}

int TreePool::label(TreeId t) const {
  std::lock_guard<std::mutex> g(mu_);
  const Node& n = at(t);
  if (n.label < 0) throw std::invalid_argument("label of internal node");
  return n.label;
}

std::vector<TreeId> TreePool::children(TreeId t) const {
  std::lock_guard<std::mutex> g(mu_);
  const Node& n = at(t);
  if (n.label >= 0) throw std::invalid_argument("children of a leaf");
  return n.children;
}

int TreePool::leaf_count(TreeId t) const {
  std::lock_guard<std::mutex> g(mu_);
  return at(t).leaves;
}

uint64_t TreePool::label_mask(TreeId t) const {
  std::lock_guard<std::mutex> g(mu_);
  return at(t).mask;
}

const std::string& TreePool::code(TreeId t) const {
  std::lock_guard<std::mutex> g(mu_);
  return at(t).code;
}

TreeId TreePool::graft(TreeId t, int label, TreeId subtree) {
  std::lock_guard<std::mutex> g(mu_);
  std::map<TreeId, TreeId> memo;
  auto rec = [&](auto&& self, TreeId u) -> TreeId {
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    const Node& n = at(u);
    TreeId out;
    if (n.label >= 0) {
      out = n.label == label ? subtree : u;
    } else {
      std::vector<TreeId> ch;
      ch.reserve(n.children.size());
      bool changed = false;
      for (TreeId c : n.children) {
        TreeId nc = self(self, c);
        changed = changed || nc != c;
        ch.push_back(nc);
      }
      if (!changed) {
        out = u;
      } else {
        std::sort(ch.begin(), ch.end(), [&](TreeId a, TreeId b) {
          return at(a).code < at(b).code;
        });
        Node m;
        m.code = "(";
        for (size_t i = 0; i < ch.size(); ++i) {
          if (i) m.code += ",";
          m.code += at(ch[i]).code;
          m.leaves += at(ch[i]).leaves;
          m.mask |= at(ch[i]).mask;
        }
        m.code += ")";
        m.children = std::move(ch);
        out = intern(std::move(m));
      }
    }
    memo.emplace(u, out);
    return out;
  };
  return rec(rec, t);
}

TreeId TreePool::relabel(TreeId t, const std::vector<int>& map) {
  std::lock_guard<std::mutex> g(mu_);
  std::map<TreeId, TreeId> memo;
  auto make_leaf = [&](int label) {
    Node n;
    n.label = label;
    n.code = std::to_string(label);
    n.leaves = 1;
    n.mask = label < 64 ? (uint64_t(1) << label) : 0;
    return intern(std::move(n));
  };
  auto rec = [&](auto&& self, TreeId u) -> TreeId {
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    const Node& n = at(u);
    TreeId out;
    if (n.label >= 0) {
      if (n.label >= static_cast<int>(map.size()))
        throw std::invalid_argument("relabel map too short");
      int nl = map[n.label];
      if (nl < 0) throw std::invalid_argument("relabel to negative label");
      out = nl == n.label ? u : make_leaf(nl);
    } else {
      std::vector<TreeId> ch;
      ch.reserve(n.children.size());
      for (TreeId c : n.children) ch.push_back(self(self, c));
      std::sort(ch.begin(), ch.end(), [&](TreeId a, TreeId b) {
        return at(a).code < at(b).code;
      });
      Node m;
      m.code = "(";
      for (size_t i = 0; i < ch.size(); ++i) {
        if (i) m.code += ",";
        m.code += at(ch[i]).code;
        m.leaves += at(ch[i]).leaves;
        m.mask |= at(ch[i]).mask;
      }
      m.code += ")";
      m.children = std::move(ch);
      out = intern(std::move(m));
    }
    memo.emplace(u, out);
    return out;
  };
  return rec(rec, t);
}

std::vector<TreeId> TreePool::enumerate_trees(const std::vector<int>& labels) {
  if (labels.empty()) return {};
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate labels");

  // Trees on a label set exist only when |S| = 1 mod (d-1).
  auto rec = [&](auto&& self, const std::vector<int>& s) -> std::vector<TreeId> {
    if (s.size() == 1) return {leaf(s[0])};
    if ((s.size() - 1) % (d_ - 1) != 0) return {};
    std::vector<TreeId> out;
    // Set partitions of s into exactly d nonempty blocks, blocks created in
    // order of first appearance (restricted growth), so each partition once.
    std::vector<std::vector<int>> blocks;
    auto assign = [&](auto&& go, size_t i) -> void {
      if (i == s.size()) {
        if (static_cast<int>(blocks.size()) != d_) return;
        std::vector<std::vector<TreeId>> per_block;
        per_block.reserve(blocks.size());
        for (const auto& b : blocks) {
          per_block.push_back(self(self, b));
          if (per_block.back().empty()) return;
        }
        std::vector<size_t> pick(blocks.size(), 0);
        for (;;) {
          std::vector<TreeId> ch;
          ch.reserve(blocks.size());
          for (size_t k = 0; k < pick.size(); ++k)
            ch.push_back(per_block[k][pick[k]]);
          out.push_back(node(std::move(ch)));
          size_t k = 0;
          while (k < pick.size() && ++pick[k] == per_block[k].size())
            pick[k++] = 0;
          if (k == pick.size()) break;
        }
        return;
      }
      size_t remaining = s.size() - i;
      for (size_t b = 0; b < blocks.size(); ++b) {
        if (blocks.size() + remaining - 1 < static_cast<size_t>(d_)) break;
        blocks[b].push_back(s[i]);
        go(go, i + 1);
        blocks[b].pop_back();
      }
      if (blocks.size() < static_cast<size_t>(d_)) {
        blocks.push_back({s[i]});
        go(go, i + 1);
        blocks.pop_back();
      }
    };
    assign(assign, 0);
    return out;
  };

  std::vector<TreeId> all = rec(rec, sorted);
  std::sort(all.begin(), all.end(),
            [&](TreeId a, TreeId b) { return code(a) < code(b); });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::vector<TreeId> TreePool::enumerate_shapes(int m) {
  if (m < 1) return {};
  std::vector<std::vector<TreeId>> by_size(m + 1);
  by_size[1] = {leaf(0)};
  for (int sz = 2; sz <= m; ++sz) {
    if ((sz - 1) % (d_ - 1) != 0) continue;
    std::vector<TreeId> out;
    // Choose d shapes with repetition, non-decreasing in (size, position),
    // leaf counts summing to sz.
    std::vector<TreeId> ch;
    auto choose = [&](auto&& self, int slot, int min_size, size_t min_pos,
                      int left) -> void {
      if (slot == d_) {
        if (left == 0) out.push_back(node(ch));
        return;
      }
      int slots_left = d_ - slot;
      for (int s = min_size; s <= left - (slots_left - 1); ++s) {
        size_t start = (s == min_size) ? min_pos : 0;
        for (size_t p = start; p < by_size[s].size(); ++p) {
          ch.push_back(by_size[s][p]);
          self(self, slot + 1, s, p, left - s);
          ch.pop_back();
        }
      }
    };
    choose(choose, 0, 1, 0, sz);
    std::sort(out.begin(), out.end(),
              [&](TreeId a, TreeId b) { return code(a) < code(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    by_size[sz] = std::move(out);
  }
  return by_size[m];
}

Integer TreePool::automorphisms(TreeId t) {
  std::lock_guard<std::mutex> g(mu_);
  std::map<TreeId, Integer> memo;
  auto rec = [&](auto&& self, TreeId u) -> Integer {
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    const Node& n = at(u);
    Integer a = 1;
    if (n.label < 0) {
      size_t i = 0;
      while (i < n.children.size()) {
        size_t j = i;
        while (j < n.children.size() && n.children[j] == n.children[i]) ++j;
        a *= factorial(static_cast<unsigned long>(j - i));
        i = j;
      }
      for (TreeId c : n.children) a *= self(self, c);
    }
    memo.emplace(u, a);
    return a;
  };
  return rec(rec, t);
}

Integer count_trees_formula(int d, int q) {
  if (d < 2 || q < 1) throw std::invalid_argument("bad arity or size");
  if ((q - 1) % (d - 1) != 0) return 0;
  std::vector<Integer> t(q + 1, Integer(0));
  t[1] = 1;
  for (int n = 2; n <= q; ++n) {
    if ((n - 1) % (d - 1) != 0) continue;
    // Sum over ordered compositions n = i_1 + ... + i_d of
    // multinomial(n; i) * prod t[i_j], divided by d! (all blocks distinct
    // as label sets, so the ordered count overcounts by exactly d!).
    Integer total = 0;
    std::vector<int> parts;
    auto go = [&](auto&& self, int slot, int left) -> void {
      if (slot == d - 1) {
        if (left < 1) return;
        parts.push_back(left);
        Integer term = factorial(static_cast<unsigned long>(n));
        for (int p : parts) {
          term /= factorial(static_cast<unsigned long>(p));
          term *= t[p];
        }
        total += term;
        parts.pop_back();
        return;
      }
      for (int i = 1; i <= left - (d - 1 - slot); ++i) {
        parts.push_back(i);
        self(self, slot + 1, left - i);
        parts.pop_back();
      }
    };
    go(go, 0, n);
    t[n] = total / factorial(static_cast<unsigned long>(d));
  }
  return t[q];
}

}  // namespace multinil
