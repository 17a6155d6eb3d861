#include "multinil/element.hpp"

#include <algorithm>
#include <sstream>

namespace multinil {

void MlElement::add(TreeId t, const Rational& c) {
  if (c == 0) return;
  if (pool_->leaf_count(t) != degree_)
    throw std::invalid_argument("tree degree mismatch");
  auto [it, inserted] = terms_.emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MlElement& MlElement::operator+=(const MlElement& o) {
  if (o.pool_ != pool_ || o.degree_ != degree_)
    throw std::invalid_argument("element component mismatch");
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

MlElement MlElement::scaled(const Rational& c) const {
  MlElement r(pool_, degree_);
  if (c == 0) return r;
  for (const auto& [t, v] : terms_) r.terms_.emplace(t, v * c);
  return r;
}

bool MlElement::operator==(const MlElement& o) const {
  return pool_ == o.pool_ && degree_ == o.degree_ && terms_ == o.terms_;
}

std::string MlElement::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<std::string, const Rational*>> parts;
  parts.reserve(terms_.size());
  for (const auto& [t, c] : terms_) parts.emplace_back(pool_->code(t), &c);
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::ostringstream os;
  bool first = true;
  for (const auto& [code, c] : parts) {
    if (!first) os << " + ";
    first = false;
    os << c->get_str() << "*" << code;
  }
  return os.str();
}

SymbolicElement MlElement::eval(
    const MultilinearAlgebra& A, const std::vector<int>& symbol_of_label,
    const std::vector<SymbolicElement>& symbols) const {
  if (symbols.empty()) throw std::invalid_argument("eval needs symbols");
  VarList vars = symbols.front().coords.empty()
                     ? nullptr
                     : symbols.front().coords.front().vars();
  std::map<TreeId, SymbolicElement> memo;
  auto rec = [&](auto&& self, TreeId u) -> const SymbolicElement& {
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    SymbolicElement v;
    if (pool_->is_leaf(u)) {
      v = symbols.at(pool_->label(u));
    } else {
      std::vector<SymbolicElement> args;
      for (TreeId c : pool_->children(u)) args.push_back(self(self, c));
      v = mu(A, args);
    }
    return memo.emplace(u, std::move(v)).first->second;
  };
  SymbolicElement acc;
  acc.coords.assign(A.n, MultiPoly(vars));
  for (const auto& [t, c] : terms_) {
    // Labels sharing a symbol collapse to one relabeled tree, so diagonal
    // evaluations reuse subtree results across the whole support.
    TreeId rt = pool_->relabel(t, symbol_of_label);
    const SymbolicElement& v = rec(rec, rt);
    for (int i = 0; i < A.n; ++i) acc.coords[i] += v.coords[i].scaled(c);
  }
  return acc;
}

namespace {

// Ordered tuples of d disjoint nonempty submasks covering `mask`.
template <typename Fn>
void for_each_ordered_partition(uint64_t mask, int d, std::vector<uint64_t>& out,
                                Fn&& fn) {
  if (d == 1) {
    if (mask) {
      out.push_back(mask);
      fn(out);
      out.pop_back();
    }
    return;
  }
  // Nonempty proper submasks, leaving a nonempty remainder.
  for (uint64_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
    out.push_back(sub);
    for_each_ordered_partition(mask & ~sub, d - 1, out, fn);
    out.pop_back();
  }
}

std::vector<int> mask_bits(uint64_t mask) {
  std::vector<int> bits;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) bits.push_back(i);
  return bits;
}

}  // namespace

MlElement polarize_T(TreePool& pool, int q) {
  if (q < 1) throw std::invalid_argument("polarize_T needs q >= 1");
  int d = pool.arity();
  std::map<uint64_t, MlElement> memo;
  auto lin = [&](auto&& self, uint64_t mask) -> const MlElement& {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::vector<int> labels = mask_bits(mask);
    MlElement e(&pool, static_cast<int>(labels.size()));
    if (labels.size() == 1) {
      e.add(pool.leaf(labels[0]), 1);
    } else if ((labels.size() - 1) % (d - 1) == 0) {
      std::vector<uint64_t> parts;
      for_each_ordered_partition(mask, d, parts, [&](const std::vector<uint64_t>& ps) {
        std::vector<const MlElement*> blocks;
        blocks.reserve(d);
        for (uint64_t p : ps) {
          const MlElement& b = self(self, p);
          if (b.is_zero()) return;
          blocks.push_back(&b);
        }
        std::vector<std::map<TreeId, Rational>::const_iterator> pick;
        pick.reserve(d);
        for (const MlElement* b : blocks) pick.push_back(b->terms().begin());
        for (;;) {
          std::vector<TreeId> ch;
          Rational coeff = 1;
          for (int k = 0; k < d; ++k) {
            ch.push_back(pick[k]->first);
            coeff *= pick[k]->second;
          }
          e.add(pool.node(std::move(ch)), coeff);
          int k = 0;
          while (k < d) {
            if (++pick[k] != blocks[k]->terms().end()) break;
            pick[k] = blocks[k]->terms().begin();
            ++k;
          }
          if (k == d) break;
        }
      });
    }
    return memo.emplace(mask, std::move(e)).first->second;
  };
  uint64_t full = 0;
  for (int i = 1; i <= q; ++i) full |= uint64_t(1) << i;
  return lin(lin, full);
}

MlElement engel_element(TreePool& pool, int n) {
  if (n < 1) throw std::invalid_argument("engel_element needs n >= 1");
  int d = pool.arity();
  int xs = n * (d - 1);
  int t_label = xs + 1;
  Rational level_coeff = Rational(factorial(static_cast<unsigned long>(d - 1)));
  std::map<uint64_t, MlElement> memo;
  auto build = [&](auto&& self, uint64_t mask) -> const MlElement& {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::vector<int> labels = mask_bits(mask);
    MlElement e(&pool, static_cast<int>(labels.size()) + 1);
    if (labels.empty()) {
      e.add(pool.leaf(t_label), 1);
    } else {
      // Choose the d-1 sibling labels of the innermost-first comb level.
      std::vector<int> idx(d - 1);
      auto choose = [&](auto&& go, int slot, int start) -> void {
        if (slot == d - 1) {
          uint64_t sub = 0;
          std::vector<TreeId> ch;
          ch.reserve(d);
          for (int i : idx) {
            sub |= uint64_t(1) << labels[i];
            ch.push_back(pool.leaf(labels[i]));
          }
          const MlElement& inner = self(self, mask & ~sub);
          for (const auto& [t, c] : inner.terms()) {
            std::vector<TreeId> all = ch;
            all.push_back(t);
            e.add(pool.node(std::move(all)), c * level_coeff);
          }
          return;
        }
        for (int i = start; i <= static_cast<int>(labels.size()) - (d - 1 - slot);
             ++i) {
          idx[slot] = i;
          go(go, slot + 1, i + 1);
        }
      };
      choose(choose, 0, 0);
    }
    return memo.emplace(mask, std::move(e)).first->second;
  };
  uint64_t full = 0;
  for (int i = 1; i <= xs; ++i) full |= uint64_t(1) << i;
  return build(build, full);
}

MlElement symmetrized_shape(TreePool& pool, TreeId shape, int q) {
  if (pool.leaf_count(shape) != q)
    throw std::invalid_argument("shape leaf count differs from q");
  std::map<std::pair<TreeId, uint64_t>, MlElement> memo;
  auto rec = [&](auto&& self, TreeId s, uint64_t mask) -> const MlElement& {
    auto key = std::make_pair(s, mask);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<int> labels = mask_bits(mask);
    MlElement e(&pool, static_cast<int>(labels.size()));
    if (pool.is_leaf(s)) {
      e.add(pool.leaf(labels.at(0)), 1);
    } else {
      std::vector<TreeId> ch = pool.children(s);
      int d = static_cast<int>(ch.size());
      // Ordered partitions of the mask with block sizes matching the
      // children's leaf counts; every bijective labeling appears once.
      std::vector<uint64_t> parts;
      auto assign = [&](auto&& go, int slot, uint64_t rem) -> void {
        if (slot == d) {
          Rational coeff = 1;
          std::vector<TreeId> kids;
          kids.reserve(d);
          std::vector<const MlElement*> blocks;
          for (int k = 0; k < d; ++k) {
            blocks.push_back(&self(self, ch[k], parts[k]));
            if (blocks.back()->is_zero()) return;
          }
          std::vector<std::map<TreeId, Rational>::const_iterator> pick;
          for (const MlElement* b : blocks) pick.push_back(b->terms().begin());
          for (;;) {
            kids.clear();
            coeff = 1;
            for (int k = 0; k < d; ++k) {
              kids.push_back(pick[k]->first);
              coeff *= pick[k]->second;
            }
            e.add(pool.node(kids), coeff);
            int k = 0;
            while (k < d) {
              if (++pick[k] != blocks[k]->terms().end()) break;
              pick[k] = blocks[k]->terms().begin();
              ++k;
            }
            if (k == d) break;
          }
          return;
        }
        int want = pool.leaf_count(ch[slot]);
        // All submasks of rem with popcount == want.
        std::vector<int> bits = mask_bits(rem);
        std::vector<int> sel(want);
        auto comb = [&](auto&& cgo, int cs, int start) -> void {
          if (cs == want) {
            uint64_t sub = 0;
            for (int b : sel) sub |= uint64_t(1) << b;
            parts.push_back(sub);
            go(go, slot + 1, rem & ~sub);
            parts.pop_back();
            return;
          }
          for (int i = start; i <= static_cast<int>(bits.size()) - (want - cs);
               ++i) {
            sel[cs] = bits[i];
            cgo(cgo, cs + 1, i + 1);
          }
        };
        comb(comb, 0, 0);
      };
      assign(assign, 0, mask);
    }
    return memo.emplace(key, std::move(e)).first->second;
  };
  uint64_t full = 0;
  for (int i = 1; i <= q; ++i) full |= uint64_t(1) << i;
  return rec(rec, shape, full);
}

}  // namespace multinil
