#pragma once

#include <algorithm>
#include <utility>
#include <vector>

namespace heckeforge {

// Sorted flat map for the finitely supported term lists of algebra elements.
// Mirrors the slice of the std::map interface the element code relies on.
template <class Key, class Val>
class FlatMap {
 public:
  using value_type = std::pair<Key, Val>;
  using iterator = typename std::vector<value_type>::iterator;
  using const_iterator = typename std::vector<value_type>::const_iterator;

  iterator begin() { return v_.begin(); }
  iterator end() { return v_.end(); }
  const_iterator begin() const { return v_.begin(); }
  const_iterator end() const { return v_.end(); }
  bool empty() const { return v_.empty(); }
  size_t size() const { return v_.size(); }

  iterator find(const Key& k) {
    auto it = lower(k);
    return (it != v_.end() && it->first == k) ? it : v_.end();
  }
  const_iterator find(const Key& k) const {
    auto it = lower(k);
    return (it != v_.end() && it->first == k) ? it : v_.end();
  }
  size_t count(const Key& k) const { return find(k) == v_.end() ? 0 : 1; }
  const Val& at(const Key& k) const { return find(k)->second; }

  std::pair<iterator, bool> emplace(const Key& k, Val val) {
    auto it = lower(k);
    if (it != v_.end() && it->first == k) return {it, false};
    return {v_.insert(it, value_type(k, std::move(val))), true};
  }
  iterator erase(iterator it) { return v_.erase(it); }

  friend bool operator==(const FlatMap& a, const FlatMap& b) { return a.v_ == b.v_; }

 private:
  std::vector<value_type> v_;

  iterator lower(const Key& k) {
    return std::lower_bound(v_.begin(), v_.end(), k,
                            [](const value_type& a, const Key& b) { return a.first < b; });
  }
  const_iterator lower(const Key& k) const {
    return std::lower_bound(v_.begin(), v_.end(), k,
                            [](const value_type& a, const Key& b) { return a.first < b; });
  }
};

}  // namespace heckeforge
