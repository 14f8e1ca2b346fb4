#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace implic {

using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }

/// Ordered universe of named variables. Subsets are bitmasks with bit i
/// standing for names[i]. Every algorithm in this library enumerates up to
/// 2^n subsets, so n is capped (20 by default, IMPLIC_MAX_N lowers it).
class VarUniverse {
 public:
  explicit VarUniverse(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("universe must not be empty");
    if (static_cast<int>(names_.size()) > max_vars())
      throw std::invalid_argument("universe exceeds the variable cap of " +
                                  std::to_string(max_vars()));
    for (const auto& n : names_) {
      if (n.empty()) throw std::invalid_argument("variable names must be nonempty");
      if (std::count(names_.begin(), names_.end(), n) != 1)
        throw std::invalid_argument("duplicate variable name: " + n);
    }
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<int> index_of(std::string_view name) const {
    for (int i = 0; i < size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  Mask full_mask() const { return (Mask(1) << size()) - 1; }
  std::size_t subset_count() const { return std::size_t(1) << size(); }

  bool operator==(const VarUniverse& other) const { return names_ == other.names_; }
  bool operator!=(const VarUniverse& other) const { return !(*this == other); }

  /// Hard cap on n. IMPLIC_MAX_N may override it downward only.
  static int max_vars() {
    static const int cap = [] {
      int v = 20;
      if (const char* env = std::getenv("IMPLIC_MAX_N")) {
        int e = std::atoi(env);
        if (e >= 1 && e < v) v = e;
      }
      return v;
    }();
    return cap;
  }

 private:
  std::vector<std::string> names_;
};

using UniversePtr = std::shared_ptr<const VarUniverse>;

inline UniversePtr make_universe(std::vector<std::string> names) {
  return std::make_shared<const VarUniverse>(std::move(names));
}

inline bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_universe(const UniversePtr& a, const UniversePtr& b) {
  if (!same_universe(a, b)) throw std::invalid_argument("universe mismatch");
}

/// Subset of a universe, stored as a bitmask.
struct VarSet {
  UniversePtr universe;
  Mask mask = 0;

  VarSet() = default;
  VarSet(UniversePtr u, Mask m) : universe(std::move(u)), mask(m) {
    if (!universe) throw std::invalid_argument("VarSet requires a universe");
    if (m & ~universe->full_mask())
      throw std::invalid_argument("VarSet members outside the universe");
  }

  static VarSet empty(UniversePtr u) { return VarSet(std::move(u), 0); }
  static VarSet full(UniversePtr u) {
    Mask m = u->full_mask();
    return VarSet(std::move(u), m);
  }
  static VarSet of(UniversePtr u, std::initializer_list<std::string_view> names) {
    Mask m = 0;
    for (auto n : names) {
      auto idx = u->index_of(n);
      if (!idx) throw std::invalid_argument("unknown variable: " + std::string(n));
      m |= Mask(1) << *idx;
    }
    return VarSet(std::move(u), m);
  }

  int count() const { return popcount(mask); }
  bool is_empty() const { return mask == 0; }
  bool contains(int i) const { return mask >> i & 1; }
  bool subset_of(const VarSet& other) const { return (mask & ~other.mask) == 0; }

  friend VarSet operator|(const VarSet& a, const VarSet& b) {
    require_same_universe(a.universe, b.universe);
    return VarSet(a.universe, a.mask | b.mask);
  }
  friend VarSet operator&(const VarSet& a, const VarSet& b) {
    require_same_universe(a.universe, b.universe);
    return VarSet(a.universe, a.mask & b.mask);
  }
  /// Set difference.
  friend VarSet operator-(const VarSet& a, const VarSet& b) {
    require_same_universe(a.universe, b.universe);
    return VarSet(a.universe, a.mask & ~b.mask);
  }
  bool operator==(const VarSet& other) const {
    return mask == other.mask && same_universe(universe, other.universe);
  }
};

/// Renders a mask as comma-joined variable names; the empty set prints "0".
inline std::string mask_to_string(const VarUniverse& u, Mask m) {
  if (m == 0) return "0";
  std::string out;
  for (int i = 0; i < u.size(); ++i) {
    if (!(m >> i & 1)) continue;
    if (!out.empty()) out += ',';
    out += u.name(i);
  }
  return out;
}

inline std::string to_string(const VarSet& s) { return mask_to_string(*s.universe, s.mask); }

}  // namespace implic
