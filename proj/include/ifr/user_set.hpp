#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifr {

/// Subset of users {1..M} backed by a bitmask. Bit i-1 represents user i.
/// Two sets interoperate only when they share the same ground size.
class UserSet {
public:
  static constexpr int kMaxGround = 63;

  UserSet() = default;

  explicit UserSet(int ground_size) : ground_(checked_ground(ground_size)) {}

  static UserSet all(int ground_size) {
    UserSet s(ground_size);
    s.mask_ = ground_size == 0 ? 0 : (std::uint64_t{1} << ground_size) - 1;
    return s;
  }

  static UserSet of(int ground_size, std::initializer_list<int> users) {
    UserSet s(ground_size);
    for (int u : users) s = s.with(u);
    return s;
  }

  static UserSet from_mask(int ground_size, std::uint64_t mask) {
    UserSet s(ground_size);
    if (mask & ~all(ground_size).mask_)
      throw std::invalid_argument("UserSet: mask exceeds ground");
    s.mask_ = mask;
    return s;
  }

  int ground_size() const { return ground_; }
  std::uint64_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  int count() const { return std::popcount(mask_); }

  bool contains(int user) const {
    check_user(user);
    return (mask_ >> (user - 1)) & 1u;
  }

  UserSet with(int user) const {
    check_user(user);
    UserSet s = *this;
    s.mask_ |= std::uint64_t{1} << (user - 1);
    return s;
  }

  UserSet without(int user) const {
    check_user(user);
    UserSet s = *this;
    s.mask_ &= ~(std::uint64_t{1} << (user - 1));
    return s;
  }

  bool subset_of(UserSet o) const {
    assert(ground_ == o.ground_);
    return (mask_ & ~o.mask_) == 0;
  }

  bool intersects(UserSet o) const {
    assert(ground_ == o.ground_);
    return (mask_ & o.mask_) != 0;
  }

  UserSet complement() const { return from_mask(ground_, all(ground_).mask_ & ~mask_); }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::uint64_t m = mask_; m; m &= m - 1)
      out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  /// "{2,3}" with members ascending; "{}" when empty.
  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (int u : members()) {
      if (!first) out += ',';
      out += std::to_string(u);
      first = false;
    }
    out += '}';
    return out;
  }

  friend UserSet operator|(UserSet a, UserSet b) {
    assert(a.ground_ == b.ground_);
    a.mask_ |= b.mask_;
    return a;
  }
  friend UserSet operator&(UserSet a, UserSet b) {
    assert(a.ground_ == b.ground_);
    a.mask_ &= b.mask_;
    return a;
  }
  friend UserSet operator-(UserSet a, UserSet b) {
    assert(a.ground_ == b.ground_);
    a.mask_ &= ~b.mask_;
    return a;
  }
  friend bool operator==(UserSet a, UserSet b) {
    return a.ground_ == b.ground_ && a.mask_ == b.mask_;
  }
  friend bool operator!=(UserSet a, UserSet b) { return !(a == b); }

private:
  static int checked_ground(int g) {
    if (g < 0 || g > kMaxGround)
      throw std::invalid_argument("UserSet: ground size out of range");
    return g;
  }
  void check_user(int user) const {
    if (user < 1 || user > ground_)
      throw std::invalid_argument("UserSet: user index " + std::to_string(user) +
                                  " outside 1.." + std::to_string(ground_));
  }

  std::uint64_t mask_ = 0;
  int ground_ = 0;
};

/// Visits every subset of `ground` (including the empty and full set) in
/// ascending mask order.
template <typename F>
void for_each_subset(UserSet ground, F&& f) {
  const std::uint64_t m = ground.mask();
  std::uint64_t s = 0;
  while (true) {
    f(UserSet::from_mask(ground.ground_size(), s));
    if (s == m) break;
    s = (s - m) & m;
  }
}

}  // namespace ifr
