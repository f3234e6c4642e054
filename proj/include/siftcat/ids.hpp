#pragma once

#include <compare>
#include <cstddef>
#include <functional>

namespace siftcat {

// Index-backed handle into a FinCat. The tag keeps objects and morphisms apart.
template <class Tag>
struct Id {
  int value = -1;

  constexpr Id() = default;
  constexpr explicit Id(int v) : value(v) {}
  constexpr explicit Id(std::size_t v) : value(static_cast<int>(v)) {}

  constexpr std::size_t index() const { return static_cast<std::size_t>(value); }
  constexpr bool valid() const { return value >= 0; }

  friend constexpr auto operator<=>(Id, Id) = default;
};

using ObjId = Id<struct ObjectTag>;
using MorId = Id<struct MorphismTag>;

}  // namespace siftcat

template <class Tag>
struct std::hash<siftcat::Id<Tag>> {
  std::size_t operator()(siftcat::Id<Tag> id) const noexcept {
    return std::hash<int>{}(id.value);
  }
};
