#pragma once

#include <cstdint>
#include <vector>

namespace safecoal {

/// Index of a notification in its alphabet.
using Symbol = std::uint32_t;

/// Finite notification sequence, stored as alphabet indices.
using Word = std::vector<Symbol>;

/// Index of a state in a finite carrier.
using State = std::uint32_t;

}  // namespace safecoal
