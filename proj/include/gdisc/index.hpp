#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "gdisc/planner.hpp"

namespace gdisc {

inline constexpr int kIndexVersion = 1;

class IndexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The index was built for a different scene.
class StaleIndexError : public IndexError {
 public:
  using IndexError::IndexError;
};

/// Versioned JSON container holding the tangent-edge domains, intersection
/// sequences, and blocked sequences, guarded by the scene hash.
std::string save_index(const Preprocessed& pre);
Preprocessed load_index(std::string_view text, const Scene& scene);

}  // namespace gdisc
