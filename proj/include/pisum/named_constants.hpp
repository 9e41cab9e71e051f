#pragma once

#include <array>
#include <string_view>

#include "pisum/error.hpp"

namespace pisum {

// Stored literals (not computed at startup); tests re-derive the first two.
inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double ln_glaisher = 0.24875447703378426255;
inline constexpr double ln_2pi = 1.8378770664093454836;
inline constexpr double ln_pi = 1.1447298858494001741;
inline constexpr double ln_2 = 0.69314718055994530942;
inline constexpr double pi = 3.1415926535897932385;

/// Unique positive zero of the digamma function.
inline constexpr double digamma_root = 1.4616321449683623413;

inline double named_constant(std::string_view name) {
  struct entry {
    std::string_view name;
    double value;
  };
  static constexpr std::array<entry, 5> table{{{"euler_gamma", euler_gamma},
                                              {"ln_glaisher", ln_glaisher},
                                              {"ln_2pi", ln_2pi},
                                              {"ln_pi", ln_pi},
                                              {"ln_2", ln_2}}};
  for (const auto& e : table) {
    if (e.name == name) return e.value;
  }
  throw error("unknown named constant '" + std::string(name) + "'");
}

}  // namespace pisum
