#ifndef LL_CONFIG_HPP
#define LL_CONFIG_HPP

#include <cstdint>

namespace ll {

// Process-wide caps and defaults. The CLI populates these from
// flags > LL_* environment variables > the defaults below, before any
// computation starts; library code only reads them.
struct Config {
  std::int64_t max_window = std::int64_t{1} << 20;
  int precision_bits = 128;          // mantissa bits for torus arithmetic
  std::uint64_t seed = 12345;        // recorded in every randomized report
  int fs_term_cap = 24;              // finite_sums / finite_products terms
  int builder_position_cap = 64;     // positions usable by the subsystem builder
  int builder_block_size_cap = 8;    // largest block the builder enumerates
  std::int64_t builder_budget = 1'000'000;  // blocks visited per search
  int tree_depth_cap = 6;
  int tree_branching_cap = 64;
  int tree_subset_bound = 2;         // |F| bound for intersection checks
  int jset_random_entries = 3;       // seeded battery entries beyond the structured ones
  std::int64_t chain_budget = 10'000;
  std::int64_t preimage_piece_cap = std::int64_t{1} << 20;
  int doubling_component_bits_cap = 26;  // free binary digits enumerated exactly
  int correlation_order_cap = 3;
};

Config& config();

}  // namespace ll

#endif
