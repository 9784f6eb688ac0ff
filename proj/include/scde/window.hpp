#pragma once

#include "scde/threshold.hpp"

namespace scde {

// Sliding-window decoding schedule: the window anchored at position c covers
// c..c+window_size-1 (clipped to the chain) and receives exactly
// `iterations` updates before the anchor advances.
struct WindowConfig {
  int window_size = 0;
  int iterations = 0;
};

// Run the windowed schedule once over the whole chain. Positions outside the
// current window keep their committed values and are still read by the
// window's updates. Success means the final worst position value is below
// delta_conv.
DERunReport windowed_decode(const DeSystem& system, double epsilon, const WindowConfig& cfg,
                            const RunOptions& opts = {});

// Largest channel parameter the windowed schedule decodes.
ThresholdResult windowed_threshold(const DeSystem& system, const WindowConfig& cfg,
                                   const ThresholdOptions& opts = {});

}  // namespace scde
