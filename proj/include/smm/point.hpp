#pragma once

#include <cstdint>

namespace smm {

enum class Color : std::uint8_t { Red = 0, Blue = 1 };

inline char color_letter(Color c) { return c == Color::Red ? 'R' : 'B'; }

// One marked point: a position in the carrier space plus a stub budget (the
// number of edge endpoints the point offers). Ids are assigned densely in
// position order when a Configuration is built.
struct MarkedPoint {
  int id = -1;
  double position = 0.0;
  Color color = Color::Red;
  int stubs = 0;
};

}  // namespace smm
