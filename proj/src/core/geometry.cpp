#include "core/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace crowdship {

Point advance_toward(const Point& from, const Point& to, double miles) {
  const double d = distance(from, to);
  if (d <= miles || d <= 0.0) return to;
  const double f = miles / d;
  return {from.x + (to.x - from.x) * f, from.y + (to.y - from.y) * f};
}

namespace {

int exact_multiple(double extent, double edge, const char* what) {
  const double ratio = extent / edge;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument(std::string("service area ") + what +
                                " must be a positive integer multiple of the zone edge");
  }
  return static_cast<int>(rounded);
}

}  // namespace

ServiceArea::ServiceArea(double width, double height, double zone_edge, Point depot)
    : width_(width), height_(height), zone_edge_(zone_edge), depot_(depot) {
  if (!(zone_edge > 0.0)) throw std::invalid_argument("zone edge must be positive");
  columns_ = exact_multiple(width, zone_edge, "width");
  rows_ = exact_multiple(height, zone_edge, "height");
}

ZoneId ServiceArea::zone_of(const Point& p) const {
  const int c = std::clamp(static_cast<int>(std::floor(p.x / zone_edge_)), 0, columns_ - 1);
  const int r = std::clamp(static_cast<int>(std::floor(p.y / zone_edge_)), 0, rows_ - 1);
  return r * columns_ + c;
}

Point ServiceArea::origin(ZoneId zone) const {
  if (zone < 0 || zone >= zone_count()) throw std::out_of_range("zone id out of range");
  return {(zone % columns_) * zone_edge_, (zone / columns_) * zone_edge_};
}

Point ServiceArea::centroid(ZoneId zone) const {
  const Point o = origin(zone);
  return {o.x + zone_edge_ / 2.0, o.y + zone_edge_ / 2.0};
}

bool ServiceArea::contains(const Point& p) const {
  return p.x >= 0.0 && p.y >= 0.0 && p.x <= width_ && p.y <= height_;
}

}  // namespace crowdship
