#pragma once

#include <cmath>
#include <cstddef>

namespace crowdship {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Euclidean distance in miles.
inline double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Minutes needed to cover the straight segment a->b at `speed_mph`.
inline double travel_minutes(const Point& a, const Point& b, double speed_mph) {
  return distance(a, b) / speed_mph * 60.0;
}

// Point reached after moving `miles` from `from` toward `to` (clamped at `to`).
Point advance_toward(const Point& from, const Point& to, double miles);

using ZoneId = int;

// Rectangular service area tiled by square zones. Zones are numbered row-major
// from the (0,0) corner.
class ServiceArea {
 public:
  ServiceArea() = default;
  ServiceArea(double width, double height, double zone_edge, Point depot);

  double width() const { return width_; }
  double height() const { return height_; }
  double zone_edge() const { return zone_edge_; }
  const Point& depot() const { return depot_; }

  int columns() const { return columns_; }
  int rows() const { return rows_; }
  int zone_count() const { return columns_ * rows_; }

  // Total over points of the closed rectangle; points on the far edges belong
  // to the last row/column, points outside are clamped.
  ZoneId zone_of(const Point& p) const;
  Point centroid(ZoneId zone) const;
  // Lower-left corner of `zone`.
  Point origin(ZoneId zone) const;
  bool contains(const Point& p) const;

 private:
  double width_ = 6.0;
  double height_ = 6.0;
  double zone_edge_ = 0.5;
  Point depot_{3.0, 3.0};
  int columns_ = 12;
  int rows_ = 12;
};

}  // namespace crowdship
