#pragma once

#include <vector>

#include "core/domain.hpp"

namespace fixtures {

using crowdship::Courier;
using crowdship::CourierSnapshot;
using crowdship::EpochInstance;
using crowdship::Point;
using crowdship::Request;

inline Request request(int id, Point pickup, Point delivery, double release = 0.0,
                       double weight = 3.0, double guarantee = 120.0) {
  Request r;
  r.id = id;
  r.pickup = pickup;
  r.delivery = delivery;
  r.release = release;
  r.weight = weight;
  r.guarantee = guarantee;
  return r;
}

inline CourierSnapshot courier(int id, Point at, double available_until = 120.0,
                               double capacity = 10.0) {
  CourierSnapshot s;
  s.courier.id = id;
  s.courier.entry_point = at;
  s.courier.current_point = at;
  s.courier.available_until = available_until;
  s.courier.capacity = capacity;
  return s;
}

inline EpochInstance instance(std::vector<Request> requests, std::vector<CourierSnapshot> couriers,
                              double now = 0.0) {
  EpochInstance in;
  in.now = now;
  in.requests = std::move(requests);
  in.couriers = std::move(couriers);
  in.movable.assign(in.requests.size(), 1);
  return in;
}

}  // namespace fixtures
