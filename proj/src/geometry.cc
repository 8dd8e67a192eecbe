// Copyright 2026 The oceval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oceval/geometry.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oceval/errors.h"

namespace oceval {

BoundingBox BoundingBox::FromCorners(double x1, double y1, double x2,
                                     double y2) {
  if (!std::isfinite(x1) || !std::isfinite(y1) || !std::isfinite(x2) ||
      !std::isfinite(y2)) {
    throw InputError("bounding box has non-finite coordinates");
  }
  if (!(x2 > x1) || !(y2 > y1)) {
    std::ostringstream msg;
    msg << "degenerate bounding box [" << x1 << ", " << y1 << ", " << x2
        << ", " << y2 << "]: width and height must be positive";
    throw InputError(msg.str());
  }
  return BoundingBox(x1, y1, x2, y2);
}

BoundingBox BoundingBox::FromXywh(double x, double y, double w, double h) {
  return FromCorners(x, y, x + w, y + h);
}

BoundingBox BoundingBox::Scaled(double s) const {
  if (!(s > 0.0)) throw InputError("scale factor must be positive");
  return FromCorners(x1_ * s, y1_ * s, x2_ * s, y2_ * s);
}

BoundingBox BoundingBox::Translated(double dx, double dy) const {
  return FromCorners(x1_ + dx, y1_ + dy, x2_ + dx, y2_ + dy);
}

double Area(const BoundingBox& b) { return b.width() * b.height(); }

namespace {

double IntersectionArea(const BoundingBox& a, const BoundingBox& b) {
  const double w = std::min(a.x2(), b.x2()) - std::max(a.x1(), b.x1());
  const double h = std::min(a.y2(), b.y2()) - std::max(a.y1(), b.y1());
  return std::max(w, 0.0) * std::max(h, 0.0);
}

}  // namespace

double Iou(const BoundingBox& a, const BoundingBox& b) {
  const double inter = IntersectionArea(a, b);
  const double uni = Area(a) + Area(b) - inter;
  return inter / uni;
}

double Giou(const BoundingBox& a, const BoundingBox& b) {
  const double inter = IntersectionArea(a, b);
  const double uni = Area(a) + Area(b) - inter;
  const double hull = (std::max(a.x2(), b.x2()) - std::min(a.x1(), b.x1())) *
                      (std::max(a.y2(), b.y2()) - std::min(a.y1(), b.y1()));
  return inter / uni - (hull - uni) / hull;
}

}  // namespace oceval
