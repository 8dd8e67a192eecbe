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

#ifndef OCEVAL_GEOMETRY_H_
#define OCEVAL_GEOMETRY_H_

namespace oceval {

// Axis-aligned box in corner form. x1/y1 is the top-left corner. Width and
// height are strictly positive and every coordinate is finite; construction
// throws InputError otherwise.
class BoundingBox {
 public:
  static BoundingBox FromCorners(double x1, double y1, double x2, double y2);
  // COCO [x, y, w, h] form.
  static BoundingBox FromXywh(double x, double y, double w, double h);

  double x1() const { return x1_; }
  double y1() const { return y1_; }
  double x2() const { return x2_; }
  double y2() const { return y2_; }
  double width() const { return x2_ - x1_; }
  double height() const { return y2_ - y1_; }

  // Uniform scaling about the origin; s must be positive.
  BoundingBox Scaled(double s) const;
  BoundingBox Translated(double dx, double dy) const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

 private:
  BoundingBox(double x1, double y1, double x2, double y2)
      : x1_(x1), y1_(y1), x2_(x2), y2_(y2) {}

  double x1_;
  double y1_;
  double x2_;
  double y2_;
};

double Area(const BoundingBox& b);

// Intersection over union, in [0, 1].
double Iou(const BoundingBox& a, const BoundingBox& b);

// Generalized IoU: IoU minus the fraction of the smallest enclosing box not
// covered by the union. Range (-1, 1]; equals 1 iff a == b.
double Giou(const BoundingBox& a, const BoundingBox& b);

}  // namespace oceval

#endif  // OCEVAL_GEOMETRY_H_
