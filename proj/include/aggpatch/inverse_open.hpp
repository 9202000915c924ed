#pragma once

#include "aggpatch/interval_set.hpp"
#include "aggpatch/skeleton.hpp"

namespace aggpatch {

struct OpenConstruction {
  IntervalUnion initial_set;
  // Set when floating-point roundoff made constructed intervals touch or
  // overlap; normalization then merged them and the skeleton of initial_set
  // has fewer atoms than requested.
  bool degenerate = false;
};

// Open Omega0 whose blow-up skeleton is mu1: interval i is (a_i, a_i + c_i)
// with a_i = x_i + l_i - L, l_i the mass strictly left of x_i and 2L the
// total mass. The result lies in [c - L, d + L] for atom hull [c, d].
// Throws DomainError on an empty measure.
OpenConstruction inverse_open(const AtomicMeasure& mu1);

}  // namespace aggpatch
