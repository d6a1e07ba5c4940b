#pragma once

#include <string>
#include <vector>

#include "omt/space.hpp"

namespace omt {

Space example(const std::string& name);
std::vector<std::string> example_names();

Space make_euclidean();
Space make_discrete();
Space make_sorgenfrey();
Space make_upper_limit();
Space make_split();
// lexicographic order on (0,1) x {0..n-1}
Space make_nsplit(int n);
// Alexandrov topology on (0,1) x {0..n-1}
Space make_alex(int n);
Space make_a7_const_inf();
Space make_a8_onepoint();
Space make_a8_hausdorff();
Space make_a9_nonregular();

}  // namespace omt
