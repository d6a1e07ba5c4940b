#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "omt/space.hpp"

namespace omt {

// T3: regular Hausdorff; Compact: compact Hausdorff; NonRegular: Hausdorff
// with a non-regular block; NonHausdorff: two points share an anchor.
enum class FuzzFamily { T3, Compact, NonRegular, NonHausdorff };
const char* family_name(FuzzFamily f);

struct FuzzCase {
  Space space;
  FuzzFamily family = FuzzFamily::T3;
  bool valid = true;
};

Space fuzz_space(std::mt19937_64& rng, FuzzFamily family);

// deletes one datum so that validation fails; valid = false on the result,
// or the input unchanged when no single deletion breaks it
FuzzCase fuzz_mutant(const Space& s, std::mt19937_64& rng);

// families cycle T3, Compact, NonRegular, NonHausdorff
std::vector<FuzzCase> fuzz_generate(std::uint64_t seed, int count);

}  // namespace omt
