#include "omt/examples.hpp"

#include <cctype>

namespace omt {

namespace {

const DefSubset& unit() {
  static const DefSubset u = DefSubset::parse("(0,1)");
  return u;
}

Space named(Space s, const std::string& name) {
  s.name = name;
  s.canonicalize();
  s.check_well_formed();
  return s;
}

}  // namespace

Space make_euclidean() {
  Space s;
  s.add_track(0, unit());
  s.add_flag(0, unit(), Side::Right);
  s.add_flag(0, unit(), Side::Left);
  return named(s, "euclidean");
}

Space make_discrete() {
  Space s;
  s.add_track(0, unit());
  return named(s, "discrete");
}

Space make_sorgenfrey() {
  Space s;
  s.add_track(0, unit());
  s.add_flag(0, unit(), Side::Right);
  return named(s, "sorgenfrey");
}

Space make_upper_limit() {
  Space s;
  s.add_track(0, unit());
  s.add_flag(0, unit(), Side::Left);
  return named(s, "upperlimit");
}

Space make_split() {
  Space s;
  DefSubset closed = DefSubset::parse("[0,1]");
  DefSubset left = DefSubset::parse("(0,1]"), right = DefSubset::parse("[0,1)");
  s.add_track(0, closed);
  s.add_track(1, closed);
  s.add_flag(0, left, Side::Left);
  s.add_flag(1, right, Side::Right);
  s.add_branch(0, left, AffineMap::identity(), 1, Side::Left);
  s.add_branch(1, right, AffineMap::identity(), 0, Side::Right);
  return named(s, "split");
}

Space make_nsplit(int n) {
  if (n < 1) throw Error(ErrorKind::UnknownExample, "nsplit needs n >= 1");
  Space s;
  for (int k = 0; k < n; ++k) s.add_track(k, unit());
  s.add_flag(0, unit(), Side::Left);
  s.add_flag(n - 1, unit(), Side::Right);
  for (int k = 1; k < n; ++k) s.add_branch(0, unit(), AffineMap::identity(), k, Side::Left);
  for (int k = 0; k + 1 < n; ++k) s.add_branch(n - 1, unit(), AffineMap::identity(), k, Side::Right);
  return named(s, "nsplit(" + std::to_string(n) + ")");
}

Space make_alex(int n) {
  if (n < 1) throw Error(ErrorKind::UnknownExample, "alex needs n >= 1");
  Space s;
  for (int k = 0; k < n; ++k) s.add_track(k, unit());
  s.add_flag(0, unit(), Side::Right);
  s.add_flag(0, unit(), Side::Left);
  for (int k = 1; k < n; ++k) {
    s.add_branch(0, unit(), AffineMap::identity(), k, Side::Right);
    s.add_branch(0, unit(), AffineMap::identity(), k, Side::Left);
  }
  return named(s, "alex(" + std::to_string(n) + ")");
}

Space make_a7_const_inf() {
  Space s;
  DefSubset line = DefSubset::line();
  s.add_track(0, line);
  s.add_flag(0, line, Side::Right);
  s.add_flag(0, line, Side::Left);
  s.add_branch(0, line, AffineMap::constant(ExtRat::neg_inf()), 0, Side::Right);
  return named(s, "a7-const-inf");
}

Space make_a8_onepoint() {
  Space s;
  s.add_track(0, DefSubset::parse("[0,1) | {2}"));
  s.add_flag(0, DefSubset::parse("[0,1)"), Side::Right);
  s.add_flag(0, unit(), Side::Left);
  s.add_branch(0, DefSubset::point(Rat(2)), AffineMap::constant(ExtRat(0)), 0, Side::Right);
  return named(s, "a8-onepoint");
}

Space make_a8_hausdorff() {
  Space s;
  s.add_track(0, DefSubset::parse("[0,1)"));
  s.add_flag(0, DefSubset::point(Rat(0)), Side::Right);
  return named(s, "a8-hausdorff");
}

Space make_a9_nonregular() {
  Space s;
  s.add_track(0, unit());
  s.add_track(1, unit());
  s.add_branch(0, unit(), AffineMap::identity(), 1, Side::Right);
  s.add_flag(1, unit(), Side::Left);
  return named(s, "a9-nonregular");
}

std::vector<std::string> example_names() {
  return {"euclidean", "discrete", "sorgenfrey", "upperlimit", "split", "nsplit(n)",
          "alex(n)", "a7-const-inf", "a8-onepoint", "a8-hausdorff", "a9-nonregular"};
}

Space example(const std::string& name) {
  auto param = [&](const std::string& head) -> int {
    if (name.size() <= head.size() + 2 || name.compare(0, head.size() + 1, head + "(") != 0 || name.back() != ')')
      return -1;
    std::string d = name.substr(head.size() + 1, name.size() - head.size() - 2);
    if (d.empty() || d.size() > 3) return -1;
    for (char c : d)
      if (!std::isdigit(static_cast<unsigned char>(c))) return -1;
    return std::stoi(d);
  };
  if (name == "euclidean") return make_euclidean();
  if (name == "discrete") return make_discrete();
  if (name == "sorgenfrey") return make_sorgenfrey();
  if (name == "upperlimit") return make_upper_limit();
  if (name == "split") return make_split();
  if (name == "a7-const-inf") return make_a7_const_inf();
  if (name == "a8-onepoint") return make_a8_onepoint();
  if (name == "a8-hausdorff") return make_a8_hausdorff();
  if (name == "a9-nonregular") return make_a9_nonregular();
  if (int n = param("nsplit"); n >= 1) return make_nsplit(n);
  if (int n = param("alex"); n >= 1) return make_alex(n);
  throw Error(ErrorKind::UnknownExample, name);
}

}  // namespace omt
