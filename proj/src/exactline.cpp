#include "omt/exactline.hpp"

#include <cctype>

#include "omt/defset.hpp"

namespace omt {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Arithmetic: return "Arithmetic";
    case ErrorKind::MalformedComponent: return "MalformedComponent";
    case ErrorKind::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorKind::SubsetOutsideDomain: return "SubsetOutsideDomain";
    case ErrorKind::WellFormed: return "WellFormed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::NotHausdorff: return "NotHausdorff";
    case ErrorKind::NotT3: return "NotT3";
    case ErrorKind::NotNearCompact: return "NotNearCompact";
    case ErrorKind::NotSeparable: return "NotSeparable";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotDisjoint: return "NotDisjoint";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::HalfOpenPiece: return "HalfOpenPiece";
    case ErrorKind::ExceptionalSetInfinite: return "ExceptionalSetInfinite";
    case ErrorKind::FiniteSpace: return "FiniteSpace";
    case ErrorKind::NonInjectiveMap: return "NonInjectiveMap";
    case ErrorKind::NotTotal: return "NotTotal";
    case ErrorKind::UnknownExample: return "UnknownExample";
    case ErrorKind::UnknownCase: return "UnknownCase";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Error";
}

const char* side_name(Side s) { return s == Side::Right ? "right" : "left"; }

const char* approach_name(Approach a) {
  switch (a) {
    case Approach::FromAbove: return "from-above";
    case Approach::FromBelow: return "from-below";
    case Approach::Stationary: return "stationary";
  }
  return "";
}

int sgn(const Rat& r) { return mpq_sgn(r.get_mpq_t()); }

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat parse_rat(const std::string& s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (digits == 0) throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
  if (i < s.size()) {
    if (s[i] != '/') throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
    ++i;
    size_t den = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++den;
    if (den == 0 || i != s.size()) throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
  }
  std::string body = s[0] == '+' ? s.substr(1) : s;
  Rat r;
  if (r.set_str(body, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
  if (r.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

const Rat& ExtRat::value() const {
  if (!finite()) throw Error(ErrorKind::Arithmetic, "arithmetic on an infinite value");
  return v_;
}

std::string ExtRat::str() const {
  if (is_neg_inf()) return "-inf";
  if (is_pos_inf()) return "+inf";
  return rat_str(v_);
}

ExtRat ExtRat::parse(const std::string& s) {
  if (s == "-inf") return neg_inf();
  if (s == "+inf" || s == "inf") return pos_inf();
  return ExtRat(parse_rat(s));
}

bool operator==(const ExtRat& a, const ExtRat& b) {
  if (a.kind_ != b.kind_) return false;
  return !a.finite() || a.v_ == b.v_;
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (!a.finite()) return std::strong_ordering::equal;
  int c = cmp(a.v_, b.v_);
  return c <=> 0;
}

AffineMap::AffineMap(const Rat& a, const ExtRat& b) : alpha(a), beta(b) {
  alpha.canonicalize();
  if (!beta.finite() && sgn(alpha) != 0)
    throw Error(ErrorKind::Arithmetic, "infinite offset on a non-constant map");
}

ExtRat AffineMap::apply(const Rat& x) const {
  if (is_constant()) return beta;
  return ExtRat(Rat(alpha * x + beta.value()));
}

ExtRat AffineMap::apply_ext(const ExtRat& x) const {
  if (is_constant()) return beta;
  if (x.finite()) return apply(x.value());
  bool up = x.is_pos_inf() == increasing();
  return up ? ExtRat::pos_inf() : ExtRat::neg_inf();
}

AffineMap AffineMap::inverse() const {
  if (is_constant()) throw Error(ErrorKind::NonInjectiveMap, "constant map has no inverse");
  Rat a = 1 / alpha;
  return AffineMap(a, ExtRat(Rat(-beta.value() * a)));
}

std::string AffineMap::str() const {
  if (is_constant()) return beta.str();
  std::string s = rat_str(alpha) + "*x";
  const Rat& b = beta.value();
  if (sgn(b) < 0)
    s += "-" + rat_str(Rat(-b));
  else
    s += "+" + rat_str(b);
  return s;
}

AffineMap AffineMap::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto xp = s.find('x');
  if (xp == std::string::npos) return AffineMap::constant(ExtRat::parse(s));
  if (s.find('x', xp + 1) != std::string::npos)
    throw Error(ErrorKind::ParseError, "bad map '" + raw + "'");
  std::string pre = s.substr(0, xp), post = s.substr(xp + 1);
  Rat a;
  if (pre.empty() || pre == "+")
    a = 1;
  else if (pre == "-")
    a = -1;
  else {
    if (pre.back() != '*') throw Error(ErrorKind::ParseError, "bad map '" + raw + "'");
    a = parse_rat(pre.substr(0, pre.size() - 1));
  }
  Rat b = 0;
  if (!post.empty()) {
    if (post[0] != '+' && post[0] != '-') throw Error(ErrorKind::ParseError, "bad map '" + raw + "'");
    b = parse_rat(post);
  }
  return AffineMap(a, ExtRat(b));
}

std::strong_ordering operator<=>(const AffineMap& a, const AffineMap& b) {
  int c = cmp(a.alpha, b.alpha);
  if (c != 0) return c <=> 0;
  return a.beta <=> b.beta;
}

AffineMap compose(const AffineMap& g, const AffineMap& f) {
  if (f.is_constant()) return AffineMap::constant(g.apply_ext(f.beta));
  if (g.is_constant()) return g;
  return AffineMap(Rat(g.alpha * f.alpha), ExtRat(Rat(g.alpha * f.beta.value() + g.beta.value())));
}

Cell Cell::open(const ExtRat& lo, const ExtRat& hi) {
  if (!(lo < hi)) throw Error(ErrorKind::MalformedComponent, "empty open cell (" + lo.str() + "," + hi.str() + ")");
  return Cell{false, lo, hi};
}

bool Cell::contains(const Rat& x) const {
  ExtRat e(x);
  if (point) return e == lo;
  return lo < e && e < hi;
}

Rat Cell::sample() const {
  if (point) return lo.value();
  if (lo.finite() && hi.finite()) return Rat((lo.value() + hi.value()) / 2);
  if (lo.finite()) return Rat(lo.value() + 1);
  if (hi.finite()) return Rat(hi.value() - 1);
  return Rat(0);
}

std::string Cell::str() const {
  if (point) return "{" + lo.str() + "}";
  return "(" + lo.str() + "," + hi.str() + ")";
}

bool cell_less(const Cell& a, const Cell& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  if (a.point != b.point) return a.point;
  return a.hi < b.hi;
}

std::optional<ExtRat> eval_pl(const PLMap& f, const Rat& x) {
  for (const auto& [c, m] : f.pieces)
    if (c.contains(x)) return m.apply(x);
  return std::nullopt;
}

std::optional<Limit> limit_pl(const PLMap& f, const ExtRat& v, Side side) {
  for (const auto& [c, m] : f.pieces) {
    if (c.point) continue;
    bool hit = side == Side::Right ? (c.lo <= v && v < c.hi) : (c.lo < v && v <= c.hi);
    if (!hit) continue;
    Approach mode = Approach::Stationary;
    if (!m.is_constant()) {
      bool above = (side == Side::Right) == m.increasing();
      mode = above ? Approach::FromAbove : Approach::FromBelow;
    }
    return Limit{m.apply_ext(v), mode};
  }
  return std::nullopt;
}

DefSubset agree_on(const AffineMap& f, const AffineMap& g, const Cell& c) {
  if (f == g) return DefSubset::from_cell(c);
  if (f.alpha == g.alpha) return {};
  if (!f.beta.finite() || !g.beta.finite()) return {};
  Rat x = (g.beta.value() - f.beta.value()) / (f.alpha - g.alpha);
  if (c.contains(x)) return DefSubset::point(x);
  return {};
}

DefSubset solve_pl(const PLMap& f, const PLMap& g) {
  DefSubset out;
  for (const auto& [cf, mf] : f.pieces)
    for (const auto& [cg, mg] : g.pieces) {
      DefSubset common = DefSubset::from_cell(cf).intersect(DefSubset::from_cell(cg));
      for (const Cell& c : cells(common)) out = out.unite(agree_on(mf, mg, c));
    }
  return out;
}

}  // namespace omt
