#include "omt/defset.hpp"

#include <algorithm>
#include <sstream>

namespace omt {

namespace {

bool comp_contains(const Component& c, const ExtRat& x) {
  bool above = c.lo < x || (c.lo == x && c.lo_closed);
  bool below = x < c.hi || (x == c.hi && c.hi_closed);
  return above && below;
}

// Elementary cells cut out by sorted distinct breakpoints; keep those whose
// sample satisfies pred.
DefSubset sweep(std::vector<Rat> cuts, const std::function<bool(const Rat&)>& pred) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Component> out;
  ExtRat prev = ExtRat::neg_inf();
  for (const Rat& c : cuts) {
    Cell gap = Cell::open(prev, ExtRat(c));
    if (pred(gap.sample())) out.push_back(Component::open(prev, ExtRat(c)));
    if (pred(c)) out.push_back(Component::point(c));
    prev = ExtRat(c);
  }
  Cell tail{false, prev, ExtRat::pos_inf()};
  if (pred(tail.sample())) out.push_back(Component::open(prev, ExtRat::pos_inf()));
  return DefSubset::normalize(std::move(out));
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

DefSubset DefSubset::normalize(std::vector<Component> raw) {
  std::vector<Component> v;
  for (Component c : raw) {
    if (c.hi < c.lo)
      throw Error(ErrorKind::MalformedComponent, "lo " + c.lo.str() + " > hi " + c.hi.str());
    if (c.lo == c.hi) {
      if (!(c.lo_closed && c.hi_closed)) continue;
      if (!c.lo.finite()) throw Error(ErrorKind::MalformedComponent, "infinite point");
    }
    if (!c.lo.finite()) c.lo_closed = false;
    if (!c.hi.finite()) c.hi_closed = false;
    v.push_back(c);
  }
  std::sort(v.begin(), v.end(), [](const Component& a, const Component& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  DefSubset out;
  for (const Component& c : v) {
    if (!out.comps_.empty()) {
      Component& cur = out.comps_.back();
      bool touch = c.lo < cur.hi || (c.lo == cur.hi && (cur.hi_closed || c.lo_closed));
      if (touch) {
        if (c.lo == cur.lo) cur.lo_closed = cur.lo_closed || c.lo_closed;
        if (cur.hi < c.hi) {
          cur.hi = c.hi;
          cur.hi_closed = c.hi_closed;
        } else if (c.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || c.hi_closed;
        }
        continue;
      }
    }
    out.comps_.push_back(c);
  }
  return out;
}

DefSubset DefSubset::from_cell(const Cell& c) {
  if (c.point) return point(c.lo.value());
  return normalize({Component::open(c.lo, c.hi)});
}

DefSubset DefSubset::from_cells(const std::vector<Cell>& cs) {
  std::vector<Component> v;
  for (const Cell& c : cs) v.push_back(c.point ? Component::point(c.lo.value()) : Component::open(c.lo, c.hi));
  return normalize(std::move(v));
}

bool DefSubset::contains(const Rat& x) const {
  ExtRat e(x);
  for (const auto& c : comps_)
    if (comp_contains(c, e)) return true;
  return false;
}

bool DefSubset::contains_cell(const Cell& c) const { return from_cell(c).subset_of(*this); }

bool DefSubset::is_finite() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Component& c) { return c.is_point(); });
}

bool DefSubset::bounded() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const Component& c) { return c.lo.finite() && c.hi.finite(); });
}

std::vector<Rat> DefSubset::points() const {
  std::vector<Rat> out;
  for (const auto& c : comps_)
    if (c.is_point()) out.push_back(c.lo.value());
  return out;
}

std::vector<Rat> DefSubset::endpoints() const {
  std::vector<Rat> out;
  for (const auto& c : comps_) {
    if (c.lo.finite()) out.push_back(c.lo.value());
    if (c.hi.finite() && c.hi != c.lo) out.push_back(c.hi.value());
  }
  return out;
}

Rat DefSubset::sample() const {
  if (comps_.empty()) throw Error(ErrorKind::Internal, "sample of empty set");
  const Component& c = comps_.front();
  if (c.is_point()) return c.lo.value();
  return Cell{false, c.lo, c.hi}.sample();
}

DefSubset DefSubset::unite(const DefSubset& o) const {
  std::vector<Component> v = comps_;
  v.insert(v.end(), o.comps_.begin(), o.comps_.end());
  return normalize(std::move(v));
}

DefSubset DefSubset::intersect(const DefSubset& o) const {
  std::vector<Rat> cuts = endpoints();
  auto e = o.endpoints();
  cuts.insert(cuts.end(), e.begin(), e.end());
  return sweep(cuts, [&](const Rat& x) { return contains(x) && o.contains(x); });
}

DefSubset DefSubset::minus(const DefSubset& o) const {
  if (o.empty() || empty()) return *this;
  std::vector<Rat> cuts = endpoints();
  auto e = o.endpoints();
  cuts.insert(cuts.end(), e.begin(), e.end());
  return sweep(cuts, [&](const Rat& x) { return contains(x) && !o.contains(x); });
}

DefSubset DefSubset::e_interior() const {
  std::vector<Component> v;
  for (const auto& c : comps_)
    if (!c.is_point()) v.push_back(Component::open(c.lo, c.hi));
  return normalize(std::move(v));
}

DefSubset DefSubset::e_closure() const {
  std::vector<Component> v;
  for (const auto& c : comps_) v.push_back({c.lo, c.hi, true, true});
  return normalize(std::move(v));
}

DefSubset DefSubset::image(const AffineMap& m) const {
  if (m.is_constant()) throw Error(ErrorKind::Internal, "image under a constant map");
  std::vector<Component> v;
  for (const auto& c : comps_) {
    Component d{m.apply_ext(c.lo), m.apply_ext(c.hi), c.lo_closed, c.hi_closed};
    if (m.decreasing()) {
      std::swap(d.lo, d.hi);
      std::swap(d.lo_closed, d.hi_closed);
    }
    v.push_back(d);
  }
  return normalize(std::move(v));
}

DefSubset DefSubset::preimage(const AffineMap& m) const { return image(m.inverse()); }

std::string DefSubset::str() const {
  if (comps_.empty()) return "empty";
  std::string s;
  for (size_t i = 0; i < comps_.size(); ++i) {
    const Component& c = comps_[i];
    if (i) s += " | ";
    if (c.is_point())
      s += "{" + c.lo.str() + "}";
    else
      s += std::string(c.lo_closed ? "[" : "(") + c.lo.str() + "," + c.hi.str() + (c.hi_closed ? "]" : ")");
  }
  return s;
}

DefSubset DefSubset::parse(const std::string& text) {
  std::string t = trim(text);
  if (t == "empty") return {};
  std::vector<Component> v;
  std::stringstream ss(t);
  std::string part;
  while (std::getline(ss, part, '|')) {
    part = trim(part);
    if (part.size() < 3) throw Error(ErrorKind::ParseError, "bad interval '" + part + "'");
    char a = part.front(), b = part.back();
    std::string body = trim(part.substr(1, part.size() - 2));
    if (a == '{' && b == '}') {
      v.push_back(Component::point(parse_rat(body)));
      continue;
    }
    if ((a != '(' && a != '[') || (b != ')' && b != ']'))
      throw Error(ErrorKind::ParseError, "bad interval '" + part + "'");
    auto comma = body.find(',');
    if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos)
      throw Error(ErrorKind::ParseError, "bad interval '" + part + "'");
    ExtRat lo = ExtRat::parse(trim(body.substr(0, comma)));
    ExtRat hi = ExtRat::parse(trim(body.substr(comma + 1)));
    if ((a == '[' && !lo.finite()) || (b == ']' && !hi.finite()))
      throw Error(ErrorKind::ParseError, "closed infinite endpoint in '" + part + "'");
    if (!(lo < hi)) throw Error(ErrorKind::MalformedComponent, "empty interval '" + part + "'");
    v.push_back({lo, hi, a == '[', b == ']'});
  }
  return normalize(std::move(v));
}

DefSubset combine(SetOp op, const DefSubset& a, const DefSubset& b) {
  switch (op) {
    case SetOp::Union: return a.unite(b);
    case SetOp::Intersect: return a.intersect(b);
    case SetOp::Difference: return a.minus(b);
    case SetOp::ComplementIn: return b.minus(a);
  }
  return {};
}

bool ValueSet::contains(const ExtRat& v) const {
  if (v.is_neg_inf()) return neg_inf;
  if (v.is_pos_inf()) return pos_inf;
  return finite.contains(v.value());
}

ValueSet ValueSet::unite(const ValueSet& o) const {
  return {finite.unite(o.finite), neg_inf || o.neg_inf, pos_inf || o.pos_inf};
}

ValueSet ValueSet::intersect(const ValueSet& o) const {
  return {finite.intersect(o.finite), neg_inf && o.neg_inf, pos_inf && o.pos_inf};
}

ValueSet ValueSet::minus(const ValueSet& o) const {
  return {finite.minus(o.finite), neg_inf && !o.neg_inf, pos_inf && !o.pos_inf};
}

std::string ValueSet::str() const {
  std::string s;
  if (neg_inf) s += "{-inf}";
  if (!finite.empty()) s += (s.empty() ? "" : " | ") + finite.str();
  if (pos_inf) s += (s.empty() ? "" : " | ") + std::string("{+inf}");
  return s.empty() ? "empty" : s;
}

ValueSet side_approach(Side side, const DefSubset& s) {
  ValueSet out;
  std::vector<Component> v;
  for (const auto& c : s.components()) {
    if (c.is_point()) continue;
    if (side == Side::Right) {
      if (c.lo.is_neg_inf()) out.neg_inf = true;
      v.push_back({c.lo, c.hi, true, false});
    } else {
      if (c.hi.is_pos_inf()) out.pos_inf = true;
      v.push_back({c.lo, c.hi, false, true});
    }
  }
  out.finite = DefSubset::normalize(std::move(v));
  return out;
}

ValueSet side_approach(Side side, const Cell& c) {
  if (c.point) return {};
  return side_approach(side, DefSubset::from_cell(c));
}

std::vector<Cell> cells(const DefSubset& s) {
  std::vector<Cell> out;
  for (const auto& c : s.components()) {
    if (c.is_point()) {
      out.push_back(Cell::at(c.lo.value()));
      continue;
    }
    if (c.lo_closed) out.push_back(Cell::at(c.lo.value()));
    out.push_back(Cell::open(c.lo, c.hi));
    if (c.hi_closed) out.push_back(Cell::at(c.hi.value()));
  }
  return out;
}

std::vector<Cell> refine_cells(const DefSubset& s, std::vector<Rat> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Cell> out;
  for (const Cell& c : cells(s)) {
    if (c.point) {
      out.push_back(c);
      continue;
    }
    ExtRat prev = c.lo;
    for (const Rat& x : cuts) {
      if (!c.contains(x)) continue;
      out.push_back(Cell::open(prev, ExtRat(x)));
      out.push_back(Cell::at(x));
      prev = ExtRat(x);
    }
    out.push_back(Cell::open(prev, c.hi));
  }
  return out;
}

DefSubset preimage_in(const AffineMap& m, const ValueSet& v, const Cell& c) {
  if (m.is_constant()) return v.contains(m.beta) ? DefSubset::from_cell(c) : DefSubset{};
  if (c.point) return v.contains(m.apply(c.lo.value())) ? DefSubset::from_cell(c) : DefSubset{};
  return v.finite.preimage(m).intersect(DefSubset::from_cell(c));
}

ValueSet image_of(const AffineMap& m, const Cell& c) {
  ValueSet out;
  if (m.is_constant()) {
    if (m.beta.is_neg_inf())
      out.neg_inf = true;
    else if (m.beta.is_pos_inf())
      out.pos_inf = true;
    else
      out.finite = DefSubset::point(m.beta.value());
    return out;
  }
  out.finite = DefSubset::from_cell(c).image(m);
  return out;
}

}  // namespace omt
