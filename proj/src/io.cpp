#include "omt/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace omt {

std::string serialize(const Space& in) {
  Space s = in;
  s.canonicalize();
  std::ostringstream o;
  o << "[space]\nname = " << s.name << "\n";
  for (const auto& [id, d] : s.tracks) o << "\n[track]\nid = " << id << "\ndomain = " << d.str() << "\n";
  for (const auto& f : s.flags)
    o << "\n[flag]\ntrack = " << f.track << "\nregion = " << f.region.str() << "\nside = " << side_name(f.side) << "\n";
  for (const auto& b : s.branches)
    o << "\n[branch]\nfrom = " << b.from << "\ncells = " << b.domain.str() << "\nmap = " << b.map.str()
      << "\nto = " << b.to << "\nside = " << side_name(b.side) << "\n";
  return o.str();
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Section {
  std::string kind;
  int line = 0;
  std::map<std::string, std::pair<std::string, int>> kv;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

const std::map<std::string, std::vector<std::string>>& schema() {
  static const std::map<std::string, std::vector<std::string>> s = {
      {"space", {"name"}},
      {"track", {"id", "domain"}},
      {"flag", {"track", "region", "side"}},
      {"branch", {"from", "cells", "map", "to", "side"}},
  };
  return s;
}

template <class F>
auto field(const Section& sec, const std::string& key, F conv) {
  auto it = sec.kv.find(key);
  if (it == sec.kv.end()) fail(sec.line, "[" + sec.kind + "] missing key '" + key + "'");
  try {
    return conv(it->second.first);
  } catch (const Error& e) {
    fail(it->second.second, e.what());
  }
}

int to_int(const std::string& s) {
  if (s.empty() || s.size() > 6 || s.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorKind::ParseError, "bad track id '" + s + "'");
  return std::stoi(s);
}

Side to_side(const std::string& s) {
  if (s == "right") return Side::Right;
  if (s == "left") return Side::Left;
  throw Error(ErrorKind::ParseError, "side must be 'right' or 'left', got '" + s + "'");
}

}  // namespace

Space parse_space_unchecked(const std::string& text) {
  std::vector<Section> secs;
  std::istringstream in(text);
  std::string raw;
  int ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(ln, "unterminated section header");
      std::string kind = trim(line.substr(1, line.size() - 2));
      if (!schema().count(kind)) fail(ln, "unknown section [" + kind + "]");
      secs.push_back({kind, ln, {}});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) fail(ln, "expected 'key = value'");
    if (secs.empty()) fail(ln, "key outside any section");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    Section& sec = secs.back();
    const auto& keys = schema().at(sec.kind);
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      fail(ln, "unknown key '" + key + "' in [" + sec.kind + "]");
    if (sec.kv.count(key)) fail(ln, "duplicate key '" + key + "'");
    sec.kv[key] = {val, ln};
  }
  Space s;
  int headers = 0;
  for (const auto& sec : secs) {
    if (sec.kind == "space") {
      if (++headers > 1) fail(sec.line, "more than one [space] section");
      auto it = sec.kv.find("name");
      if (it != sec.kv.end()) s.name = it->second.first;
    } else if (sec.kind == "track") {
      int id = field(sec, "id", to_int);
      if (s.tracks.count(id)) fail(sec.line, "duplicate track id " + std::to_string(id));
      s.tracks[id] = field(sec, "domain", DefSubset::parse);
    } else if (sec.kind == "flag") {
      s.add_flag(field(sec, "track", to_int), field(sec, "region", DefSubset::parse), field(sec, "side", to_side));
    } else {
      s.add_branch(field(sec, "from", to_int), field(sec, "cells", DefSubset::parse),
                   field(sec, "map", AffineMap::parse), field(sec, "to", to_int), field(sec, "side", to_side));
    }
  }
  s.canonicalize();
  return s;
}

Space parse_space_file(const std::string& text) {
  Space s = parse_space_unchecked(text);
  try {
    s.check_well_formed();
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, e.what());
  }
  auto v = validate_topology(s);
  if (!v.empty()) throw Error(ErrorKind::ValidationError, v.front().message + " (" + v.front().datum + ")");
  return s;
}

}  // namespace omt
