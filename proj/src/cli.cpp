#include "omt/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "omt/affinemetric.hpp"
#include "omt/classify.hpp"
#include "omt/construct.hpp"
#include "omt/examples.hpp"
#include "omt/fuzz.hpp"
#include "omt/io.hpp"

namespace omt {

bool color_from_env(bool is_tty) {
  const char* v = std::getenv("OMT_COLOR");
  std::string mode = v ? v : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return is_tty;
}

namespace {

struct Result {
  std::string text;
  int code = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UsageError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::UsageError, "cannot write " + path);
  out << text;
}

std::string points_str(const std::vector<Point>& ps) {
  if (ps.empty()) return "none";
  std::string out;
  for (const Point& p : ps) out += (out.empty() ? "" : " ") + p.str();
  return out;
}

std::string set_str(const TrackSet& t) { return ts_empty(t) ? "empty" : ts_str(t); }

struct Printer {
  bool color;
  std::string text;
  void line(const std::string& s) { text += s + "\n"; }
  void pred(const std::string& key, bool v) {
    std::string b = v ? "true" : "false";
    if (color) b = (v ? "\033[32m" : "\033[31m") + b + "\033[0m";
    line(key + ": " + b);
  }
};

enum Pred { Hausdorff, Regular, Compact, NearCompact, Separable, Fdi, Affine, Weight, NPred };
const char* pred_key[] = {"hausdorff", "regular", "compact", "near-compact", "separable", "fdi", "affine", "weight"};

Result check(const Space& s, const std::vector<bool>& want, bool color) {
  Printer p{color, {}};
  int asked = 0, falses = 0;
  auto report = [&](Pred k, bool v) {
    ++asked;
    if (!v) ++falses;
    p.pred(pred_key[k], v);
  };
  HausdorffResult h = is_hausdorff(s);
  for (int k = 0; k < NPred; ++k) {
    if (!want[k]) continue;
    switch (k) {
      case Hausdorff:
        report(Hausdorff, h.ok);
        if (!h.ok) p.line("  witness: " + h.x.str() + " and " + h.y.str() + " share " + h.shared.str());
        break;
      case Regular:
        if (!h.ok) {
          report(Regular, false);
          p.line("  witness: not hausdorff");
          break;
        }
        if (RegularResult r = is_regular(s); report(Regular, r.ok), !r.ok)
          p.line("  witness: " + r.witness.str() + " has anchor " + r.anchor.str() + " but not " + r.missing.str() +
                 " (" + r.datum + ")");
        break;
      case Compact:
        if (CompactResult c = is_definably_compact(s); report(Compact, c.ok), !c.ok)
          p.line("  witness: germ " + c.germ.str() + " has no limit; curve " + c.witness.str());
        break;
      case NearCompact: report(NearCompact, is_near_compact(s)); break;
      case Separable: report(Separable, is_definably_separable(s)); break;
      case Fdi:
        if (FdiResult f = fdi_check(s); report(Fdi, f.ok), !f.ok)
          p.line("  witness: " + set_str(f.witness) + " has frontier " + set_str(f.witness_frontier));
        break;
      case Affine:
        if (!h.ok) {
          report(Affine, false);
          p.line("  witness: not hausdorff");
          break;
        }
        if (AffineResult a = is_affine(s); report(Affine, a.affine), !a.affine && a.witness)
          p.line("  witness: track " + std::to_string(a.witness->track) + " " + a.witness->cell.str() + " is " +
                 label_name(a.witness->label));
        break;
      case Weight: p.line(std::string("weight: ") + weight_name(weight_class(s))); break;
    }
  }
  return {p.text, asked == 1 && falses == 1 ? 1 : 0};
}

Result validate(const std::string& text) {
  Space s = parse_space_unchecked(text);
  auto v = validate_topology(s);
  if (v.empty()) return {"valid: true\n", 0};
  std::string out = "valid: false\n";
  for (const auto& x : v)
    out += "  at " + x.witness.str() + " in track " + std::to_string(x.where.track) + " " + x.where.cell.str() +
           ", anchor " + x.anchor.str() + ", " + x.datum + ": " + x.message + "\n";
  return {out, 1};
}

Result decompose(const Space& s) {
  Decomposition d = decompose_T2(s);
  std::string out = "pieces:\n";
  for (const auto& pc : d.pieces)
    out += "  track " + std::to_string(pc.track) + " " + pc.cell.str() + " " + label_name(pc.label) + "\n";
  out += "leftover: " + points_str(d.leftover) + "\n";
  return {out, 0};
}

Result decompose_t3(const Space& s) {
  EmbeddingReport r = decompose_T3(s);
  std::string out = "n_Y: " + std::to_string(r.n_Y) + "\nn_Z: " + std::to_string(r.n_Z) + "\npieces:\n";
  for (size_t i = 0; i < r.pieces.size(); ++i) {
    const OpenPiece& pc = r.pieces[i];
    const PieceEmbedding& e = r.embeddings[i];
    out += "  piece " + std::to_string(i) + ": " + case_name(pc.tag) + ", E " + pc.e_pattern + ", side " +
           pc.side_condition + ", target " + target_name(e.kind) + " top " + std::to_string(e.top) +
           (e.bijective ? ", bijective" : "") + "\n";
    for (size_t k = 0; k < pc.levels.size(); ++k)
      out += "    track " + std::to_string(pc.levels[k].track) + " " + pc.levels[k].cell.str() + " -> level " +
             std::to_string(e.level[k]) + "\n";
  }
  out += "Y: " + set_str(r.Y) + "\nZ: " + set_str(r.Z) + "\nleftover: " + points_str(r.leftover) + "\n";
  out += "h_Y:\n" + map_str(r.h_Y) + "h_Z:\n" + map_str(r.h_Z);
  return {out, 0};
}

Result emit(const std::string& body, const std::string& out_path, const std::string& report) {
  if (out_path.empty()) return {body, 0};
  write_file(out_path, body);
  return {report + "written: " + out_path + "\n", 0};
}

Result compactify_cmd(const Space& s, const std::string& out_path) {
  Compactification c = compactify(s);
  std::string rep = "added_points: " + std::to_string(c.added_points) + "\n" +
                    "one-point: " + (c.added ? c.added->str() : std::string("none")) + "\n" + "embedding:\n" +
                    map_str(c.embedding);
  return emit(serialize(c.space), out_path, rep);
}

Result metric_cmd(const Space& s, const std::string& out_path) {
  MetricExpr m = synthesize_metric(s);
  return emit(m.str(), out_path, "");
}

Result limit_cmd(const Space& s, const std::string& curve) {
  Curve g = Curve::parse(curve);
  std::string out = "curve: " + g.str() + "\n";
  auto e = e_limit_side(g);
  out += "e-limit: " + (e ? e->value.str() + " " + limit_side_name(e->side) : std::string("none")) + "\n";
  out += "limit: " + set_str(tau_limit(s, g)) + "\n";
  return {out, 0};
}

Result components_cmd(const Space& s) {
  Components c = connected_components(s);
  std::string out = "components: " + std::to_string(c.parts.size()) + "\n";
  for (const auto& part : c.parts) out += "  " + ts_str(part) + "\n";
  out += "singletons: " + set_str(c.singletons) + "\n";
  return {out, 0};
}

Result two_to_one_cmd(const Space& s) {
  TwoToOne t = two_to_one_euclidean(s);
  std::string out = "max_fiber: " + std::to_string(t.max_fiber) + "\nmap:\n" + map_str(t.map) + "target:\n" +
                    serialize(t.target) + t.graph.str();
  return {out, 0};
}

Result fuzz_cmd(std::uint64_t seed, int count, bool mutants, const std::string& dir) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::string out;
  auto put = [&](const std::string& tag, const std::string& file, const Space& s) {
    if (dir.empty()) {
      out += "# " + tag + "\n" + serialize(s) + "\n";
    } else {
      write_file((std::filesystem::path(dir) / file).string(), "# " + tag + "\n" + serialize(s));
      out += file + ": " + tag + "\n";
    }
  };
  auto cases = fuzz_generate(seed, count);
  for (size_t i = 0; i < cases.size(); ++i) {
    std::string id = std::to_string(i);
    put("case " + id + " " + family_name(cases[i].family) + " valid", "fuzz-" + id + ".space", cases[i].space);
    if (!mutants) continue;
    FuzzCase m = fuzz_mutant(cases[i].space, rng);
    if (!m.valid) put("case " + id + " mutant invalid", "fuzz-" + id + "-mutant.space", m.space);
  }
  return {out, 0};
}

Result guarded(const std::function<Result()>& f) {
  try {
    return f();
  } catch (const Error& e) {
    return {std::string("error: ") + e.what() + "\n", 2};
  } catch (const std::exception& e) {
    return {std::string("error: ") + e.what() + "\n", 2};
  }
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err, bool color) {
  CLI::App app{"one-dimensional definable topologies over the rationals", "omt"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string out_path, curve, name, dir;
  std::uint64_t seed = 1;
  int count = 1;
  bool mutants = false;
  std::vector<bool> want(NPred, false);
  bool flag[NPred] = {};

  auto* v = app.add_subcommand("validate", "parse and validate space files");
  v->add_option("files", files, "space files")->required();
  auto* c = app.add_subcommand("check", "decide topological predicates");
  c->add_option("files", files, "space files")->required();
  for (int k = 0; k < NPred; ++k) c->add_flag(std::string("--") + pred_key[k], flag[k]);
  auto* d = app.add_subcommand("decompose", "Hausdorff piece decomposition");
  d->add_option("files", files, "space files")->required();
  auto* d3 = app.add_subcommand("decompose-t3", "lex and Alexandrov embedding of a regular space");
  d3->add_option("files", files, "space files")->required();
  auto* cp = app.add_subcommand("compactify", "definable Hausdorff compactification");
  cp->add_option("file", files, "space file")->required()->expected(1);
  cp->add_option("-o", out_path, "output .space file");
  auto* me = app.add_subcommand("metric", "synthesize a definable metric");
  me->add_option("file", files, "space file")->required()->expected(1);
  me->add_option("-o", out_path, "output file");
  auto* li = app.add_subcommand("limit", "limit set of a curve");
  li->add_option("file", files, "space file")->required()->expected(1);
  li->add_option("--curve", curve, "track=..; map=..; domain=(a,b); end=a|b")->required();
  auto* co = app.add_subcommand("components", "definable connected components");
  co->add_option("files", files, "space files")->required();
  auto* tt = app.add_subcommand("two-to-one", "at most 2-to-1 map onto a euclidean space");
  tt->add_option("file", files, "space file")->required()->expected(1);
  auto* ex = app.add_subcommand("example", "write a catalogue space");
  ex->add_option("name", name, "example name")->required();
  ex->add_option("-o", out_path, "output .space file");
  auto* fz = app.add_subcommand("fuzz", "generate random valid spaces");
  fz->add_option("--seed", seed, "seed");
  fz->add_option("--count", count, "number of spaces")->check(CLI::NonNegativeNumber);
  fz->add_flag("--mutants", mutants, "also emit invalid mutants");
  fz->add_option("-o", dir, "output directory");

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  if (ex->parsed()) {
    Result r = guarded([&] { return emit(serialize(example(name)), out_path, ""); });
    (r.code == 2 ? err : out) << r.text;
    return r.code;
  }
  if (fz->parsed()) {
    Result r = guarded([&] { return fuzz_cmd(seed, count, mutants, dir); });
    (r.code == 2 ? err : out) << r.text;
    return r.code;
  }

  bool any = false;
  for (int k = 0; k < NPred; ++k) any |= flag[k];
  for (int k = 0; k < NPred; ++k) want[k] = any ? flag[k] : true;

  auto one = [&](const std::string& path) -> Result {
    return guarded([&]() -> Result {
      std::string text = read_file(path);
      if (v->parsed()) return validate(text);
      Space s = parse_space_file(text);
      if (c->parsed()) return check(s, want, color);
      if (d->parsed()) return decompose(s);
      if (d3->parsed()) return decompose_t3(s);
      if (cp->parsed()) return compactify_cmd(s, out_path);
      if (me->parsed()) return metric_cmd(s, out_path);
      if (li->parsed()) return limit_cmd(s, curve);
      if (co->parsed()) return components_cmd(s);
      return two_to_one_cmd(s);
    });
  };

  std::vector<std::future<Result>> jobs;
  for (const auto& f : files) jobs.push_back(std::async(std::launch::async, one, f));
  int code = 0;
  for (size_t i = 0; i < jobs.size(); ++i) {
    Result r = jobs[i].get();
    if (files.size() > 1) out << "== " << files[i] << " ==\n";
    (r.code == 2 ? err : out) << r.text;
    code = std::max(code, r.code);
  }
  return code;
}

}  // namespace omt
