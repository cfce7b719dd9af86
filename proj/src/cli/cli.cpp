#include "twbd/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "twbd/canonical.hpp"
#include "twbd/catalog.hpp"
#include "twbd/classify.hpp"
#include "twbd/design_io.hpp"
#include "twbd/error.hpp"
#include "twbd/km_search.hpp"

namespace twbd {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::string group_file;
  std::string catalog_group;
  unsigned v = 0;
  bool two_class_only = false;
  std::string hexad_params;
  std::uint64_t limit = 0;
  std::uint64_t candidates = 0;
  std::uint64_t closure_cap = kDefaultClosureCap;
  std::uint64_t subset_cap = kDefaultSubsetCap;
  unsigned jobs = 0;
  std::string out_dir = "twbd-search";
  std::uint64_t seed = 1;
  bool libexact = false;

  std::vector<std::string> files;
  unsigned relabelings = 0;
  std::string id;
  std::string format = "json";
  std::string out_file;
};

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

json points_json(Subset s) { return s.points(); }

std::string describe_hexads(const Classification &c) {
  if (!c.two_class) return "not a 2-class symmetric design";
  const auto &p = *c.two_class;
  if (c.is_biplane) return "2-(" + std::to_string(p.v) + "," + std::to_string(p.k) + ",2) biplane";
  if (c.is_symmetric_2design) return c.tag() + " design";
  if (c.is_semibiplane) return "semi-biplane " + c.tag();
  return "2-class symmetric design " + c.tag();
}

json scheme_json(const SchemeParams &s) {
  auto mat = [](const Matrix2 &m) { return json::array({json::array({m[0][0], m[0][1]}), json::array({m[1][0], m[1][1]})}); };
  return {{"n1", s.n1}, {"n2", s.n2}, {"P1", mat(s.P1)}, {"P2", mat(s.P2)}};
}

json classification_json(const Classification &c) {
  json j;
  j["tag"] = c.tag();
  j["tactical"] = c.is_tactical;
  if (c.is_tactical) j["replication"] = c.replication;
  if (c.two_class) {
    const auto &p = *c.two_class;
    j["two_class"] = {{"v", p.v}, {"k", p.k}, {"lambda1", p.lambda1}, {"lambda2", p.lambda2},
                      {"delta1", p.delta1}, {"delta2", p.delta2}};
  }
  if (c.scheme) j["scheme"] = scheme_json(*c.scheme);
  if (c.gd.type != GdType::not_gd || c.gd.index_convention_type != GdType::not_gd) {
    j["gd"] = {{"type", to_string(c.gd.type)},
               {"group_class", c.gd.group_class},
               {"group_size", c.gd.group_size},
               {"index_convention_type", to_string(c.gd.index_convention_type)},
               {"conventions_agree", c.gd.conventions_agree()}};
  }
  return j;
}

// The hexads of a design with tetrads, otherwise the whole system.
SetSystem classification_target(const SetSystem &s) {
  auto hexads = s.blocks_of_size(6);
  if (hexads.size() > 0 && hexads.size() < s.size()) return hexads;
  return s;
}

std::optional<TwoClassParams> parse_hexad_params(const std::string &text) {
  if (text.empty()) return std::nullopt;
  std::vector<int> p;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      p.push_back(std::stoi(tok));
    } catch (const std::exception &) {
      throw ParseError("--hexad-params: bad number '" + tok + "'");
    }
  }
  if (p.size() != 6) throw ParseError("--hexad-params expects v,k,lambda1,lambda2,delta1,delta2");
  return TwoClassParams{p[0], p[1], p[2], p[3], p[4], p[5]};
}

PermGroup load_group(const Options &o) {
  if (!o.group_file.empty()) return read_group_file(o.group_file);
  return catalog_get(o.catalog_group).group();
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

int cmd_search(const Options &o, std::ostream &out, std::ostream &err) {
  if (o.v != 0 && !admissible_v(o.v)) {
    err << "v = " << o.v
        << " is inadmissible: a homogeneous 3-(v,{4,6},1) design exists only if v = 2 or 4 (mod 6) and v >= 16\n";
    return kExitInputError;
  }
  if (o.group_file.empty() && o.catalog_group.empty()) {
    err << "search needs --group FILE or --catalog-group ID\n";
    return kExitInputError;
  }
  PermGroup group = load_group(o);
  const Point v = group.degree();
  if (o.v != 0 && o.v != v) {
    err << "--v " << o.v << " does not match the group degree " << v << "\n";
    return kExitInputError;
  }
  if (!admissible_v(v)) {
    err << "v = " << v
        << " is inadmissible: a homogeneous 3-(v,{4,6},1) design exists only if v = 2 or 4 (mod 6) and v >= 16\n";
    return kExitInputError;
  }
  if (!is_transitive(group)) {
    err << "the group is not transitive on " << v << " points\n";
    return kExitInputError;
  }

  std::optional<std::uint64_t> order;
  try {
    order = closure_order(group, o.closure_cap);
  } catch (const CapExceeded &) {
  }

  fs::path dir(o.out_dir);
  fs::create_directories(dir);
  if (o.libexact) fs::create_directories(dir / "matrices");

  const KmContext ctx(group, o.subset_cap);
  SearchConfig config;
  config.two_class_only = o.two_class_only;
  config.hexad_params = parse_hexad_params(o.hexad_params);
  if (o.limit) config.solution_limit = o.limit;
  if (o.candidates) config.candidate_limit = o.candidates;
  config.subset_cap = o.subset_cap;
  config.jobs = o.jobs ? o.jobs : default_jobs();
  if (o.libexact) {
    config.on_matrix = [&](std::size_t index, const HexadCandidate &, const KMMatrix &m) {
      std::ostringstream name;
      name << "candidate_" << std::setw(6) << std::setfill('0') << index << ".txt";
      std::ofstream f(dir / "matrices" / name.str(), std::ios::binary);
      write_libexact(f, m.to_cover());
    };
  }

  std::vector<std::string> gens;
  for (const auto &g : group.generators()) gens.push_back(g.to_cycle_string());

  std::ofstream designs(dir / "designs.jsonl", std::ios::binary);
  if (!designs) throw std::runtime_error("cannot write " + (dir / "designs.jsonl").string());
  IsoReducer reducer;
  auto summary = config.jobs <= 1 ? search_designs_serial : search_designs_parallel;
  SearchSummary s = summary(ctx, config, [&](FoundDesign &&f) {
    std::vector<Subset> base;
    for (OrbitId id : f.hexad_orbits) base.push_back(ctx.hexads.representative(id));
    for (OrbitId id : f.tetrad_orbits) base.push_back(ctx.tetrads.representative(id));
    std::size_t cls = reducer.add(f.design);
    json j = to_json(DesignRecord{f.design, base, gens});
    j["candidate"] = f.candidate_index;
    j["class"] = cls;
    designs << j.dump() << '\n';
    return true;
  });
  designs.close();

  CertificateCache cache;
  std::ofstream classes(dir / "classes.jsonl", std::ios::binary);
  json multiplicities = json::array();
  for (std::size_t id = 0; id < reducer.classes().size(); ++id) {
    const auto &cls = reducer.classes()[id];
    const Certificate &cert = reducer.certificate(id);
    cache.insert(cert);
    json j = to_json(DesignRecord{cls.representative, std::nullopt, std::nullopt});
    j["class"] = id;
    j["multiplicity"] = cls.multiplicity;
    j["hexads"] = classify(cls.representative.blocks_of_size(6)).tag();
    j["aut_order"] = automorphism_group(cls.representative, o.closure_cap).order;
    j["certificate"] = cert.hex();
    classes << j.dump() << '\n';
    multiplicities.push_back(cls.multiplicity);
  }
  classes.close();
  cache.save((dir / "certificates.txt").string());

  json sj;
  sj["v"] = v;
  sj["group"] = gens;
  sj["group_order"] = order ? json(*order) : json(nullptr);
  sj["orbits"] = {{"triples", ctx.triples.size()}, {"tetrads", ctx.tetrads.size()}, {"hexads", ctx.hexads.size()}};
  sj["two_class_only"] = o.two_class_only;
  if (!o.hexad_params.empty()) sj["hexad_params"] = config.hexad_params->to_string();
  sj["candidates"] = s.candidates;
  sj["candidates_tried"] = s.candidates_tried;
  sj["filtered_out"] = s.filtered_out;
  sj["infeasible"] = s.infeasible;
  sj["solutions"] = s.solutions;
  sj["classes"] = reducer.classes().size();
  sj["class_multiplicities"] = multiplicities;
  sj["capped"] = s.capped;
  sj["candidate_stats"] = {{"orbits_self_overlapping", s.candidate_stats.orbits_self_overlapping},
                           {"double_cover_pruned", s.candidate_stats.double_cover_pruned},
                           {"tactical_pruned", s.candidate_stats.tactical_pruned},
                           {"emitted", s.candidate_stats.emitted}};
  write_text(dir / "summary.json", sj.dump(2) + "\n");

  out << "v=" << v << ", group order " << (order ? std::to_string(*order) : "> cap") << ", orbits on 3/4/6-sets "
      << ctx.triples.size() << "/" << ctx.tetrads.size() << "/" << ctx.hexads.size() << "\n";
  out << "candidates " << s.candidates << " (solved " << s.candidates_tried << ", filtered " << s.filtered_out
      << ", infeasible " << s.infeasible << ")\n";
  out << "solutions " << s.solutions << ", classes " << reducer.classes().size() << "\n";
  out << "output in " << dir.string() << "\n";
  if (s.capped) {
    err << "A candidate or solution limit was reached; output may be incomplete\n";
    return kExitCapped;
  }
  return kExitOk;
}

int cmd_verify(const Options &o, std::ostream &out) {
  const auto rec = read_design_file(o.files.at(0));
  const auto &d = rec.design;
  auto report = verify_twbd(d, 3, {4, 6}, 1);
  const auto hexads = d.blocks_of_size(6).size(), tetrads = d.blocks_of_size(4).size();
  json j{{"command", "verify"}, {"v", d.v()}, {"valid", report.ok}, {"hexads", hexads}, {"tetrads", tetrads}};
  if (report.ok) {
    out << "valid 3-(" << d.v() << ",{4,6},1) design: " << hexads << " hexads, " << tetrads << " tetrads";
    if (hexads != d.v()) out << " (not homogeneous: " << hexads << " hexads on " << d.v() << " points)";
    out << "\n";
  } else {
    out << "not a 3-(" << d.v() << ",{4,6},1) design: " << report.describe() << "\n";
    if (report.witness) {
      j["witness"] = points_json(*report.witness);
      j["witness_count"] = report.witness_count;
    }
    if (report.bad_block) j["bad_block"] = points_json(*report.bad_block);
  }
  out << j.dump() << "\n";
  return report.ok ? kExitOk : kExitNegative;
}

int cmd_classify(const Options &o, std::ostream &out) {
  const auto rec = read_design_file(o.files.at(0));
  const SetSystem target = classification_target(rec.design);
  const auto c = classify(target);
  const bool hexads_only = target.size() != rec.design.size();
  out << (hexads_only ? "hexads: " : "blocks: ") << describe_hexads(c) << "\n";
  if (c.two_class) out << "parameters " << c.two_class->to_string() << "\n";
  if (c.scheme) {
    const auto &s = *c.scheme;
    out << "association scheme n1=" << s.n1 << " n2=" << s.n2 << " P1=[[" << s.P1[0][0] << "," << s.P1[0][1] << "],["
        << s.P1[1][0] << "," << s.P1[1][1] << "]] P2=[[" << s.P2[0][0] << "," << s.P2[0][1] << "],[" << s.P2[1][0]
        << "," << s.P2[1][1] << "]]\n";
  }
  if (c.gd.type != GdType::not_gd) {
    out << to_string(c.gd.type) << " group divisible, groups of size " << c.gd.group_size << " from class "
        << c.gd.group_class << "\n";
  }
  if (!c.gd.conventions_agree())
    out << "note: reading the inequalities with fixed class indices gives " << to_string(c.gd.index_convention_type)
        << "\n";
  json j = classification_json(c);
  j["command"] = "classify";
  j["target"] = hexads_only ? "hexads" : "blocks";
  j["description"] = describe_hexads(c);
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_iso(const Options &o, std::ostream &out) {
  const auto a = read_design_file(o.files.at(0)).design;
  const auto b = read_design_file(o.files.at(1)).design;
  const bool iso = a.v() == b.v() && a.size() == b.size() && are_isomorphic(a, b);
  out << (iso ? "isomorphic" : "non-isomorphic") << "\n";
  out << json{{"command", "iso"}, {"isomorphic", iso}}.dump() << "\n";
  return iso ? kExitOk : kExitNegative;
}

int cmd_aut(const Options &o, std::ostream &out) {
  const auto d = read_design_file(o.files.at(0)).design;
  const auto aut = automorphism_group(d, o.closure_cap);
  std::vector<std::string> gens;
  for (const auto &g : aut.generators) gens.push_back(g.to_cycle_string());
  const bool transitive = !aut.generators.empty() && is_transitive(PermGroup(d.v(), aut.generators));
  out << "automorphism group order " << aut.order << (transitive ? ", transitive" : ", intransitive") << "\n";
  for (const auto &g : gens) out << "  " << g << "\n";
  out << json{{"command", "aut"}, {"order", aut.order}, {"transitive", transitive}, {"generators", gens}}.dump() << "\n";
  return kExitOk;
}

int cmd_canon(const Options &o, std::ostream &out) {
  const auto d = read_design_file(o.files.at(0)).design;
  const auto form = canonical_form(d);
  const std::string hex = form.certificate.hex();
  out << "certificate " << hex << "\n";
  out << "labeling " << form.labeling.to_cycle_string() << "\n";
  json j{{"command", "canon"}, {"certificate", hex}, {"labeling", form.labeling.images()}};
  if (o.relabelings > 0) {
    std::mt19937_64 rng(o.seed);
    std::vector<Point> perm(d.v());
    std::size_t agree = 0;
    for (unsigned i = 0; i < o.relabelings; ++i) {
      std::iota(perm.begin(), perm.end(), Point{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      agree += canonical_certificate(d.relabeled(Permutation(perm))) == form.certificate;
    }
    out << agree << "/" << o.relabelings << " random relabelings (seed " << o.seed << ") give the same certificate\n";
    j["relabelings"] = o.relabelings;
    j["relabelings_agree"] = agree;
    out << j.dump() << "\n";
    return agree == o.relabelings ? kExitOk : kExitNegative;
  }
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_catalog_list(std::ostream &out) {
  for (const auto &e : catalog_entries()) {
    out << e.id << "\tv=" << e.v << "\t" << e.baseblocks.size() << " baseblocks\t" << e.family << "\t"
        << e.expected_hexads << "\n";
  }
  return kExitOk;
}

int cmd_catalog_verify(const Options &o, std::ostream &out) {
  const auto reports = verify_all(o.jobs ? o.jobs : default_jobs());
  out << format_report_table(reports);
  bool ok = std::all_of(reports.begin(), reports.end(), [](const EntryReport &r) { return r.pass(); });
  return ok ? kExitOk : kExitNegative;
}

int cmd_catalog_export(const Options &o, std::ostream &out) {
  if (o.format != "json") throw ParseError("unsupported export format '" + o.format + "'");
  const auto &e = catalog_get(o.id);
  DesignRecord rec{e.materialize(), e.baseblocks, e.generator_strings()};
  if (o.out_file.empty()) {
    out << dump_design(rec) << "\n";
  } else {
    write_design_file(o.out_file, rec);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Search, verify and classify transitive homogeneous 3-(v,{4,6},1) designs", "twbd"};
  app.require_subcommand(1);
  Options o;

  auto *search = app.add_subcommand("search", "Kramer-Mesner search under a prescribed transitive group");
  auto *group_opt = search->add_option("--group", o.group_file, "group file (degree line, then cycle notation)");
  search->add_option("--catalog-group", o.catalog_group, "use the base group of a catalog entry")->excludes(group_opt);
  search->add_option("--v", o.v, "number of points (checked against the group)");
  search->add_flag("--two-class-only", o.two_class_only, "keep hexad candidates that form 2-class symmetric designs");
  search->add_option("--hexad-params", o.hexad_params, "keep hexad candidates with parameters v,k,l1,l2,d1,d2");
  search->add_option("--limit", o.limit, "stop after N designs")->check(CLI::PositiveNumber);
  search->add_option("--candidates", o.candidates, "stop after N hexad candidates")->check(CLI::PositiveNumber);
  search->add_option("--closure-cap", o.closure_cap, "largest group closure to build")->check(CLI::PositiveNumber);
  search->add_option("--subset-cap", o.subset_cap, "largest k-subset count to index")->check(CLI::PositiveNumber);
  search->add_option("--jobs", o.jobs, "worker threads (1 = serial reference path)")->check(CLI::PositiveNumber);
  search->add_option("--out", o.out_dir, "output directory");
  search->add_option("--seed", o.seed, "seed (the search itself is deterministic)");
  search->add_flag("--libexact-format", o.libexact, "also write each exact cover matrix in libexact format");

  auto add_file = [&](CLI::App *cmd, int n) {
    cmd->add_option("files", o.files, n == 1 ? "design file (JSON)" : "two design files (JSON)")->required()->expected(n);
  };
  auto *verify = app.add_subcommand("verify", "check a design file is a 3-(v,{4,6},1) design");
  add_file(verify, 1);
  auto *classify_cmd = app.add_subcommand("classify", "classify the hexads of a design");
  add_file(classify_cmd, 1);
  auto *iso = app.add_subcommand("iso", "test two designs for isomorphism");
  add_file(iso, 2);
  auto *aut = app.add_subcommand("aut", "full automorphism group of a design");
  add_file(aut, 1);
  aut->add_option("--closure-cap", o.closure_cap, "largest group closure to build")->check(CLI::PositiveNumber);
  auto *canon = app.add_subcommand("canon", "canonical certificate of a design");
  add_file(canon, 1);
  canon->add_option("--relabelings", o.relabelings, "also check invariance under N random relabelings");
  canon->add_option("--seed", o.seed, "seed for --relabelings");

  auto *catalog = app.add_subcommand("catalog", "published designs");
  catalog->require_subcommand(1);
  auto *cat_list = catalog->add_subcommand("list", "list catalog ids");
  auto *cat_verify = catalog->add_subcommand("verify", "verify every catalog entry");
  cat_verify->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  auto *cat_export = catalog->add_subcommand("export", "write one entry as a design file");
  cat_export->add_option("--id", o.id, "catalog id, e.g. D22_3")->required();
  cat_export->add_option("--format", o.format, "output format (json)");
  cat_export->add_option("--out", o.out_file, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (search->parsed()) return cmd_search(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out);
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (iso->parsed()) return cmd_iso(o, out);
    if (aut->parsed()) return cmd_aut(o, out);
    if (canon->parsed()) return cmd_canon(o, out);
    if (cat_list->parsed()) return cmd_catalog_list(out);
    if (cat_verify->parsed()) return cmd_catalog_verify(o, out);
    if (cat_export->parsed()) return cmd_catalog_export(o, out);
  } catch (const CapExceeded &e) {
    err << "error: " << e.what() << "\n";
    return kExitCapped;
  } catch (const ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::out_of_range &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::runtime_error &e) {
    // unwritable output paths and similar environment problems
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace twbd
