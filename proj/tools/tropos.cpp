#include "tropos/catalog.hpp"
#include "tropos/examples.hpp"
#include "tropos/io.hpp"
#include "tropos/svg.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace tropos;

namespace {

struct Options {
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 20240611;
  std::size_t minor_cap = 0;
  std::size_t vertex_cap = 0;
};

struct Result {
  std::string text;
  int code = 0;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t minor_cap(const Options &o) { return o.minor_cap ? o.minor_cap : default_minor_cap(); }
std::size_t vertex_cap(const Options &o) { return o.vertex_cap ? o.vertex_cap : default_vertex_cap(); }

void require_format(const Options &o, std::initializer_list<const char *> allowed) {
  for (const char *a : allowed)
    if (o.format == a)
      return;
  throw Error("format '" + o.format + "' is not available for this command");
}

std::string region_text(const TropicalRegion &r) {
  std::ostringstream os;
  os << "region (" << to_string(r.provenance()) << ", " << r.source() << ")\n";
  if (r.cells().empty())
    os << "  empty\n";
  for (const auto &c : r.cells())
    os << "  " << c.polyhedron.canonical().str(r.labels()) << "\n";
  return os.str();
}

ChainData chain_from_file(const std::string &path, bool transposed) {
  std::string text = read_file(path);
  if (text.find("ranks:") != std::string::npos)
    return parse_chain_data(text, transposed);
  return presentation_complex(parse_presentation(text));
}

LaurentPoly parse_cli_polynomial(const std::string &text) {
  auto f = parse_polynomial(text);
  if (f.is_zero())
    throw Error("the zero polynomial has no tropical hypersurface to draw");
  return f;
}

Result cmd_trop(const Options &o, const std::string &poly, const std::string &val, bool svg) {
  auto f = parse_cli_polynomial(poly);
  if (val == "all") {
    require_format(o, {"json", "text"});
    auto fams = trop_Z_decomposition(f);
    if (o.format == "text") {
      std::string out;
      for (const auto &fam : fams)
        out += fam.label + ": " + region_text(fam.region);
      return {out};
    }
    Json list = Json::array();
    for (const auto &fam : fams)
      list.push_back({{"label", fam.label},
                      {"valuation", fam.valuation.str()},
                      {"region", to_json(fam.region)},
                      {"sphere", to_json(sphere_project(fam.region), fam.region.provenance())}});
    return {dump(document("trop", Provenance::Exact, {{"polynomial", to_json(f)}, {"families", list}}))};
  }
  auto v = parse_valuation(val);
  auto region = trop_hypersurface_field(f, v);
  auto sphere = sphere_project(region);
  if (svg || o.format == "svg")
    return {render_svg({"trop " + f.str() + " " + v.str(), {region}, {}})};
  if (o.format == "text")
    return {region_text(region) + "sphere " + sphere.str() + "\n"};
  return {dump(document("trop", region.provenance(),
                        {{"polynomial", to_json(f)},
                         {"valuation", v.str()},
                         {"region", to_json(region)},
                         {"sphere", to_json(sphere, region.provenance())}}))};
}

Result cmd_tropz(const Options &o, const std::string &poly, bool svg) {
  auto f = parse_cli_polynomial(poly);
  auto region = trop_hypersurface_Z(f);
  auto sphere = sphere_project(region);
  if (svg || o.format == "svg")
    return {render_svg({"tropz " + f.str(), {region}, {sphere}})};
  auto fams = trop_Z_decomposition(f);
  SphericalSet field_union = SphericalSet::empty(region.ambient_dim());
  Json list = Json::array();
  for (const auto &fam : fams) {
    auto s = sphere_project(fam.region);
    field_union = field_union.unite(s);
    list.push_back({{"label", fam.label},
                    {"valuation", fam.valuation.str()},
                    {"region", to_json(fam.region)},
                    {"sphere", to_json(s, fam.region.provenance())}});
  }
  Tri eq = field_union.equals(sphere);
  if (o.format == "text") {
    std::string out = region_text(region) + "sphere " + sphere.str() + "\n";
    for (const auto &fam : fams)
      out += fam.label + " sphere " + sphere_project(fam.region).str() + "\n";
    out += "sphere of family union equals sphere: " + to_string(eq) + "\n";
    return {out};
  }
  Provenance p = eq == Tri::Unknown ? Provenance::Unknown : region.provenance();
  return {dump(document("tropz", p,
                        {{"polynomial", to_json(f)},
                         {"region", to_json(region)},
                         {"sphere", to_json(sphere, region.provenance())},
                         {"families", list},
                         {"family_union_sphere", to_json(field_union, region.provenance())},
                         {"sphere_equality", {{"verdict", to_string(eq)}, {"provenance", to_string(p)}}}}))};
}

Result cmd_fox(const Options &o, const std::string &path) {
  require_format(o, {"json", "text"});
  auto p = parse_presentation(read_file(path));
  auto fm = fox_matrix(p);
  if (o.format == "text") {
    std::ostringstream os;
    for (std::size_t i = 0; i < fm.matrix.rows; ++i) {
      os << "d/d" << p.generators[i] << ":";
      for (std::size_t j = 0; j < fm.matrix.cols; ++j)
        os << (j ? " | " : " ") << fm.matrix(i, j).str();
      os << "\n";
    }
    return {os.str()};
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < fm.matrix.rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < fm.matrix.cols; ++j)
      row.push_back(fm.matrix(i, j).str());
    rows.push_back(row);
  }
  Json rels = Json::array();
  for (const auto &r : p.relators)
    rels.push_back(format_word(p, r));
  Json torsion = Json::array();
  for (auto t : fm.group->torsion_orders())
    torsion.push_back(t);
  return {dump(document("fox", Provenance::Exact,
                        {{"generators", p.generators},
                         {"relators", rels},
                         {"abelianization",
                          {{"rank", fm.group->rank()}, {"torsion", torsion}, {"labels", fm.group->labels()}}},
                         {"matrix", rows}}))};
}

Result cmd_jump(const Options &o, const std::string &path, std::size_t degree, bool transposed) {
  require_format(o, {"json", "text"});
  auto c = chain_from_file(path, transposed);
  if (degree >= c.ranks.size())
    throw Error("degree " + std::to_string(degree) + " is above the top of the complex");
  auto j = jump_ideal(c, degree, minor_cap(o));
  if (o.format == "text") {
    std::string out = "J^" + std::to_string(degree) + " generators:";
    for (const auto &g : j.generators)
      out += "\n  " + g.str();
    out += "\nprincipal part: " + j.principal_part.str() + "\nresidual:";
    for (const auto &g : j.residual)
      out += "\n  " + g.str();
    return {out + "\n"};
  }
  return {dump(document("jump", Provenance::Exact, {{"ideal", to_json(j)}}))};
}

Result cmd_bound(const Options &o, const std::string &path, std::size_t degree, const std::string &fixture_path,
                 bool transposed) {
  require_format(o, {"json", "text", "svg"});
  auto c = chain_from_file(path, transposed);
  auto b = bnsr_upper_bound(c, degree, minor_cap(o));
  std::optional<BnsFixture> fixture;
  std::optional<InclusionReport> audit;
  if (!fixture_path.empty()) {
    fixture = load_fixture(fixture_path);
    audit = audit_inclusion(*fixture, b.complement);
  }
  if (o.format == "svg") {
    SvgScene s{"bound", {}, {b.complement}};
    return {render_svg(s)};
  }
  if (o.format == "text") {
    std::string out = "provenance " + to_string(b.provenance) + "\nS(Trop_Z) " + b.trop_sphere.str() +
                      "\ncomplement " + b.complement.str() + "\nouter complement " + b.outer_complement.str() + "\n";
    if (audit)
      out += "fixture " + fixture->id + ": included " + to_string(audit->included) + ", strict " +
             to_string(audit->strict) + "\n";
    return {out};
  }
  Json body{{"bound", to_json(b)}};
  if (audit) {
    body["fixture"] = to_json(*fixture);
    body["audit"] = to_json(*audit);
  }
  return {dump(document("bound", b.provenance, body))};
}

TropRing parse_ring(const std::string &ring, long prime) {
  if (ring == "z")
    return TropRing::Z();
  if (ring == "q")
    return TropRing::field(Valuation::trivial());
  if (ring.rfind("fp", 0) == 0) {
    long p = prime;
    if (ring.size() > 3 && ring[2] == ':')
      p = std::stol(ring.substr(3));
    else if (ring != "fp")
      throw Error("unknown ring '" + ring + "' (use z, q, fp:p)");
    if (p <= 0)
      throw Error("ring fp needs a prime: fp:p or --prime p");
    return TropRing::field(Valuation::modp(p));
  }
  throw Error("unknown ring '" + ring + "' (use z, q, fp:p)");
}

Result cmd_df(const Options &o, const std::vector<std::string> &polys, const std::string &ring_text, long prime) {
  require_format(o, {"json", "text"});
  auto ring = parse_ring(ring_text, prime);
  auto names = infer_variables(polys);
  auto group = make_group(names.size(), {}, names);
  std::vector<LaurentPoly> ann;
  for (const auto &t : polys)
    ann.push_back(parse_polynomial(t, group));
  auto r = dwyer_fried_test(ann, ring);
  auto sphere = sphere_project(r.region);
  Provenance p = r.finitely_generated == Tri::Unknown ? Provenance::Unknown : Provenance::Exact;
  if (o.format == "text")
    return {"finitely generated over " + ring.str() + ": " + to_string(r.finitely_generated) + "\nsphere " +
            sphere.str() + "\n"};
  Json gens = Json::array();
  for (const auto &f : ann)
    gens.push_back(to_json(f));
  return {dump(document("df", p,
                        {{"annihilator", gens},
                         {"ring", ring.str()},
                         {"finitely_generated", to_string(r.finitely_generated)},
                         {"region", to_json(r.region)},
                         {"sphere", to_json(sphere, r.region.provenance())}}))};
}

Result cmd_raag(const Options &o, const std::string &path, long p, bool classify, bool derived) {
  require_format(o, {"json", "text"});
  auto g = load_graph(path);
  auto loci = jump_loci_wraag(g, p, derived, vertex_cap(o), 4, o.seed);
  std::optional<KahlerVerdict> k;
  if (classify)
    k = kahler_classify(g);
  if (o.format == "text") {
    std::string out = "V^1 over characteristic " + std::to_string(p) + ": ";
    if (loci.full_torus) {
      out += "the full torus";
    } else {
      out += "{1}";
      for (const auto &w : loci.components) {
        out += " u T{";
        for (std::size_t i = 0; i < w.size(); ++i)
          out += (i ? "," : "") + g.vertices[w[i]];
        out += "}";
      }
    }
    out += "\nprovenance " + to_string(loci.provenance) + "; oracle " + loci.oracle + "\n";
    if (k)
      out += std::string("Kahler: ") + (k->kahler ? "yes" : "no") + " (" + k->reason + ")\n";
    return {out};
  }
  Json body{{"graph", Json::parse(graph_to_json(g))}, {"jump_loci", to_json(loci, g)}};
  if (k)
    body["kahler"] = {{"kahler", k->kahler}, {"reason", k->reason}, {"provenance", "EXACT"}};
  return {dump(document("raag", loci.provenance, body))};
}

std::vector<long> parse_mu(const std::string &text) {
  std::vector<long> mu;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      continue;
    std::size_t used = 0;
    long v = std::stol(item, &used);
    if (used != item.size())
      throw Error("bad multiplicity '" + item + "'");
    mu.push_back(v);
  }
  return mu;
}

Result cmd_orbifold(const Options &o, long genus, const std::string &mu_text, long p) {
  require_format(o, {"json", "text"});
  OrbifoldData d{genus, parse_mu(mu_text)};
  auto r = orbifold_report(d, p);
  if (o.format == "text")
    return {"case " + to_string(r.which) + "\neuler characteristic " + r.euler.get_str() + "\ntheta " +
            r.theta.get_str() + "\nV^1 = " + r.v1 + "\nTrop = " + r.trop + "\nSigma^1 = " + r.sigma + "\n"};
  Json mu = d.mu;
  return {dump(document("orbifold", Provenance::Exact,
                        {{"genus", genus}, {"mu", mu}, {"characteristic", p}, {"report", to_json(r)}}))};
}

Result cmd_examples(const Options &o) {
  auto checks = run_examples();
  bool ok = std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.pass; });
  if (o.format == "json") {
    Json list = Json::array();
    for (const auto &c : checks)
      list.push_back({{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}});
    return {dump(document("examples", Provenance::Exact, {{"checks", list}, {"all_pass", ok}})), ok ? 0 : 1};
  }
  std::string out;
  for (const auto &c : checks)
    out += std::string(c.pass ? "PASS " : "FAIL ") + c.id + ": " + c.detail + "\n";
  return {out, ok ? 0 : 1};
}

Result cmd_render(const std::string &path, const std::string &figure) {
  if (!figure.empty())
    return {render_svg(figure_scene(figure))};
  if (path.empty())
    throw Error("render needs an input file or --figure");
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::exception &e) {
    throw Error(path + ": " + e.what());
  }
  SvgScene s;
  s.title = path;
  if (j.contains("sigma")) {
    s.spheres.push_back(fixture_from_json(j).sigma_Z());
  } else if (j.contains("cells")) {
    s.regions.push_back(region_from_json(j));
  } else if (j.contains("parts") || j.contains("pieces")) {
    s.spheres.push_back(sphere_from_json(j));
  } else if (j.contains("region")) {
    s.regions.push_back(region_from_json(j.at("region")));
    if (j.contains("sphere") && j.at("command") == "tropz")
      s.spheres.push_back(sphere_from_json(j.at("sphere")));
  } else {
    throw Error(path + ": no region or sphere set to draw");
  }
  return {render_svg(s)};
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Tropical varieties over the integers and BNSR upper bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--output,-o", o.output, "Write the result to this file");
  app.add_option("--format", o.format, "json, text or svg")->check(CLI::IsMember({"json", "text", "svg"}));
  app.add_option("--seed", o.seed, "Seed for randomized checks");
  app.add_option("--minor-cap", o.minor_cap, "Maximum number of minors (env TROPOS_MINOR_CAP)");
  app.add_option("--vertex-cap", o.vertex_cap, "Maximum number of graph vertices (env TROPOS_VERTEX_CAP)");

  std::function<Result()> run;

  std::string poly, val = "trivial";
  bool svg = false;
  auto *trop = app.add_subcommand("trop", "Tropical hypersurface over a valued field");
  trop->add_option("poly", poly, "Laurent polynomial")->required();
  trop->add_option("--val", val, "trivial, padic:p, modp:p or all");
  trop->add_flag("--svg", svg, "Emit SVG");
  trop->callback([&] { run = [&] { return cmd_trop(o, poly, val, svg); }; });

  auto *tropz = app.add_subcommand("tropz", "Tropical hypersurface over the integers");
  tropz->add_option("poly", poly, "Laurent polynomial")->required();
  tropz->add_flag("--svg", svg, "Emit SVG");
  tropz->callback([&] { run = [&] { return cmd_tropz(o, poly, svg); }; });

  std::string path;
  auto *fox = app.add_subcommand("fox", "Abelianized Fox matrix of a presentation");
  fox->add_option("pres-file", path)->required()->check(CLI::ExistingFile);
  fox->callback([&] { run = [&] { return cmd_fox(o, path); }; });

  std::size_t degree = 1;
  bool transposed = false;
  auto *jump = app.add_subcommand("jump", "Jump ideal of a presentation or chain file");
  jump->add_option("file", path)->required()->check(CLI::ExistingFile);
  jump->add_option("--degree", degree, "Homological degree");
  jump->add_flag("--transposed", transposed, "Chain file matrices are transposed");
  jump->callback([&] { run = [&] { return cmd_jump(o, path, degree, transposed); }; });

  std::string fixture;
  auto *bound = app.add_subcommand("bound", "Integral tropical upper bound for Sigma^k");
  bound->add_option("file", path)->required()->check(CLI::ExistingFile);
  bound->add_option("--degree", degree, "Use the jump ideals of degrees <= k");
  bound->add_option("--fixture", fixture, "Audit a stored Sigma^1 fixture")->check(CLI::ExistingFile);
  bound->add_flag("--transposed", transposed, "Chain file matrices are transposed");
  bound->callback([&] { run = [&] { return cmd_bound(o, path, degree, fixture, transposed); }; });

  std::vector<std::string> polys;
  std::string ring = "z";
  long prime = 0;
  auto *df = app.add_subcommand("df", "Finite generation of a module with the given annihilator");
  df->add_option("poly", polys, "Annihilator generators")->required();
  df->add_option("--ring", ring, "z, q or fp:p");
  df->add_option("--prime", prime, "Prime for --ring fp");
  df->callback([&] { run = [&] { return cmd_df(o, polys, ring, prime); }; });

  long charp = 0;
  bool classify = false, derived = false;
  auto *raag = app.add_subcommand("raag", "Jump loci and Kahler test for a weighted graph");
  raag->add_option("graph-file", path)->required()->check(CLI::ExistingFile);
  raag->add_option("--char", charp, "Field characteristic");
  raag->add_flag("--classify", classify, "Run the Kahler classification");
  raag->add_flag("--derived-charp", derived, "Allow the edge-deletion rule in positive characteristic");
  raag->callback([&] { run = [&] { return cmd_raag(o, path, charp, classify, derived); }; });

  long genus = 1;
  std::string mu;
  auto *orb = app.add_subcommand("orbifold", "Closed forms for orbifold groups");
  orb->add_option("--genus", genus, "Genus g >= 1")->required();
  orb->add_option("--mu", mu, "Comma-separated multiplicities");
  orb->add_option("--char", charp, "Field characteristic");
  orb->callback([&] { run = [&] { return cmd_orbifold(o, genus, mu, charp); }; });

  auto *ex = app.add_subcommand("examples", "Regression run over the built-in examples");
  ex->callback([&] {
    if (!ex->get_parent()->get_option("--format")->count())
      o.format = "text";
    run = [&] { return cmd_examples(o); };
  });

  std::string figure;
  auto *render = app.add_subcommand("render", "SVG of a region, sphere set or fixture");
  render->add_option("file", path)->check(CLI::ExistingFile);
  render->add_option("--figure", figure, "Built-in figure: trop-q, trop-f2, trop-q2, trop-z, sphere-fields, sphere-z, brown-sigma, brown-bound");
  render->callback([&] { run = [&] { return cmd_render(path, figure); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }
  SphericalSet::set_witness_seed(o.seed);
  try {
    Result r = run();
    if (o.output.empty()) {
      std::cout << r.text;
    } else {
      std::ofstream out(o.output, std::ios::binary);
      if (!out)
        throw Error("cannot write " + o.output);
      out << r.text;
    }
    return r.code;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
