// Batch front-end: load graphs and characters, run one operation, print a
// text or JSON report. Exit 0 on success, 1 when a verification fails, 2 on
// input problems.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "renorm/birkhoff.hpp"
#include "renorm/connection.hpp"
#include "renorm/selftest.hpp"
#include "renorm/series_json.hpp"
#include "renorm/toyrules.hpp"

namespace {

using namespace renorm;
using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write file: " + path);
  out << text;
}

HopfPtr make_algebra(const std::string& graphs_path, int cap) {
  if (graphs_path.empty()) return builtin_algebra(cap);
  return std::make_shared<const HopfAlgebra>(load_graphs_file(graphs_path), cap);
}

int peek_grade_cap(const std::string& text, const std::string& path) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("grade_cap") ||
      !j["grade_cap"].is_number_integer())
    throw input_error("character file " + path + ": cannot read grade_cap");
  return j["grade_cap"].get<int>();
}

// Shared flags; cap 0 means "take it from the character file".
struct Opts {
  std::string graphs, character, graph, out_dir = ".", format = "text";
  std::string sigma = "dr", direction = "all", u = "2";
  std::string dr_path, mc_path, fault;
  int cap = 0, z_order = 12;
  std::string m = "1", angular = "1";
};

LinMap load_char_over(const std::string& path, const Opts& o, HopfPtr& H) {
  std::string text = slurp(path);
  int cap = o.cap > 0 ? o.cap : peek_grade_cap(text, path);
  if (!H) H = make_algebra(o.graphs, cap);
  LinMap phi = character_from_json_text(text, H);
  if (!is_character(phi))
    throw input_error("file does not define a character: " + path);
  return phi;
}

int run_graph_check(const Opts& o) {
  auto named = o.graphs.empty() ? builtin_corpus() : load_graphs_file(o.graphs);
  if (!o.graph.empty()) {
    decltype(named) picked;
    for (auto& ng : named)
      if (ng.first == o.graph) picked.push_back(ng);
    if (picked.empty()) throw input_error("no graph named " + o.graph);
    named.swap(picked);
  }
  json rows = json::array();
  for (const auto& [name, g] : named) {
    validate_graph(g);
    rows.push_back({{"name", name},
                    {"vertices", g.vertices},
                    {"edges", static_cast<int>(g.edges.size())},
                    {"legs", external_count(g)},
                    {"loops", loop_number(g)},
                    {"omega", superficial_degree(g)},
                    {"one_particle_irreducible", is_one_particle_irreducible(g)},
                    {"admissible_subgraphs",
                     static_cast<int>(admissible_subgraphs(g).size())}});
  }
  if (o.format == "json") {
    std::cout << rows.dump(2) << "\n";
    return 0;
  }
  for (const auto& r : rows)
    std::cout << r["name"].get<std::string>() << ": vertices " << r["vertices"]
              << ", edges " << r["edges"] << ", legs " << r["legs"]
              << ", loops " << r["loops"] << ", omega " << r["omega"]
              << ", 1PI " << (r["one_particle_irreducible"].get<bool>() ? "yes" : "no")
              << ", admissible subgraphs " << r["admissible_subgraphs"] << "\n";
  return 0;
}

int run_coproduct(const Opts& o) {
  HopfPtr H = make_algebra(o.graphs, o.cap > 0 ? o.cap : 3);
  Monomial m = H->parse_monomial(o.graph);
  TensorElement t = H->coproduct(m);
  if (o.format == "json") {
    json terms = json::array();
    for (const auto& [lr, c] : t.terms)
      terms.push_back({{"left", H->render(lr.first)},
                       {"right", H->render(lr.second)},
                       {"coeff", rational_to_string(c)}});
    json j{{"monomial", H->render(m)},
           {"coproduct", H->render(t)},
           {"terms", std::move(terms)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << H->render(t) << "\n";
  }
  return 0;
}

int run_antipode(const Opts& o) {
  HopfPtr H = make_algebra(o.graphs, o.cap > 0 ? o.cap : 3);
  Monomial m = H->parse_monomial(o.graph);
  HopfElement s = H->antipode(m);
  if (o.format == "json") {
    json terms = json::array();
    for (const auto& [mono, c] : s.terms)
      terms.push_back({{"monomial", H->render(mono)},
                       {"coeff", rational_to_string(c)}});
    json j{{"monomial", H->render(m)},
           {"antipode", H->render(s)},
           {"terms", std::move(terms)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << H->render(s) << "\n";
  }
  return 0;
}

int run_birkhoff(const Opts& o) {
  HopfPtr H;
  LinMap phi = load_char_over(o.character, o, H);
  BirkhoffResult r = birkhoff_decompose(phi);
  bool ok = linmap_equal(convolve(convolution_inverse(r.minus), r.plus), phi);

  std::filesystem::create_directories(o.out_dir);
  auto path_of = [&](const char* base) {
    return (std::filesystem::path(o.out_dir) / base).string();
  };
  LinMap prepared{H, MapFlag::general, r.prepared};
  std::vector<std::pair<std::string, std::string>> files = {
      {path_of("phi_minus.json"), character_to_json_text(r.minus)},
      {path_of("phi_plus.json"), character_to_json_text(r.plus)},
      {path_of("phi_prepared.json"), character_to_json_text(prepared)},
  };
  for (const auto& [p, text] : files) spill(p, text);

  if (o.format == "json") {
    json gens = json::array();
    for (GenId id = 0; id < H->generator_count(); ++id) {
      if (H->generator(id).grade > H->grade_cap()) continue;
      Monomial m{id};
      gens.push_back({{"generator", H->generator(id).name},
                      {"minus", reg_render(r.minus.value(m))},
                      {"plus", reg_render(r.plus.value(m))}});
    }
    json j{{"reconstructs", ok},
           {"generators", std::move(gens)},
           {"files", json::array({files[0].first, files[1].first, files[2].first})}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "phi_minus:\n" << linmap_render(r.minus) << "phi_plus:\n"
              << linmap_render(r.plus)
              << "reconstruction inverse(phi_minus) * phi_plus = phi: "
              << (ok ? "yes" : "NO") << "\n";
    for (const auto& [p, text] : files) std::cout << "wrote " << p << "\n";
  }
  return ok ? 0 : 1;
}

int run_beta(const Opts& o) {
  HopfPtr H;
  LinMap phi = load_char_over(o.character, o, H);
  Sigma sig = sigma_from_name(o.sigma);
  LinMap b = beta(phi, sig);
  bool infinitesimal = is_infinitesimal(b);
  if (o.format == "json") {
    json vals = json::array();
    for (const Monomial& m : H->basis()) {
      RegElement v = b.value(m);
      if (v.is_zero()) continue;
      vals.push_back({{"monomial", H->render(m)},
                      {"series", series_to_json(v)},
                      {"rendered", reg_render(v)}});
    }
    json j{{"sigma", sigma_name(sig)},
           {"infinitesimal", infinitesimal},
           {"values", std::move(vals)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "beta_" << sigma_name(sig) << ":\n" << linmap_render(b)
              << "infinitesimal: " << (infinitesimal ? "yes" : "NO") << "\n";
  }
  return infinitesimal ? 0 : 1;
}

int run_rho_check(const Opts& o) {
  HopfPtr H;
  LinMap phi = load_char_over(o.character, o, H);
  Sigma sig = sigma_from_name(o.sigma);
  LinMap alpha = beta(phi, sig);
  FlowMap psi = rho(alpha, sig);
  LinMap back = flow_at_s0(psi);
  std::vector<std::string> bad;
  for (const Monomial& m : H->basis())
    if (!reg_equal(back.value(m), phi.value(m))) bad.push_back(H->render(m));
  bool ok = bad.empty();
  if (o.format == "json") {
    json j{{"sigma", sigma_name(sig)},
           {"pass", ok},
           {"checked", static_cast<int>(H->basis().size())},
           {"mismatches", json(bad)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "rho_" << sigma_name(sig) << "(beta_" << sigma_name(sig)
              << "(phi)) at s = 0 reproduces phi: " << (ok ? "yes" : "NO")
              << " (" << H->basis().size() << " monomials)\n";
    for (const std::string& m : bad) std::cout << "  mismatch at " << m << "\n";
  }
  return ok ? 0 : 1;
}

int run_gauge_check(const Opts& o) {
  std::string dr_text = slurp(o.dr_path), mc_text = slurp(o.mc_path);
  int cap = o.cap > 0 ? o.cap : peek_grade_cap(dr_text, o.dr_path);
  HopfPtr H = make_algebra(o.graphs, cap);
  LinMap f = character_from_json_text(dr_text, H);
  LinMap g = character_from_json_text(mc_text, H);
  if (!is_character(f)) throw input_error("not a character: " + o.dr_path);
  if (!is_character(g)) throw input_error("not a character: " + o.mc_path);

  std::vector<std::pair<Direction, Sigma>> configs;
  if (o.direction == "all") {
    configs = {{Direction::z, Sigma::dr},
               {Direction::y, Sigma::dr},
               {Direction::t, Sigma::dr},
               {Direction::t, Sigma::mc}};
  } else {
    configs = {{direction_from_name(o.direction), sigma_from_name(o.sigma)}};
  }

  bool all_pass = true;
  json reports = json::array();
  std::ostringstream text;
  for (const auto& [dir, sig] : configs) {
    GaugeReport rep = gauge_check(f, g, dir, sig);
    all_pass = all_pass && rep.pass;
    if (o.format == "json") {
      json items = json::array();
      for (const GaugeItem& it : rep.items)
        items.push_back({{"identity", it.identity},
                         {"monomial", it.monomial},
                         {"lhs", it.lhs},
                         {"rhs", it.rhs},
                         {"equal", it.equal}});
      json r{{"direction", direction_name(dir)},
             {"pass", rep.pass},
             {"items", std::move(items)}};
      if (dir == Direction::t) r["sigma"] = sigma_name(sig);
      reports.push_back(std::move(r));
    } else {
      text << "direction " << direction_name(dir);
      if (dir == Direction::t) text << " (" << sigma_name(sig) << ")";
      text << ":\n" << gauge_render(rep);
    }
  }
  if (o.format == "json") {
    json j{{"pass", all_pass}, {"reports", std::move(reports)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return all_pass ? 0 : 1;
}

int run_equivariance(const Opts& o) {
  HopfPtr H;
  LinMap phi = load_char_over(o.character, o, H);
  Sigma sig = sigma_from_name(o.sigma);
  EquivarianceReport rep = equivariance_check(phi, sig, rational_from_string(o.u));
  if (o.format == "json") {
    json items = json::array();
    for (const EquivarianceItem& it : rep.items)
      items.push_back(
          {{"monomial", it.monomial}, {"ok", it.ok}, {"detail", it.detail}});
    json j{{"sigma", sigma_name(sig)},
           {"u", rep.u},
           {"structural", rep.structural},
           {"pass", rep.pass},
           {"items", std::move(items)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << equivariance_render(rep);
  }
  return rep.pass ? 0 : 1;
}

int run_toyrules_emit(const Opts& o) {
  ToyRuleConfig cfg;
  cfg.m = rational_from_string(o.m);
  cfg.angular_factor = rational_from_string(o.angular);
  cfg.z_truncation = o.z_order;
  HopfPtr H = make_algebra(o.graphs, o.cap > 0 ? o.cap : 2);
  LinMap cut = toy_cutoff_character(H, cfg);
  LinMap dim = toy_dimreg_character(H, cfg);

  std::filesystem::create_directories(o.out_dir);
  std::string cut_path = (std::filesystem::path(o.out_dir) / "toy_cutoff.json").string();
  std::string dim_path = (std::filesystem::path(o.out_dir) / "toy_dimreg.json").string();
  spill(cut_path, character_to_json_text(cut));
  spill(dim_path, character_to_json_text(dim));

  if (o.format == "json") {
    json j{{"cutoff", {{"file", cut_path}, {"B1", reg_render(cut.value({H->find_name("B1")}))}}},
           {"dimreg", {{"file", dim_path}, {"B1", reg_render(dim.value({H->find_name("B1")}))}}}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "cutoff  B1 = " << reg_render(cut.value({H->find_name("B1")}))
              << "\ndimreg  B1 = " << reg_render(dim.value({H->find_name("B1")}))
              << "\nwrote " << cut_path << "\nwrote " << dim_path << "\n";
  }
  return 0;
}

int run_selftest_cmd(const Opts& o) {
  if (!o.graphs.empty()) {
    auto named = load_graphs_file(o.graphs);
    for (const auto& [name, g] : named) validate_graph(g);
    std::cout << "loaded " << named.size() << " graphs from " << o.graphs << "\n";
  }
  unsigned seed = 0;
  if (const char* env = std::getenv("RENORM_SEED")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0')
      throw input_error("RENORM_SEED must be an unsigned integer");
    seed = static_cast<unsigned>(v);
  }
  FaultInjection fault = FaultInjection::none;
  if (o.fault == "antipode") fault = FaultInjection::antipode;
  else if (!o.fault.empty()) throw input_error("unknown fault: " + o.fault);
  SelftestResult r = run_selftest(fault, seed);
  std::cout << r.report;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Hopf-algebra renormalization toolkit"};
  app.require_subcommand(1);
  Opts o;

  auto format_opt = [&](CLI::App* sc) {
    sc->add_option("--format", o.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto graphs_opt = [&](CLI::App* sc) {
    sc->add_option("--graphs", o.graphs, "graph corpus file (default: built-in)");
  };
  auto cap_opt = [&](CLI::App* sc, const char* help) {
    sc->add_option("--grade-cap", o.cap, help)->check(CLI::NonNegativeNumber);
  };
  auto sigma_opt = [&](CLI::App* sc) {
    sc->add_option("--sigma", o.sigma, "renormalization group action: dr or mc")
        ->check(CLI::IsMember({"dr", "mc"}));
  };

  CLI::App* sc_graph = app.add_subcommand("graph-check", "validate graphs, report loops and divergence degrees");
  graphs_opt(sc_graph);
  sc_graph->add_option("--graph", o.graph, "restrict to one named graph");
  format_opt(sc_graph);

  CLI::App* sc_cop = app.add_subcommand("coproduct", "print the coproduct of a monomial");
  graphs_opt(sc_cop);
  cap_opt(sc_cop, "grade cap of the algebra (default 3)");
  sc_cop->add_option("--graph", o.graph, "generator or monomial, e.g. B2 or B1.B1")->required();
  format_opt(sc_cop);

  CLI::App* sc_ant = app.add_subcommand("antipode", "print the antipode of a monomial");
  graphs_opt(sc_ant);
  cap_opt(sc_ant, "grade cap of the algebra (default 3)");
  sc_ant->add_option("--graph", o.graph, "generator or monomial, e.g. B2 or B1.B1")->required();
  format_opt(sc_ant);

  CLI::App* sc_bir = app.add_subcommand("birkhoff", "factor a character into counterterm and renormalized parts");
  graphs_opt(sc_bir);
  cap_opt(sc_bir, "grade cap (default: from the character file)");
  sc_bir->add_option("--character", o.character, "character file")->required();
  sc_bir->add_option("--out-dir", o.out_dir, "directory for the emitted files");
  format_opt(sc_bir);

  CLI::App* sc_beta = app.add_subcommand("beta", "geometric beta function of a character");
  graphs_opt(sc_beta);
  cap_opt(sc_beta, "grade cap (default: from the character file)");
  sc_beta->add_option("--character", o.character, "character file")->required();
  sigma_opt(sc_beta);
  format_opt(sc_beta);

  CLI::App* sc_rho = app.add_subcommand("rho-check", "verify the inverse flow reproduces the character at s = 0");
  graphs_opt(sc_rho);
  cap_opt(sc_rho, "grade cap (default: from the character file)");
  sc_rho->add_option("--character", o.character, "character file")->required();
  sigma_opt(sc_rho);
  format_opt(sc_rho);

  CLI::App* sc_gauge = app.add_subcommand("gauge-check", "verify the gauge-transformation identities for a character pair");
  graphs_opt(sc_gauge);
  cap_opt(sc_gauge, "grade cap (default: from the first character file)");
  sc_gauge->add_option("--dr", o.dr_path, "first character file (dimreg side)")->required();
  sc_gauge->add_option("--mc", o.mc_path, "second character file (cutoff side)")->required();
  sc_gauge->add_option("--direction", o.direction, "z, y, t or all")
      ->check(CLI::IsMember({"z", "y", "t", "all"}));
  sigma_opt(sc_gauge);
  format_opt(sc_gauge);  // defaults to json for this subcommand, see dispatch

  CLI::App* sc_eq = app.add_subcommand("equivariance", "check scale equivariance of the connection's t component");
  graphs_opt(sc_eq);
  cap_opt(sc_eq, "grade cap (default: from the character file)");
  sc_eq->add_option("--character", o.character, "character file")->required();
  sigma_opt(sc_eq);
  sc_eq->add_option("--u", o.u, "group element, a nonzero rational");
  format_opt(sc_eq);

  CLI::App* sc_toy = app.add_subcommand("toyrules-emit", "write the one-loop bubble characters to files");
  graphs_opt(sc_toy);
  cap_opt(sc_toy, "grade cap of the emitted characters (default 2)");
  sc_toy->add_option("--z-order", o.z_order, "truncation order of the emitted series")
      ->check(CLI::PositiveNumber);
  sc_toy->add_option("--m", o.m, "mass, a positive rational");
  sc_toy->add_option("--angular", o.angular, "angular volume factor");
  sc_toy->add_option("--out-dir", o.out_dir, "directory for the emitted files");
  format_opt(sc_toy);

  CLI::App* sc_self = app.add_subcommand("selftest", "run the built-in invariant suite (seed via RENORM_SEED)");
  graphs_opt(sc_self);
  sc_self->add_option("--inject-fault", o.fault, "")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sc_graph->parsed()) return run_graph_check(o);
    if (sc_cop->parsed()) return run_coproduct(o);
    if (sc_ant->parsed()) return run_antipode(o);
    if (sc_bir->parsed()) return run_birkhoff(o);
    if (sc_beta->parsed()) return run_beta(o);
    if (sc_rho->parsed()) return run_rho_check(o);
    if (sc_gauge->parsed()) {
      if (!sc_gauge->count("--format")) o.format = "json";
      return run_gauge_check(o);
    }
    if (sc_eq->parsed()) return run_equivariance(o);
    if (sc_toy->parsed()) return run_toyrules_emit(o);
    if (sc_self->parsed()) return run_selftest_cmd(o);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const flow_divergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
