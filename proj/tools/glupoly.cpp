#include <complex>
#include <filesystem>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glupoly/catalog.hpp"
#include "glupoly/dynamics.hpp"
#include "glupoly/errors.hpp"
#include "glupoly/gluing.hpp"
#include "glupoly/io.hpp"
#include "glupoly/multigraph.hpp"
#include "glupoly/oracle.hpp"
#include "glupoly/polyengine.hpp"
#include "glupoly/recursion.hpp"
#include "glupoly/zeros.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitUsage = 64;

/// FNV-1a content digest, stable across platforms.
std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Everything a run needs to be reproduced; recorded next to the outputs.
struct RunConfig {
  std::uint64_t seed = 1;
  long long budget_vertices = glupoly::kDefaultVertexBudget;
  long long budget_degree = glupoly::kDefaultDegreeBudget;
  int precision = 320;
  std::string out;

  nlohmann::json manifest;

  void start(const std::string& subcommand) {
    manifest = nlohmann::json::object();
    manifest["subcommand"] = subcommand;
    manifest["version"] = kVersion;
    manifest["inputs"] = nlohmann::json::object();
    manifest["config"] = {{"seed", seed},
                          {"budget_vertices", budget_vertices},
                          {"budget_degree", budget_degree},
                          {"precision", precision}};
  }
  std::string read_input(const std::string& role, const std::string& path) {
    std::string bytes = glupoly::io::read_file(path);
    manifest["inputs"][role] = {{"path", path}, {"fnv1a", digest(bytes)}};
    return bytes;
  }
  void echo(const std::string& key, const nlohmann::json& value) {
    manifest["config"][key] = value;
  }
  /// Atomic write plus the manifest sitting next to it.
  void emit(const std::string& path, const std::string& content) {
    glupoly::io::write_file(path, content);
    manifest["outputs"].push_back(path);
  }
  bool out_is_dir = false;

  void finish() {
    if (out.empty()) return;
    std::string manifest_path =
        out_is_dir ? out + "/manifest.json" : out + ".manifest.json";
    glupoly::io::write_file(manifest_path, manifest.dump(2) + "\n");
  }
};

std::complex<double> parse_complex(const std::string& text) {
  std::string s = text;
  double re = 0, im = 0;
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) {
      re = std::stod(s);
    } else {
      re = std::stod(s.substr(0, comma));
      im = std::stod(s.substr(comma + 1));
    }
  } catch (const std::exception&) {
    throw glupoly::ValidationError("cannot parse complex number: " + text);
  }
  return {re, im};
}

std::string classification_line(const glupoly::Classification& c) {
  std::ostringstream os;
  os << (c.non_degenerate ? "non_degenerate" : "degenerate") << " "
     << (c.stable ? "stable" : "unstable") << " "
     << (c.expanding ? "expanding" : "not_expanding");
  if (c.expanding_witness_n)
    os << " witness_n=" << *c.expanding_witness_n;
  return os.str();
}

std::string matrix_text(const glupoly::Matrix& m) {
  std::ostringstream os;
  os << "matrix " << m.n << "x" << m.n << "\n";
  for (int r = 0; r < m.n; ++r) {
    for (int c = 0; c < m.n; ++c) {
      auto v = m.at(r, c);
      os << (c ? " " : "") << glupoly::io::format_double(v.real()) << ","
         << glupoly::io::format_double(v.imag());
    }
    os << "\n";
  }
  return os.str();
}

int dispatch(int argc, char** argv) {
  CLI::App app{"independence polynomial recursion toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "random seed recorded in the manifest");
  app.add_option("--budget-vertices", cfg.budget_vertices,
                 "refuse graph builds beyond this vertex count");
  app.add_option("--budget-degree", cfg.budget_degree,
                 "refuse polynomial levels beyond this degree");
  app.add_option("--precision", cfg.precision,
                 "working precision (bits) for root refinement");
  app.add_option("--out", cfg.out, "output file or directory");

  std::string data_path, start_path, lambda_text, entry_bits, catalog_name;
  int levels = 0, iters = 40;
  bool list_names = false;
  std::vector<double> free_values;

  auto* validate = app.add_subcommand("validate", "check gluing data invariants");
  validate->add_option("--data", data_path, "gluing data file")->required();

  auto* classify = app.add_subcommand("classify", "label dynamics classification");
  classify->add_option("--data", data_path)->required();

  auto* build = app.add_subcommand("build", "construct G_n explicitly");
  build->add_option("--data", data_path)->required();
  build->add_option("--start", start_path, "starting graph file")->required();
  build->add_option("--levels", levels)->required();

  auto* poly = app.add_subcommand("poly", "conditioned polynomials of G_n");
  poly->add_option("--data", data_path)->required();
  poly->add_option("--start", start_path)->required();
  poly->add_option("--levels", levels)->required();
  poly->add_option("--entry", entry_bits,
                   "mark assignment bits, label 1 first; default: total");

  auto* zeros = app.add_subcommand("zeros", "root atlas of the level polynomials");
  zeros->add_option("--data", data_path)->required();
  zeros->add_option("--start", start_path)->required();
  zeros->add_option("--levels", levels)->required();

  auto* dynamics = app.add_subcommand("dynamics", "renormalized orbit of F-hat");
  dynamics->add_option("--data", data_path)->required();
  dynamics->add_option("--start", start_path)->required();
  dynamics->add_option("--lambda", lambda_text, "complex as re,im")->required();
  dynamics->add_option("--iters", iters);

  auto* jacobian = app.add_subcommand("jacobian", "chart Jacobian on M_e");
  jacobian->add_option("--data", data_path)->required();
  jacobian->add_option("--lambda", lambda_text)->required();
  jacobian->add_option("--free", free_values,
                       "free coordinate per periodic label (reals)");

  auto* catalog = app.add_subcommand("catalog", "built-in gluing data");
  catalog->add_flag("--list", list_names, "print the catalog names");
  catalog->add_option("--name", catalog_name, "entry to export");

  auto* maxindep = app.add_subcommand("maxindep", "maximal independence check");
  maxindep->add_option("--start", start_path, "marked graph file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  }
  CLI::App* sub = app.get_subcommands().front();
  cfg.start(sub->get_name());

  if (sub == validate) {
    glupoly::GluingData d =
        glupoly::io::parse_gluing(cfg.read_input("data", data_path));
    auto violations = glupoly::validate(d);
    if (violations.empty()) {
      std::cout << "valid m=" << d.m << " k=" << d.k
                << " edges=" << d.edges.size() << "\n";
      cfg.finish();
      return 0;
    }
    for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
    return kExitValidation;
  }

  if (sub == classify) {
    glupoly::GluingData d =
        glupoly::io::parse_gluing(cfg.read_input("data", data_path));
    std::cout << classification_line(glupoly::classify(d)) << "\n";
    cfg.finish();
    return 0;
  }

  if (sub == build) {
    glupoly::GluingData d =
        glupoly::io::parse_gluing(cfg.read_input("data", data_path));
    glupoly::MarkedGraph g0 =
        glupoly::io::parse_graph(cfg.read_input("start", start_path));
    cfg.echo("levels", levels);
    glupoly::MarkedGraph g =
        glupoly::iterate(d, g0, levels, cfg.budget_vertices);
    std::string text = glupoly::io::write_graph(g);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      cfg.emit(cfg.out, text);
      cfg.emit(cfg.out + ".dot", glupoly::io::write_dot(g));
      cfg.finish();
    }
    return 0;
  }

  if (sub == poly) {
    glupoly::GluingData d =
        glupoly::io::parse_gluing(cfg.read_input("data", data_path));
    glupoly::MarkedGraph g0 =
        glupoly::io::parse_graph(cfg.read_input("start", start_path));
    cfg.echo("levels", levels);
    if (!entry_bits.empty()) cfg.echo("entry", entry_bits);
    glupoly::SequenceResult seq =
        glupoly::sequence(d, g0, levels, cfg.budget_degree);
    if (static_cast<int>(seq.levels.size()) <= levels)
      throw glupoly::BudgetError(seq.notice);
    const glupoly::PolyVector& v = seq.levels[levels];
    glupoly::Polynomial out;
    if (entry_bits.empty()) {
      out = v.total();
    } else {
      if (static_cast<int>(entry_bits.size()) != d.k)
        throw glupoly::ValidationError("--entry needs exactly k bits");
      unsigned idx = 0;
      for (int j = 0; j < d.k; ++j) {
        if (entry_bits[j] != '0' && entry_bits[j] != '1')
          throw glupoly::ValidationError("--entry bits must be 0 or 1");
        idx |= unsigned(entry_bits[j] - '0') << j;
      }
      out = v.entries[idx];
    }
    std::string text = glupoly::io::write_poly(out);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      cfg.emit(cfg.out, text);
      cfg.finish();
    }
    return 0;
  }

  if (sub == zeros) {
    glupoly::GluingData d =
        glupoly::io::parse_gluing(cfg.read_input("data", data_path));
    glupoly::MarkedGraph g0 =
        glupoly::io::parse_graph(cfg.read_input("start", start_path));
    cfg.echo("levels", levels);
    glupoly::ZeroAtlas a =
        glupoly::atlas(d, g0, levels, cfg.seed, cfg.budget_degree);
    if (a.truncated)
      throw glupoly::BudgetError("degree budget truncates the requested atlas");
    nlohmann::json summary = glupoly::io::zeros_summary(a);
    if (cfg.out.empty()) {
      std::cout << summary.dump(2) << "\n";
    } else {
      cfg.out_is_dir = true;
      std::filesystem::create_directories(cfg.out);
      cfg.emit(cfg.out + "/zeros.csv", glupoly::io::zeros_csv(a));
      cfg.emit(cfg.out + "/summary.json", summary.dump(2) + "\n");
      cfg.finish();
    }
    return 0;
  }

  if (sub == dynamics) {
    glupoly::GluingData d =
        glupoly::io::parse_gluing(cfg.read_input("data", data_path));
    glupoly::MarkedGraph g0 =
        glupoly::io::parse_graph(cfg.read_input("start", start_path));
    std::complex<double> lambda = parse_complex(lambda_text);
    cfg.echo("lambda", lambda_text);
    cfg.echo("iters", iters);
    glupoly::NumVector start = glupoly::initial_numvector(g0, lambda);
    glupoly::OrbitSummary s = glupoly::orbit(d, lambda, start, iters);
    std::ostringstream os;
    os << "iter,residual,step_distance,dist_to_ones_mass\n";
    for (const auto& row : s.rows)
      os << row.iter << ","
         << (row.residual ? glupoly::io::format_double(*row.residual) : "nan")
         << "," << glupoly::io::format_double(row.step_distance) << ","
         << glupoly::io::format_double(row.dist_to_ones) << "\n";
    if (cfg.out.empty()) {
      std::cout << os.str();
    } else {
      cfg.emit(cfg.out, os.str());
      cfg.finish();
    }
    std::cerr << (s.converged ? "converged" : "not converged")
              << " period=" << s.period << "\n";
    return 0;
  }

  if (sub == jacobian) {
    glupoly::GluingData d =
        glupoly::io::parse_gluing(cfg.read_input("data", data_path));
    std::complex<double> lambda = parse_complex(lambda_text);
    cfg.echo("lambda", lambda_text);
    glupoly::LabelDynamics ld = glupoly::label_dynamics(d);
    std::vector<glupoly::cplx> free(ld.periodic.size(), glupoly::cplx(0.5, 0.0));
    for (std::size_t i = 0; i < free_values.size() && i < free.size(); ++i)
      free[i] = free_values[i];
    cfg.echo("free", free_values);
    glupoly::ChartPoint p = glupoly::fixed_manifold_point(d, lambda, free);
    glupoly::CompiledMap map(d, lambda);
    glupoly::Matrix J =
        glupoly::jacobian_iterate(map, p, glupoly::fm_iterate(d));
    glupoly::SpectralReport rep = glupoly::spectral_check(J);
    std::ostringstream os;
    os << matrix_text(J);
    os << "nu1 " << glupoly::io::format_double(rep.nu1) << "\n"
       << "rank_jd " << rep.rank_jd << "\n"
       << "kernel_dim " << rep.kernel_dim << "\n"
       << "norm_j " << glupoly::io::format_double(rep.norm_j) << "\n";
    if (cfg.out.empty()) {
      std::cout << os.str();
    } else {
      cfg.emit(cfg.out, os.str());
      cfg.finish();
    }
    return 0;
  }

  if (sub == catalog) {
    if (list_names) {
      for (const auto& n : glupoly::catalog_names()) std::cout << n << "\n";
      return 0;
    }
    if (catalog_name.empty())
      throw glupoly::ValidationError("catalog needs --list or --name");
    glupoly::CatalogEntry e = glupoly::catalog(catalog_name);
    cfg.echo("name", catalog_name);
    std::string data_text = glupoly::io::write_gluing(e.data);
    std::string graph_text = glupoly::io::write_graph(e.start);
    if (cfg.out.empty()) {
      std::cout << data_text << graph_text;
    } else {
      cfg.out_is_dir = true;
      std::filesystem::create_directories(cfg.out);
      cfg.emit(cfg.out + "/" + catalog_name + ".json", data_text);
      cfg.emit(cfg.out + "/" + catalog_name + ".graph", graph_text);
      cfg.finish();
    }
    return 0;
  }

  // maxindep
  glupoly::MarkedGraph g =
      glupoly::io::parse_graph(cfg.read_input("start", start_path));
  auto rep = glupoly::oracle::is_maximally_independent(g);
  std::cout << (rep.maximally_independent ? "true" : "false")
            << " size_gap=" << rep.size_gap << " k=" << g.k() << "\n";
  cfg.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const glupoly::ValidationError& e) {
    std::cerr << "validation refusal: " << e.what() << "\n";
    return kExitValidation;
  } catch (const glupoly::BudgetError& e) {
    std::cerr << "budget refusal: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
