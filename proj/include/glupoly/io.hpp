#pragma once

#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "glupoly/errors.hpp"
#include "glupoly/gluing.hpp"
#include "glupoly/multigraph.hpp"
#include "glupoly/polynomial.hpp"
#include "glupoly/zeros.hpp"

namespace glupoly::io {

using json = nlohmann::json;

// ---------------------------------------------------------------- graph text

/// `n <vertex_count> k <mark_count>`, then `e a b` per edge, then
/// `marks i1 ... ik` (0-based vertices; mark position = label).
inline std::string write_graph(const MarkedGraph& g) {
  std::ostringstream os;
  os << "n " << g.graph.vertex_count() << " k " << g.k() << "\n";
  for (auto [a, b] : g.graph.edges()) os << "e " << a << " " << b << "\n";
  os << "marks";
  for (int v : g.marks) os << " " << v;
  os << "\n";
  return os.str();
}

inline MarkedGraph parse_graph(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  int n = -1, k = -1;
  if (!(is >> tok) || tok != "n" || !(is >> n) || !(is >> tok) || tok != "k" ||
      !(is >> k))
    throw ValidationError("graph text: bad header, expected `n <count> k <marks>`");
  if (n < 0 || k < 2) throw ValidationError("graph text: bad header values");
  MultiGraph mg(n);
  std::vector<int> marks;
  while (is >> tok) {
    if (tok == "e") {
      int a, b;
      if (!(is >> a >> b)) throw ValidationError("graph text: bad edge line");
      mg.add_edge(a, b);
    } else if (tok == "marks") {
      for (int j = 0; j < k; ++j) {
        int v;
        if (!(is >> v)) throw ValidationError("graph text: marks line too short");
        marks.push_back(v);
      }
    } else {
      throw ValidationError("graph text: unknown line tag `" + tok + "`");
    }
  }
  if (static_cast<int>(marks.size()) != k)
    throw ValidationError("graph text: missing marks line");
  return MarkedGraph(std::move(mg), std::move(marks));
}

inline std::string write_dot(const MarkedGraph& g) {
  std::ostringstream os;
  os << "graph G {\n";
  for (int v = 0; v < g.graph.vertex_count(); ++v) {
    os << "  v" << v;
    for (std::size_t j = 0; j < g.marks.size(); ++j)
      if (g.marks[j] == v) {
        os << " [label=\"" << (j + 1) << "\"]";
        break;
      }
    os << ";\n";
  }
  for (auto [a, b] : g.graph.edges()) os << "  v" << a << " -- v" << b << ";\n";
  os << "}\n";
  return os.str();
}

// --------------------------------------------------------------- gluing json

/// Members and labels are 1-based, connector vertices 0-based. nlohmann's
/// default object keeps keys sorted, which makes the writer byte-stable.
inline json gluing_to_json(const GluingData& d) {
  json j;
  j["m"] = d.m;
  j["k"] = d.k;
  j["edges"] = json::array();
  for (const auto& e : d.edges)
    j["edges"].push_back(
        {{"id", e.id}, {"members", e.members}, {"label", e.label}});
  j["connecting"] = json::object();
  for (const auto& [id, c] : d.connecting) {
    json edges = json::array();
    for (auto [a, b] : c.sigma.edges()) edges.push_back({a, b});
    j["connecting"][id] = {{"vertices", c.sigma.vertex_count()},
                           {"edges", edges},
                           {"root", c.root}};
  }
  j["attach"] = json::object();
  for (const auto& [id, at] : d.attach) {
    json m = json::object();
    for (auto [member, vertex] : at) m[std::to_string(member)] = vertex;
    j["attach"][id] = m;
  }
  j["phi"] = json::object();
  for (const auto& [label, id] : d.phi) j["phi"][std::to_string(label)] = id;
  return j;
}

inline std::string write_gluing(const GluingData& d) {
  return gluing_to_json(d).dump(2) + "\n";
}

inline GluingData gluing_from_json(const json& j) {
  try {
    GluingData d;
    d.m = j.at("m").get<int>();
    d.k = j.at("k").get<int>();
    for (const auto& e : j.at("edges")) {
      HyperEdge h;
      h.id = e.at("id").get<std::string>();
      h.members = e.at("members").get<std::vector<int>>();
      std::sort(h.members.begin(), h.members.end());
      h.label = e.at("label").get<int>();
      d.edges.push_back(std::move(h));
    }
    for (const auto& [id, c] : j.at("connecting").items()) {
      ConnectingGraph cg;
      cg.sigma = MultiGraph(c.at("vertices").get<int>());
      for (const auto& e : c.at("edges"))
        cg.sigma.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
      cg.root = c.at("root").get<int>();
      d.connecting[id] = std::move(cg);
    }
    if (j.contains("attach"))
      for (const auto& [id, at] : j.at("attach").items())
        for (const auto& [member, vertex] : at.items())
          d.attach[id][std::stoi(member)] = vertex.get<int>();
    for (const auto& [label, id] : j.at("phi").items())
      d.phi[std::stoi(label)] = id.get<std::string>();
    return d;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("gluing data file: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ValidationError("gluing data file: non-numeric key");
  }
}

inline GluingData parse_gluing(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw ValidationError("gluing data file: not well-formed JSON");
  return gluing_from_json(j);
}

// ----------------------------------------------------------- polynomial text

/// `poly deg d: c0 c1 ... cd` with decimal big-integer coefficients.
inline std::string write_poly(const Polynomial& p) {
  std::ostringstream os;
  os << "poly deg " << p.degree() << ":";
  for (long i = 0; i <= p.degree(); ++i)
    os << " " << p.coeff(std::size_t(i)).get_str();
  if (p.is_zero()) os << " 0";
  os << "\n";
  return os.str();
}

inline Polynomial parse_poly(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  long d;
  char colon;
  if (!(is >> tok) || tok != "poly" || !(is >> tok) || tok != "deg" ||
      !(is >> d) || !(is >> colon) || colon != ':')
    throw ValidationError("polynomial text: bad header");
  std::vector<mpz_class> c;
  while (is >> tok) c.emplace_back(tok);
  if (d >= 0 && static_cast<long>(c.size()) != d + 1)
    throw ValidationError("polynomial text: coefficient count mismatch");
  return Polynomial(std::move(c));
}

// ------------------------------------------------------------------ csv/json

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline std::string zeros_csv(const ZeroAtlas& a) {
  std::ostringstream os;
  os << "n,re,im,modulus,residual\n";
  for (const auto& lv : a.levels)
    for (std::size_t i = 0; i < lv.roots.size(); ++i)
      os << lv.level << "," << format_double(lv.roots[i].real()) << ","
         << format_double(lv.roots[i].imag()) << ","
         << format_double(std::abs(lv.roots[i])) << ","
         << format_double(lv.residuals[i]) << "\n";
  return os.str();
}

inline json zeros_summary(const ZeroAtlas& a) {
  json j;
  j["levels"] = json::array();
  for (const auto& lv : a.levels)
    j["levels"].push_back({{"n", lv.level},
                           {"degree", lv.degree},
                           {"max_modulus", lv.max_modulus}});
  std::string verdict = "inconclusive";
  if (a.levels.size() >= 7) verdict = glupoly::to_string(boundedness_report(a));
  j["verdict"] = verdict;
  j["truncated"] = a.truncated;
  return j;
}

// --------------------------------------------------------------------- files

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read file " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

/// Atomic write: temp file in the same directory, then rename.
inline void write_file(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot write file " + tmp);
    f << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ValidationError("cannot move " + tmp + " into place");
}

}  // namespace glupoly::io
