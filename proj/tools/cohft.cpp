// Command-line front end. Exit codes: 0 success, 1 invalid input,
// 2 identity check failed, 3 internal error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "cohft/config.hpp"
#include "cohft/intersect.hpp"
#include "cohft/oracles.hpp"
#include "cohft/strata.hpp"

using namespace cohft;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kInvalid = 1, kCheckFailed = 2, kInternal = 3;

const char* kTrivialConfig =
    "dim: 1\neta: 1\nproduct 1 1: 1\nunit: 1\ndegree: 6\ncoherent: true\n";

struct Options {
  bool json = false;
  unsigned threads = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CohFTSpec load_spec(const std::string& path) { return parse_config(path.empty() ? kTrivialConfig : read_file(path)); }

void require_coherent(const CohFTSpec& spec) {
  if (!spec.coherent()) throw ValidationError({"this command needs a coherent spec (coherent: true)"});
}

// "1,0;0,1" -> two slot vectors; empty -> every slot is the unit
std::vector<Vec> parse_slots(const std::string& text, const CohFTSpec& spec, int n) {
  if (text.empty()) return std::vector<Vec>(n, spec.algebra().unit());
  std::vector<Vec> out;
  std::stringstream slots(text);
  std::string slot;
  while (std::getline(slots, slot, ';')) {
    Vec v;
    std::stringstream items(slot);
    std::string item;
    while (std::getline(items, item, ',')) {
      auto r = parse_rational(detail::trim(item));
      if (!r) throw ValidationError({"bad vector entry '" + item + "'"});
      v.push_back(*r);
    }
    if (v.size() != spec.dim()) throw DimensionMismatch("slot vector needs " + std::to_string(spec.dim()) + " entries");
    out.push_back(v);
  }
  if (static_cast<int>(out.size()) != n) throw DimensionMismatch("expected " + std::to_string(n) + " slot vectors");
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError({"bad exponent '" + item + "'"});
    }
  }
  return out;
}

// nondecreasing tuples of basis indices, the default evaluation points
std::vector<std::vector<int>> basis_tuples(std::size_t d, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(n, 0);
  std::function<void(int, int)> rec = [&](int i, int lo) {
    if (i == n) {
      out.push_back(t);
      return;
    }
    for (int x = lo; x < static_cast<int>(d); ++x) {
      t[i] = x;
      rec(i + 1, x);
    }
  };
  rec(0, 0);
  return out;
}

std::string tuple_label(const std::vector<int>& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::string("b") + std::to_string(t[i] + 1);
  return out + ")";
}

void emit(const Options& o, const ordered_json& j, const std::string& text) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string cache_path() {
  const char* dir = std::getenv("COHFT_CACHE_DIR");
  return dir && *dir ? std::string(dir) + "/psi_correlators.txt" : "";
}

void load_cache() {
  std::string p = cache_path();
  if (p.empty()) return;
  std::ifstream in(p);
  if (in) intersection_table().import_text(in);
}

void save_cache() {
  std::string p = cache_path();
  if (p.empty()) return;
  std::ofstream out(p);
  out << intersection_table().export_text();
}

// ---- subcommands ----------------------------------------------------------

int cmd_algebra_check(const Options& o, const std::string& path) {
  CohFTSpec spec = load_spec(path);
  const SemisimpleData& ss = spec.ss();
  ordered_json j;
  j["valid"] = true;
  j["dim"] = spec.dim();
  j["semisimple"] = true;
  std::vector<std::string> w;
  for (const Rational& x : ss.weights) w.push_back(render(x));
  j["weights"] = w;
  j["euler_class"] = render(spec.algebra().euler_class());
  j["coherent"] = spec.coherent();
  std::string compat = spec.compatibility_difference();
  j["compatibility"] = compat.empty() ? "holds" : compat;
  std::string text = "valid Frobenius algebra, dim " + std::to_string(spec.dim()) + ", semisimple\n";
  text += "weights " + render(ss.weights) + "\n";
  text += "euler class " + render(spec.algebra().euler_class()) + "\n";
  text += "compatibility " + (compat.empty() ? std::string("holds") : "fails at " + compat) + "\n";
  emit(o, j, text);
  return kOk;
}

int cmd_graphs(const Options& o, int g, int n) {
  const GraphCatalog& cat = graph_catalog(g, n);
  ordered_json j;
  j["g"] = g;
  j["n"] = n;
  j["count"] = cat.graphs.size();
  j["graphs"] = ordered_json::array();
  std::string text = "stable graphs g=" + std::to_string(g) + " n=" + std::to_string(n) + ": " +
                     std::to_string(cat.graphs.size()) + "\n";
  for (std::size_t i = 0; i < cat.graphs.size(); ++i) {
    const StableGraph& gr = cat.graphs[i];
    j["graphs"].push_back({{"graph", gr.encode()}, {"edges", gr.num_edges()}, {"automorphisms", cat.aut_order[i]}});
    text += gr.encode() + "  |Aut|=" + std::to_string(cat.aut_order[i]) + "\n";
  }
  emit(o, j, text);
  return kOk;
}

int cmd_strata(const Options& o, int g, int n) {
  SpecialOrder so = special_order(g, n);
  ordered_json j;
  j["g"] = g;
  j["n"] = n;
  j["types"] = ordered_json::array();
  std::string text = "special types g=" + std::to_string(g) + " n=" + std::to_string(n) + ": " +
                     std::to_string(so.types.size()) + "\n";
  for (const SpecialType& t : so.types) {
    j["types"].push_back({{"type", t.to_string()}, {"codimension", t.codimension()}});
    text += t.to_string() + "  codim " + std::to_string(t.codimension()) + "\n";
  }
  j["hasse"] = ordered_json::array();
  text += "hasse edges:\n";
  for (auto [a, b] : so.hasse) {
    j["hasse"].push_back({so.types[a].to_string(), so.types[b].to_string()});
    text += so.types[a].to_string() + " > " + so.types[b].to_string() + "\n";
  }
  j["maximum"] = so.maximum >= 0 ? so.types[so.maximum].to_string() : "";
  emit(o, j, text);
  return kOk;
}

int cmd_classify(const Options& o, const std::string& path) {
  CohFTSpec spec = load_spec(path);
  require_coherent(spec);
  ordered_json j;
  std::string text = "omega_plus:\n" + spec.omega_plus().to_string();
  j["omega_plus"] = ordered_json::array();
  for (const KappaPoly& p : spec.omega_plus().values) j["omega_plus"].push_back(p.to_string());
  j["R"] = ordered_json::array();
  text += "R:\n";
  for (int k = 0; k <= spec.degree(); ++k) {
    j["R"].push_back(spec.R()[k].to_string());
    text += "R" + std::to_string(k) + " = " + spec.R()[k].to_string() + "\n";
  }
  emit(o, j, text);
  return kOk;
}

int cmd_reconstruct(const Options& o, const std::string& mode, const std::string& path, int g, int n,
                    const std::string& vectors) {
  CohFTSpec spec = load_spec(path);
  require_coherent(spec);
  require_stable(g, n);
  std::vector<std::pair<std::string, std::vector<Vec>>> points;
  if (vectors.empty()) {
    for (const auto& t : basis_tuples(spec.dim(), n)) {
      std::vector<Vec> vs;
      for (int i : t) vs.push_back(unit_vec(spec.dim(), i));
      points.push_back({tuple_label(t), vs});
    }
  } else {
    points.push_back({"(" + vectors + ")", parse_slots(vectors, spec, n)});
  }
  ordered_json j;
  j["mode"] = mode;
  j["g"] = g;
  j["n"] = n;
  j["values"] = ordered_json::array();
  std::string text;
  for (const auto& [label, vs] : points) {
    std::string value;
    ordered_json entry{{"slots", label}};
    if (mode == "fixed") {
      value = reconstruct_fixed(spec, g, vs).to_string();
      entry["value"] = value;
    } else if (mode == "free") {
      value = reconstruct_free(spec, g, vs).to_string();
      entry["value"] = value;
    } else {
      TautExpr e = r_action(spec, g, vs, {o.threads, -1});
      value = "\n" + e.to_string();
      entry["terms"] = ordered_json::array();
      for (const auto& [d, c] : e.terms) entry["terms"].push_back({{"graph", d.to_string()}, {"coefficient", render(c)}});
    }
    j["values"].push_back(entry);
    text += label + ": " + value + (mode == "nodal" ? "" : "\n");
  }
  emit(o, j, text);
  return kOk;
}

int cmd_verify(const Options& o, const std::string& mode, const std::string& path, int max_dim) {
  CohFTSpec spec = load_spec(path);
  AxiomReport r = verify_axioms(spec, mode == "free" ? TheoryMode::free : TheoryMode::fixed, max_dim);
  ordered_json j;
  j["mode"] = mode;
  j["ok"] = r.ok();
  j["checks"] = ordered_json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"axiom", c.axiom}, {"g", c.g}, {"n", c.n}, {"passed", c.passed}, {"detail", c.detail}});
  emit(o, j, r.to_string() + (r.ok() ? "all axioms hold\n" : "axiom check failed\n"));
  return r.ok() ? kOk : kCheckFailed;
}

int cmd_correlator(const Options& o, const std::string& path, int g, int n, const std::string& psi,
                   const std::string& vectors) {
  CohFTSpec spec = load_spec(path);
  require_coherent(spec);
  std::vector<int> a = psi.empty() ? std::vector<int>(n, 0) : parse_ints(psi);
  if (static_cast<int>(a.size()) != n) throw DimensionMismatch("--psi needs " + std::to_string(n) + " exponents");
  std::vector<Vec> vs = parse_slots(vectors, spec, n);
  Rational value = correlator_of_theory(spec, g, vs, a, o.threads);
  ordered_json j{{"g", g}, {"n", n}, {"psi", a}, {"value", render(value)}};
  emit(o, j, render(value) + "\n");
  return kOk;
}

int cmd_oracle(const Options& o, const std::string& kind, int max_dim) {
  std::vector<oracle::OracleReport> reports;
  if (kind == "graphs") {
    for (int g = 0; 3 * g - 3 <= max_dim; ++g)
      for (int n = 0; 3 * g - 3 + n <= max_dim; ++n)
        if (2 * g - 2 + n > 0) reports.push_back(oracle::check_graphs(g, n));
  } else if (kind == "dvv") {
    for (int g = 0; g <= 4; ++g)
      for (int n = 1; 3 * g - 3 + n <= 3 * 4 - 3 + 2 && n <= 5; ++n) {
        if (2 * g - 2 + n <= 0) continue;
        std::vector<int> a(n, 0);
        a[0] = 3 * g - 3 + n;
        intersection_table().psi(g, a);
      }
    reports.push_back(oracle::check_dvv(intersection_table()));
  } else if (kind == "vertex-sum") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    std::vector<std::vector<Rational>> samples;
    for (int t = 0; t < 10; ++t) {
      std::vector<Rational> a;
      for (int k = 0; k < 6; ++k) a.push_back(frac(num(rng), den(rng)));
      samples.push_back(a);
    }
    reports.push_back(oracle::check_vertex_sum(samples, 6));
  } else {
    reports.push_back(oracle::check_multikappa(5, 3));
  }
  bool ok = true;
  ordered_json j;
  j["kind"] = kind;
  j["reports"] = ordered_json::array();
  std::string text;
  for (const auto& r : reports) {
    ok = ok && r.ok;
    j["reports"].push_back({{"name", r.name}, {"ok", r.ok}, {"checked", r.checked}, {"failures", r.failures}});
    text += r.to_string();
  }
  j["ok"] = ok;
  emit(o, j, text);
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semisimple cohomological field theory engine"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "machine-readable output");
  app.add_option("--threads", opt.threads, "worker threads for graph sums")->check(CLI::Range(1u, 256u));

  std::string config, mode, kind, psi, vectors;
  int g = 0, n = 0, max_dim = 4;
  std::function<int()> action;

  auto* algebra = app.add_subcommand("algebra", "Frobenius algebra commands");
  algebra->require_subcommand(1);
  auto* check = algebra->add_subcommand("check", "validate a config and report its algebra");
  check->add_option("config", config, "config file")->required();
  check->callback([&] { action = [&] { return cmd_algebra_check(opt, config); }; });

  auto* graphs = app.add_subcommand("graphs", "stable graphs");
  graphs->require_subcommand(1);
  auto* enumerate = graphs->add_subcommand("enumerate", "list stable graphs of M_{g,n}-bar");
  enumerate->add_option("g", g)->required();
  enumerate->add_option("n", n)->required();
  enumerate->callback([&] { action = [&] { return cmd_graphs(opt, g, n); }; });

  auto* strata = app.add_subcommand("strata", "special strata");
  strata->require_subcommand(1);
  auto* special = strata->add_subcommand("special", "special types and their order");
  special->add_option("g", g)->required();
  special->add_option("n", n)->required();
  special->callback([&] { action = [&] { return cmd_strata(opt, g, n); }; });

  auto* classify = app.add_subcommand("classify", "emit omega_plus and R of a coherent spec");
  classify->add_option("config", config)->required();
  classify->callback([&] { action = [&] { return cmd_classify(opt, config); }; });

  auto* reconstruct = app.add_subcommand("reconstruct", "evaluate a reconstructed theory");
  reconstruct->add_option("mode", mode)->required()->check(CLI::IsMember({"fixed", "free", "nodal"}));
  reconstruct->add_option("config", config)->required();
  reconstruct->add_option("g", g)->required();
  reconstruct->add_option("n", n)->required();
  reconstruct->add_option("--vectors", vectors, "slot vectors, e.g. \"1,0;0,1\"");
  reconstruct->callback([&] { action = [&] { return cmd_reconstruct(opt, mode, config, g, n, vectors); }; });

  auto* verify = app.add_subcommand("verify", "check the axioms in the polynomial model");
  verify->add_option("mode", mode)->required()->check(CLI::IsMember({"fixed", "free"}));
  verify->add_option("config", config)->required();
  verify->add_option("--max-dim", max_dim, "largest 3g-3+n checked")->check(CLI::Range(0, 12));
  verify->callback([&] { action = [&] { return cmd_verify(opt, mode, config, max_dim); }; });

  auto* correlator = app.add_subcommand("correlator", "intersection number of the nodal theory");
  correlator->add_option("g", g)->required();
  correlator->add_option("n", n)->required();
  correlator->add_option("--psi", psi, "psi exponents, e.g. 1,0");
  correlator->add_option("--vectors", vectors, "slot vectors, default all unit");
  correlator->add_option("--config", config, "config file, default the rank-one trivial theory");
  correlator->callback([&] { action = [&] { return cmd_correlator(opt, config, g, n, psi, vectors); }; });

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force oracles against the main code paths");
  oracle_cmd->add_option("kind", kind)->required()->check(CLI::IsMember({"graphs", "dvv", "vertex-sum", "multikappa"}));
  oracle_cmd->add_option("--max-dim", max_dim, "largest 3g-3+n for the graph oracle")->check(CLI::Range(0, 5));
  oracle_cmd->callback([&] { action = [&] { return cmd_oracle(opt, kind, max_dim); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  try {
    load_cache();
    int code = action();
    save_cache();
    return code;
  } catch (const ValidationError& e) {
    for (const auto& line : e.report()) std::cerr << "error: " << line << "\n";
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
