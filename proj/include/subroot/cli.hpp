#pragma once

// Command-line front end.  run() takes argv-style tokens (program name
// excluded) and writes to caller-supplied streams so tests can drive it in
// process.  Exit codes: 0 success, 1 verification failure, 2 usage error.
//
// Subcommands:
//   roots <label> --radius2 R        real roots with |grade2| <= R, one JSON
//                                    object per line, sorted by (grade, root)
//   gradient [<label>] [--file F]    gradient root system and its class
//   maximal <label>                  family descriptors for the ambient
//   instantiate <label> --kind K [--index N] [--params JSON]
//   verify --file F [--radii i,w,c]  modulus laws + maximality oracle
//   enumerate <label> --depth D --prime-bound P   chain nodes as JSON lines
//   pi-system --file F               extracted simple-system generators
//   tables finite|untwisted|twisted  golden type inventories
//
// An optional key=value config file supplies defaults (radius2, depth,
// prime_bound, inner_radius2, work_radius2, check_radius2, threads); the
// SUBROOTS_THREADS environment variable overrides any configured thread
// count.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chains.hpp"
#include "families.hpp"
#include "json.hpp"
#include "model.hpp"
#include "oracle.hpp"

namespace subroot {

namespace detail {

inline std::map<std::string, int> read_config(const std::string& path) {
  static const std::set<std::string> known = {
      "radius2", "depth", "prime_bound", "inner_radius2", "work_radius2",
      "check_radius2", "threads"};
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::map<std::string, int> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string s;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + line);
    std::string key = s.substr(0, eq);
    if (!known.count(key)) throw std::invalid_argument("unknown config key: " + key);
    try {
      out[key] = std::stoi(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("config value is not an integer: " + line);
    }
  }
  return out;
}

inline int config_threads(const std::map<std::string, int>& cfg) {
  if (const char* env = std::getenv("SUBROOTS_THREADS")) {
    try {
      int t = std::stoi(env);
      if (t < 1) throw std::invalid_argument("");
      return t;
    } catch (const std::exception&) {
      throw std::invalid_argument("SUBROOTS_THREADS must be a positive integer");
    }
  }
  auto it = cfg.find("threads");
  return it == cfg.end() ? 1 : it->second;
}

inline void check_radii(const OracleConfig& cfg) {
  if (cfg.inner_radius2 <= 0 || cfg.check_radius2 <= 0 || cfg.work_radius2 <= 0 ||
      cfg.inner_radius2 > cfg.work_radius2 || cfg.check_radius2 > cfg.work_radius2)
    throw std::invalid_argument("radii must satisfy 0 < inner,check <= work");
}

inline OracleConfig parse_radii(const std::string& text, int threads) {
  std::vector<int> v;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string tok =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      v.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("radii must be integers: " + text);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (v.size() != 3)
    throw std::invalid_argument("--radii wants inner,work,check (doubled units)");
  OracleConfig cfg{v[0], v[1], v[2], threads};
  check_radii(cfg);
  return cfg;
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

inline std::vector<std::string> tables_inventory(const std::string& which) {
  std::vector<std::string> out;
  if (which == "finite") {
    for (int r = 1; r <= 8; ++r) out.push_back("A" + std::to_string(r));
    for (int r = 2; r <= 8; ++r) out.push_back("B" + std::to_string(r));
    for (int r = 3; r <= 8; ++r) out.push_back("C" + std::to_string(r));
    for (int r = 4; r <= 8; ++r) out.push_back("D" + std::to_string(r));
    out.insert(out.end(), {"E6", "E7", "E8", "F4", "G2"});
  } else if (which == "untwisted") {
    for (int r = 1; r <= 6; ++r) out.push_back("A" + std::to_string(r) + "^1");
    for (int r = 2; r <= 6; ++r) out.push_back("B" + std::to_string(r) + "^1");
    for (int r = 3; r <= 6; ++r) out.push_back("C" + std::to_string(r) + "^1");
    for (int r = 4; r <= 6; ++r) out.push_back("D" + std::to_string(r) + "^1");
    out.insert(out.end(), {"E6^1", "F4^1", "G2^1"});
  } else {
    out = {"A2^2", "A4^2", "A6^2", "A5^2", "A7^2", "D3^2",
           "D4^2", "D5^2", "D6^2", "E6^2", "D4^3"};
  }
  return out;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact arithmetic for maximal closed subroot systems of affine root systems"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file with default radii and bounds");

  std::string roots_label;
  int roots_radius2 = 8;
  auto* roots_cmd = app.add_subcommand("roots", "list real roots in a grade window");
  roots_cmd->add_option("label", roots_label, "affine type label")->required();
  auto* roots_radius_opt =
      roots_cmd->add_option("--radius2", roots_radius2, "doubled grade bound");

  std::string grad_label, grad_file;
  auto* grad_cmd = app.add_subcommand("gradient", "gradient root system of a model");
  grad_cmd->add_option("label", grad_label, "affine type label (full model)");
  grad_cmd->add_option("--file", grad_file, "subroot system JSON file");

  std::string max_label;
  auto* max_cmd = app.add_subcommand("maximal", "maximal-family descriptors");
  max_cmd->add_option("label", max_label, "affine type label")->required();

  std::string inst_label, inst_kind, inst_params = "{}";
  int inst_index = 0;
  auto* inst_cmd = app.add_subcommand("instantiate", "build one family member");
  inst_cmd->add_option("label", inst_label, "affine type label")->required();
  inst_cmd->add_option("--kind", inst_kind, "family kind name")->required();
  inst_cmd->add_option("--index", inst_index, "discriminator among same-kind families");
  inst_cmd->add_option("--params", inst_params, "parameter object as JSON text");

  std::string verify_file, verify_radii;
  auto* verify_cmd = app.add_subcommand("verify", "check modulus laws and maximality");
  verify_cmd->add_option("--file", verify_file, "subroot system JSON file")->required();
  auto* verify_radii_opt =
      verify_cmd->add_option("--radii", verify_radii, "inner,work,check (doubled)");

  std::string enum_label;
  int enum_depth = 1, enum_prime_bound = 3;
  auto* enum_cmd = app.add_subcommand("enumerate", "chains of maximal closed subsystems");
  enum_cmd->add_option("label", enum_label, "affine type label")->required();
  auto* enum_depth_opt = enum_cmd->add_option("--depth", enum_depth, "refinement depth");
  auto* enum_pb_opt =
      enum_cmd->add_option("--prime-bound", enum_prime_bound, "largest prime modulus");

  std::string pi_file;
  auto* pi_cmd = app.add_subcommand("pi-system", "extract simple-system generators");
  pi_cmd->add_option("--file", pi_file, "subroot system JSON file")->required();

  std::string tables_which;
  auto* tables_cmd = app.add_subcommand("tables", "golden type inventories");
  tables_cmd->add_option("which", tables_which, "finite, untwisted, or twisted")
      ->required()
      ->check(CLI::IsMember({"finite", "untwisted", "twisted"}));

  try {
    std::vector<const char*> argv;
    argv.push_back("subroots");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::map<std::string, int> cfg;
    if (!config_path.empty()) cfg = detail::read_config(config_path);
    int threads = detail::config_threads(cfg);
    auto cfg_or = [&](const char* key, int fallback) {
      auto it = cfg.find(key);
      return it == cfg.end() ? fallback : it->second;
    };

    if (*roots_cmd) {
      SimpleLabel ambient = parse_affine_ambient(roots_label);
      int radius2 = roots_radius_opt->count() ? roots_radius2 : cfg_or("radius2", 8);
      if (radius2 < 0) throw std::invalid_argument("radius2 must be nonnegative");
      std::vector<AffineRoot> roots = window_roots(ambient, radius2);
      std::sort(roots.begin(), roots.end(), [](const AffineRoot& a, const AffineRoot& b) {
        return std::pair(a.t2, a.v) < std::pair(b.t2, b.v);
      });
      for (const auto& x : roots) out << to_json(x).dump() << '\n';
      return 0;
    }

    if (*grad_cmd) {
      if (grad_label.empty() == grad_file.empty())
        throw std::invalid_argument("gradient wants a label or --file, not both");
      SubrootSystem sub = grad_file.empty()
                              ? full_model(parse_affine_ambient(grad_label))
                              : subroot_system_from_json(detail::load_json_file(grad_file));
      std::vector<FiniteRoot> g = gradient_of(sub);
      nlohmann::json roots = nlohmann::json::array();
      for (const auto& v : g) roots.push_back(v.c2);
      nlohmann::json j{{"ambient", to_string(sub.ambient)},
                       {"type", to_string(recognize_finite_type(g))},
                       {"class", to_string(classify_gradient(sub))},
                       {"roots", std::move(roots)}};
      out << j.dump(2) << '\n';
      return 0;
    }

    if (*max_cmd) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& f : enumerate_families(parse_affine_ambient(max_label))) {
        nlohmann::json j = f;
        j["index"] = f.param;
        arr.push_back(std::move(j));
      }
      out << arr.dump(2) << '\n';
      return 0;
    }

    if (*inst_cmd) {
      auto fams = enumerate_families(parse_affine_ambient(inst_label));
      const MaximalFamily* pick = nullptr;
      std::string have;
      for (const auto& f : fams) {
        if (kind_name(f.kind) == inst_kind && f.param == inst_index) pick = &f;
        have += "\n  " + std::string(kind_name(f.kind)) + " --index " +
                std::to_string(f.param) + "  -> " + to_string(f.result_type);
      }
      if (!pick)
        throw std::invalid_argument("no family " + inst_kind + " --index " +
                                    std::to_string(inst_index) + " in " + inst_label +
                                    "; available:" + have);
      nlohmann::json params = nlohmann::json::parse(inst_params);
      out << to_json(instantiate(*pick, params)).dump(2) << '\n';
      return 0;
    }

    if (*verify_cmd) {
      SubrootSystem sub = subroot_system_from_json(detail::load_json_file(verify_file));
      OracleConfig ocfg = default_oracle_config(sub, threads);
      ocfg.inner_radius2 = cfg_or("inner_radius2", ocfg.inner_radius2);
      ocfg.work_radius2 = cfg_or("work_radius2", ocfg.work_radius2);
      ocfg.check_radius2 = cfg_or("check_radius2", ocfg.check_radius2);
      if (verify_radii_opt->count()) ocfg = detail::parse_radii(verify_radii, threads);
      detail::check_radii(ocfg);
      LawReport laws = check_modulus_laws(sub);
      MaximalityResult res = verify_maximal(sub, ocfg);
      nlohmann::json j{{"ambient", to_string(sub.ambient)},
                       {"laws_pass", laws.pass},
                       {"law_failures", laws.failures},
                       {"maximal", res.maximal},
                       {"witness", res.witness ? to_json(*res.witness) : nlohmann::json()},
                       {"radii",
                        {{"inner_radius2", ocfg.inner_radius2},
                         {"work_radius2", ocfg.work_radius2},
                         {"check_radius2", ocfg.check_radius2}}}};
      out << j.dump(2) << '\n';
      return laws.pass && res.maximal ? 0 : 1;
    }

    if (*enum_cmd) {
      int depth = enum_depth_opt->count() ? enum_depth : cfg_or("depth", 1);
      int prime_bound = enum_pb_opt->count() ? enum_prime_bound : cfg_or("prime_bound", 3);
      if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
      if (prime_bound < 2) throw std::invalid_argument("prime bound must be at least 2");
      for (const auto& node : enumerate_closed(parse_affine_ambient(enum_label), depth,
                                               prime_bound)) {
        nlohmann::json j = node;
        out << j.dump() << '\n';
      }
      return 0;
    }

    if (*pi_cmd) {
      SubrootSystem sub = subroot_system_from_json(detail::load_json_file(pi_file));
      PiSystem sigma = extract_pi_system(sub);
      nlohmann::json j{{"ambient", to_string(sub.ambient)}, {"roots", sigma}};
      out << j.dump(2) << '\n';
      return 0;
    }

    // tables
    nlohmann::json tbl = nlohmann::json::object();
    for (const auto& label : detail::tables_inventory(tables_which)) {
      std::set<std::string> row;
      if (tables_which == "finite") {
        for (const auto& t : finite_maximal_types(parse_label_sum(label).at(0)))
          row.insert(to_string(t));
      } else {
        for (const auto& f : enumerate_families(parse_affine_ambient(label)))
          row.insert(to_string(f.result_type));
      }
      tbl[label] = row;
    }
    out << tbl.dump(2) << '\n';
    return 0;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace subroot
