// Command-line front end: construct rules, generate and scramble point sets,
// evaluate discrepancies, and reproduce the summary tables.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plr/cbc.hpp"
#include "plr/discrepancy.hpp"
#include "plr/gf2poly.hpp"
#include "plr/io.hpp"
#include "plr/lattice.hpp"
#include "plr/scramble.hpp"
#include "plr/sobol.hpp"
#include "plr/version.hpp"
#include "plr/weights.hpp"

namespace {

using nlohmann::json;

plr::CbcMode parse_mode(const std::string& mode) {
  if (mode == "naive") return plr::CbcMode::naive;
  if (mode == "fast") return plr::CbcMode::fast;
  if (mode == "auto") return plr::CbcMode::automatic;
  throw std::runtime_error("mode must be naive, fast, or auto");
}

std::optional<plr::Gf2Poly> parse_modulus(const std::string& hex) {
  if (hex.empty()) return std::nullopt;
  return plr::poly_from_hex(hex);
}

std::string sci3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2E", v);
  return buf;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << j.dump(2) << "\n";
}

// ---- construct ------------------------------------------------------------

struct ConstructOpts {
  int m = 0;
  int s = 0;
  std::string weights;
  std::string p_hex;
  std::string mode = "auto";
  std::string out;
};

void run_construct(const ConstructOpts& o) {
  const plr::WeightScheme w = plr::load_weights(o.weights, o.s);
  const std::optional<plr::Gf2Poly> p = parse_modulus(o.p_hex);
  plr::CbcResult res;
  if (w.kind() == plr::WeightKind::product) {
    res = plr::cbc_construct_product(o.m, o.s, w.product_gammas(), p, parse_mode(o.mode));
  } else {
    res = plr::cbc_construct_general(o.m, w, p);
  }
  plr::RuleDocument doc;
  doc.rule = res.rule;
  doc.weights_label = o.weights;
  doc.criterion_by_dim = res.criterion_by_dim;
  doc.version = plr::library_version;
  plr::save_rule(doc, o.out);

  json j;
  j["out"] = o.out;
  j["p"] = plr::to_hex(res.rule.p);
  json q = json::array();
  for (const plr::Gf2Poly& qi : res.rule.q) q.push_back(plr::to_hex(qi));
  j["q"] = std::move(q);
  j["B"] = res.criterion_by_dim;
  std::cout << j.dump(2) << "\n";
}

// ---- points ---------------------------------------------------------------

struct PointsOpts {
  std::string rule;
  std::string out;
  std::string format;
  bool scramble = false;
  std::uint64_t seed = 0;
  int depth = 53;
};

void run_points(const PointsOpts& o) {
  const plr::RuleDocument doc = plr::load_rule(o.rule);
  plr::PointSet ps = plr::generate_points(doc.rule);
  if (o.scramble) ps = plr::owen_scramble(ps, plr::ScrambleRandomness::hashed(o.seed, o.depth));

  std::string format = o.format;
  if (format.empty()) {
    format = o.out.size() >= 5 && o.out.substr(o.out.size() - 5) == ".json" ? "json" : "csv";
  }
  if (format == "json") {
    plr::save_points_json(ps, o.out);
  } else if (format == "csv") {
    plr::save_points_csv(ps, o.out);
  } else {
    throw std::runtime_error("format must be csv or json");
  }
  json j;
  j["out"] = o.out;
  j["n"] = ps.n;
  j["s"] = ps.s;
  j["precision_bits"] = ps.precision_bits;
  std::cout << j.dump(2) << "\n";
}

// ---- discrepancy ----------------------------------------------------------

struct DiscrepancyOpts {
  std::string points;
  std::string weights;
  bool criterion = false;
  std::size_t mc = 0;
  std::uint64_t seed = 0;
  int depth = 53;
};

void run_discrepancy(const DiscrepancyOpts& o) {
  const plr::PointSet ps = plr::load_points_json(o.points);
  const plr::WeightScheme w = plr::load_weights(o.weights, ps.s);
  json j;
  if (o.mc > 0) {
    const plr::McEstimate est = plr::mc_mean_square_estimate(ps, w, o.mc, o.seed, o.depth);
    j["mean"] = est.mean;
    j["stderr"] = est.stderr_of_mean;
    j["replicates"] = est.replicates;
  } else if (o.criterion) {
    j["B"] = plr::mean_square_criterion(ps, w);
  } else {
    j["l2sq"] = plr::warnock_l2sq(ps, w);
  }
  std::cout << j.dump(2) << "\n";
}

// ---- meansquare -----------------------------------------------------------

struct MeansquareOpts {
  std::string rule;
  std::string weights;
};

void run_meansquare(const MeansquareOpts& o) {
  const plr::RuleDocument doc = plr::load_rule(o.rule);
  const std::string label = o.weights.empty() ? doc.weights_label : o.weights;
  if (label.empty()) throw std::runtime_error("rule file records no weights; pass --weights");
  const plr::WeightScheme w = plr::load_weights(label, doc.rule.s);
  json j;
  j["weights"] = label;
  j["B"] = plr::mean_square_criterion(doc.rule, w);
  if (w.kind() == plr::WeightKind::product) {
    j["per_dimension"] = plr::mean_square_prefixes(doc.rule, w.product_gammas());
  }
  std::cout << j.dump(2) << "\n";
}

// ---- mc-verify ------------------------------------------------------------

struct McVerifyOpts {
  std::string rule;
  std::string weights;
  std::size_t replicates = 2000;
  std::uint64_t seed = 0;
  int depth = 53;
};

void run_mc_verify(const McVerifyOpts& o) {
  if (o.replicates < 2) throw std::runtime_error("mc-verify needs at least 2 replicates");
  const plr::RuleDocument doc = plr::load_rule(o.rule);
  const std::string label = o.weights.empty() ? doc.weights_label : o.weights;
  if (label.empty()) throw std::runtime_error("rule file records no weights; pass --weights");
  const plr::WeightScheme w = plr::load_weights(label, doc.rule.s);
  const double b = plr::mean_square_criterion(doc.rule, w);
  const plr::PointSet ps = plr::generate_points(doc.rule);
  const plr::McEstimate est = plr::mc_mean_square_estimate(ps, w, o.replicates, o.seed, o.depth);
  const double z = (est.mean - b) / est.stderr_of_mean;
  json j;
  j["B"] = b;
  j["mean"] = est.mean;
  j["stderr"] = est.stderr_of_mean;
  j["z"] = z;
  j["replicates"] = est.replicates;
  j["pass"] = std::abs(z) < 4.0;
  std::cout << j.dump(2) << "\n";
}

// ---- tables ---------------------------------------------------------------

struct TablesOpts {
  std::string preset;
  int m_min = 4;
  int m_max = 15;
  std::vector<int> s_list{1, 5, 50, 100};
  std::string generators = "plr";
  std::string format = "csv";
  std::string dirs;
  std::string mode = "auto";
  std::string out;
};

void run_tables(const TablesOpts& o) {
  if (!plr::is_weight_preset(o.preset)) {
    throw std::runtime_error("preset must be unweighted, geo09, or invsq");
  }
  if (o.m_min < 1 || o.m_max > 30 || o.m_min > o.m_max) {
    throw std::runtime_error("m range must satisfy 1 <= m-min <= m-max <= 30");
  }
  if (o.s_list.empty()) throw std::runtime_error("need at least one s");
  for (int s : o.s_list) {
    if (s < 1) throw std::runtime_error("every s must be at least 1");
  }
  const bool want_plr = o.generators == "plr" || o.generators == "both";
  const bool want_sobol = o.generators == "sobol" || o.generators == "both";
  if (!want_plr && !want_sobol) {
    throw std::runtime_error("generators must be plr, sobol, or both");
  }
  if (want_sobol && o.dirs.empty()) {
    throw std::runtime_error("sobol columns need --dirs with a direction-number file");
  }

  const int s_max = *std::max_element(o.s_list.begin(), o.s_list.end());
  const plr::WeightScheme w = plr::WeightScheme::preset(o.preset, s_max);
  const std::vector<double>& gammas = w.product_gammas();
  const plr::CbcMode mode = parse_mode(o.mode);

  plr::DirectionTable dt;
  if (want_sobol) {
    dt = plr::load_direction_table(o.dirs);
    if (dt.dimensions() < s_max) {
      throw std::runtime_error("direction table provides " + std::to_string(dt.dimensions()) +
                               " dimensions; the table needs " + std::to_string(s_max));
    }
  }

  // Column order: per s, plr then sobol. One CBC run per m serves every s
  // column (the construction is extensible in dimension), and likewise one
  // Sobol' point set per m.
  std::vector<std::string> col_names;
  for (int s : o.s_list) {
    if (want_plr) col_names.push_back("plr_s" + std::to_string(s));
    if (want_sobol) col_names.push_back("sobol_s" + std::to_string(s));
  }

  std::vector<std::string> p_by_m;
  std::vector<std::vector<std::string>> cells;
  for (int m = o.m_min; m <= o.m_max; ++m) {
    std::vector<double> plr_b, sobol_b;
    const plr::Gf2Poly p = plr::find_irreducible(m);
    p_by_m.push_back(plr::to_hex(p));
    if (want_plr) {
      plr_b = plr::cbc_construct_product(m, s_max, gammas, p, mode).criterion_by_dim;
    }
    if (want_sobol) {
      sobol_b = plr::mean_square_prefixes(plr::sobol_points(dt, m, s_max), gammas);
    }
    std::vector<std::string> row;
    for (int s : o.s_list) {
      if (want_plr) row.push_back(sci3(plr_b[s - 1]));
      if (want_sobol) row.push_back(sci3(sobol_b[s - 1]));
    }
    cells.push_back(std::move(row));
  }

  if (o.format == "json") {
    json j;
    j["preset"] = o.preset;
    j["mode"] = o.mode;
    if (want_sobol) j["dirs_sha256"] = dt.source_sha256;
    j["columns"] = col_names;
    json rows = json::array();
    for (int m = o.m_min; m <= o.m_max; ++m) {
      json row;
      row["m"] = m;
      row["p"] = p_by_m[m - o.m_min];
      row["values"] = cells[m - o.m_min];
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    emit(j, o.out);
    return;
  }

  std::string text;
  if (o.format == "csv") {
    text += "# preset=" + o.preset + "\n";
    if (want_sobol) text += "# dirs_sha256=" + dt.source_sha256 + "\n";
    text += "m,p";
    for (const std::string& c : col_names) text += "," + c;
    text += "\n";
    for (int m = o.m_min; m <= o.m_max; ++m) {
      text += std::to_string(m) + "," + p_by_m[m - o.m_min];
      for (const std::string& c : cells[m - o.m_min]) text += "," + c;
      text += "\n";
    }
  } else if (o.format == "markdown") {
    text += "| m | p |";
    for (const std::string& c : col_names) text += " " + c + " |";
    text += "\n|---|---|";
    for (std::size_t i = 0; i < col_names.size(); ++i) text += "---|";
    text += "\n";
    for (int m = o.m_min; m <= o.m_max; ++m) {
      text += "| " + std::to_string(m) + " | " + p_by_m[m - o.m_min] + " |";
      for (const std::string& c : cells[m - o.m_min]) text += " " + c + " |";
      text += "\n";
    }
    text += "\npreset: " + o.preset + "\n";
    if (want_sobol) text += "direction file sha256: " + dt.source_sha256 + "\n";
  } else {
    throw std::runtime_error("format must be csv, json, or markdown");
  }
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream fout(o.out);
    if (!fout) throw std::runtime_error("cannot write " + o.out);
    fout << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial lattice rules over GF(2): construction and discrepancy tools"};
  app.set_version_flag("--version", std::string(plr::library_version));
  app.require_subcommand(1);

  int irr_m = 0;
  CLI::App* irr = app.add_subcommand("irreducible", "smallest irreducible polynomial of degree m");
  irr->add_option("--m", irr_m, "degree")->required();
  irr->callback([&] { std::cout << plr::to_hex(plr::find_irreducible(irr_m)) << "\n"; });

  ConstructOpts co;
  CLI::App* con = app.add_subcommand("construct", "component-by-component rule construction");
  con->add_option("--m", co.m, "log2 of the point count")->required();
  con->add_option("--s", co.s, "dimension")->required();
  con->add_option("--weights", co.weights, "preset name or weights JSON file")->required();
  con->add_option("--p", co.p_hex, "modulus as hex (default: smallest irreducible)");
  con->add_option("--mode", co.mode, "naive, fast, or auto (default auto)");
  con->add_option("--out", co.out, "output rule JSON path")->required();
  con->callback([&] { run_construct(co); });

  PointsOpts po;
  CLI::App* pts = app.add_subcommand("points", "materialize a rule's point set");
  pts->add_option("--rule", po.rule, "rule JSON path")->required();
  pts->add_option("--out", po.out, "output path")->required();
  pts->add_option("--format", po.format, "csv or json (default: by extension)");
  pts->add_flag("--scramble", po.scramble, "apply nested base-2 scrambling");
  pts->add_option("--seed", po.seed, "scramble seed (default 0)");
  pts->add_option("--depth", po.depth, "scramble digit depth (default 53)");
  pts->callback([&] { run_points(po); });

  DiscrepancyOpts dopt;
  CLI::App* dis = app.add_subcommand("discrepancy", "weighted L2 discrepancy of a point set");
  dis->add_option("--points", dopt.points, "point-set JSON path")->required();
  dis->add_option("--weights", dopt.weights, "preset name or weights JSON file")->required();
  dis->add_flag("--criterion", dopt.criterion,
                "emit the scramble-averaged criterion B instead (assumes the points form "
                "a digital net at the file's precision)");
  dis->add_option("--mc", dopt.mc, "estimate E[L2^2] over this many scrambles");
  dis->add_option("--seed", dopt.seed, "scramble seed (default 0)");
  dis->add_option("--depth", dopt.depth, "scramble digit depth (default 53)");
  dis->callback([&] { run_discrepancy(dopt); });

  MeansquareOpts mo;
  CLI::App* ms = app.add_subcommand("meansquare", "criterion B of a stored rule");
  ms->add_option("--rule", mo.rule, "rule JSON path")->required();
  ms->add_option("--weights", mo.weights, "override the weights recorded in the rule");
  ms->callback([&] { run_meansquare(mo); });

  McVerifyOpts vo;
  CLI::App* mv = app.add_subcommand("mc-verify", "check B against a scramble Monte Carlo mean");
  mv->add_option("--rule", vo.rule, "rule JSON path")->required();
  mv->add_option("--weights", vo.weights, "override the weights recorded in the rule");
  mv->add_option("--replicates", vo.replicates, "scramble count (default 2000)");
  mv->add_option("--seed", vo.seed, "scramble seed (default 0)");
  mv->add_option("--depth", vo.depth, "scramble digit depth (default 53)");
  mv->callback([&] { run_mc_verify(vo); });

  TablesOpts to;
  CLI::App* tb = app.add_subcommand("tables", "criterion tables across m, s, and generators");
  tb->add_option("--preset", to.preset, "unweighted, geo09, or invsq")->required();
  tb->add_option("--m-min", to.m_min, "first m (default 4)");
  tb->add_option("--m-max", to.m_max, "last m (default 15)");
  tb->add_option("--s", to.s_list, "dimensions (default 1 5 50 100)")->delimiter(',');
  tb->add_option("--generators", to.generators, "plr, sobol, or both (default plr)");
  tb->add_option("--format", to.format, "csv, json, or markdown (default csv)");
  tb->add_option("--dirs", to.dirs, "Joe-Kuo direction-number file (for sobol)");
  tb->add_option("--mode", to.mode, "construction mode (default auto)");
  tb->add_option("--out", to.out, "output path (default stdout)");
  tb->callback([&] { run_tables(to); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
  } catch (const std::exception& e) {
    json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
