#include "plr/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "plr/version.hpp"

namespace plr {

namespace {

using nlohmann::json;

json read_json(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string(what) + ": cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string(what) + ": " + path + ": " + e.what());
  }
  return j;
}

void write_text(const std::string& path, const std::string& text, const char* what) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(std::string(what) + ": cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error(std::string(what) + ": short write to " + path);
}

}  // namespace

void save_rule(const RuleDocument& doc, const std::string& path) {
  json j;
  j["m"] = doc.rule.m;
  j["s"] = doc.rule.s;
  j["p"] = to_hex(doc.rule.p);
  json q = json::array();
  for (const Gf2Poly& qi : doc.rule.q) q.push_back(to_hex(qi));
  j["q"] = std::move(q);
  j["weights"] = doc.weights_label;
  j["B"] = doc.criterion_by_dim;
  j["version"] = doc.version.empty() ? library_version : doc.version;
  write_text(path, j.dump(2) + "\n", "rule");
}

RuleDocument load_rule(const std::string& path) {
  const json j = read_json(path, "rule");
  try {
    std::vector<Gf2Poly> q;
    for (const auto& qi : j.at("q")) q.push_back(poly_from_hex(qi.get<std::string>()));
    RuleDocument doc;
    doc.rule = PolyLatticeRule::create(poly_from_hex(j.at("p").get<std::string>()), std::move(q));
    if (j.at("m").get<int>() != doc.rule.m || j.at("s").get<int>() != doc.rule.s) {
      throw std::runtime_error("recorded m/s disagree with p/q");
    }
    doc.weights_label = j.value("weights", std::string{});
    if (j.contains("B")) doc.criterion_by_dim = j.at("B").get<std::vector<double>>();
    doc.version = j.value("version", std::string{});
    return doc;
  } catch (const json::exception& e) {
    throw std::runtime_error("rule: " + path + ": " + e.what());
  }
}

bool is_weight_preset(const std::string& name) {
  return name == "unweighted" || name == "geo09" || name == "invsq";
}

WeightScheme load_weights(const std::string& path_or_preset, int s) {
  if (is_weight_preset(path_or_preset)) return WeightScheme::preset(path_or_preset, s);
  const json j = read_json(path_or_preset, "weights");
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "product") {
      std::vector<double> gammas = j.at("gammas").get<std::vector<double>>();
      if (gammas.size() != static_cast<std::size_t>(s)) {
        throw std::runtime_error("product weights carry " + std::to_string(gammas.size()) +
                                 " gammas but s = " + std::to_string(s));
      }
      return WeightScheme::product(std::move(gammas));
    }
    if (type == "general") {
      if (j.at("s").get<int>() != s) {
        throw std::runtime_error("general weights declare s = " +
                                 std::to_string(j.at("s").get<int>()) + " but s = " +
                                 std::to_string(s) + " was requested");
      }
      std::vector<std::pair<std::vector<int>, double>> entries;
      for (const auto& e : j.at("entries")) {
        entries.emplace_back(e.at("subset").get<std::vector<int>>(), e.at("gamma").get<double>());
      }
      return WeightScheme::general_from_entries(s, entries);
    }
    throw std::runtime_error("unknown weights type \"" + type + "\"");
  } catch (const json::exception& e) {
    throw std::runtime_error("weights: " + path_or_preset + ": " + e.what());
  }
}

void save_points_csv(const PointSet& ps, const std::string& path) {
  std::string text;
  text.reserve(ps.numer.size() * 20);
  char buf[32];
  for (std::size_t i = 0; i < ps.n; ++i) {
    for (int j = 0; j < ps.s; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", ps.value(i, j));
      if (j) text += ',';
      text += buf;
    }
    text += '\n';
  }
  write_text(path, text, "points");
}

void save_points_json(const PointSet& ps, const std::string& path) {
  json rows = json::array();
  for (std::size_t i = 0; i < ps.n; ++i) {
    json row = json::array();
    for (int j = 0; j < ps.s; ++j) row.push_back(ps.numerator(i, j));
    rows.push_back(std::move(row));
  }
  json j;
  j["n"] = ps.n;
  j["s"] = ps.s;
  j["precision_bits"] = ps.precision_bits;
  j["numerators"] = std::move(rows);
  write_text(path, j.dump() + "\n", "points");
}

PointSet load_points_json(const std::string& path) {
  const json j = read_json(path, "points");
  try {
    PointSet ps;
    ps.n = j.at("n").get<std::size_t>();
    ps.s = j.at("s").get<int>();
    ps.precision_bits = j.at("precision_bits").get<int>();
    if (ps.s < 1 || ps.n < 1 || ps.precision_bits < 1 || ps.precision_bits > 62) {
      throw std::runtime_error("invalid point-set header");
    }
    const auto& rows = j.at("numerators");
    if (rows.size() != ps.n) throw std::runtime_error("row count disagrees with n");
    ps.numer.reserve(ps.n * static_cast<std::size_t>(ps.s));
    for (const auto& row : rows) {
      if (row.size() != static_cast<std::size_t>(ps.s)) {
        throw std::runtime_error("row width disagrees with s");
      }
      for (const auto& v : row) {
        const std::uint64_t numer = v.get<std::uint64_t>();
        if (ps.precision_bits < 62 && numer >= (std::uint64_t{1} << ps.precision_bits)) {
          throw std::runtime_error("numerator exceeds the declared precision");
        }
        ps.numer.push_back(numer);
      }
    }
    return ps;
  } catch (const json::exception& e) {
    throw std::runtime_error("points: " + path + ": " + e.what());
  }
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("sha256: cannot open " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("sha256: cannot allocate digest context");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[65536];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

}
