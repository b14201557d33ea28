#pragma once

#include <string>
#include <vector>

#include "plr/lattice.hpp"
#include "plr/weights.hpp"

namespace plr {

/// A constructed rule plus the metadata persisted with it. weights_label is
/// the preset name or weights-file path the construction used, so the rule
/// file alone suffices to re-evaluate its criterion.
struct RuleDocument {
  PolyLatticeRule rule;
  std::string weights_label;
  std::vector<double> criterion_by_dim;
  std::string version;
};

/// Rule files: JSON {"m", "s", "p": "0x..", "q": ["0x..", ...], "weights",
/// "B": [..], "version"}. Polynomials travel as hex bitmask strings.
void save_rule(const RuleDocument& doc, const std::string& path);
RuleDocument load_rule(const std::string& path);

/// True for the named weight presets ("unweighted", "geo09", "invsq").
bool is_weight_preset(const std::string& name);

/// Resolves a preset name or a weights JSON file to a scheme of dimension s.
/// Files: {"type":"product","gammas":[...]} (length must equal s) or
/// {"type":"general","s":n,"entries":[{"subset":[1,3],"gamma":0.5},...]}.
WeightScheme load_weights(const std::string& path_or_preset, int s);

/// CSV export: one row per point, coordinates as decimal fractions that
/// round-trip through binary64. No header.
void save_points_csv(const PointSet& ps, const std::string& path);

/// Lossless JSON form: {"n", "s", "precision_bits", "numerators": [[..],..]}.
void save_points_json(const PointSet& ps, const std::string& path);
PointSet load_points_json(const std::string& path);

std::string sha256_file(const std::string& path);

}
