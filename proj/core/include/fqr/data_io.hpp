#pragma once

#include <map>
#include <string>
#include <vector>

#include "fqr/sample.hpp"

namespace fqr {

/// Column names for long-format panel CSV (one row per unit-time pair).
struct PanelSchema {
  std::string unitColumn = "unit";
  std::string timeColumn = "time";
  std::string covariateColumn = "covariate";
  std::string responseColumn = "response";
};

enum class BundleKind { QuantileCurves, DepthSet, SpreadProfile, CVTrace };

struct Series {
  std::string name;
  std::vector<double> t;
  std::vector<double> v;
};

/// Plot-ready result payload plus the metadata needed to reproduce it.
struct ResultBundle {
  BundleKind kind = BundleKind::QuantileCurves;
  std::map<std::string, std::string> metadata;
  std::vector<Series> series;
};

enum class OutputFormat { Csv, Json };

/// Reads a complete panel: every unit must cover the identical, complete,
/// sorted time grid. Units keep their order of first appearance.
FunctionalSample read_panel(const std::string& path, const PanelSchema& schema);

/// Unit names recovered by read_panel, in first-appearance order.
FunctionalSample read_panel(const std::string& path, const PanelSchema& schema,
                            std::vector<std::string>* unit_names);

/// Writes a sample as long-format panel CSV. Unit names default to 1..n.
void write_panel(const FunctionalSample& sample, const std::string& path,
                 const PanelSchema& schema,
                 const std::vector<std::string>& unit_names = {});

/// CSV: '#'-prefixed metadata lines, then one row per (series, t, value).
/// JSON: {kind, metadata, series:[{name, t:[], v:[]}]}. Either way numbers
/// carry 17 significant digits, so write -> read -> write is a fixed point.
void write_results(const ResultBundle& bundle, const std::string& path,
                   OutputFormat format);

ResultBundle read_results(const std::string& path);

std::string bundle_kind_name(BundleKind kind);

}  // namespace fqr
