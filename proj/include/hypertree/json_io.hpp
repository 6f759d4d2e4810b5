#pragma once

#include "hypertree/covering.hpp"
#include "hypertree/faithful.hpp"
#include "hypertree/geodetic.hpp"
#include "hypertree/gromov.hpp"
#include "hypertree/visual.hpp"

#include "json.hpp"

#include <string>

namespace hypertree {

/// Canonical dump: sorted keys (json object order), two-space indent,
/// trailing newline. Identical documents give identical bytes.
std::string dump_canonical(const nlohmann::json& j);

/// Parse a file; malformed input raises ParseError naming the byte offset.
nlohmann::json load_json_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

/// Every document carries {"version": 1, "kind": ...}; readers refuse
/// anything else.
inline constexpr int kDocumentVersion = 1;
nlohmann::json make_envelope(const std::string& kind);
void check_envelope(const nlohmann::json& j, const std::string& kind);

nlohmann::json scan_to_json(const ScanInfo& s);

nlohmann::json delta_report_to_json(const GromovTable& t,
                                    const BasepointReport& basepoint,
                                    const ThinTriangleReport& thin,
                                    const ProductGeodesicReport& product);

nlohmann::json sandwich_to_json(const SandwichReport& r);

/// {R, threshold2x, cells: [{id, members, representative}], metric:
/// lower-triangular rows of the cell metric}
nlohmann::json cells_to_json(const BoundaryCellSet& c);

struct CellsDocument {
  int R = 0;
  int threshold2x = 0;
  double epsilon = 0;
  std::vector<std::vector<int>> members;
  std::vector<int> representative;
  std::vector<std::vector<double>> metric_lower;
  nlohmann::json extra;  // config_hash, caps, anything the writer added
};
CellsDocument cells_from_json(const nlohmann::json& j);

/// {r, kappa, centers, colors, certificates: {...}}
nlohmann::json cover_to_json(const BallCover& c);

struct CoverDocument {
  BallCover cover;  // balls stay empty: they are recomputed from a metric
  nlohmann::json extra;
};
CoverDocument cover_from_json(const nlohmann::json& j);

/// Cell-set cover consumed by the geodetic audit: {sets: [[cell id, ...]]}.
nlohmann::json cell_cover_to_json(const std::vector<std::vector<int>>& sets);
std::vector<std::vector<int>> cell_cover_from_json(const nlohmann::json& j);

nlohmann::json dimension_to_json(const PackingReport& assouad,
                                 const DoublingReport& doubling);

/// Full faithful construction document: {root, parents, stages, census, ...}.
/// Bit-exact round trip through faithful_from_json.
nlohmann::json faithful_to_json(const FaithfulResult& r);

struct FaithfulDocument {
  FaithfulResult result;
  nlohmann::json extra;
};
FaithfulDocument faithful_from_json(const nlohmann::json& j);

nlohmann::json geodetic_tree_to_json(const GeodeticTree& t);
nlohmann::json census_to_json(const RayCensus& c);
nlohmann::json growth_to_json(const std::vector<RayGrowthRow>& rows);
nlohmann::json limit_sets_to_json(const LimitSetFamily& f);
nlohmann::json audit_to_json(const LowerBoundAudit& a);

}  // namespace hypertree
