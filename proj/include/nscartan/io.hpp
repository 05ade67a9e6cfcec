#pragma once

#include "nscartan/ellcurve.hpp"
#include "nscartan/heegner.hpp"
#include "nscartan/jacobi.hpp"
#include "nscartan/lattice.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <string>

namespace nscartan {

using json = nlohmann::json;

// CSV with header "D,m", one discriminant per row.  Parse errors carry the
// line number.
HeegnerTable load_table_csv(const std::filesystem::path& path, const CartanContext& ctx);

// Gram matrices are JSON arrays of rows.
IntMat gram_from_json(const json& j);
json gram_to_json(const IntMat& gram);
IntMat load_gram_json(const std::filesystem::path& path);

// Curve file: {"a": [a1, a2, a3, a4, a6]}.
WeierstrassCurve load_curve_json(const std::filesystem::path& path);
WeierstrassCurve parse_curve_list(const std::string& comma_separated);

// FormalCycle: list of {D, s, coeff_num, coeff_den}.
json cycle_to_json(const FormalCycle& x);

// CoeffTable: {"p":..., "eps":..., "entries":[{"D","s","num","den"}]}.
json coeff_table_to_json(const CoeffTable& tbl);
CoeffTable coeff_table_from_json(const json& j, const CartanContext& ctx);

// ClassicalCoeffTable: {"index":..., "entries":[{"n","r","num","den"}]}.
json classical_to_json(const ClassicalCoeffTable& tbl);
ClassicalCoeffTable classical_from_json(const json& j);
ClassicalCoeffTable load_classical_json(const std::filesystem::path& path);

}  // namespace nscartan
