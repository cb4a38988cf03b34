#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace silico::cli {

/// JSON text with every floating-point number printed as %.17g; non-finite
/// values become null. indent < 0 gives a single line.
std::string dump17(const nlohmann::json& value, int indent = 2);

std::string number17(double v);

/// "# config: {...}" then a header row, then the rows.
std::string csv_document(const nlohmann::json& config,
                         const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& rows);

}  // namespace silico::cli
