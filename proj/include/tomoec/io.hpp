#ifndef TOMOEC_IO_HPP
#define TOMOEC_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "tomoec/core.hpp"
#include "tomoec/prony.hpp"
#include "tomoec/simulate.hpp"

namespace tomoec {

using Json = nlohmann::json;

/// Integers within the 53-bit safe range are emitted as JSON numbers, larger
/// ones as decimal strings; both forms are accepted on input.
Json json_int(const BigInt& v);
BigInt int_from_json(const Json& j, const std::string& context);

Json to_json(const Grid& grid);
Grid grid_from_json(const Json& j);

Json directions_to_json(const DirectionSet& dirs);
DirectionSet directions_from_json(const Json& j);

Json to_json(const LineSumTable& table);
LineSumTable table_from_json(const Json& j);

Json to_json(const ErrorSpec& spec);
ErrorSpec error_spec_from_json(const Json& j);

Json report_to_json(const CorrectionReport& report);
/// Full report including the detection and correction trace.
Json report_to_json(const CorrectOutcome& outcome, bool include_trace);

/// Compact single-line serialization with sorted keys; byte-stable for equal
/// values.
std::string canonical_dump(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);
Json parse_json_file(const std::string& path);

}  // namespace tomoec

#endif
